//! Cohomology through the standard flasque resolution.
//!
//! `C^n(U)` is the product of the stalks `F_{x_n}` over strictly increasing
//! chains `x_0 < ... < x_n` in `U`, chains in lexicographic order.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::{base_change, AlgModule, Backend, Extension, Module, Ring, RingHom};
use crate::error::{Error, Result};
use crate::lin::{induced_iso, induced_map, Complex, Homology, Invariants, Kind, LinObj, Mat};
use crate::sheafmod::{sum_of_stalks, SheafModule};
use crate::space::{Morphism, RingedSpace};
use crate::verdict::{Check, Verdict, Window, Witness};

/// Chains of a subset by length, and the position of each chain's block.
#[derive(Clone, Debug)]
pub struct ChainIndex {
    pub chains: Vec<Vec<Vec<usize>>>,
    offsets: Vec<HashMap<Vec<usize>, (usize, usize)>>,
}

impl ChainIndex {
    fn new(x: &RingedSpace, subset: &[usize], size: impl Fn(usize) -> usize) -> ChainIndex {
        let chains = if subset.is_empty() { Vec::new() } else { x.poset().all_chains_in(subset) };
        let offsets = chains
            .iter()
            .map(|cs| {
                let mut off = 0;
                cs.iter()
                    .map(|c| {
                        let s = size(*c.last().expect("nonempty chain"));
                        let e = (c.clone(), (off, s));
                        off += s;
                        e
                    })
                    .collect()
            })
            .collect();
        ChainIndex { chains, offsets }
    }

    /// `(offset, size)` of a chain's block.
    pub fn block(&self, c: &[usize]) -> Option<(usize, usize)> {
        self.offsets.get(c.len().checked_sub(1)?)?.get(c).copied()
    }

    pub fn width(&self, n: usize) -> usize {
        self.offsets.get(n).map_or(0, |m| m.values().map(|b| b.1).sum())
    }
}

fn assemble(
    kind: Kind,
    idx: &ChainIndex,
    terms: Vec<LinObj>,
    identity: impl Fn(usize) -> Mat,
    last_face: impl Fn(usize, usize) -> Result<Mat>,
) -> Result<Complex> {
    let mut diffs = Vec::new();
    for n in 0..idx.chains.len().saturating_sub(1) {
        let mut d = Mat::zeros(kind, idx.width(n + 1), idx.width(n));
        for c in &idx.chains[n + 1] {
            let (row, _) = idx.block(c).expect("indexed chain");
            let last = c[n + 1];
            for i in 0..=n {
                let mut face = c.clone();
                face.remove(i);
                let (col, _) = idx.block(&face).expect("faces are chains");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                d.add_block(row, col, &identity(last).scale_i64(sign));
            }
            let (col, _) = idx.block(&c[..=n]).expect("faces are chains");
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            d.add_block(row, col, &last_face(c[n], last)?.scale_i64(sign));
        }
        diffs.push(d);
    }
    Ok(Complex::new(kind, terms, diffs))
}

/// The complex `C^•(U, F)`.
pub fn standard_complex(m: &SheafModule, subset: &[usize]) -> Complex {
    standard_complex_indexed(m, subset).0
}

/// The complex with its chain index.
pub fn standard_complex_indexed(m: &SheafModule, subset: &[usize]) -> (Complex, ChainIndex) {
    let x = m.space();
    let kind = m.kind();
    let idx = ChainIndex::new(x, subset, |p| m.stalk(p).size());
    let terms = idx.chains.iter().map(|cs| sum_of_stalks(m, &cs.iter().map(|c| *c.last().unwrap()).collect::<Vec<_>>())).collect();
    let c = assemble(kind, &idx, terms, |p| Mat::identity(kind, m.stalk(p).size()), |a, b| Ok(m.res(a, b).clone()))
        .expect("restrictions are available");
    (c, idx)
}

/// `H^i(U, F)` invariants; graded sheaves need a window.
pub fn cohomology(m: &SheafModule, subset: &[usize], i: usize, window: Option<&Window>) -> Result<Invariants> {
    standard_complex(m, subset).invariants(i, window)
}

/// Cohomology in every degree up to the dimension of `U`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<Invariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
}

impl CohomologyReport {
    /// `H^i`, zero above the dimension.
    pub fn get(&self, i: usize) -> Option<&Invariants> {
        self.degrees.get(i)
    }

    pub fn vanishes_above(&self, i: usize) -> bool {
        self.degrees.iter().skip(i + 1).all(Invariants::is_zero)
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.degrees.iter().enumerate() {
            writeln!(f, "H^{} = {}", i, h)?;
        }
        if let Some(w) = &self.window {
            writeln!(f, "(verified on window {})", w)?;
        }
        Ok(())
    }
}

pub fn cohomology_report(m: &SheafModule, subset: &[usize], window: Option<&Window>) -> Result<CohomologyReport> {
    let c = standard_complex(m, subset);
    let degrees = (0..c.len()).map(|i| c.invariants(i, window)).collect::<Result<Vec<_>>>()?;
    let window = if m.kind() == Kind::G { window.copied() } else { None };
    Ok(CohomologyReport { degrees, window })
}

/// Whether `0 -> F_p -> C^0 -> C^1 -> ...` is exact, the augmentation given by `aug`.
pub fn augmented_exact(c: &Complex, stalk: &Module, aug: &Mat, window: Option<&Window>) -> Result<Check> {
    if !c.check() {
        return Ok(Check::No(None));
    }
    if c.is_empty() {
        return Ok(if stalk.size() == 0 { Check::Yes } else { Check::No(None) });
    }
    if !c.diffs.is_empty() && !c.diffs[0].mul(aug).is_zero() {
        return Ok(Check::No(None));
    }
    let a = Complex::new(c.kind, vec![stalk.underlying()], Vec::new());
    let h0 = induced_iso(&a, c, std::slice::from_ref(aug), 0, window)?;
    if !h0.holds() {
        return Ok(h0);
    }
    let mut used = h0.window();
    for i in 1..c.len() {
        match c.invariants(i, window)? {
            Invariants::G { pieces, .. } if !pieces.is_empty() => return Ok(Check::No(Some(pieces[0].0.clone()))),
            h if !h.is_zero() => return Ok(Check::No(None)),
            Invariants::G { window: w, .. } => used = Some(w),
            _ => {}
        }
    }
    Ok(used.map_or(Check::Yes, Check::WindowYes))
}

/// The resolution theorem as a test: over each `U_p` the standard complex
/// resolves `F_p`.
pub fn resolution_check(m: &SheafModule, window: Option<&Window>) -> Result<Check> {
    let x = m.space();
    let mut used = None;
    for p in 0..x.len() {
        let u = x.poset().min_open(p).points().to_vec();
        let (c, idx) = standard_complex_indexed(m, &u);
        let mut aug = Mat::zeros(m.kind(), idx.width(0), m.stalk(p).size());
        for q in &u {
            let (off, _) = idx.block(&[*q]).expect("point chain");
            aug.add_block(off, 0, m.res(p, *q));
        }
        let r = augmented_exact(&c, m.stalk(p), &aug, window)?;
        if !r.holds() {
            return Ok(r);
        }
        used = used.or(r.window());
    }
    Ok(used.map_or(Check::Yes, Check::WindowYes))
}

/// `H^i(U, F)` as a module over `ring`, which acts on each `F_x` through `maps(x)`.
pub fn cohomology_module(m: &SheafModule, subset: &[usize], i: usize, ring: &Ring, maps: &dyn Fn(usize) -> Result<RingHom>) -> Result<(Module, Homology, ChainIndex)> {
    let (c, idx) = standard_complex_indexed(m, subset);
    match m.kind() {
        Kind::G => Err(Error::Unsupported("graded cohomology modules (use per-degree invariants)".into())),
        Kind::Z => {
            let h = c.homology(i);
            let Homology::Z { pres, .. } = &h else { unreachable!() };
            Ok((Module::Z(pres.clone()), h, idx))
        }
        Kind::Q => {
            let h = c.homology(i);
            let a = ring.as_alg()?.clone();
            let chains = idx.chains.get(i).cloned().unwrap_or_default();
            let homs = chains.iter().map(|ch| maps(*ch.last().unwrap())).collect::<Result<Vec<_>>>()?;
            let mut act = Vec::with_capacity(a.dim());
            for k in 0..a.dim() {
                let mut big = Mat::zeros(Kind::Q, idx.width(i), idx.width(i));
                for (ch, hom) in chains.iter().zip(&homs) {
                    let (off, _) = idx.block(ch).unwrap();
                    let Module::Alg(st) = m.stalk(*ch.last().unwrap()) else { unreachable!() };
                    let e = hom.as_alg()?.mat.col(k);
                    big.add_block(off, off, &Mat::Q(st.action_of(&e)));
                }
                act.push(induced_map(&h, &h, Some(&big)).q().clone());
            }
            let module = if a.dim() == 0 { AlgModule::zero(&a) } else { AlgModule::new(a.clone(), act)? };
            Ok((Module::Alg(module), h, idx))
        }
    }
}

/// Projection of cochains on `U` to cochains on a subset `V`.
pub fn restriction_of_cochains(from: &ChainIndex, to: &ChainIndex, n: usize, kind: Kind) -> Mat {
    let mut p = Mat::zeros(kind, to.width(n), from.width(n));
    if let Some(cs) = to.chains.get(n) {
        for c in cs {
            let (r, s) = to.block(c).unwrap();
            let (col, _) = from.block(c).expect("subset chains are chains");
            p.add_block(r, col, &Mat::identity(kind, s));
        }
    }
    p
}

/// `R^i f_* F`, with stalk `H^i(f^{-1}(U_y), F)` over `O_y`.
pub fn higher_direct_image(f: &Morphism, m: &SheafModule, i: usize) -> Result<SheafModule> {
    if *m.space() != *f.source() {
        return Err(Error::Mismatch("direct image of a module on another space".into()));
    }
    if m.kind() == Kind::G {
        return Err(Error::Unsupported("graded direct images as sheaves (use higher_direct_image_invariants)".into()));
    }
    let y = f.target();
    let mut data = Vec::with_capacity(y.len());
    for b in 0..y.len() {
        let pre = f.preimage_of_open(b);
        data.push(cohomology_module(m, &pre, i, y.ring(b), &|x| f.co_from(b, x))?);
    }
    let mut given = std::collections::BTreeMap::new();
    for (a, b) in y.poset().hasse() {
        let p = restriction_of_cochains(&data[a].2, &data[b].2, i, m.kind());
        given.insert((a, b), induced_map(&data[a].1, &data[b].1, Some(&p)));
    }
    SheafModule::on(f.target_arc().clone(), data.into_iter().map(|d| d.0).collect(), given)
}

/// Per-point invariants of `R^i f_* F` (any backend).
pub fn higher_direct_image_invariants(f: &Morphism, m: &SheafModule, i: usize, window: Option<&Window>) -> Result<Vec<Invariants>> {
    (0..f.target().len()).map(|b| cohomology(m, &f.preimage_of_open(b), i, window)).collect()
}

/// Acyclicity of `O` on a subset: `H^i(U, O) = 0` for `i > 0`.
pub fn is_acyclic(x: &RingedSpace, subset: &[usize], window: Option<&Window>) -> Result<Verdict> {
    acyclic_module(&SheafModule::structure(x), subset, window)
}

pub fn acyclic_module(m: &SheafModule, subset: &[usize], window: Option<&Window>) -> Result<Verdict> {
    let rule = "positive-degree cohomology of the standard complex vanishes";
    let c = standard_complex(m, subset);
    let x = m.space();
    for i in 1..c.len() {
        let h = c.invariants(i, window)?;
        if !h.is_zero() {
            let pts: Vec<&str> = subset.iter().map(|&p| x.id(p)).collect();
            let graded = match &h {
                Invariants::G { pieces, .. } => pieces.first().map(|p| p.0.clone()),
                _ => None,
            };
            return Ok(Verdict::no(rule, Witness::points(&pts).with_degree(i).with_graded(graded).with_detail(format!("H^{} = {}", i, h))));
        }
    }
    let w = if m.kind() == Kind::G { window.copied() } else { None };
    if m.kind() == Kind::G && w.is_none() {
        return Err(Error::WindowRequired("graded acyclicity".into()));
    }
    Ok(Verdict::positive(rule, w))
}

/// Outcome of comparing `H^i(C(U) ⊗_R R')` with `H^i(C(V))` for every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    /// First failing degree, with the graded degree where it fails.
    pub failure: Option<(usize, Option<Vec<(String, i64)>>)>,
    pub window: Option<Window>,
}

/// Compares `H^i(U, F) ⊗_R R' -> H^i(V, F)` for `V ⊆ U` and all `i` up to
/// `max_degree` (all degrees when `None`).
///
/// `R` acts on `F_x` (`x ∈ U`) through `into(x)` and `R'` on `F_x` (`x ∈ V`)
/// through `into2(x)`, with `into(x) = into2(x) ∘ base`. The left side is
/// computed as the cohomology of the base-changed complex, which is the
/// base change of cohomology when `base` is flat.
pub fn flat_base_change_comparison(
    m: &SheafModule,
    u: &[usize],
    v: &[usize],
    base: &RingHom,
    into: &dyn Fn(usize) -> Result<RingHom>,
    into2: &dyn Fn(usize) -> Result<RingHom>,
    window: Option<&Window>,
    max_degree: Option<usize>,
) -> Result<Comparison> {
    let kind = m.kind();
    let target_ring = base.target();
    let id2 = RingHom::identity(&target_ring);
    let mut exts: HashMap<usize, Extension> = HashMap::new();
    for &x in u {
        let r = m.stalk(x).restrict_scalars(&into(x)?)?;
        exts.insert(x, base_change(&r, base)?);
    }
    let idx = ChainIndex::new(m.space(), u, |x| exts[&x].module.size());
    let terms = idx
        .chains
        .iter()
        .map(|cs| LinObj::direct_sum(kind, &cs.iter().map(|c| exts[c.last().unwrap()].module.underlying()).collect::<Vec<_>>()))
        .collect();
    let t = assemble(
        kind,
        &idx,
        terms,
        |x| Mat::identity(kind, exts[&x].module.size()),
        |a, b| {
            let phi = exts[&b].unit_map().mul(m.res(a, b));
            exts[&a].lift(&phi, &exts[&b].module, &id2)
        },
    )?;
    let (c, cidx) = standard_complex_indexed(m, v);
    let mut lifts: HashMap<usize, Mat> = HashMap::new();
    for &x in v {
        let tgt = m.stalk(x).restrict_scalars(&into2(x)?)?;
        lifts.insert(x, exts[&x].lift(&Mat::identity(kind, m.stalk(x).size()), &tgt, &id2)?);
    }
    let mut fs = Vec::new();
    for n in 0..t.len() {
        let mut f = Mat::zeros(kind, cidx.width(n), idx.width(n));
        if let Some(cs) = cidx.chains.get(n) {
            for ch in cs {
                let (r, _) = cidx.block(ch).unwrap();
                let (col, _) = idx.block(ch).expect("chains of V are chains of U");
                f.add_block(r, col, &lifts[ch.last().unwrap()]);
            }
        }
        fs.push(f);
    }
    let mut top = t.len().max(c.len());
    if let Some(k) = max_degree {
        top = top.min(k + 1);
    }
    let mut used = None;
    for i in 0..top {
        let r = compare_at(&t, &c, &fs, i, window)?;
        match r {
            Check::No(d) => return Ok(Comparison { failure: Some((i, d)), window: None }),
            Check::WindowYes(w) => used = Some(w),
            Check::Yes => {}
        }
    }
    if kind == Kind::G && used.is_none() {
        used = window.copied();
    }
    Ok(Comparison { failure: None, window: used })
}

fn compare_at(t: &Complex, c: &Complex, fs: &[Mat], i: usize, window: Option<&Window>) -> Result<Check> {
    if t.is_empty() && c.is_empty() {
        return Ok(Check::Yes);
    }
    if t.is_empty() || c.is_empty() {
        // one side has no cochains at all: compare against zero
        let other = if t.is_empty() { c } else { t };
        let h = other.invariants(i, window)?;
        return Ok(if h.is_zero() {
            window.filter(|_| other.kind == Kind::G).map_or(Check::Yes, |w| Check::WindowYes(*w))
        } else {
            match h {
                Invariants::G { pieces, .. } => Check::No(pieces.first().map(|p| p.0.clone())),
                _ => Check::No(None),
            }
        });
    }
    induced_iso(t, c, fs, i, window)
}

/// The backend window rule: graded work needs a window, other backends ignore it.
pub fn window_for(x: &RingedSpace, window: Option<&Window>) -> Result<Option<Window>> {
    match (x.backend(), window) {
        (Backend::Graded, None) => Err(Error::WindowRequired("graded verdicts".into())),
        (Backend::Graded, Some(w)) => Ok(Some(*w)),
        _ => Ok(None),
    }
}
