//! The linear layer under every cohomology computation: objects forgetting
//! ring structure, block matrices, cochain complexes and their homology.
//!
//! ZConst objects are presented abelian groups, FinDimQ objects are rational
//! vector spaces, and graded objects are direct sums of monomial summands that
//! are handled one multidegree at a time.

use std::collections::BTreeSet;

use num_traits::One;

use crate::coeff::monomial::{axis_contains, Axis, Summand};
use crate::coeff::zconst::ZPres;
use crate::error::{Error, Result};
use crate::qmat::{QMat, Quotient, Rat};
use crate::verdict::{Check, Window};
use crate::zmat::{self, Int, ZMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Z,
    Q,
    G,
}

/// A module with its ring forgotten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinObj {
    Z(ZPres),
    Q(usize),
    G(Vec<Summand>),
}

impl LinObj {
    pub fn kind(&self) -> Kind {
        match self {
            LinObj::Z(_) => Kind::Z,
            LinObj::Q(_) => Kind::Q,
            LinObj::G(_) => Kind::G,
        }
    }

    pub fn zero(kind: Kind) -> LinObj {
        match kind {
            Kind::Z => LinObj::Z(ZPres::free(0)),
            Kind::Q => LinObj::Q(0),
            Kind::G => LinObj::G(Vec::new()),
        }
    }

    /// Number of generators (columns of a map out of it).
    pub fn size(&self) -> usize {
        match self {
            LinObj::Z(p) => p.gens,
            LinObj::Q(n) => *n,
            LinObj::G(s) => s.len(),
        }
    }

    pub fn direct_sum(kind: Kind, parts: &[LinObj]) -> LinObj {
        match kind {
            Kind::Z => {
                let mut acc = ZPres::free(0);
                for p in parts {
                    let LinObj::Z(p) = p else { panic!("mixed kinds in direct sum") };
                    acc = acc.direct_sum(p);
                }
                LinObj::Z(acc)
            }
            Kind::Q => LinObj::Q(parts.iter().map(LinObj::size).sum()),
            Kind::G => LinObj::G(
                parts
                    .iter()
                    .flat_map(|p| match p {
                        LinObj::G(s) => s.clone(),
                        _ => panic!("mixed kinds in direct sum"),
                    })
                    .collect(),
            ),
        }
    }
}

/// A matrix over the integers (ZConst) or rationals (FinDimQ, graded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mat {
    Z(ZMat),
    Q(QMat),
}

impl Mat {
    pub fn zeros(kind: Kind, rows: usize, cols: usize) -> Mat {
        match kind {
            Kind::Z => Mat::Z(ZMat::zeros(rows, cols)),
            _ => Mat::Q(QMat::zeros(rows, cols)),
        }
    }

    pub fn identity(kind: Kind, n: usize) -> Mat {
        match kind {
            Kind::Z => Mat::Z(ZMat::identity(n)),
            _ => Mat::Q(QMat::identity(n)),
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Mat::Z(m) => m.rows(),
            Mat::Q(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Mat::Z(m) => m.cols(),
            Mat::Q(m) => m.cols(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Mat::Z(m) => m.is_zero(),
            Mat::Q(m) => m.is_zero(),
        }
    }

    pub fn z(&self) -> &ZMat {
        match self {
            Mat::Z(m) => m,
            Mat::Q(_) => panic!("expected an integer matrix"),
        }
    }

    pub fn q(&self) -> &QMat {
        match self {
            Mat::Q(m) => m,
            Mat::Z(_) => panic!("expected a rational matrix"),
        }
    }

    pub fn to_q(&self) -> QMat {
        match self {
            Mat::Q(m) => m.clone(),
            Mat::Z(m) => QMat::from_rows(
                m.to_rows().into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect(),
                m.cols(),
            ),
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.mul(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.mul(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.add(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.add(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        match self {
            Mat::Z(a) => Mat::Z(a.neg()),
            Mat::Q(a) => Mat::Q(a.scale(&-Rat::one())),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Mat {
        match self {
            Mat::Z(a) => Mat::Z(a.scale(&Int::from(c))),
            Mat::Q(a) => Mat::Q(a.scale(&Rat::from_integer(Int::from(c)))),
        }
    }

    pub fn add_block(&mut self, r: usize, c: usize, block: &Mat) {
        match (self, block) {
            (Mat::Z(a), Mat::Z(b)) => a.add_block(r, c, b),
            (Mat::Q(a), Mat::Q(b)) => a.add_block(r, c, b),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn hcat(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.hcat(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.hcat(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn vcat(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.vcat(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.vcat(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn dsum(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.dsum(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.dsum(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        match (self, other) {
            (Mat::Z(a), Mat::Z(b)) => Mat::Z(a.kron(b)),
            (Mat::Q(a), Mat::Q(b)) => Mat::Q(a.kron(b)),
            _ => panic!("mixed matrix kinds"),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        match self {
            Mat::Z(a) => Mat::Z(a.select_rows(rows)),
            Mat::Q(a) => Mat::Q(a.select_rows(rows)),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        match self {
            Mat::Z(a) => Mat::Z(a.select_cols(cols)),
            Mat::Q(a) => Mat::Q(a.select_cols(cols)),
        }
    }

    pub fn transpose(&self) -> Mat {
        match self {
            Mat::Z(a) => Mat::Z(a.transpose()),
            Mat::Q(a) => Mat::Q(a.transpose()),
        }
    }
}

/// Cohomology invariants of a module or of one cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Invariants {
    /// `Z^rank ⊕ ⊕ Z/t_i`, torsion factors `t_1 | t_2 | ...` all `> 1`.
    Z { rank: usize, torsion: Vec<String> },
    Q { dim: usize },
    /// Nonzero graded pieces inside the window, by multidegree.
    G { window: Window, pieces: Vec<(Vec<(String, i64)>, usize)> },
}

impl Invariants {
    pub fn is_zero(&self) -> bool {
        match self {
            Invariants::Z { rank, torsion } => *rank == 0 && torsion.is_empty(),
            Invariants::Q { dim } => *dim == 0,
            Invariants::G { pieces, .. } => pieces.is_empty(),
        }
    }

    /// Graded piece in the given degree (zero if absent).
    pub fn piece(&self, d: &[(&str, i64)]) -> usize {
        let Invariants::G { pieces, .. } = self else { return 0 };
        let mut key: Vec<(String, i64)> = d.iter().filter(|(_, e)| *e != 0).map(|(k, e)| (k.to_string(), *e)).collect();
        key.sort();
        pieces
            .iter()
            .find(|(deg, _)| {
                let mut nz: Vec<(String, i64)> = deg.iter().filter(|(_, e)| *e != 0).cloned().collect();
                nz.sort();
                nz == key
            })
            .map(|(_, n)| *n)
            .unwrap_or(0)
    }

    /// Total dimension over the window (graded) or the dimension/rank.
    pub fn total(&self) -> usize {
        match self {
            Invariants::Z { rank, .. } => *rank,
            Invariants::Q { dim } => *dim,
            Invariants::G { pieces, .. } => pieces.iter().map(|(_, n)| n).sum(),
        }
    }
}

impl std::fmt::Display for Invariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Invariants::Z { rank, torsion } => {
                let mut parts = Vec::new();
                match *rank {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    r => parts.push(format!("Z^{}", r)),
                }
                for t in torsion {
                    parts.push(format!("Z/{}", t));
                }
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join(" + "))
                }
            }
            Invariants::Q { dim } => match dim {
                0 => f.write_str("0"),
                1 => f.write_str("Q"),
                d => write!(f, "Q^{}", d),
            },
            Invariants::G { window, pieces } => {
                if pieces.is_empty() {
                    return write!(f, "0 on window {}", window);
                }
                let parts: Vec<String> = pieces
                    .iter()
                    .map(|(d, n)| {
                        let deg: Vec<String> = d.iter().map(|(a, e)| format!("{}={}", a, e)).collect();
                        format!("k^{}({})", n, deg.join(","))
                    })
                    .collect();
                write!(f, "{} on window {}", parts.join(" + "), window)
            }
        }
    }
}

/// Aligned view of graded summands for degreewise work.
#[derive(Clone, Debug)]
pub struct Frame {
    pub axes: Vec<String>,
}

type Enc = (Vec<Option<Axis>>, Vec<i64>);

impl Frame {
    pub fn of<'a>(summands: impl IntoIterator<Item = &'a Summand>) -> Frame {
        let mut axes = BTreeSet::new();
        for s in summands {
            for a in s.ring.axis_names() {
                axes.insert(a.to_string());
            }
            for a in s.shift.keys() {
                axes.insert(a.clone());
            }
        }
        Frame { axes: axes.into_iter().collect() }
    }

    fn encode(&self, s: &Summand) -> Enc {
        let c = self.axes.iter().map(|a| s.ring.axis(a)).collect();
        let sh = self.axes.iter().map(|a| s.shift.get(a).copied().unwrap_or(0)).collect();
        (c, sh)
    }

    /// All multidegrees in the window, ordered by total size then lexicographically.
    pub fn degrees(&self, w: &Window) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in &self.axes {
            let mut next = Vec::new();
            for d in &out {
                for e in w.lo..=w.hi {
                    let mut d2 = d.clone();
                    d2.push(e);
                    next.push(d2);
                }
            }
            out = next;
        }
        out.sort_by_key(|d| (d.iter().map(|e| e.abs()).sum::<i64>(), d.clone()));
        out
    }

    pub fn label(&self, d: &[i64]) -> Vec<(String, i64)> {
        self.axes.iter().cloned().zip(d.iter().copied()).collect()
    }
}

fn active(enc: &[Enc], d: &[i64]) -> Vec<usize> {
    enc.iter()
        .enumerate()
        .filter(|(_, (c, sh))| c.iter().zip(sh).zip(d).all(|((c, s), e)| axis_contains(*c, s + e)))
        .map(|(i, _)| i)
        .collect()
}

/// Degree-`d` pieces of a family of graded objects: the active summand indices of each.
pub struct Slicer {
    pub frame: Frame,
    enc: Vec<Vec<Enc>>,
}

impl Slicer {
    pub fn new(objs: &[&[Summand]]) -> Slicer {
        let frame = Frame::of(objs.iter().flat_map(|o| o.iter()));
        let enc = objs.iter().map(|o| o.iter().map(|s| frame.encode(s)).collect()).collect();
        Slicer { frame, enc }
    }

    pub fn active(&self, obj: usize, d: &[i64]) -> Vec<usize> {
        active(&self.enc[obj], d)
    }
}

/// Cohomology of a complex at one spot, with bases for transporting classes.
#[derive(Clone, Debug)]
pub enum Homology {
    /// `basis` spans the cycle lattice; `pres` presents the quotient on those generators.
    Z { basis: ZMat, pres: ZPres },
    /// `cycles` spans the cycles; `quot` maps cycle coordinates onto class coordinates.
    Q { cycles: QMat, quot: Quotient },
}

impl Homology {
    pub fn obj(&self) -> LinObj {
        match self {
            Homology::Z { pres, .. } => LinObj::Z(pres.clone()),
            Homology::Q { quot, .. } => LinObj::Q(quot.dim()),
        }
    }

    /// Representative cocycles, one column per generator of the cohomology object.
    pub fn reps(&self) -> Mat {
        match self {
            Homology::Z { basis, .. } => Mat::Z(basis.clone()),
            Homology::Q { cycles, quot } => Mat::Q(cycles.mul(&quot.s)),
        }
    }

    /// Class coordinates of the given cocycles (columns).
    pub fn classes(&self, x: &Mat) -> Mat {
        match self {
            Homology::Z { basis, .. } => {
                Mat::Z(zmat::solve(basis, x.z()).expect("column is not a cocycle"))
            }
            Homology::Q { cycles, quot } => {
                let c = cycles.solve(x.q()).expect("column is not a cocycle");
                Mat::Q(quot.p.mul(&c))
            }
        }
    }

    pub fn invariants(&self) -> Invariants {
        match self {
            Homology::Z { pres, .. } => pres.invariants(),
            Homology::Q { quot, .. } => Invariants::Q { dim: quot.dim() },
        }
    }
}

/// Cochain complex `T_0 -> T_1 -> ...` with `diffs[n]: T_n -> T_{n+1}`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub kind: Kind,
    pub terms: Vec<LinObj>,
    pub diffs: Vec<Mat>,
}

impl Complex {
    pub fn new(kind: Kind, terms: Vec<LinObj>, diffs: Vec<Mat>) -> Complex {
        assert_eq!(diffs.len() + 1, terms.len().max(1));
        Complex { kind, terms, diffs }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d_{n+1} d_n = 0` exactly, and over ZConst each `d_n` is well defined on presentations.
    pub fn check(&self) -> bool {
        for n in 0..self.diffs.len() {
            let d = &self.diffs[n];
            if d.cols() != self.terms[n].size() || d.rows() != self.terms[n + 1].size() {
                return false;
            }
            if n + 1 < self.diffs.len() && !self.diffs[n + 1].mul(d).is_zero() {
                return false;
            }
            if let (LinObj::Z(a), LinObj::Z(b)) = (&self.terms[n], &self.terms[n + 1]) {
                if !b.maps_well(d.z(), a) {
                    return false;
                }
            }
        }
        true
    }

    fn diff_into(&self, n: usize) -> Option<&Mat> {
        if n == 0 {
            None
        } else {
            self.diffs.get(n - 1)
        }
    }

    /// Cohomology at spot `n` for ZConst/FinDimQ complexes.
    pub fn homology(&self, n: usize) -> Homology {
        if n >= self.terms.len() {
            return match self.kind {
                Kind::Z => Homology::Z { basis: ZMat::zeros(0, 0), pres: ZPres::free(0) },
                _ => Homology::Q { cycles: QMat::zeros(0, 0), quot: Quotient::new(0, &QMat::zeros(0, 0)) },
            };
        }
        let g = self.terms[n].size();
        match self.kind {
            Kind::Z => {
                let LinObj::Z(t) = &self.terms[n] else { unreachable!() };
                let basis = match (self.diffs.get(n), self.terms.get(n + 1)) {
                    (Some(d), Some(LinObj::Z(next))) => {
                        let k = zmat::kernel_basis(&d.z().hcat(&next.rels));
                        let top: Vec<usize> = (0..g).collect();
                        zmat::column_basis(&k.select_rows(&top))
                    }
                    _ => ZMat::identity(g),
                };
                let mut bound = t.rels.clone();
                if let Some(d) = self.diff_into(n) {
                    bound = bound.hcat(d.z());
                }
                let rels = zmat::solve(&basis, &bound).expect("boundaries lie in the cycle lattice");
                Homology::Z { pres: ZPres::new(basis.cols(), rels), basis }
            }
            Kind::Q => {
                let cycles = match self.diffs.get(n) {
                    Some(d) => d.q().nullspace(),
                    None => QMat::identity(g),
                };
                let w = match self.diff_into(n) {
                    Some(d) => cycles.solve(d.q()).expect("boundaries are cycles"),
                    None => QMat::zeros(cycles.cols(), 0),
                };
                let quot = Quotient::new(cycles.cols(), &w);
                Homology::Q { cycles, quot }
            }
            Kind::G => panic!("graded complexes are handled degreewise"),
        }
    }

    /// The degree-`d` slice of a graded complex, as a rational complex.
    pub fn slice(&self, slicer: &Slicer, d: &[i64]) -> Complex {
        let act: Vec<Vec<usize>> = (0..self.terms.len()).map(|n| slicer.active(n, d)).collect();
        let terms = act.iter().map(|a| LinObj::Q(a.len())).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(n, m)| Mat::Q(m.q().submatrix(&act[n + 1], &act[n])))
            .collect();
        Complex { kind: Kind::Q, terms, diffs }
    }

    pub fn slicer(&self) -> Slicer {
        let objs: Vec<&[Summand]> = self
            .terms
            .iter()
            .map(|t| match t {
                LinObj::G(s) => s.as_slice(),
                _ => panic!("slicer on a non-graded complex"),
            })
            .collect();
        Slicer::new(&objs)
    }

    /// Cohomology invariants at spot `n`. Graded complexes need a window.
    pub fn invariants(&self, n: usize, window: Option<&Window>) -> Result<Invariants> {
        match self.kind {
            Kind::Z | Kind::Q => Ok(self.homology(n).invariants()),
            Kind::G => {
                let w = window.ok_or_else(|| Error::WindowRequired("graded cohomology".into()))?;
                if n >= self.terms.len() {
                    return Ok(Invariants::G { window: *w, pieces: Vec::new() });
                }
                let sl = self.slicer();
                let mut pieces = Vec::new();
                for d in sl.frame.degrees(w) {
                    let dim = q_dim(&self.slice(&sl, &d), n);
                    if dim > 0 {
                        pieces.push((sl.frame.label(&d), dim));
                    }
                }
                Ok(Invariants::G { window: *w, pieces })
            }
        }
    }
}

fn q_dim(c: &Complex, n: usize) -> usize {
    let g = c.terms[n].size();
    let out = c.diffs.get(n).map(|d| d.q().rank()).unwrap_or(0);
    let inc = if n == 0 { 0 } else { c.diffs[n - 1].q().rank() };
    g - out - inc
}

/// Whether a chain map `f` (`f[n]: A_n -> B_n`) induces an isomorphism on `H^n`.
pub fn induced_iso(a: &Complex, b: &Complex, f: &[Mat], n: usize, window: Option<&Window>) -> Result<Check> {
    match a.kind {
        Kind::Z => {
            let (ha, hb) = (a.homology(n), b.homology(n));
            let m = induced_map(&ha, &hb, f.get(n));
            let (Homology::Z { pres: pa, .. }, Homology::Z { pres: pb, .. }) = (&ha, &hb) else { unreachable!() };
            Ok(if crate::coeff::zconst::is_iso(m.z(), pa, pb) { Check::Yes } else { Check::No(None) })
        }
        Kind::Q => Ok(if q_iso(a, b, f.get(n), n) { Check::Yes } else { Check::No(None) }),
        Kind::G => {
            let w = window.ok_or_else(|| Error::WindowRequired("graded comparison".into()))?;
            let objs: Vec<&[Summand]> = a
                .terms
                .iter()
                .chain(b.terms.iter())
                .map(|t| match t {
                    LinObj::G(s) => s.as_slice(),
                    _ => panic!("mixed complex kinds"),
                })
                .collect();
            let sl = Slicer::new(&objs);
            let off = a.terms.len();
            let sa = SlicerView { sl: &sl, off: 0 };
            let sb = SlicerView { sl: &sl, off };
            for d in sl.frame.degrees(w) {
                let ca = sa.slice(a, &d);
                let cb = sb.slice(b, &d);
                let fm = if n < a.terms.len() && n < b.terms.len() {
                    let ra = sl.active(n, &d);
                    let rb = sl.active(off + n, &d);
                    f.get(n).map(|m| Mat::Q(m.q().submatrix(&rb, &ra)))
                } else {
                    None
                };
                if !q_iso(&ca, &cb, fm.as_ref(), n) {
                    return Ok(Check::No(Some(sl.frame.label(&d))));
                }
            }
            Ok(Check::WindowYes(*w))
        }
    }
}

struct SlicerView<'a> {
    sl: &'a Slicer,
    off: usize,
}

impl SlicerView<'_> {
    fn slice(&self, c: &Complex, d: &[i64]) -> Complex {
        let act: Vec<Vec<usize>> = (0..c.terms.len()).map(|n| self.sl.active(self.off + n, d)).collect();
        let terms = act.iter().map(|a| LinObj::Q(a.len())).collect();
        let diffs =
            c.diffs.iter().enumerate().map(|(n, m)| Mat::Q(m.q().submatrix(&act[n + 1], &act[n]))).collect();
        Complex { kind: Kind::Q, terms, diffs }
    }
}

/// The map on cohomology induced by `f` (a zero map when `f` is absent).
pub fn induced_map(ha: &Homology, hb: &Homology, f: Option<&Mat>) -> Mat {
    let ga = ha.obj().size();
    let gb = hb.obj().size();
    match f {
        None => Mat::zeros(if matches!(ha, Homology::Z { .. }) { Kind::Z } else { Kind::Q }, gb, ga),
        Some(f) => {
            if ga == 0 || gb == 0 {
                return Mat::zeros(if matches!(ha, Homology::Z { .. }) { Kind::Z } else { Kind::Q }, gb, ga);
            }
            hb.classes(&f.mul(&ha.reps()))
        }
    }
}

/// Rank-only isomorphism test over the rationals.
fn q_iso(a: &Complex, b: &Complex, f: Option<&Mat>, n: usize) -> bool {
    let za = cycles_q(a, n);
    let zb = cycles_q(b, n);
    let ba = boundaries_q(a, n);
    let bb = boundaries_q(b, n);
    let dim_a = za.cols() - ba.cols();
    let dim_b = zb.cols() - bb.cols();
    if dim_a != dim_b {
        return false;
    }
    if dim_a == 0 {
        return true;
    }
    let Some(f) = f else { return false };
    let fz = f.q().mul(&za);
    // surjective: f(Z_A) + B_B = Z_B
    let span = fz.hcat(&bb);
    if span.rank() != zb.cols() {
        return false;
    }
    // injective: preimage of B_B inside Z_A is exactly B_A
    let pre = fz.hcat(&bb.scale(&-Rat::one())).nullspace();
    pre.cols() == ba.cols()
}

fn cycles_q(c: &Complex, n: usize) -> QMat {
    if n >= c.terms.len() {
        return QMat::zeros(0, 0);
    }
    match c.diffs.get(n) {
        Some(d) => d.q().nullspace(),
        None => QMat::identity(c.terms[n].size()),
    }
}

fn boundaries_q(c: &Complex, n: usize) -> QMat {
    if n >= c.terms.len() {
        return QMat::zeros(0, 0);
    }
    if n == 0 {
        return QMat::zeros(c.terms[0].size(), 0);
    }
    c.diffs[n - 1].q().column_space()
}

/// `Z^r ⊕ ⊕ Z/t` invariants from a relation matrix on `gens` generators.
pub fn z_invariants(gens: usize, rels: &ZMat) -> Invariants {
    let diag = zmat::invariant_factors(rels);
    let torsion = diag.iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect();
    Invariants::Z { rank: gens - diag.len(), torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmat::ZMat;

    fn circle() -> Complex {
        // two vertices, two edges between them
        let d = ZMat::from_i64(&[&[-1, 1], &[-1, 1]]);
        Complex::new(Kind::Z, vec![LinObj::Z(ZPres::free(2)), LinObj::Z(ZPres::free(2))], vec![Mat::Z(d)])
    }

    #[test]
    fn circle_cohomology() {
        let c = circle();
        assert!(c.check());
        assert_eq!(c.invariants(0, None).unwrap(), Invariants::Z { rank: 1, torsion: vec![] });
        assert_eq!(c.invariants(1, None).unwrap(), Invariants::Z { rank: 1, torsion: vec![] });
    }

    #[test]
    fn torsion_in_h1() {
        let d = ZMat::from_i64(&[&[2]]);
        let c = Complex::new(Kind::Z, vec![LinObj::Z(ZPres::free(1)), LinObj::Z(ZPres::free(1))], vec![Mat::Z(d)]);
        assert_eq!(c.invariants(0, None).unwrap(), Invariants::Z { rank: 0, torsion: vec![] });
        assert_eq!(c.invariants(1, None).unwrap(), Invariants::Z { rank: 0, torsion: vec!["2".into()] });
    }

    #[test]
    fn identity_chain_map_is_iso() {
        let c = circle();
        let f = vec![Mat::identity(Kind::Z, 2), Mat::identity(Kind::Z, 2)];
        assert_eq!(induced_iso(&c, &c, &f, 1, None).unwrap(), Check::Yes);
        let g = vec![Mat::identity(Kind::Z, 2), Mat::Z(ZMat::scalar(2, &Int::from(2)))];
        assert_eq!(induced_iso(&c, &c, &g, 1, None).unwrap(), Check::No(None));
    }

    #[test]
    fn rational_homology_and_iso() {
        let d = QMat::from_i64(&[&[1, -1]]);
        let c = Complex::new(Kind::Q, vec![LinObj::Q(2), LinObj::Q(1)], vec![Mat::Q(d)]);
        assert_eq!(c.invariants(0, None).unwrap(), Invariants::Q { dim: 1 });
        assert_eq!(c.invariants(1, None).unwrap(), Invariants::Q { dim: 0 });
        let swap = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        let f = vec![Mat::Q(swap), Mat::Q(QMat::from_i64(&[&[-1]]))];
        assert_eq!(induced_iso(&c, &c, &f, 0, None).unwrap(), Check::Yes);
    }

    #[test]
    fn degree_order_puts_small_first() {
        let fr = Frame { axes: vec!["x".into(), "y".into()] };
        let ds = fr.degrees(&Window::radius(1));
        assert_eq!(ds[0], vec![0, 0]);
        assert_eq!(ds[1], vec![-1, 0]);
        assert_eq!(ds.len(), 9);
    }
}
