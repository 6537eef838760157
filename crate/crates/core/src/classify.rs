//! Predicates on finite spaces and their morphisms: quasi-coherent, schematic
//! and semi-separated spaces, affine certification, schematic, locally
//! acyclic and affine morphisms, qc-isomorphisms, Stein factorization and
//! schematic fibered products.

use std::sync::Arc;

use serde::Serialize;

use crate::coeff::{tensor_rings, Module, Ring, RingHom};
use crate::cohomology::{flat_base_change_comparison, is_acyclic, standard_complex_indexed, window_for};
use crate::error::{Error, Result};
use crate::homotopy::core;
use crate::lin::{induced_iso, Complex, Mat};
use crate::sheafmod::{hom_matrix, SheafModule};
use crate::space::{fibered_product, FiberedProduct, FiniteSpace, Morphism, RingedSpace, SectionRing};
use crate::verdict::{Check, Value, Verdict, Window, Witness};

const QC_SPACE: &str = "O_pq ⊗ O_p' -> O_p'q is an isomorphism for every covering p < p'";
const SCHEMATIC: &str = "H^i(U_pq, O) ⊗ O_p' -> H^i(U_p'q, O) is an isomorphism for every covering p < p' and every i";
const IRREDUCIBLE: &str = "every connected component is irreducible";
const SEMISEPARATED: &str = "quasi-coherent space with H^i(U_pq, O) = 0 for i > 0";
const MORPHISM: &str = "H^i(U_xy, O) base changes to H^i(U_x'y', O) along every covering step";
const LOCALLY_ACYCLIC: &str = "schematic morphism with every U_xy acyclic";

fn ids(x: &RingedSpace, pts: &[usize]) -> Vec<String> {
    pts.iter().map(|&p| x.id(p).to_string()).collect()
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|p| b.contains(p)).collect()
}

fn flatness_unknown(x: &RingedSpace, a: usize, b: usize) -> Verdict {
    Verdict::unknown("flat base change", format!("restriction `{}` <= `{}` is not certified flat", x.id(a), x.id(b)))
}

/// Base-change comparisons of `H^i(U_p ∩ U_q)` along every covering `p < p'`.
fn diagonal_comparisons(x: &RingedSpace, window: Option<&Window>, max_degree: Option<usize>, rule: &str) -> Result<Verdict> {
    let w = window_for(x, window)?;
    let o = SheafModule::structure(x);
    let po = x.poset();
    let hasse = po.hasse();
    let mut used = None;
    for p in 0..x.len() {
        let up = po.min_open(p).points().to_vec();
        for q in 0..x.len() {
            let u = meet(&up, po.min_open(q).points());
            for &(a, p2) in hasse.iter().filter(|e| e.0 == p) {
                let base = x.res(a, p2);
                if base.is_flat() != Value::Yes {
                    return Ok(flatness_unknown(x, a, p2));
                }
                let v = meet(po.min_open(p2).points(), po.min_open(q).points());
                let cmp = flat_base_change_comparison(
                    &o,
                    &u,
                    &v,
                    base,
                    &|z| Ok(x.res(p, z).clone()),
                    &|z| Ok(x.res(p2, z).clone()),
                    w.as_ref(),
                    max_degree,
                )?;
                if let Some((i, d)) = cmp.failure {
                    let wit = Witness::points(&ids(x, &[p, q]))
                        .with_degree(i)
                        .with_graded(d)
                        .with_detail(format!("base change along `{}` <= `{}` is not an isomorphism", x.id(p), x.id(p2)));
                    return Ok(Verdict::no(rule, wit));
                }
                used = used.or(cmp.window);
            }
        }
    }
    Ok(Verdict::positive(rule, used.or(w)))
}

/// `δ_*O` is quasi-coherent.
pub fn is_quasicoherent_space(x: &FiniteSpace, window: Option<&Window>) -> Result<Verdict> {
    diagonal_comparisons(x, window, Some(0), QC_SPACE)
}

/// Whether every connected component has a point whose closure is the component.
pub fn components_irreducible(x: &RingedSpace) -> bool {
    let po = x.poset();
    po.components().iter().all(|c| c.iter().any(|&g| c.iter().all(|&q| po.leq(q, g))))
}

/// All `R^i δ_*O` are quasi-coherent.
///
/// On ZConst spaces the general test is cross-checked against irreducibility
/// of the connected components; a disagreement is reported as Unknown.
pub fn is_schematic(x: &FiniteSpace, window: Option<&Window>) -> Result<Verdict> {
    let general = diagonal_comparisons(x, window, None, SCHEMATIC)?;
    if x.backend() != crate::coeff::Backend::ZConst || general.value == Value::Unknown {
        return Ok(general);
    }
    let shortcut = components_irreducible(x);
    match (shortcut, general.holds()) {
        (true, true) => Ok(Verdict::yes(IRREDUCIBLE)),
        (false, false) => {
            let mut v = general;
            v.rule = format!("{}; {}", IRREDUCIBLE, SCHEMATIC);
            Ok(v)
        }
        _ => Ok(Verdict::unknown(
            IRREDUCIBLE,
            format!("irreducibility says {} but the base-change test says {}", shortcut, general.value),
        )),
    }
}

/// Quasi-coherent space with acyclic `U_p ∩ U_q` for all pairs.
pub fn is_semiseparated(x: &FiniteSpace, window: Option<&Window>) -> Result<Verdict> {
    let qc = is_quasicoherent_space(x, window)?;
    if !qc.holds() {
        return Ok(qc);
    }
    let po = x.poset();
    let mut used = qc.window;
    for p in 0..x.len() {
        for q in p + 1..x.len() {
            let u = meet(po.min_open(p).points(), po.min_open(q).points());
            let v = is_acyclic(x, &u, window)?;
            if v.is_no() {
                let src = v.witness.unwrap_or_default();
                let mut wit = Witness::points(&ids(x, &[p, q])).with_graded(src.graded_degree).with_detail(src.detail);
                wit.cohomological_degree = src.cohomological_degree;
                return Ok(Verdict::no(SEMISEPARATED, wit));
            }
            used = used.or(v.window);
        }
    }
    Ok(Verdict::positive(SEMISEPARATED, used))
}

/// Affine certification of the whole space.
pub fn is_affine_certified(x: &RingedSpace, window: Option<&Window>) -> Result<Verdict> {
    is_affine_certified_subset(x, &(0..x.len()).collect::<Vec<_>>(), window)
}

/// Affine certification of a subspace, by a cascade of sufficient and
/// necessary rules. Unknown when no rule applies.
pub fn is_affine_certified_subset(x: &RingedSpace, u: &[usize], window: Option<&Window>) -> Result<Verdict> {
    let mut u = u.to_vec();
    u.sort_unstable();
    u.dedup();
    if u.is_empty() {
        return Ok(Verdict::yes("the empty space is affine"));
    }
    let (sub, _) = x.subspace(&u);
    if sub.poset().minimum().is_some() {
        return Ok(Verdict::yes("a space with a minimum is affine"));
    }
    if core(&sub)?.core.len() == 1 {
        return Ok(Verdict::yes("homotopy equivalent to a punctual space"));
    }
    let ac = is_acyclic(x, &u, window)?;
    if ac.is_no() {
        return Ok(Verdict::no("affine spaces are acyclic", ac.witness.unwrap_or_default()));
    }
    let po = x.poset();
    let open = u.iter().all(|&p| po.min_open(p).points().iter().all(|q| u.binary_search(q).is_ok()));
    if open {
        for p in 0..x.len() {
            let up = po.min_open(p).points().to_vec();
            if !u.iter().all(|q| up.contains(q)) {
                continue;
            }
            let Ok(fs) = x.subspace(&up).0.as_finite_space() else { continue };
            let s = is_schematic(&fs, window)?;
            if s.holds() {
                let w = ac.window.or(s.window);
                return Ok(Verdict::positive(
                    format!("acyclic open subset of the affine schematic space U_{}", x.id(p)),
                    w,
                ));
            }
        }
    }
    Ok(Verdict::unknown("affine certification", "no certification rule applies"))
}

/// `U_x ∩ f^{-1}(U_y)`.
pub fn u_xy(f: &Morphism, x: usize, y: usize) -> Vec<usize> {
    let (sx, ty) = (f.source().poset(), f.target().poset());
    f.source().poset().min_open(x).points().iter().copied().filter(|&z| sx.leq(x, z) && ty.leq(y, f.apply(z))).collect()
}

/// `RΓ_*O_X` is quasi-coherent, in the pointwise form over the covering
/// steps of `X × Y`.
pub fn is_schematic_morphism(f: &Morphism, window: Option<&Window>) -> Result<Verdict> {
    let (x, y) = (f.source(), f.target());
    let w = window_for(x, window)?;
    let o = SheafModule::structure(x);
    let (hx, hy) = (x.poset().hasse(), y.poset().hasse());
    let mut used = None;
    for a in 0..x.len() {
        for b in 0..y.len() {
            let u = u_xy(f, a, b);
            for &(_, a2) in hx.iter().filter(|e| e.0 == a) {
                let base = x.res(a, a2);
                if base.is_flat() != Value::Yes {
                    return Ok(flatness_unknown(x, a, a2));
                }
                let v = u_xy(f, a2, b);
                let cmp = flat_base_change_comparison(
                    &o,
                    &u,
                    &v,
                    base,
                    &|z| Ok(x.res(a, z).clone()),
                    &|z| Ok(x.res(a2, z).clone()),
                    w.as_ref(),
                    None,
                )?;
                if let Some((i, d)) = cmp.failure {
                    return Ok(morphism_failure(f, a, b, (a2, b), i, d));
                }
                used = used.or(cmp.window);
            }
            for &(_, b2) in hy.iter().filter(|e| e.0 == b) {
                let base = y.res(b, b2);
                if base.is_flat() != Value::Yes {
                    return Ok(flatness_unknown(y, b, b2));
                }
                let v = u_xy(f, a, b2);
                let cmp = flat_base_change_comparison(
                    &o,
                    &u,
                    &v,
                    base,
                    &|z| f.co_from(b, z),
                    &|z| f.co_from(b2, z),
                    w.as_ref(),
                    None,
                )?;
                if let Some((i, d)) = cmp.failure {
                    return Ok(morphism_failure(f, a, b, (a, b2), i, d));
                }
                used = used.or(cmp.window);
            }
        }
    }
    Ok(Verdict::positive(MORPHISM, used.or(w)))
}

fn morphism_failure(f: &Morphism, a: usize, b: usize, to: (usize, usize), i: usize, d: Option<Vec<(String, i64)>>) -> Verdict {
    let (x, y) = (f.source(), f.target());
    let wit = Witness::points(&[x.id(a), y.id(b)])
        .with_degree(i)
        .with_graded(d)
        .with_detail(format!("base change to ({}, {}) is not an isomorphism", x.id(to.0), y.id(to.1)));
    Verdict::no(MORPHISM, wit)
}

/// Schematic with every `U_xy` acyclic.
pub fn is_locally_acyclic(f: &Morphism, window: Option<&Window>) -> Result<Verdict> {
    let s = is_schematic_morphism(f, window)?;
    if !s.holds() {
        return Ok(s);
    }
    let (x, y) = (f.source(), f.target());
    let mut used = s.window;
    for a in 0..x.len() {
        for b in 0..y.len() {
            let v = is_acyclic(x, &u_xy(f, a, b), window)?;
            if v.is_no() {
                let src = v.witness.unwrap_or_default();
                let mut wit = Witness::points(&[x.id(a), y.id(b)]).with_graded(src.graded_degree).with_detail(src.detail);
                wit.cohomological_degree = src.cohomological_degree;
                return Ok(Verdict::no(LOCALLY_ACYCLIC, wit));
            }
            used = used.or(v.window);
        }
    }
    Ok(Verdict::positive(LOCALLY_ACYCLIC, used))
}

/// Schematic with every `f^{-1}(U_y)` certified affine.
pub fn is_affine_morphism(f: &Morphism, window: Option<&Window>) -> Result<Verdict> {
    let rule = "schematic morphism with affine preimages of minimal open sets";
    let s = is_schematic_morphism(f, window)?;
    if !s.holds() {
        return Ok(s);
    }
    let y = f.target();
    let mut used = s.window;
    let mut unknown = None;
    for b in 0..y.len() {
        let v = is_affine_certified_subset(f.source(), &f.preimage_of_open(b), window)?;
        match v.value {
            Value::No => {
                let src = v.witness.unwrap_or_default();
                let wit = Witness::points(&[y.id(b)])
                    .with_graded(src.graded_degree)
                    .with_detail(format!("the preimage of U_{} is not affine: {}", y.id(b), src.detail));
                return Ok(Verdict::no(rule, Witness { cohomological_degree: src.cohomological_degree, ..wit }));
            }
            Value::Unknown => {
                unknown.get_or_insert(b);
            }
            _ => used = used.or(v.window),
        }
    }
    if let Some(b) = unknown {
        return Ok(Verdict::unknown(rule, format!("the preimage of U_{} is not certified affine", y.id(b))));
    }
    Ok(Verdict::positive(rule, used))
}

/// Whether `ring -> O(U)`, given by `maps` to the points of `U`, is an
/// isomorphism onto the sections of `O` (degreewise for graded rings).
pub fn unit_iso(x: &RingedSpace, u: &[usize], ring: &Ring, maps: &[RingHom], window: Option<&Window>) -> Result<Check> {
    if u.is_empty() {
        let zero = matches!(ring, Ring::Alg(a) if a.dim() == 0);
        return Ok(if zero { Check::Yes } else { Check::No(None) });
    }
    let o = SheafModule::structure(x);
    let kind = o.kind();
    let (c, idx) = standard_complex_indexed(&o, u);
    let one = Module::free(ring, 1);
    let a = Complex::new(kind, vec![one.underlying()], vec![]);
    let mut f0 = Mat::zeros(kind, idx.width(0), one.size());
    for (&p, h) in u.iter().zip(maps) {
        let (row, _) = idx.block(&[p]).expect("points are chains");
        f0.add_block(row, 0, &hom_matrix(h));
    }
    induced_iso(&a, &c, &[f0], 0, window)
}

/// Affine with `O_y -> (f_*O_X)_y` an isomorphism for every `y`.
pub fn is_qc_isomorphism(f: &Morphism, window: Option<&Window>) -> Result<Verdict> {
    let rule = "affine morphism with f_*O_X = O_Y";
    let a = is_affine_morphism(f, window)?;
    if !a.holds() {
        return Ok(a);
    }
    let (x, y) = (f.source(), f.target());
    let mut used = a.window;
    for b in 0..y.len() {
        let pre = f.preimage_of_open(b);
        let maps = pre.iter().map(|&z| f.co_from(b, z)).collect::<Result<Vec<_>>>()?;
        match unit_iso(x, &pre, y.ring(b), &maps, window)? {
            Check::No(d) => {
                let wit = Witness::points(&[y.id(b)]).with_graded(d).with_detail("O_y -> (f_*O_X)_y is not an isomorphism");
                return Ok(Verdict::no(rule, wit));
            }
            c => used = used.or(c.window()),
        }
    }
    Ok(Verdict::positive(rule, used))
}

/// `f = g ∘ f'` with `Y' = (Y, f_*O_X)`.
#[derive(Clone, Debug)]
pub struct Stein {
    pub space: RingedSpace,
    pub first: Morphism,
    pub second: Morphism,
    /// `f'_*O_X = O_{Y'}` stalkwise.
    pub pushforward: Check,
    /// Affine certification of the second leg.
    pub second_affine: Verdict,
}

pub fn stein_factorization(f: &Morphism, window: Option<&Window>) -> Result<Stein> {
    let s = is_schematic_morphism(f, window)?;
    if s.is_no() {
        return Err(Error::Precondition(format!("Stein factorization of a morphism that is not schematic: {}", s)));
    }
    let (x, y) = (f.source(), f.target());
    let secs: Vec<SectionRing> = (0..y.len()).map(|b| x.section_ring(&f.preimage_of_open(b))).collect::<Result<_>>()?;
    let mut given = std::collections::BTreeMap::new();
    for (a, b) in y.poset().hasse() {
        let phis: Vec<RingHom> = secs[b].points.iter().map(|&z| secs[a].map_to(z).clone()).collect();
        given.insert((a, b), secs[b].factor(&secs[a].ring, &phis)?);
    }
    let space = RingedSpace::new(y.poset().clone(), y.backend(), secs.iter().map(|s| s.ring.clone()).collect(), given)?;
    let sp = Arc::new(space.clone());
    let co1 = (0..x.len()).map(|z| secs[f.apply(z)].map_to(z).clone()).collect();
    let first = Morphism::from_arcs(f.source_arc().clone(), sp.clone(), f.map().to_vec(), co1)?;
    let co2 = (0..y.len())
        .map(|b| {
            let phis = secs[b].points.iter().map(|&z| f.co_from(b, z)).collect::<Result<Vec<_>>>()?;
            secs[b].factor(y.ring(b), &phis)
        })
        .collect::<Result<Vec<_>>>()?;
    let second = Morphism::from_arcs(sp, f.target_arc().clone(), (0..y.len()).collect(), co2)?;
    let mut pushforward = Check::Yes;
    for (b, sec) in secs.iter().enumerate() {
        let pre = first.preimage_of_open(b);
        let maps = pre.iter().map(|&z| first.co_from(b, z)).collect::<Result<Vec<_>>>()?;
        let c = unit_iso(x, &pre, &sec.ring, &maps, window)?;
        if !c.holds() {
            pushforward = c;
            break;
        }
        if let Some(w) = c.window() {
            pushforward = Check::WindowYes(w);
        }
    }
    let second_affine = is_affine_morphism(&second, window)?;
    Ok(Stein { space, first, second, pushforward, second_affine })
}

/// Certificates for `X ×_S Y`.
#[derive(Clone, Debug)]
pub struct SchematicProduct {
    pub product: FiberedProduct,
    /// Flat restrictions.
    pub finite: Verdict,
    pub schematic: Verdict,
    /// `h_*O = f_*O ⊗ g_*O` stalkwise, checked when both legs are certified affine.
    pub pushforward: Option<Check>,
}

#[derive(Serialize)]
struct Certificates<'a> {
    finite: &'a Verdict,
    schematic: &'a Verdict,
}

impl SchematicProduct {
    pub fn holds(&self) -> bool {
        self.finite.holds() && self.schematic.holds() && self.pushforward.as_ref().is_none_or(|c| c.holds())
    }

    pub fn certificates_json(&self) -> serde_json::Value {
        serde_json::to_value(Certificates { finite: &self.finite, schematic: &self.schematic }).expect("serializable")
    }
}

pub fn schematic_fibered_product(f: &Morphism, g: &Morphism, window: Option<&Window>) -> Result<SchematicProduct> {
    for (name, m) in [("first", f), ("second", g)] {
        let v = is_schematic_morphism(m, window)?;
        if v.is_no() {
            return Err(Error::Precondition(format!("the {} leg is not schematic: {}", name, v)));
        }
    }
    let product = fibered_product(f, g)?;
    let (finite, schematic) = match product.space.as_finite_space() {
        Ok(fs) => (Verdict::yes("every restriction is flat"), is_schematic(&fs, window)?),
        Err(e) => (
            Verdict::no("every restriction is flat", Witness::default().with_detail(e.to_string())),
            Verdict::unknown(SCHEMATIC, "the fibered product is not a finite space"),
        ),
    };
    let legs_affine = is_affine_morphism(f, window)?.holds() && is_affine_morphism(g, window)?.holds();
    let pushforward = if legs_affine { Some(tensor_of_pushforwards(f, g, &product)?) } else { None };
    Ok(SchematicProduct { product, finite, schematic, pushforward })
}

/// Compares `O(h^{-1} U_s)` with `O(f^{-1} U_s) ⊗_{O_s} O(g^{-1} U_s)` at every `s`.
fn tensor_of_pushforwards(f: &Morphism, g: &Morphism, fp: &FiberedProduct) -> Result<Check> {
    let (x, y, s) = (f.source(), g.source(), f.target());
    let p = &fp.space;
    for b in 0..s.len() {
        let sa = x.section_ring(&f.preimage_of_open(b))?;
        let sb = y.section_ring(&g.preimage_of_open(b))?;
        let ha: Vec<usize> = (0..p.len()).filter(|&z| s.poset().leq(b, f.apply(fp.pairs[z].0))).collect();
        let sc = p.section_ring(&ha)?;
        let fa = sa.factor(s.ring(b), &sa.points.iter().map(|&z| f.co_from(b, z)).collect::<Result<Vec<_>>>()?)?;
        let gb = sb.factor(s.ring(b), &sb.points.iter().map(|&z| g.co_from(b, z)).collect::<Result<Vec<_>>>()?)?;
        let t = tensor_rings(&fa, &gb)?;
        let u1 = sc.factor(
            &sa.ring,
            &sc.points.iter().map(|&z| fp.p1.co(z).after(sa.map_to(fp.pairs[z].0))).collect::<Result<Vec<_>>>()?,
        )?;
        let u2 = sc.factor(
            &sb.ring,
            &sc.points.iter().map(|&z| fp.p2.co(z).after(sb.map_to(fp.pairs[z].1))).collect::<Result<Vec<_>>>()?,
        )?;
        if !t.universal(&u1, &u2)?.is_iso() {
            return Ok(Check::No(None));
        }
    }
    Ok(Check::Yes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Algebra, Backend};
    use crate::coeff::monomial::parse_mono;
    use crate::poset::Preorder;
    use crate::space::punctual;

    fn topo(points: &[&str], rel: &[(&str, &str)]) -> FiniteSpace {
        RingedSpace::topological(Preorder::build(points, rel).unwrap()).as_finite_space().unwrap()
    }

    fn pseudocircle() -> FiniteSpace {
        topo(&["u", "v", "w1", "w2"], &[("u", "w1"), ("u", "w2"), ("v", "w1"), ("v", "w2")])
    }

    fn mono(s: &str) -> Ring {
        Ring::Mono(parse_mono(s).unwrap())
    }

    fn p1() -> FiniteSpace {
        let poset = Preorder::build(&["x1", "x12", "x2"], &[("x1", "x12"), ("x2", "x12")]).unwrap();
        let rings = vec![mono("k[t]"), mono("k[t,t^-1]"), mono("k[t^-1]")];
        RingedSpace::with_canonical_maps(poset, Backend::Graded, rings).unwrap().as_finite_space().unwrap()
    }

    #[test]
    fn pseudocircle_is_not_schematic() {
        let x = pseudocircle();
        let v = is_schematic(&x, None).unwrap();
        assert_eq!(v.value, Value::No);
        assert!(v.witness.is_some());
        assert_eq!(is_quasicoherent_space(&x, None).unwrap().value, Value::No);
        assert_eq!(is_affine_certified(&x, None).unwrap().value, Value::No);
    }

    #[test]
    fn irreducible_topological_space_is_schematic() {
        let x = topo(&["a", "b", "g"], &[("a", "g"), ("b", "g")]);
        assert_eq!(is_schematic(&x, None).unwrap().value, Value::Yes);
    }

    #[test]
    fn p1_classification() {
        let x = p1();
        let w = Window::radius(4);
        assert_eq!(is_schematic(&x, Some(&w)).unwrap().value, Value::WindowYes);
        assert_eq!(is_semiseparated(&x, Some(&w)).unwrap().value, Value::WindowYes);
        assert_eq!(is_affine_certified(&x, Some(&w)).unwrap().value, Value::Unknown);
        assert!(matches!(is_schematic(&x, None), Err(Error::WindowRequired(_))));
    }

    #[test]
    fn identity_and_punctual_targets() {
        let x = p1();
        let w = Window::radius(3);
        let id = Morphism::identity(&x);
        assert!(is_schematic_morphism(&id, Some(&w)).unwrap().holds());
        assert!(is_qc_isomorphism(&id, Some(&w)).unwrap().holds());
        let to_pt = Morphism::structure(&x);
        assert!(is_schematic_morphism(&to_pt, Some(&w)).unwrap().holds());
        assert!(is_locally_acyclic(&to_pt, Some(&w)).unwrap().holds());
    }

    #[test]
    fn stein_of_p1_is_the_field() {
        let x = p1();
        let w = Window::radius(3);
        let st = stein_factorization(&Morphism::structure(&x), Some(&w)).unwrap();
        assert_eq!(st.space.len(), 1);
        assert_eq!(*st.space.ring(0), mono("k"));
        assert!(st.pushforward.holds());
        assert!(st.second_affine.holds());
    }

    #[test]
    fn stein_of_two_points() {
        let poset = Preorder::build(&["a", "b"], &[]).unwrap();
        let rings = vec![Ring::alg(Algebra::field()), Ring::alg(Algebra::dual_numbers())];
        let x = RingedSpace::with_canonical_maps(poset, Backend::FinDimQ, rings).unwrap();
        let st = stein_factorization(&Morphism::structure(&x), None).unwrap();
        assert_eq!(st.space.ring(0).as_alg().unwrap().dim(), 3);
        assert_eq!(st.pushforward, Check::Yes);
    }

    #[test]
    fn punctual_fibered_product() {
        let a = punctual(Ring::alg(Algebra::split(2)));
        let b = punctual(Ring::alg(Algebra::dual_numbers()));
        let r = schematic_fibered_product(&Morphism::structure(&a), &Morphism::structure(&b), None).unwrap();
        assert!(r.holds());
        assert_eq!(r.product.space.ring(0).as_alg().unwrap().dim(), 4);
        assert_eq!(r.pushforward, Some(Check::Yes));
    }
}
