//! Canonical example spaces: punctual spaces, cones, chains, the
//! pseudocircle, and finite models of the projective line, the line with a
//! doubled origin and the plane with a doubled origin.

use std::collections::BTreeMap;

use crate::coeff::monomial::{Degree, Mono, MonoModule};
use crate::coeff::{Backend, Module, Ring, RingHom};
use crate::error::{Error, Result};
use crate::lin::Mat;
use crate::poset::Preorder;
use crate::sheafmod::SheafModule;
use crate::space::{FiniteSpace, Morphism, RingedSpace};
use crate::verdict::Window;

/// Window used for the projective line and its twists.
pub fn twist_window(n: i64) -> Window {
    Window::new(-n.abs() - 2, n.abs() + 2)
}

/// Box used for the plane models.
pub const PLANE_WINDOW: Window = Window { lo: -3, hi: 3 };

/// `(*, A)`.
pub fn punctual(ring: Ring) -> RingedSpace {
    crate::space::punctual(ring)
}

/// `X` with a new minimum `apex`, ring `apex_ring` and restrictions `maps[p]: apex_ring -> O_p`.
pub fn cone(x: &RingedSpace, apex: &str, apex_ring: Ring, maps: Vec<RingHom>) -> Result<RingedSpace> {
    if maps.len() != x.len() {
        return Err(Error::Mismatch("one map from the apex per point is required".into()));
    }
    if x.poset().ids().iter().any(|i| i == apex) {
        return Err(Error::DuplicatePoint(apex.to_string()));
    }
    let mut ids: Vec<String> = x.poset().ids().to_vec();
    ids.push(apex.to_string());
    let mut rel: Vec<(String, String)> = x.poset().hasse().into_iter().map(|(p, q)| (x.id(p).into(), x.id(q).into())).collect();
    rel.extend((0..x.len()).map(|p| (apex.to_string(), x.id(p).to_string())));
    let poset = Preorder::build(&ids, &rel)?;
    let idx = |s: &str| poset.index(s);
    let mut rings = vec![Ring::Z; poset.len()];
    for p in 0..x.len() {
        rings[idx(x.id(p))?] = x.ring(p).clone();
    }
    let a = idx(apex)?;
    rings[a] = apex_ring;
    let mut given = BTreeMap::new();
    for (p, q) in poset.hasse() {
        let h = if p == a { maps[x.index(poset.id(q))?].clone() } else { x.res(x.index(poset.id(p))?, x.index(poset.id(q))?).clone() };
        given.insert((p, q), h);
    }
    let targets = (0..x.len()).map(|p| idx(x.id(p))).collect::<Result<Vec<_>>>()?;
    let c = RingedSpace::new(poset, x.backend(), rings, given)?;
    for (p, h) in maps.iter().enumerate() {
        if c.res(a, targets[p]) != h {
            return Err(Error::NonCommutingSquare(apex.to_string(), x.id(p).to_string()));
        }
    }
    Ok(c)
}

/// The cone with apex ring `Z` over a ZConst space.
pub fn cone_z(x: &RingedSpace) -> Result<RingedSpace> {
    cone(x, "apex", Ring::Z, vec![RingHom::Z; x.len()])
}

/// The chain `c0 < c1 < ... ` with the given rings and consecutive restrictions.
pub fn chain_space(backend: Backend, rings: Vec<Ring>, maps: Vec<RingHom>) -> Result<RingedSpace> {
    if rings.is_empty() || maps.len() + 1 != rings.len() {
        return Err(Error::Mismatch("a chain of n points needs n rings and n - 1 restrictions".into()));
    }
    let width = (rings.len() - 1).to_string().len();
    let ids: Vec<String> = (0..rings.len()).map(|i| format!("c{:0w$}", i, w = width)).collect();
    let rel: Vec<(String, String)> = ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let poset = Preorder::build(&ids, &rel)?;
    let given = (0..maps.len()).map(|i| ((i, i + 1), maps[i].clone())).collect();
    RingedSpace::new(poset, backend, rings, given)
}

/// Topological chain of `n` points.
pub fn chain_z(n: usize) -> Result<RingedSpace> {
    chain_space(Backend::ZConst, vec![Ring::Z; n], vec![RingHom::Z; n.saturating_sub(1)])
}

/// `u, v < w1, w2` with constant `Z`.
pub fn pseudocircle() -> RingedSpace {
    let poset = Preorder::build(&["u", "v", "w1", "w2"], &[("u", "w1"), ("u", "w2"), ("v", "w1"), ("v", "w2")])
        .expect("valid poset");
    RingedSpace::topological(poset)
}

fn mono_space(points: &[&str], rel: &[(&str, &str)], rings: Vec<Mono>) -> FiniteSpace {
    let poset = Preorder::build(points, rel).expect("valid poset");
    let mut by_index = vec![Mono::constants(); points.len()];
    for (id, r) in points.iter().zip(rings) {
        by_index[poset.index(id).expect("known point")] = r;
    }
    RingedSpace::with_canonical_maps(poset, Backend::Graded, by_index.into_iter().map(Ring::Mono).collect())
        .and_then(|x| x.as_finite_space())
        .expect("monomial model is a finite space")
}

/// The projective line in the variable `t`: charts `x1 = k[t]`, `x2 = k[t^-1]`, overlap `x12`.
pub fn p1_model() -> FiniteSpace {
    p1_model_in("t")
}

/// The projective line in a named variable.
pub fn p1_model_in(var: &str) -> FiniteSpace {
    mono_space(
        &["x1", "x2", "x12"],
        &[("x1", "x12"), ("x2", "x12")],
        vec![Mono::polynomial(&[var], &[]), Mono::new([(var, crate::coeff::monomial::Axis::Neg)]), Mono::polynomial(&[], &[var])],
    )
}

/// `O(n)` on the projective line: generator `1` on `x1`, `t^n` on `x2`.
pub fn twist(n: i64) -> SheafModule {
    twist_on(&p1_model(), "t", n)
}

pub fn twist_on(x: &FiniteSpace, var: &str, n: i64) -> SheafModule {
    let stalks = (0..x.len())
        .map(|p| {
            let ring = x.ring(p).as_mono().expect("monomial ring").clone();
            let shift: Degree = if x.id(p) == "x2" { [(var.to_string(), -n)].into_iter().collect() } else { Degree::new() };
            Module::Mono(MonoModule::free(&ring, &[shift]))
        })
        .collect();
    let given = x.poset().hasse().into_iter().map(|e| (e, Mat::identity(crate::lin::Kind::Q, 1))).collect();
    SheafModule::new(x, stalks, given).expect("twist is a valid module")
}

/// Two affine lines glued along `k[x, x^-1]`: `u1, u2 < g`.
pub fn doubled_origin_line() -> FiniteSpace {
    let line = Mono::polynomial(&["x"], &[]);
    mono_space(&["u1", "u2", "g"], &[("u1", "g"), ("u2", "g")], vec![line.clone(), line, Mono::polynomial(&[], &["x"])])
}

/// A finer model of the same line: `u1, u2 < h < g`, with `h` and `g` both `k[x, x^-1]`.
pub fn doubled_origin_line_fine() -> FiniteSpace {
    let line = Mono::polynomial(&["x"], &[]);
    let torus = Mono::polynomial(&[], &["x"]);
    mono_space(&["u1", "u2", "h", "g"], &[("u1", "h"), ("u2", "h"), ("h", "g")], vec![line.clone(), line, torus.clone(), torus])
}

/// The map from the finer line model to the coarser one collapsing `h` onto `g`.
pub fn line_refinement() -> Morphism {
    let (fine, coarse) = (doubled_origin_line_fine(), doubled_origin_line());
    let pairs = [("u1", "u1"), ("u2", "u2"), ("h", "g"), ("g", "g")];
    let map = (0..fine.len())
        .map(|p| {
            let to = pairs.iter().find(|(a, _)| *a == fine.id(p)).expect("every point is mapped").1;
            coarse.index(to).expect("known point")
        })
        .collect();
    Morphism::canonical(&fine, &coarse, map).expect("refinement is a morphism")
}

/// Two affine planes glued along the punctured plane: `u1, u2 < dx, dy < dxy`.
pub fn doubled_origin_plane() -> FiniteSpace {
    let plane = Mono::polynomial(&["x", "y"], &[]);
    mono_space(
        &["u1", "u2", "dx", "dy", "dxy"],
        &[("u1", "dx"), ("u1", "dy"), ("u2", "dx"), ("u2", "dy"), ("dx", "dxy"), ("dy", "dxy")],
        vec![
            plane.clone(),
            plane,
            Mono::polynomial(&["y"], &["x"]),
            Mono::polynomial(&["x"], &["y"]),
            Mono::polynomial(&[], &["x", "y"]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_affine_certified, is_qc_isomorphism, is_schematic, is_semiseparated};
    use crate::cohomology::cohomology;
    use crate::homotopy::core;
    use crate::verdict::Value;

    #[test]
    fn twist_dimensions() {
        for n in [-3i64, -2, 0, 2, 3] {
            let w = twist_window(n);
            let m = twist(n);
            let all = [0, 1, 2];
            let h0 = cohomology(&m, &all, 0, Some(&w)).unwrap().total();
            let h1 = cohomology(&m, &all, 1, Some(&w)).unwrap().total();
            assert_eq!(h0 as i64, (n + 1).max(0), "h0 of O({})", n);
            assert_eq!(h1 as i64, (-n - 1).max(0), "h1 of O({})", n);
        }
    }

    #[test]
    fn cone_over_pseudocircle_is_affine() {
        let c = cone_z(&pseudocircle()).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(is_affine_certified(&c, None).unwrap().value, Value::Yes);
    }

    #[test]
    fn chain_core_is_a_point() {
        let c = chain_z(2).unwrap();
        assert_eq!(core(&c).unwrap().core.len(), 1);
    }

    #[test]
    fn line_models() {
        let w = Window::radius(3);
        let x = doubled_origin_line();
        assert_eq!(is_semiseparated(&x, Some(&w)).unwrap().value, Value::WindowYes);
        assert!(is_qc_isomorphism(&line_refinement(), Some(&w)).unwrap().holds());
    }

    #[test]
    fn plane_model() {
        let x = doubled_origin_plane();
        assert_eq!(is_schematic(&x, Some(&PLANE_WINDOW)).unwrap().value, Value::WindowYes);
        let v = is_semiseparated(&x, Some(&PLANE_WINDOW)).unwrap();
        assert_eq!(v.value, Value::No);
        let w = v.witness.unwrap();
        assert_eq!(w.points, vec!["u1", "u2"]);
        assert_eq!(w.cohomological_degree, Some(1));
        assert_eq!(w.graded_degree, Some(vec![("x".to_string(), -1), ("y".to_string(), -1)]));
    }
}
