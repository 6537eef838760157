mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_points, oracle, random_poset, random_qc_module, random_sheaf, random_space, random_space_with_minimum};
use finspace::classify::{is_affine_certified, is_schematic, is_schematic_morphism, is_semiseparated};
use finspace::coeff::algebra::Algebra;
use finspace::coeff::{base_change, is_iso, kernel, cokernel, Backend, Module, Ring, RingHom};
use finspace::cohomology::{cohomology, cohomology_report};
use finspace::homotopy::{core, core_with, find_beat_points, leq_morphisms, RemovalOrder};
use finspace::lin::{Invariants, Mat};
use finspace::models;
use finspace::poset::{monotone_maps, Preorder, Search};
use finspace::sheafmod::{is_quasicoherent, pullback, same_map, sections, tensor_modules, SheafModule};
use finspace::space::{graphic_over_base, product, Morphism, RingedSpace};
use finspace::zmat::{snf, ZMat};
use finspace::coeff::zconst::ZPres;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn backend(rng: &mut ChaCha8Rng) -> Backend {
    if rng.gen_bool(0.5) {
        Backend::ZConst
    } else {
        Backend::FinDimQ
    }
}

fn random_zmat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ZMat {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
    let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
    if rows == 0 {
        ZMat::zeros(0, cols)
    } else {
        ZMat::from_i64(&refs)
    }
}

fn to_i128(m: &ZMat) -> oracle::IMat {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string().parse().unwrap()).collect()).collect()
}

/// A random open set: a union of minimal opens.
fn random_open(rng: &mut ChaCha8Rng, x: &RingedSpace) -> Vec<usize> {
    let seeds: Vec<usize> = (0..x.len()).filter(|_| rng.gen_bool(0.4)).collect();
    (0..x.len()).filter(|&q| seeds.iter().any(|&s| x.poset().leq(s, q))).collect()
}

fn invariants(m: &SheafModule, subset: &[usize]) -> Vec<Invariants> {
    let dim = m.space().poset().dimension_of(subset);
    (0..=dim + 1).map(|i| cohomology(m, subset, i, None).unwrap()).collect()
}

fn relabel(p: &Preorder, perm: &[usize]) -> Preorder {
    let names: Vec<String> = (0..p.len()).map(|i| format!("r{}", perm[i])).collect();
    let rel: Vec<(String, String)> = p.hasse().into_iter().map(|(a, b)| (names[a].clone(), names[b].clone())).collect();
    Preorder::build(&names, &rel).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn minimal_opens_are_upward_closed(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        for x in 0..n {
            let u = p.min_open(x).points().to_vec();
            prop_assert!(u.contains(&x));
            for &a in &u {
                for b in 0..n {
                    if p.leq(a, b) {
                        prop_assert!(u.contains(&b));
                    }
                }
            }
        }
    }

    #[test]
    fn kolmogorov_quotient_is_idempotent(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let names = common::ids(n);
        let rel: Vec<(String, String)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b)
            .filter(|_| r.gen_bool(0.15))
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect();
        let pre = Preorder::build(&names, &rel).unwrap();
        let (q, map) = pre.t0_quotient();
        prop_assert!(q.is_poset());
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(pre.leq(a, b), q.leq(map[a], map[b]));
            }
        }
        let (qq, _) = q.t0_quotient();
        prop_assert_eq!(qq.len(), q.len());
    }

    #[test]
    fn dimension_of_a_product_is_additive(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut r = rng(seed);
        let x = random_poset(&mut r, n, 0.5);
        let y = random_poset(&mut r, m, 0.5);
        let (p, _) = x.product(&y);
        prop_assert_eq!(p.dimension(), x.dimension() + y.dimension());
    }

    #[test]
    fn poset_isomorphism_is_symmetric(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let x = random_poset(&mut r, n, 0.4);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let y = relabel(&x, &perm);
        let z = random_poset(&mut r, n, 0.4);
        let Search::Found(f) = x.iso(&y, 1 << 20) else { panic!("relabelling is an isomorphism") };
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(x.leq(a, b), y.leq(f[a], f[b]));
            }
        }
        let there = matches!(x.iso(&z, 1 << 20), Search::Found(_));
        let back = matches!(z.iso(&x, 1 << 20), Search::Found(_));
        prop_assert_eq!(there, back);
    }

    #[test]
    fn smith_form_is_diagonal_with_divisibility(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let a = random_zmat(&mut rng(seed), rows, cols);
        let s = snf(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < s.diag.len() { s.diag[i].clone() } else { Default::default() };
                prop_assert_eq!(d.get(i, j), &expect);
            }
        }
        for w in s.diag.windows(2) {
            prop_assert!((&w[1] % &w[0]) == Default::default());
        }
        let ours: Vec<i128> = s.diag.iter().map(|x| x.to_string().parse().unwrap()).collect();
        prop_assert_eq!(ours, oracle::invariant_factors(&to_i128(&a)));
    }

    #[test]
    fn kernel_and_cokernel_compose_to_zero(seed in any::<u64>(), rows in 1usize..4, cols in 1usize..4) {
        let mut r = rng(seed);
        let f = Mat::Z(random_zmat(&mut r, rows, cols));
        let src = Module::Z(ZPres::free(cols));
        let tgt = Module::Z(ZPres::from_invariants(rows - 1, &[r.gen_range(2..5)]));
        let (_, inc) = kernel(&f, &src, &tgt).unwrap();
        let zero = Mat::Z(ZMat::zeros(rows, inc.cols()));
        prop_assert!(same_map(&f.mul(&inc), &zero, &tgt));
        let (c, proj) = cokernel(&f, &tgt).unwrap();
        let zero = Mat::Z(ZMat::zeros(proj.rows(), cols));
        prop_assert!(same_map(&proj.mul(&f), &zero, &c));
    }

    #[test]
    fn base_change_along_the_identity_is_trivial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_space_with_minimum(&mut r, 2);
        let m = random_qc_module(&mut r, &x);
        let stalk = m.stalk(0);
        let ring = x.ring(0);
        let ext = base_change(stalk, &RingHom::identity(ring)).unwrap();
        prop_assert!(is_iso(&ext.unit_map(), stalk, &ext.module, None).unwrap().holds());
    }

    #[test]
    fn global_sections_of_a_space_with_minimum(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let x = random_space_with_minimum(&mut r, n);
        let sr = x.global_sections().unwrap();
        let min = x.poset().minimum().unwrap();
        prop_assert!(sr.map_to(min).is_iso());
        let m = random_qc_module(&mut r, &x);
        let secs = sections(&m, &all_points(&x)).unwrap();
        prop_assert!(is_iso(secs.proj(min), &secs.module, m.stalk(min), None).unwrap().holds());
    }

    #[test]
    fn fibered_product_opens_are_pointwise(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let x = random_space(&mut r, Backend::ZConst, n);
        let y = random_space(&mut r, Backend::ZConst, m);
        let fp = product(&x, &y).unwrap();
        prop_assert_eq!(fp.space.len(), n * m);
        for z in 0..fp.space.len() {
            let (a, b) = fp.pairs[z];
            let u = fp.space.poset().min_open(z).points().to_vec();
            let expect: Vec<usize> = (0..fp.space.len())
                .filter(|&w| x.poset().leq(a, fp.pairs[w].0) && y.poset().leq(b, fp.pairs[w].1))
                .collect();
            prop_assert_eq!(u, expect);
        }
    }

    #[test]
    fn projections_split_the_graph(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let x = random_space(&mut r, Backend::ZConst, n);
        let y = random_space(&mut r, Backend::ZConst, m);
        let maps = monotone_maps(x.poset(), y.poset());
        let map = maps[r.gen_range(0..maps.len())].clone();
        let f = Morphism::canonical(&x, &y, map).unwrap();
        let (fp, gamma) = graphic_over_base(&f).unwrap();
        let p1 = Morphism::canonical(&fp.space, &x, fp.pairs.iter().map(|p| p.0).collect()).unwrap();
        let p2 = Morphism::canonical(&fp.space, &y, fp.pairs.iter().map(|p| p.1).collect()).unwrap();
        let (back1, back2) = (p1.after(&gamma).unwrap(), p2.after(&gamma).unwrap());
        let id = Morphism::identity(&x);
        prop_assert_eq!(back1.map(), id.map());
        prop_assert_eq!(back2.map(), f.map());
    }

    #[test]
    fn quasicoherence_is_stable(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let x = random_space_with_minimum(&mut r, n);
        let m = random_qc_module(&mut r, &x);
        let k = random_qc_module(&mut r, &x);
        prop_assert!(is_quasicoherent(&m, None).unwrap().holds());
        prop_assert!(is_quasicoherent(&tensor_modules(&m, &k).unwrap(), None).unwrap().holds());
        let p = r.gen_range(0..x.len());
        let (_, j) = Morphism::inclusion(&x, &x.poset().min_open(p).points().to_vec());
        prop_assert!(is_quasicoherent(&pullback(&j, &m).unwrap(), None).unwrap().holds());
    }

    #[test]
    fn cohomology_on_an_open_is_cohomology_of_the_restriction(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let b = backend(&mut r);
        let x = random_space(&mut r, b, n);
        let m = random_sheaf(&mut r, &x);
        let u = random_open(&mut r, &x);
        prop_assume!(!u.is_empty());
        let (mu, _) = m.restrict(&u);
        prop_assert_eq!(invariants(&m, &u), invariants(&mu, &all_points(mu.space())));
    }

    #[test]
    fn sheaf_condition_for_two_opens(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let x = random_space(&mut r, Backend::FinDimQ, n);
        let m = random_sheaf(&mut r, &x);
        let u = random_open(&mut r, &x);
        let v = random_open(&mut r, &x);
        let uv: Vec<usize> = u.iter().copied().filter(|p| v.contains(p)).collect();
        let both: Vec<usize> = (0..n).filter(|p| u.contains(p) || v.contains(p)).collect();
        let dim = |s: &[usize]| sections(&m, s).unwrap().module.size();
        let (su, sv, suv) = (sections(&m, &u).unwrap(), sections(&m, &v).unwrap(), sections(&m, &uv).unwrap());
        let ru = su.restrict_to(&suv, &m).unwrap().to_q();
        let rv = sv.restrict_to(&suv, &m).unwrap().to_q();
        let diff = ru.hcat(&rv.scale(&finspace::qmat::rat(-1)));
        let equalizer = dim(&u) + dim(&v) - diff.rank();
        prop_assert_eq!(dim(&both), equalizer);
    }

    #[test]
    fn cores_are_minimal_and_idempotent(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let b = backend(&mut r);
        let x = random_space(&mut r, b, n);
        let c = core_with(&x, RemovalOrder::Seeded(seed)).unwrap();
        prop_assert!(find_beat_points(&c.core).is_empty());
        let again = core(&c.core).unwrap();
        prop_assert!(again.trace.is_empty());
        prop_assert_eq!(again.core.len(), c.core.len());
    }

    #[test]
    fn cohomology_of_the_structure_sheaf_survives_the_core(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let b = backend(&mut r);
        let x = random_space(&mut r, b, n);
        let c = core(&x).unwrap();
        let ox = cohomology_report(&SheafModule::structure(&x), &all_points(&x), None).unwrap();
        let oc = cohomology_report(&SheafModule::structure(&c.core), &all_points(&c.core), None).unwrap();
        let deg = ox.degrees.len().max(oc.degrees.len());
        for i in 0..deg {
            let zero = |v: Option<&Invariants>| v.is_none_or(|v| v.is_zero());
            match (ox.get(i), oc.get(i)) {
                (Some(a), Some(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(zero(a) && zero(b)),
            }
        }
    }

    #[test]
    fn order_on_morphisms_with_equal_points(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let poset = random_poset(&mut r, n, 0.4);
        let ring = Ring::alg(Algebra::split(2));
        let x = RingedSpace::with_canonical_maps(poset, Backend::FinDimQ, vec![ring.clone(); n]).unwrap();
        let id = Morphism::identity(&x);
        let swap = RingHom::alg(&ring, &ring, finspace::qmat::QMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let twisted = Morphism::new(&x, &x, (0..n).collect(), vec![swap; n]).unwrap();
        prop_assert!(leq_morphisms(&id, &id).unwrap().is_some());
        prop_assert!(leq_morphisms(&id, &twisted).unwrap().is_none());
        prop_assert!(leq_morphisms(&twisted, &id).unwrap().is_none());
    }

    #[test]
    fn schematic_is_local(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let b = backend(&mut r);
        let x = random_space(&mut r, b, n);
        let whole = is_schematic(&x.as_finite_space().unwrap(), None).unwrap().holds();
        let local = (0..n).all(|p| {
            let (u, _) = x.subspace(&x.poset().min_open(p).points().to_vec());
            is_schematic(&u.as_finite_space().unwrap(), None).unwrap().holds()
        });
        prop_assert_eq!(whole, local);
    }

    #[test]
    fn affine_spaces_are_semiseparated_iff_schematic(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let x = random_space_with_minimum(&mut r, n);
        prop_assume!(is_affine_certified(&x, None).unwrap().holds());
        let fs = x.as_finite_space().unwrap();
        let s = is_schematic(&fs, None).unwrap().holds();
        let ss = is_semiseparated(&fs, None).unwrap().holds();
        prop_assert_eq!(s, ss);
    }

    #[test]
    fn schematic_morphisms_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs: Vec<RingedSpace> = (0..3).map(|_| {
            let k = r.gen_range(1..4);
            random_space(&mut r, Backend::ZConst, k)
        }).collect();
        let pick = |r: &mut ChaCha8Rng, a: &RingedSpace, b: &RingedSpace| {
            let maps = monotone_maps(a.poset(), b.poset());
            Morphism::canonical(a, b, maps[r.gen_range(0..maps.len())].clone()).unwrap()
        };
        let f = pick(&mut r, &xs[0], &xs[1]);
        let g = pick(&mut r, &xs[1], &xs[2]);
        let sf = is_schematic_morphism(&f, None).unwrap().holds();
        let sg = is_schematic_morphism(&g, None).unwrap().holds();
        prop_assume!(sf && sg);
        prop_assert!(is_schematic_morphism(&g.after(&f).unwrap(), None).unwrap().holds());
    }
}

#[test]
fn twists_multiply() {
    let w = models::twist_window(4);
    let x = models::p1_model();
    for a in -2..=2 {
        for b in -2..=2 {
            let t = tensor_modules(&models::twist(a), &models::twist(b)).unwrap();
            assert!(is_quasicoherent(&t, Some(&w)).unwrap().holds());
            let pts = all_points(x.space());
            for i in 0..2 {
                let lhs = cohomology(&t, &pts, i, Some(&w)).unwrap();
                let rhs = cohomology(&models::twist(a + b), &pts, i, Some(&w)).unwrap();
                assert_eq!(lhs, rhs, "O({}) x O({}) in degree {}", a, b, i);
            }
        }
    }
}
