//! Random spaces and sheaves shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use finspace::coeff::algebra::{AlgModule, Algebra};
use finspace::coeff::zconst::ZPres;
use finspace::coeff::{Backend, Module, Ring, RingHom};
use finspace::lin::{Kind, Mat};
use finspace::poset::Preorder;
use finspace::sheafmod::{tilde, SheafModule};
use finspace::space::RingedSpace;
use finspace::zmat::ZMat;

pub fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{}", i)).collect()
}

/// A poset on `n` points: a random linear extension, each compatible pair related with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Preorder {
    let names = ids(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((names[order[i]].clone(), names[order[j]].clone()));
            }
        }
    }
    Preorder::build(&names, &rel).expect("acyclic relation")
}

/// A poset with a minimum `p0`.
pub fn random_poset_with_minimum<R: Rng>(rng: &mut R, n: usize, density: f64) -> Preorder {
    let names = ids(n);
    let inner = random_poset(rng, n - 1, density);
    let mut rel: Vec<(String, String)> = inner.hasse().into_iter().map(|(a, b)| (names[a + 1].clone(), names[b + 1].clone())).collect();
    rel.extend((1..n).map(|i| (names[0].clone(), names[i].clone())));
    Preorder::build(&names, &rel).expect("acyclic relation")
}

fn algebra_choices() -> Vec<Algebra> {
    vec![Algebra::field(), Algebra::split(2), Algebra::truncated(2), Algebra::quadratic(-1)]
}

/// `Q` on a random down-set and one fixed algebra above it, with canonical restrictions.
pub fn random_findimq_space<R: Rng>(rng: &mut R, poset: Preorder) -> RingedSpace {
    let n = poset.len();
    let algs = algebra_choices();
    let top = Ring::alg(algs[rng.gen_range(0..algs.len())].clone());
    let seeds: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    let rings: Vec<Ring> = (0..n)
        .map(|p| if seeds.iter().any(|&s| poset.leq(p, s)) { Ring::alg(Algebra::field()) } else { top.clone() })
        .collect();
    let given = poset
        .hasse()
        .into_iter()
        .map(|(p, q)| ((p, q), if rings[p] == rings[q] { RingHom::identity(&rings[p]) } else { RingHom::structure(&rings[q]) }))
        .collect();
    RingedSpace::new(poset, Backend::FinDimQ, rings, given).expect("structure maps compose")
}

pub fn random_space<R: Rng>(rng: &mut R, backend: Backend, n: usize) -> RingedSpace {
    let poset = random_poset(rng, n, 0.4);
    match backend {
        Backend::ZConst => RingedSpace::topological(poset),
        Backend::FinDimQ => random_findimq_space(rng, poset),
        Backend::Graded => panic!("no random graded spaces"),
    }
}

fn interval(x: &RingedSpace, a: usize, b: usize) -> Vec<bool> {
    (0..x.len()).map(|p| x.poset().leq(a, p) && x.poset().leq(p, b)).collect()
}

fn random_intervals<R: Rng>(rng: &mut R, x: &RingedSpace, count: usize) -> Vec<Vec<bool>> {
    let n = x.len();
    let mut out = Vec::new();
    while out.len() < count {
        let a = rng.gen_range(0..n);
        let above: Vec<usize> = (0..n).filter(|&b| x.poset().leq(a, b)).collect();
        let b = above[rng.gen_range(0..above.len())];
        let kind = rng.gen_range(0..3);
        out.push(match kind {
            0 => interval(x, a, b),
            1 => (0..n).map(|p| x.poset().leq(a, p)).collect(),
            _ => (0..n).map(|p| x.poset().leq(p, b)).collect(),
        });
    }
    out
}

/// Direct sum of extensions by zero of constant groups on convex subsets.
pub fn random_z_sheaf<R: Rng>(rng: &mut R, x: &RingedSpace) -> SheafModule {
    let groups = [ZPres::free(1), ZPres::cyclic(2), ZPres::cyclic(3), ZPres::free(2)];
    let count = rng.gen_range(1..=3);
    let supports = random_intervals(rng, x, count);
    let gs: Vec<ZPres> = (0..count).map(|_| groups[rng.gen_range(0..groups.len())].clone()).collect();
    let n = x.len();
    let stalks: Vec<ZPres> = (0..n)
        .map(|p| (0..count).filter(|&s| supports[s][p]).fold(ZPres::free(0), |acc, s| acc.direct_sum(&gs[s])))
        .collect();
    let offset = |p: usize, s: usize| (0..s).filter(|&t| supports[t][p]).map(|t| gs[t].gens).sum::<usize>();
    let mut given = BTreeMap::new();
    for (p, q) in x.poset().hasse() {
        let mut m = ZMat::zeros(stalks[q].gens, stalks[p].gens);
        for s in 0..count {
            if supports[s][p] && supports[s][q] {
                m.add_block(offset(q, s), offset(p, s), &ZMat::identity(gs[s].gens));
            }
        }
        given.insert((p, q), Mat::Z(m));
    }
    SheafModule::new(x, stalks.into_iter().map(Module::Z).collect(), given).expect("interval sums are sheaves")
}

/// Direct sum of extensions by zero of `O` restricted to convex subsets.
pub fn random_alg_sheaf<R: Rng>(rng: &mut R, x: &RingedSpace) -> SheafModule {
    let count = rng.gen_range(1..=2);
    let supports = random_intervals(rng, x, count);
    let n = x.len();
    let rank = |p: usize| (0..count).filter(|&s| supports[s][p]).count();
    let dim = |p: usize| x.ring(p).as_alg().expect("FinDimQ ring").dim();
    let stalks: Vec<Module> = (0..n).map(|p| Module::free(x.ring(p), rank(p))).collect();
    let mut given = BTreeMap::new();
    for (p, q) in x.poset().hasse() {
        let mut m = Mat::zeros(Kind::Q, rank(q) * dim(q), rank(p) * dim(p));
        let h = Mat::Q(x.res(p, q).as_alg().expect("FinDimQ map").mat.clone());
        for s in 0..count {
            if supports[s][p] && supports[s][q] {
                let (op, oq) = ((0..s).filter(|&t| supports[t][p]).count(), (0..s).filter(|&t| supports[t][q]).count());
                m.add_block(oq * dim(q), op * dim(p), &h);
            }
        }
        given.insert((p, q), m);
    }
    SheafModule::new(x, stalks, given).expect("interval sums are sheaves")
}

pub fn random_sheaf<R: Rng>(rng: &mut R, x: &RingedSpace) -> SheafModule {
    match x.backend() {
        Backend::ZConst => random_z_sheaf(rng, x),
        _ => random_alg_sheaf(rng, x),
    }
}

/// A module over the minimum's ring: free, a quotient by the radical, or a sum of both.
fn random_module_at<R: Rng>(rng: &mut R, ring: &Ring) -> Module {
    match ring {
        Ring::Z => {
            let choices = [ZPres::free(1), ZPres::cyclic(2), ZPres::from_invariants(1, &[4]), ZPres::free(2)];
            Module::Z(choices[rng.gen_range(0..choices.len())].clone())
        }
        Ring::Alg(a) => {
            let free = AlgModule::free(a, rng.gen_range(1..=2));
            let top = AlgModule::quotient_ring_module(a, &a.radical());
            let m = match rng.gen_range(0..3) {
                0 => free,
                1 => top,
                _ => sum(a, &free, &top),
            };
            Module::Alg(m)
        }
        Ring::Mono(_) => Module::free(ring, 1),
    }
}

fn sum(a: &Arc<Algebra>, m: &AlgModule, n: &AlgModule) -> AlgModule {
    AlgModule::new(a.clone(), m.act.iter().zip(&n.act).map(|(x, y)| x.dsum(y)).collect()).expect("direct sum of modules")
}

/// A quasi-coherent module on a space with a minimum.
pub fn random_qc_module<R: Rng>(rng: &mut R, x: &RingedSpace) -> SheafModule {
    let min = x.poset().minimum().expect("space with a minimum");
    let m = random_module_at(rng, x.ring(min));
    let maps: Vec<RingHom> = (0..x.len()).map(|p| x.res(min, p).clone()).collect();
    tilde(x, &m, maps).expect("tilde of a module")
}

/// A space with a minimum, of either finite backend.
pub fn random_space_with_minimum<R: Rng>(rng: &mut R, n: usize) -> RingedSpace {
    let poset = random_poset_with_minimum(rng, n, 0.4);
    if rng.gen_bool(0.5) {
        RingedSpace::topological(poset)
    } else {
        random_findimq_space(rng, poset)
    }
}

pub fn all_points(x: &RingedSpace) -> Vec<usize> {
    (0..x.len()).collect()
}
pub mod oracle;
