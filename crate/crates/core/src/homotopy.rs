//! Homotopy of ringed finite spaces: the order on morphisms, fences, beat
//! points and cores.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{self, base_change, for_each_ring_iso, Backend, RingHom};
use crate::error::{Error, Result};
use crate::poset::{monotone_maps, Search};
use crate::sheafmod::SheafModule;
use crate::space::{Morphism, RingedSpace};
use crate::verdict::{Check, Verdict, Window, Witness};

/// A validated inequality `lower <= upper`.
#[derive(Clone, Debug)]
pub struct OrderWitness {
    pub lower: Morphism,
    pub upper: Morphism,
}

fn same_ends(f: &Morphism, g: &Morphism) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Mismatch("morphisms between different spaces".into()));
    }
    Ok(())
}

/// `f <= g`: `f(x) <= g(x)` and `g#_x ∘ r_{f(x) g(x)} = f#_x` for every `x`.
pub fn leq_morphisms(f: &Morphism, g: &Morphism) -> Result<Option<OrderWitness>> {
    same_ends(f, g)?;
    let y = f.target();
    for x in 0..f.source().len() {
        let (a, b) = (f.apply(x), g.apply(x));
        if !y.poset().leq(a, b) {
            return Ok(None);
        }
        if g.co(x).after(y.res(a, b))? != *f.co(x) {
            return Ok(None);
        }
    }
    Ok(Some(OrderWitness { lower: f.clone(), upper: g.clone() }))
}

/// A zigzag `f_0, f_1, ..., f_n` of comparable morphisms.
#[derive(Clone, Debug)]
pub struct Fence {
    pub maps: Vec<Morphism>,
}

impl Fence {
    pub fn new(maps: Vec<Morphism>) -> Fence {
        Fence { maps }
    }

    /// The ordered links, or an error naming the first incomparable pair.
    pub fn links(&self) -> Result<Vec<OrderWitness>> {
        if self.maps.is_empty() {
            return Err(Error::Mismatch("empty fence".into()));
        }
        let mut out = Vec::new();
        for (i, w) in self.maps.windows(2).enumerate() {
            match leq_morphisms(&w[0], &w[1])? {
                Some(l) => out.push(l),
                None => match leq_morphisms(&w[1], &w[0])? {
                    Some(l) => out.push(l),
                    None => return Err(Error::Mismatch(format!("fence links {} and {} are not comparable", i, i + 1))),
                },
            }
        }
        Ok(out)
    }
}

pub fn verify_fence(fence: &Fence) -> bool {
    fence.links().is_ok()
}

/// Homotopy of continuous maps between ZConst spaces: same component of the
/// pointwise order on all monotone maps.
pub fn homotopic_topological(f: &Morphism, g: &Morphism) -> Result<bool> {
    same_ends(f, g)?;
    if f.source().backend() != Backend::ZConst {
        return Err(Error::Unsupported("topological homotopy needs ZConst spaces".into()));
    }
    let (x, y) = (f.source().poset(), f.target().poset());
    let maps = monotone_maps(x, y);
    let n = maps.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for i in 0..n {
        for j in i + 1..n {
            let le = (0..x.len()).all(|p| y.leq(maps[i][p], maps[j][p]));
            let ge = (0..x.len()).all(|p| y.leq(maps[j][p], maps[i][p]));
            if le || ge {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let fi = maps.iter().position(|m| m == f.map()).expect("monotone map is enumerated");
    let gi = maps.iter().position(|m| m == g.map()).expect("monotone map is enumerated");
    Ok(find(&mut parent, fi) == find(&mut parent, gi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BeatKind {
    Down,
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeatPoint {
    pub point: usize,
    pub kind: BeatKind,
    pub partner: usize,
}

fn is_beat(x: &RingedSpace, b: &BeatPoint) -> bool {
    let po = x.poset();
    let p = b.point;
    match b.kind {
        BeatKind::Down => {
            let below: Vec<usize> = po.closure(p).into_iter().filter(|&q| q != p).collect();
            below.contains(&b.partner) && below.iter().all(|&q| po.leq(q, b.partner))
        }
        BeatKind::Up => {
            let above: Vec<usize> = po.min_open(p).points().iter().copied().filter(|&q| q != p).collect();
            above.contains(&b.partner) && above.iter().all(|&q| po.leq(b.partner, q)) && x.res(p, b.partner).is_iso()
        }
    }
}

/// Down and up beat points, by point index then kind.
pub fn find_beat_points(x: &RingedSpace) -> Vec<BeatPoint> {
    let po = x.poset();
    let mut out = Vec::new();
    for p in 0..x.len() {
        let below: Vec<usize> = po.closure(p).into_iter().filter(|&q| q != p).collect();
        if let Some(&q) = below.iter().find(|&&q| below.iter().all(|&r| po.leq(r, q))) {
            out.push(BeatPoint { point: p, kind: BeatKind::Down, partner: q });
        }
        let above: Vec<usize> = po.min_open(p).points().iter().copied().filter(|&q| q != p).collect();
        if let Some(&q) = above.iter().find(|&&q| above.iter().all(|&r| po.leq(q, r))) {
            if x.res(p, q).is_iso() {
                out.push(BeatPoint { point: p, kind: BeatKind::Up, partner: q });
            }
        }
    }
    out
}

/// A strong deformation retraction onto a subspace.
#[derive(Clone, Debug)]
pub struct Retract {
    pub space: RingedSpace,
    /// `X -> A`.
    pub retraction: Morphism,
    /// `A -> X`.
    pub inclusion: Morphism,
    /// `i ∘ r` compared with the identity of `X`.
    pub homotopy: OrderWitness,
}

fn retract_onto(x: &RingedSpace, keep: &[usize], target: impl Fn(usize) -> (usize, RingHom)) -> Result<Retract> {
    let (a, inc) = Morphism::inclusion(x, keep);
    let aa = Arc::new(a.clone());
    let mut map = Vec::with_capacity(x.len());
    let mut co = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let (q, h) = target(p);
        map.push(keep.iter().position(|&k| k == q).expect("retraction lands in the subspace"));
        co.push(h);
    }
    let r = Morphism::from_arcs(Arc::new(x.clone()), aa.clone(), map, co)?;
    let inclusion = Morphism::from_arcs(aa, Arc::new(x.clone()), inc.map().to_vec(), inc.comorphisms().to_vec())?;
    let ir = inclusion.after(&r)?;
    let id = Morphism::identity(x);
    let homotopy = match leq_morphisms(&ir, &id)? {
        Some(w) => w,
        None => leq_morphisms(&id, &ir)?.ok_or_else(|| Error::Mismatch("retraction is not comparable with the identity".into()))?,
    };
    if r.after(&inclusion)? != Morphism::identity(&a) {
        return Err(Error::Mismatch("retraction does not fix the subspace".into()));
    }
    Ok(Retract { space: a, retraction: r, inclusion, homotopy })
}

/// Removes a beat point, returning the retraction data with its validated homotopy.
pub fn remove_beat_point(x: &RingedSpace, b: &BeatPoint) -> Result<Retract> {
    if b.point >= x.len() || b.partner >= x.len() || !is_beat(x, b) {
        return Err(Error::StaleBeatPoint(x.poset().ids().get(b.point).cloned().unwrap_or_else(|| b.point.to_string())));
    }
    let keep: Vec<usize> = (0..x.len()).filter(|&q| q != b.point).collect();
    let (p, q) = (b.point, b.partner);
    let special = match b.kind {
        BeatKind::Down => x.res(q, p).clone(),
        BeatKind::Up => x.res(p, q).inverse().ok_or_else(|| Error::StaleBeatPoint(x.id(p).to_string()))?,
    };
    retract_onto(x, &keep, |s| if s == p { (q, special.clone()) } else { (s, RingHom::identity(x.ring(s))) })
}

/// Collapses each class of equivalent points to its smallest member.
pub fn collapse_equivalent(x: &RingedSpace) -> Result<Retract> {
    let po = x.poset();
    let keep: Vec<usize> = (0..x.len()).filter(|&p| po.class_representative(p) == p).collect();
    retract_onto(x, &keep, |s| {
        let r = po.class_representative(s);
        (r, x.res(r, s).clone())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Equivalent,
    Down,
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub point: String,
    pub kind: StepKind,
    pub partner: String,
}

/// Order in which beat points are removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalOrder {
    Lexicographic,
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct CoreResult {
    pub core: RingedSpace,
    pub trace: Vec<TraceStep>,
    /// `X -> core`.
    pub retraction: Morphism,
    /// `core -> X`.
    pub inclusion: Morphism,
}

pub fn core(x: &RingedSpace) -> Result<CoreResult> {
    core_with(x, RemovalOrder::Lexicographic)
}

pub fn core_with(x: &RingedSpace, order: RemovalOrder) -> Result<CoreResult> {
    let mut trace = Vec::new();
    let mut retraction = Morphism::identity(x);
    let mut inclusion = Morphism::identity(x);
    let mut cur = x.clone();
    if !x.poset().is_poset() {
        let r = collapse_equivalent(x)?;
        for p in 0..x.len() {
            let rep = x.poset().class_representative(p);
            if rep != p {
                trace.push(TraceStep { point: x.id(p).to_string(), kind: StepKind::Equivalent, partner: x.id(rep).to_string() });
            }
        }
        retraction = r.retraction.after(&retraction)?;
        inclusion = inclusion.after(&r.inclusion)?;
        cur = r.space;
    }
    let mut rng = match order {
        RemovalOrder::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        RemovalOrder::Lexicographic => None,
    };
    loop {
        let beats = find_beat_points(&cur);
        if beats.is_empty() {
            break;
        }
        let b = match &mut rng {
            Some(r) => beats[r.gen_range(0..beats.len())].clone(),
            None => beats[0].clone(),
        };
        let step = remove_beat_point(&cur, &b)?;
        trace.push(TraceStep {
            point: cur.id(b.point).to_string(),
            kind: if b.kind == BeatKind::Down { StepKind::Down } else { StepKind::Up },
            partner: cur.id(b.partner).to_string(),
        });
        retraction = step.retraction.after(&retraction)?;
        inclusion = inclusion.after(&step.inclusion)?;
        cur = step.space;
    }
    Ok(CoreResult { core: cur, trace, retraction, inclusion })
}

pub fn is_minimal(x: &RingedSpace) -> bool {
    x.poset().is_poset() && find_beat_points(x).is_empty()
}

/// A ringed isomorphism `x -> y`: an order isomorphism with ring isomorphisms
/// on stalks making every covering square commute.
pub fn ringed_iso(x: &RingedSpace, y: &RingedSpace, budget: usize) -> Search<Morphism> {
    if x.len() != y.len() || x.backend() != y.backend() {
        return Search::Absent;
    }
    let mut exhausted = false;
    let mut found = None;
    let complete = x.poset().for_each_iso(y.poset(), budget, |sigma| {
        match match_rings(x, y, sigma, budget) {
            Search::Found(co) => {
                found = Morphism::new(x, y, sigma.to_vec(), co).ok();
                found.is_none()
            }
            Search::Exhausted => {
                exhausted = true;
                true
            }
            Search::Absent => true,
        }
    });
    match found {
        Some(m) => Search::Found(m),
        None if complete && !exhausted => Search::Absent,
        None => Search::Exhausted,
    }
}

fn match_rings(x: &RingedSpace, y: &RingedSpace, sigma: &[usize], budget: usize) -> Search<Vec<RingHom>> {
    let n = x.len();
    let mut cands: Vec<Vec<RingHom>> = Vec::with_capacity(n);
    let mut exhausted = false;
    for p in 0..n {
        let mut c = Vec::new();
        let complete = for_each_ring_iso(y.ring(sigma[p]), x.ring(p), budget, |h| {
            c.push(h);
            c.len() < budget
        });
        if !complete || c.len() >= budget {
            exhausted = true;
        }
        if c.is_empty() {
            return if exhausted { Search::Exhausted } else { Search::Absent };
        }
        cands.push(c);
    }
    let edges = x.poset().hasse();
    let mut choice: Vec<usize> = vec![0; n];
    let mut nodes = 0usize;
    fn rec(
        p: usize,
        x: &RingedSpace,
        y: &RingedSpace,
        sigma: &[usize],
        cands: &[Vec<RingHom>],
        edges: &[(usize, usize)],
        choice: &mut Vec<usize>,
        nodes: &mut usize,
        budget: usize,
    ) -> Option<bool> {
        if p == cands.len() {
            return Some(true);
        }
        for k in 0..cands[p].len() {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            choice[p] = k;
            let ok = edges.iter().filter(|&&(a, b)| a.max(b) == p).all(|&(a, b)| {
                let fa = &cands[a][choice[a]];
                let fb = &cands[b][choice[b]];
                let left = x.res(a, b).after(fa);
                let right = fb.after(y.res(sigma[a], sigma[b]));
                matches!((left, right), (Ok(l), Ok(r)) if l == r)
            });
            if ok {
                match rec(p + 1, x, y, sigma, cands, edges, choice, nodes, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        Some(false)
    }
    match rec(0, x, y, sigma, &cands, &edges, &mut choice, &mut nodes, budget) {
        Some(true) => Search::Found((0..n).map(|p| cands[p][choice[p]].clone()).collect()),
        Some(false) if !exhausted => Search::Absent,
        _ => Search::Exhausted,
    }
}

/// Default node budget for isomorphism searches.
pub const ISO_BUDGET: usize = 200_000;

/// Homotopy equivalence through isomorphism of cores.
pub fn homotopy_equivalent(x: &RingedSpace, y: &RingedSpace, budget: usize) -> Result<Verdict> {
    let rule = "homotopy equivalent iff the cores are isomorphic";
    let cx = core(x)?.core;
    let cy = core(y)?.core;
    if cx.len() != cy.len() {
        return Ok(Verdict::no(rule, Witness::default().with_detail(format!("cores have {} and {} points", cx.len(), cy.len()))));
    }
    Ok(match ringed_iso(&cx, &cy, budget) {
        Search::Found(_) => Verdict::yes(rule),
        Search::Absent => Verdict::no(rule, Witness::default().with_detail("no ringed isomorphism between the cores")),
        Search::Exhausted => Verdict::unknown(rule, "isomorphism search budget exhausted"),
    })
}

/// On a space with minimum `p`: the fence `id >= i_p ∘ π`.
pub fn contraction_fence(x: &RingedSpace) -> Option<Fence> {
    let p = x.poset().minimum()?;
    let co = (0..x.len()).map(|q| x.res(p, q).clone()).collect();
    let c = Morphism::new(x, x, vec![p; x.len()], co).ok()?;
    Some(Fence::new(vec![Morphism::identity(x), c]))
}

/// For each link `f <= g` of the fence, the canonical map `f^*M -> g^*M` is a
/// stalkwise isomorphism.
pub fn pullback_homotopy_invariance_check(fence: &Fence, m: &SheafModule, window: Option<&Window>) -> Result<Check> {
    let links = fence.links()?;
    let mut used = None;
    for l in &links {
        let (f, g) = (&l.lower, &l.upper);
        if *m.space() != *f.target() {
            return Err(Error::Mismatch("module lives on another space".into()));
        }
        for x in 0..f.source().len() {
            let (a, b) = (f.apply(x), g.apply(x));
            let ef = base_change(m.stalk(a), f.co(x))?;
            let eg = base_change(m.stalk(b), g.co(x))?;
            let phi = eg.unit_map().mul(m.res(a, b));
            let cmp = ef.lift(&phi, &eg.module, &RingHom::identity(f.source().ring(x)))?;
            let c = coeff::is_iso(&cmp, &ef.module, &eg.module, window)?;
            if !c.holds() {
                return Ok(c);
            }
            used = used.or(c.window());
        }
    }
    Ok(used.map_or(Check::Yes, Check::WindowYes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Algebra, Ring};
    use crate::poset::Preorder;

    fn pseudocircle() -> RingedSpace {
        RingedSpace::topological(
            Preorder::build(&["u", "v", "w1", "w2"], &[("u", "w1"), ("u", "w2"), ("v", "w1"), ("v", "w2")]).unwrap(),
        )
    }

    #[test]
    fn chain_collapses_to_a_point() {
        let x = RingedSpace::topological(Preorder::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let c = core(&x).unwrap();
        assert_eq!(c.core.len(), 1);
        assert_eq!(c.trace.len(), 2);
        assert!(core(&c.core).unwrap().trace.is_empty());
    }

    #[test]
    fn pseudocircle_is_minimal() {
        let x = pseudocircle();
        assert!(find_beat_points(&x).is_empty());
        assert_eq!(core(&x).unwrap().core, x);
        let pt = RingedSpace::topological(Preorder::build(&["*"], &[]).unwrap());
        assert!(homotopy_equivalent(&x, &pt, ISO_BUDGET).unwrap().is_no());
    }

    #[test]
    fn non_iso_edge_blocks_up_removal() {
        let q = Ring::alg(Algebra::field());
        let d = Ring::alg(Algebra::split(2));
        let diag = RingHom::alg(&q, &d, crate::qmat::QMat::from_i64(&[&[1], &[1]])).unwrap();
        let x = RingedSpace::build(&["a", "b"], &[("a", "b")], Backend::FinDimQ, &[("a", q), ("b", d)], &[("a", "b", diag)]).unwrap();
        let beats = find_beat_points(&x);
        assert_eq!(beats, vec![BeatPoint { point: 1, kind: BeatKind::Down, partner: 0 }]);
        let r = remove_beat_point(&x, &beats[0]).unwrap();
        assert_eq!(r.space.len(), 1);
        let stale = BeatPoint { point: 0, kind: BeatKind::Up, partner: 1 };
        assert!(matches!(remove_beat_point(&x, &stale), Err(Error::StaleBeatPoint(_))));
    }

    #[test]
    fn preorder_collapses_first() {
        let x = RingedSpace::topological(Preorder::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap());
        let c = core(&x).unwrap();
        assert_eq!(c.core.len(), 1);
        assert_eq!(c.trace[0].kind, StepKind::Equivalent);
    }

    #[test]
    fn order_on_morphisms() {
        let x = pseudocircle();
        let id = Morphism::identity(&x);
        assert!(leq_morphisms(&id, &id).unwrap().is_some());
        let cone = RingedSpace::topological(Preorder::build(&["m", "a", "b"], &[("m", "a"), ("m", "b")]).unwrap());
        let fence = contraction_fence(&cone).unwrap();
        assert!(verify_fence(&fence));
        assert!(homotopic_topological(&fence.maps[0], &fence.maps[1]).unwrap());
        let swap = Morphism::canonical(&x, &x, vec![1, 0, 2, 3]).unwrap();
        assert!(!homotopic_topological(&id, &swap).unwrap());
    }

    #[test]
    fn relabelled_spaces_are_isomorphic() {
        let x = pseudocircle();
        let y = RingedSpace::topological(
            Preorder::build(&["a", "b", "c", "d"], &[("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")]).unwrap(),
        );
        assert!(ringed_iso(&x, &y, ISO_BUDGET).found().is_some());
        assert!(homotopy_equivalent(&x, &y, ISO_BUDGET).unwrap().holds());
    }
}
