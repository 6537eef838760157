//! Sheaves of modules on ringed finite spaces.
//!
//! A sheaf is a module per point and a semilinear map per relation. As with
//! rings, maps are given on covering relations and composed.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use crate::coeff::{self, base_change, check_map, finite_limit, tensor, Backend, Module, Ring, RingHom, ZPres};
use crate::error::{Error, Result};
use crate::lin::{Kind, LinObj, Mat};
use crate::space::{Morphism, RingedSpace};
use crate::verdict::{Check, Value, Verdict, Window, Witness};
use crate::zmat;

#[derive(Clone, Debug)]
pub struct SheafModule {
    space: Arc<RingedSpace>,
    stalks: Vec<Module>,
    res: HashMap<(usize, usize), Mat>,
}

/// Whether two maps into `tgt` agree as module maps (modulo relations over ZConst).
pub fn same_map(f: &Mat, g: &Mat, tgt: &Module) -> bool {
    if f.rows() != g.rows() || f.cols() != g.cols() {
        return false;
    }
    match (f, g, tgt) {
        (Mat::Z(a), Mat::Z(b), Module::Z(t)) => {
            let d = a.add(&b.neg());
            d.is_zero() || zmat::solve(&t.rels, &d).is_some()
        }
        _ => f == g,
    }
}

impl SheafModule {
    /// Validates stalk rings and restriction maps, then derives composites.
    pub fn new(space: &RingedSpace, stalks: Vec<Module>, given: BTreeMap<(usize, usize), Mat>) -> Result<SheafModule> {
        SheafModule::on(Arc::new(space.clone()), stalks, given)
    }

    pub fn on(space: Arc<RingedSpace>, stalks: Vec<Module>, given: BTreeMap<(usize, usize), Mat>) -> Result<SheafModule> {
        let n = space.len();
        if stalks.len() != n {
            return Err(Error::InvalidModule(format!("{} stalks for {} points", stalks.len(), n)));
        }
        for (p, m) in stalks.iter().enumerate() {
            if m.ring() != *space.ring(p) {
                return Err(Error::InvalidModule(format!("stalk at `{}` is not a module over the stalk ring", space.id(p))));
            }
        }
        for (&(p, q), f) in &given {
            if p >= n || q >= n || !space.poset().leq(p, q) {
                return Err(Error::Mismatch(format!("module restriction given for unrelated points ({}, {})", p, q)));
            }
            check_map(f, &stalks[p], &stalks[q], space.res(p, q)).map_err(|e| match e {
                Error::InvalidMap(s) => Error::InvalidMap(format!("`{}` <= `{}`: {}", space.id(p), space.id(q), s)),
                e => e,
            })?;
        }
        let hasse = space.poset().hasse();
        for &(p, q) in &hasse {
            if !given.contains_key(&(p, q)) {
                return Err(Error::MissingRestriction(space.id(p).to_string(), space.id(q).to_string()));
            }
        }
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &hasse {
            out.entry(a).or_default().push(b);
        }
        let kind = space.backend().kind();
        let mut res = HashMap::new();
        for p in 0..n {
            res.insert((p, p), Mat::identity(kind, stalks[p].size()));
            let mut queue = VecDeque::from([p]);
            let mut seen = vec![false; n];
            seen[p] = true;
            while let Some(a) = queue.pop_front() {
                let Some(next) = out.get(&a) else { continue };
                for &b in next {
                    let via = given[&(a, b)].mul(&res[&(p, a)]);
                    if seen[b] {
                        if !same_map(&res[&(p, b)], &via, &stalks[b]) {
                            return Err(Error::PathDependent(space.id(p).to_string(), space.id(b).to_string()));
                        }
                    } else {
                        seen[b] = true;
                        res.insert((p, b), via);
                        queue.push_back(b);
                    }
                }
            }
        }
        for (key, f) in &given {
            if !same_map(&res[key], f, &stalks[key.1]) {
                return Err(Error::PathDependent(space.id(key.0).to_string(), space.id(key.1).to_string()));
            }
        }
        Ok(SheafModule { space, stalks, res })
    }

    /// The structure sheaf `O` as a module over itself.
    pub fn structure(space: &RingedSpace) -> SheafModule {
        let stalks = space.rings().iter().map(|r| Module::free(r, 1)).collect();
        let mut given = BTreeMap::new();
        for ((p, q), h) in space.covering_restrictions() {
            given.insert((p, q), hom_matrix(h));
        }
        SheafModule::new(space, stalks, given).expect("structure sheaf is valid")
    }

    /// The constant sheaf with value `g` on a ZConst space.
    pub fn constant(space: &RingedSpace, g: &ZPres) -> Result<SheafModule> {
        if space.backend() != Backend::ZConst {
            return Err(Error::BackendMismatch("constant abelian sheaves live on ZConst spaces".into()));
        }
        let stalks = vec![Module::Z(g.clone()); space.len()];
        let given = space.poset().hasse().into_iter().map(|e| (e, Mat::identity(Kind::Z, g.gens))).collect();
        SheafModule::new(space, stalks, given)
    }

    /// The zero sheaf.
    pub fn zero(space: &RingedSpace) -> SheafModule {
        let stalks: Vec<Module> = space.rings().iter().map(Module::zero).collect();
        let kind = space.backend().kind();
        let given = space.poset().hasse().into_iter().map(|e| (e, Mat::zeros(kind, 0, 0))).collect();
        SheafModule::new(space, stalks, given).expect("zero sheaf is valid")
    }

    pub fn space(&self) -> &RingedSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<RingedSpace> {
        &self.space
    }

    pub fn stalk(&self, p: usize) -> &Module {
        &self.stalks[p]
    }

    pub fn stalks(&self) -> &[Module] {
        &self.stalks
    }

    pub fn kind(&self) -> Kind {
        self.space.backend().kind()
    }

    /// `M_p -> M_q` for `p <= q`.
    pub fn res(&self, p: usize, q: usize) -> &Mat {
        self.res.get(&(p, q)).unwrap_or_else(|| panic!("no module restriction {} <= {}", self.space.id(p), self.space.id(q)))
    }

    pub fn covering_restrictions(&self) -> Vec<((usize, usize), &Mat)> {
        self.space.poset().hasse().into_iter().map(|e| (e, &self.res[&e])).collect()
    }

    /// Restriction to a subspace, reindexed.
    pub fn restrict(&self, subset: &[usize]) -> (SheafModule, Vec<usize>) {
        let (sub, idx) = self.space.subspace(subset);
        let stalks = idx.iter().map(|&i| self.stalks[i].clone()).collect();
        let given = sub.poset().hasse().into_iter().map(|(a, b)| ((a, b), self.res(idx[a], idx[b]).clone())).collect();
        (SheafModule::new(&sub, stalks, given).expect("restriction of a valid sheaf"), idx)
    }

    /// The comparison `M_p ⊗ O_q -> M_q` on a relation.
    pub fn comparison(&self, p: usize, q: usize) -> Result<(Module, Mat)> {
        let ext = base_change(&self.stalks[p], self.space.res(p, q))?;
        let phi = ext.lift(self.res(p, q), &self.stalks[q], &RingHom::identity(self.space.ring(q)))?;
        Ok((ext.module, phi))
    }
}

fn edge_witness(x: &RingedSpace, p: usize, q: usize, c: Check) -> Witness {
    let w = Witness::points(&[x.id(p), x.id(q)]);
    match c {
        Check::No(d) => w.with_graded(d),
        _ => w,
    }
}

fn edge_test(
    m: &SheafModule,
    window: Option<&Window>,
    rule: &str,
    test: fn(&Mat, &Module, &Module, Option<&Window>) -> Result<Check>,
) -> Result<Verdict> {
    let x = m.space();
    let mut used = None;
    for (p, q) in x.poset().hasse() {
        let (src, phi) = m.comparison(p, q)?;
        let c = test(&phi, &src, m.stalk(q), window)?;
        if let Check::WindowYes(w) = c {
            used = Some(w);
        }
        if !c.holds() {
            return Ok(Verdict::no(rule, edge_witness(x, p, q, c)));
        }
    }
    Ok(Verdict::positive(rule, used))
}

/// Quasi-coherence: `M_p ⊗ O_q -> M_q` bijective on every covering relation.
pub fn is_quasicoherent(m: &SheafModule, window: Option<&Window>) -> Result<Verdict> {
    edge_test(m, window, "base-change map is an isomorphism on every covering relation", coeff::is_iso)
}

/// Finite type: stalks are finitely presented by construction; the base-change maps must be onto.
pub fn is_finite_type(m: &SheafModule, window: Option<&Window>) -> Result<Verdict> {
    edge_test(m, window, "finitely presented stalks and surjective base-change maps", coeff::is_surjective)
}

/// Coherence of `O`: flatness of every covering restriction.
pub fn structure_coherent(x: &RingedSpace) -> Verdict {
    let rule = "structure sheaf is coherent iff restrictions are flat (noetherian stalks)";
    let mut unknown = None;
    for (p, q) in x.poset().hasse() {
        match x.res(p, q).is_flat() {
            Value::No => return Verdict::no(rule, Witness::points(&[x.id(p), x.id(q)]).with_detail("restriction is not flat")),
            Value::Unknown => unknown = Some((p, q)),
            _ => {}
        }
    }
    match unknown {
        Some((p, q)) => Verdict::unknown(rule, format!("flatness of `{}` <= `{}` undecided", x.id(p), x.id(q))),
        None => Verdict::yes(rule),
    }
}

/// Module coherence, decided only on ZConst spaces: there `O` is noetherian
/// with identity restrictions, so coherent means quasi-coherent.
pub fn is_coherent(m: &SheafModule) -> Result<Verdict> {
    if m.space().backend() != Backend::ZConst {
        return Ok(Verdict::unknown("module coherence", "decided only for the ZConst backend"));
    }
    let v = is_quasicoherent(m, None)?;
    Ok(Verdict { rule: "coherent iff quasi-coherent over a noetherian space with flat restrictions".into(), ..v })
}

/// Sections over a set of points, with their projections to each stalk.
#[derive(Clone, Debug)]
pub struct Sections {
    pub module: Module,
    pub points: Vec<usize>,
    pub projs: Vec<Mat>,
}

impl Sections {
    pub fn proj(&self, p: usize) -> &Mat {
        let i = self.points.iter().position(|&x| x == p).expect("point outside the section set");
        &self.projs[i]
    }

    /// The restriction map to sections over a subset.
    pub fn restrict_to(&self, other: &Sections, m: &SheafModule) -> Result<Mat> {
        let kind = m.kind();
        let mut stacked: Option<Mat> = None;
        let mut inc: Option<Mat> = None;
        let mut ambient = ZPres::free(0);
        for (i, &p) in other.points.iter().enumerate() {
            if !self.points.contains(&p) {
                return Err(Error::Mismatch("restriction of sections to a set that is not a subset".into()));
            }
            let a = self.proj(p).clone();
            stacked = Some(match stacked {
                None => a,
                Some(s) => s.vcat(&a),
            });
            let b = other.projs[i].clone();
            inc = Some(match inc {
                None => b,
                Some(s) => s.vcat(&b),
            });
            if let Module::Z(z) = m.stalk(p) {
                ambient = ambient.direct_sum(z);
            }
        }
        let (Some(stacked), Some(inc)) = (stacked, inc) else {
            return Ok(Mat::zeros(kind, other.module.size(), self.module.size()));
        };
        match kind {
            Kind::Z => {
                let sol = zmat::solve(&inc.z().hcat(&ambient.rels), stacked.z())
                    .ok_or_else(|| Error::Mismatch("sections do not restrict".into()))?;
                let top: Vec<usize> = (0..other.module.size()).collect();
                Ok(Mat::Z(sol.select_rows(&top)))
            }
            Kind::Q => {
                let sol = inc.q().solve(stacked.q()).ok_or_else(|| Error::Mismatch("sections do not restrict".into()))?;
                Ok(Mat::Q(sol))
            }
            Kind::G => Err(Error::WindowRequired("graded sections".into())),
        }
    }
}

/// `M(U)` as a module over `ring`, which maps to each `O_p` (`p ∈ U`) by `maps`.
pub fn sections_with(m: &SheafModule, subset: &[usize], ring: &Ring, maps: &[RingHom]) -> Result<Sections> {
    if m.kind() == Kind::G {
        return Err(Error::WindowRequired("graded sections (use degree 0 cohomology on a window)".into()));
    }
    if subset.is_empty() {
        return Ok(Sections { module: Module::zero(ring), points: Vec::new(), projs: Vec::new() });
    }
    let objs = subset.iter().zip(maps).map(|(&p, h)| m.stalk(p).restrict_scalars(h)).collect::<Result<Vec<_>>>()?;
    let pos = |p: usize| subset.iter().position(|&x| x == p).expect("point in subset");
    let arrows: Vec<(usize, usize, Mat)> =
        m.space().poset().hasse_in(subset).into_iter().map(|(p, q)| (pos(p), pos(q), m.res(p, q).clone())).collect();
    let (module, projs) = finite_limit(&objs, &arrows)?;
    Ok(Sections { module, points: subset.to_vec(), projs })
}

/// `M(U)` as a module over `O(U)` (over `Z` on ZConst spaces).
pub fn sections(m: &SheafModule, subset: &[usize]) -> Result<Sections> {
    let mut u = subset.to_vec();
    u.sort_unstable();
    u.dedup();
    match m.space().backend() {
        Backend::ZConst => {
            let maps = vec![RingHom::Z; u.len()];
            sections_with(m, &u, &Ring::Z, &maps)
        }
        Backend::FinDimQ => {
            let s = m.space().section_ring(&u)?;
            sections_with(m, &u, &s.ring, &s.maps)
        }
        Backend::Graded => Err(Error::WindowRequired("graded sections (use degree 0 cohomology on a window)".into())),
    }
}

/// `M(X)`.
pub fn global_sections(m: &SheafModule) -> Result<Sections> {
    sections(m, &(0..m.space().len()).collect::<Vec<_>>())
}

/// `f^*N`, with stalks `N_{f(x)} ⊗ O_x`.
pub fn pullback(f: &Morphism, n: &SheafModule) -> Result<SheafModule> {
    if *n.space() != *f.target() {
        return Err(Error::Mismatch("pullback of a module on another space".into()));
    }
    let x = f.source();
    let exts = (0..x.len()).map(|p| base_change(n.stalk(f.apply(p)), f.co(p))).collect::<Result<Vec<_>>>()?;
    let mut given = BTreeMap::new();
    for (p, q) in x.poset().hasse() {
        let phi = exts[q].unit_map().mul(n.res(f.apply(p), f.apply(q)));
        given.insert((p, q), exts[p].lift(&phi, &exts[q].module, x.res(p, q))?);
    }
    let stalks = exts.into_iter().map(|e| e.module).collect();
    SheafModule::on(f.source_arc().clone(), stalks, given)
}

/// `f_*M`, with stalks `M(f^{-1}(U_y))` over `O_y`.
pub fn pushforward(f: &Morphism, m: &SheafModule) -> Result<SheafModule> {
    if *m.space() != *f.source() {
        return Err(Error::Mismatch("pushforward of a module on another space".into()));
    }
    let y = f.target();
    let secs = (0..y.len())
        .map(|b| {
            let pre = f.preimage_of_open(b);
            let maps = pre.iter().map(|&x| f.co_from(b, x)).collect::<Result<Vec<_>>>()?;
            sections_with(m, &pre, y.ring(b), &maps)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut given = BTreeMap::new();
    for (a, b) in y.poset().hasse() {
        given.insert((a, b), secs[a].restrict_to(&secs[b], m)?);
    }
    SheafModule::on(f.target_arc().clone(), secs.into_iter().map(|s| s.module).collect(), given)
}

/// `M ⊗_O N`, stalkwise.
pub fn tensor_modules(m: &SheafModule, n: &SheafModule) -> Result<SheafModule> {
    if m.space() != n.space() {
        return Err(Error::Mismatch("tensor of modules on different spaces".into()));
    }
    let x = m.space();
    let ts = (0..x.len()).map(|p| tensor(m.stalk(p), n.stalk(p))).collect::<Result<Vec<_>>>()?;
    let mut given = BTreeMap::new();
    for (p, q) in x.poset().hasse() {
        given.insert((p, q), ts[p].map(m.res(p, q), n.res(p, q), &ts[q]));
    }
    SheafModule::on(m.space_arc().clone(), ts.into_iter().map(|t| t.module).collect(), given)
}

/// The module on `(*, A)` given by an `A`-module.
pub fn punctual_module(pt: &RingedSpace, module: Module) -> Result<SheafModule> {
    SheafModule::new(pt, vec![module], BTreeMap::new())
}

/// `M~` for an `A`-module `M` and ring maps `A -> O_x`: the pullback along `X -> (*, A)`.
pub fn tilde(x: &RingedSpace, module: &Module, maps: Vec<RingHom>) -> Result<SheafModule> {
    let f = Morphism::to_punctual(x, module.ring(), maps)?;
    let n = punctual_module(f.target(), module.clone())?;
    pullback(&f, &n)
}

/// A ring map `A -> B` as a map of rank one free modules `A -> B`.
pub fn hom_matrix(h: &RingHom) -> Mat {
    match h {
        RingHom::Alg(a) => Mat::Q(a.mat.clone()),
        RingHom::Z => Mat::identity(Kind::Z, 1),
        RingHom::Mono { .. } => Mat::identity(Kind::Q, 1),
    }
}

/// Stalkwise isomorphism through given maps `M_p -> N_p`.
pub fn is_stalkwise_iso(maps: &[Mat], m: &SheafModule, n: &SheafModule, window: Option<&Window>) -> Result<Check> {
    let mut used = None;
    for (p, f) in maps.iter().enumerate() {
        let c = coeff::is_iso(f, m.stalk(p), n.stalk(p), window)?;
        if !c.holds() {
            return Ok(c);
        }
        used = used.or(c.window());
    }
    Ok(used.map_or(Check::Yes, Check::WindowYes))
}

/// Underlying objects of the stalks over a list of points, as a direct sum.
pub fn sum_of_stalks(m: &SheafModule, pts: &[usize]) -> LinObj {
    let parts: Vec<LinObj> = pts.iter().map(|&p| m.stalk(p).underlying()).collect();
    LinObj::direct_sum(m.kind(), &parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{zmat as zm, Algebra};
    use crate::poset::Preorder;

    fn chain2() -> RingedSpace {
        RingedSpace::topological(Preorder::build(&["a", "b"], &[("a", "b")]).unwrap())
    }

    fn doubling() -> SheafModule {
        let x = chain2();
        let stalks = vec![Module::Z(ZPres::free(1)), Module::Z(ZPres::free(1))];
        SheafModule::new(&x, stalks, BTreeMap::from([((0, 1), zm(&[&[2]]))])).unwrap()
    }

    #[test]
    fn constant_sheaf_is_quasicoherent() {
        let x = RingedSpace::topological(Preorder::build(&["u", "v", "w1", "w2"], &[("u", "w1"), ("u", "w2"), ("v", "w1"), ("v", "w2")]).unwrap());
        let m = SheafModule::constant(&x, &ZPres::cyclic(2)).unwrap();
        assert_eq!(is_quasicoherent(&m, None).unwrap().value, Value::Yes);
        let s = global_sections(&m).unwrap();
        assert_eq!(s.module.invariants(None).unwrap().to_string(), "Z/2");
    }

    #[test]
    fn doubling_edge_fails() {
        let m = doubling();
        let v = is_quasicoherent(&m, None).unwrap();
        assert!(v.is_no());
        assert_eq!(v.witness.unwrap().points, vec!["a", "b"]);
        assert!(is_finite_type(&m, None).unwrap().is_no());
        assert_eq!(is_finite_type(&SheafModule::zero(&chain2()), None).unwrap().value, Value::Yes);
    }

    #[test]
    fn path_dependent_module_rejected() {
        let x = RingedSpace::topological(Preorder::build(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap());
        let z = Module::Z(ZPres::free(1));
        let one = zm(&[&[1]]);
        let given = BTreeMap::from([((0, 1), one.clone()), ((0, 2), one.clone()), ((1, 3), one.clone()), ((2, 3), zm(&[&[-1]]))]);
        assert!(matches!(SheafModule::new(&x, vec![z; 4], given), Err(Error::PathDependent(_, _))));
    }

    #[test]
    fn torsion_restrictions_agree_modulo_relations() {
        let x = chain2();
        let z2 = Module::Z(ZPres::cyclic(2));
        let given = BTreeMap::from([((0, 1), zm(&[&[3]]))]);
        let m = SheafModule::new(&x, vec![z2.clone(), z2], given).unwrap();
        assert_eq!(is_quasicoherent(&m, None).unwrap().value, Value::Yes);
    }

    #[test]
    fn sections_over_minimal_open_are_the_stalk() {
        let m = doubling();
        let s = sections(&m, &[0, 1]).unwrap();
        assert_eq!(s.module.size(), 1);
        assert!(same_map(s.proj(0), &zm(&[&[1]]), m.stalk(0)));
        assert_eq!(sections(&m, &[]).unwrap().module.size(), 0);
    }

    #[test]
    fn tilde_and_pushforward_on_a_cone() {
        let q = Ring::alg(Algebra::field());
        let d = Ring::alg(Algebra::split(2));
        let diag = RingHom::alg(&q, &d, crate::qmat::QMat::from_i64(&[&[1], &[1]])).unwrap();
        let x = RingedSpace::build(&["m", "t"], &[("m", "t")], Backend::FinDimQ, &[("m", q.clone()), ("t", d.clone())], &[("m", "t", diag.clone())]).unwrap();
        let o = SheafModule::structure(&x);
        let g = global_sections(&o).unwrap();
        assert_eq!(g.module.size(), 1);
        let mt = tilde(&x, &Module::free(&q, 2), vec![RingHom::identity(&q), diag]).unwrap();
        assert_eq!(mt.stalk(1).size(), 4);
        assert_eq!(is_quasicoherent(&mt, None).unwrap().value, Value::Yes);
        let push = pushforward(&Morphism::structure(&x), &o).unwrap();
        assert_eq!(push.stalk(0).size(), 1);
        let oo = tensor_modules(&o, &o).unwrap();
        assert_eq!(oo.stalk(1).size(), 2);
    }

    #[test]
    fn structure_coherence_per_edge() {
        let e = Ring::alg(Algebra::dual_numbers());
        let q = Ring::alg(Algebra::field());
        let h = RingHom::alg(&e, &q, crate::qmat::QMat::from_i64(&[&[1, 0]])).unwrap();
        let x = RingedSpace::build(&["a", "b"], &[("a", "b")], Backend::FinDimQ, &[("a", e), ("b", q)], &[("a", "b", h)]).unwrap();
        assert!(structure_coherent(&x).is_no());
        assert_eq!(structure_coherent(&chain2()).value, Value::Yes);
    }
}
