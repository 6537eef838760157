//! Ringed finite spaces, their morphisms and fibered products.
//!
//! Restrictions are supplied on covering relations; every other `r_pq` is
//! derived by composing along a path, and all paths are checked to agree.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::Deref;
use std::sync::Arc;

use crate::coeff::{tensor_rings, Algebra, Backend, Mono, Ring, RingHom};
use crate::error::{Error, Result};
use crate::poset::Preorder;
use crate::qmat::{QMat, Rat};
use crate::verdict::Value;

#[derive(Clone, Debug)]
pub struct RingedSpace {
    poset: Preorder,
    backend: Backend,
    rings: Vec<Ring>,
    res: HashMap<(usize, usize), RingHom>,
}

impl PartialEq for RingedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
            && self.backend == other.backend
            && self.rings == other.rings
            && self.poset.hasse().iter().all(|e| self.res.get(e) == other.res.get(e))
    }
}

impl RingedSpace {
    /// Validates the data and derives composite restrictions.
    ///
    /// `given` must contain every covering pair of `poset` (see
    /// [`Preorder::hasse`]); extra pairs are checked against the composites.
    pub fn new(poset: Preorder, backend: Backend, rings: Vec<Ring>, given: BTreeMap<(usize, usize), RingHom>) -> Result<RingedSpace> {
        let n = poset.len();
        if rings.len() != n {
            let missing = poset.ids().get(rings.len()).cloned().unwrap_or_default();
            return Err(Error::MissingRing(missing));
        }
        for (p, r) in rings.iter().enumerate() {
            if r.backend() != backend {
                return Err(Error::BackendMismatch(format!("ring at `{}` is {} but the space is {}", poset.id(p), r.backend(), backend)));
            }
        }
        for (&(p, q), h) in &given {
            if p >= n || q >= n || !poset.leq(p, q) {
                return Err(Error::Mismatch(format!("restriction given for a pair that is not related ({}, {})", p, q)));
            }
            if h.source() != rings[p] || h.target() != rings[q] {
                return Err(Error::InvalidHom(format!("restriction `{}` <= `{}` does not connect the stalk rings", poset.id(p), poset.id(q))));
            }
            if p == q && *h != RingHom::identity(&rings[p]) {
                return Err(Error::IdentityViolated(poset.id(p).to_string()));
            }
        }
        let hasse = poset.hasse();
        for &(p, q) in &hasse {
            if !given.contains_key(&(p, q)) {
                return Err(Error::MissingRestriction(poset.id(p).to_string(), poset.id(q).to_string()));
            }
        }
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &hasse {
            out.entry(a).or_default().push(b);
        }
        let mut res = HashMap::new();
        for p in 0..n {
            res.insert((p, p), RingHom::identity(&rings[p]));
            let mut queue = VecDeque::from([p]);
            let mut seen = vec![false; n];
            seen[p] = true;
            while let Some(a) = queue.pop_front() {
                let Some(next) = out.get(&a) else { continue };
                for &b in next {
                    let via = given[&(a, b)].after(&res[&(p, a)])?;
                    if seen[b] {
                        if res[&(p, b)] != via {
                            return Err(Error::PathDependent(poset.id(p).to_string(), poset.id(b).to_string()));
                        }
                    } else {
                        seen[b] = true;
                        res.insert((p, b), via);
                        queue.push_back(b);
                    }
                }
            }
        }
        for (key, h) in &given {
            if res[key] != *h {
                return Err(Error::PathDependent(poset.id(key.0).to_string(), poset.id(key.1).to_string()));
            }
        }
        Ok(RingedSpace { poset, backend, rings, res })
    }

    /// Build from point ids, covering relations and per-pair restrictions given by id.
    pub fn build(
        points: &[&str],
        relations: &[(&str, &str)],
        backend: Backend,
        rings: &[(&str, Ring)],
        restrictions: &[(&str, &str, RingHom)],
    ) -> Result<RingedSpace> {
        let poset = Preorder::build(points, relations)?;
        let mut rv: Vec<Option<Ring>> = vec![None; poset.len()];
        for (id, r) in rings {
            rv[poset.index(id)?] = Some(r.clone());
        }
        let rings = rv
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::MissingRing(poset.id(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut given = BTreeMap::new();
        for (p, q, h) in restrictions {
            given.insert((poset.index(p)?, poset.index(q)?), h.clone());
        }
        RingedSpace::new(poset, backend, rings, given)
    }

    /// A space whose restrictions are all the canonical maps: identities for
    /// ZConst, inclusions for graded rings.
    pub fn with_canonical_maps(poset: Preorder, backend: Backend, rings: Vec<Ring>) -> Result<RingedSpace> {
        let mut given = BTreeMap::new();
        for (p, q) in poset.hasse() {
            let h = match (&rings[p], &rings[q]) {
                (Ring::Z, Ring::Z) => RingHom::Z,
                (Ring::Mono(a), Ring::Mono(b)) => RingHom::inclusion(a, b)?,
                (a, b) if a == b => RingHom::identity(a),
                _ => return Err(Error::MissingRestriction(poset.id(p).to_string(), poset.id(q).to_string())),
            };
            given.insert((p, q), h);
        }
        RingedSpace::new(poset, backend, rings, given)
    }

    /// The constant ring `Z` on a preorder.
    pub fn topological(poset: Preorder) -> RingedSpace {
        let rings = vec![Ring::Z; poset.len()];
        RingedSpace::with_canonical_maps(poset, Backend::ZConst, rings).expect("constant Z is always valid")
    }

    pub fn poset(&self) -> &Preorder {
        &self.poset
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn id(&self, p: usize) -> &str {
        self.poset.id(p)
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.poset.index(id)
    }

    pub fn ring(&self, p: usize) -> &Ring {
        &self.rings[p]
    }

    pub fn rings(&self) -> &[Ring] {
        &self.rings
    }

    /// `r_pq` for `p <= q`.
    pub fn res(&self, p: usize, q: usize) -> &RingHom {
        self.res.get(&(p, q)).unwrap_or_else(|| panic!("no restriction {} <= {}", self.id(p), self.id(q)))
    }

    /// Restrictions on covering pairs, the data a document records.
    pub fn covering_restrictions(&self) -> Vec<((usize, usize), &RingHom)> {
        self.poset.hasse().into_iter().map(|e| (e, &self.res[&e])).collect()
    }

    /// The induced ringed structure on a subset; the index list maps new
    /// indices to old ones.
    pub fn subspace(&self, subset: &[usize]) -> (RingedSpace, Vec<usize>) {
        let (poset, idx) = self.poset.subspace(subset);
        let rings = idx.iter().map(|&i| self.rings[i].clone()).collect();
        let mut res = HashMap::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if let Some(h) = self.res.get(&(i, j)) {
                    res.insert((a, b), h.clone());
                }
            }
        }
        (RingedSpace { poset, backend: self.backend, rings, res }, idx)
    }

    /// Flatness of every restriction; an error names each relation that is not certified.
    pub fn as_finite_space(&self) -> Result<FiniteSpace> {
        let mut bad = Vec::new();
        for p in 0..self.len() {
            for q in 0..self.len() {
                if p != q && self.poset.leq(p, q) {
                    let v = self.res(p, q).is_flat();
                    if v != Value::Yes {
                        bad.push(format!("`{}` <= `{}` ({})", self.id(p), self.id(q), v));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(FiniteSpace { space: self.clone() })
        } else {
            Err(Error::NotFinite(format!("restrictions not certified flat: {}", bad.join(", "))))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite_space().is_ok()
    }

    /// `O(U)` for an open (or any) subset, with its maps to the stalks in `U`.
    pub fn section_ring(&self, subset: &[usize]) -> Result<SectionRing> {
        let mut u = subset.to_vec();
        u.sort_unstable();
        u.dedup();
        match self.backend {
            Backend::ZConst => {
                if self.poset.components_of(&u).len() != 1 {
                    return Err(Error::Unsupported(format!(
                        "sections of Z over a set with {} connected components are not the ring Z",
                        self.poset.components_of(&u).len()
                    )));
                }
                Ok(SectionRing { ring: Ring::Z, points: u.clone(), maps: vec![RingHom::Z; u.len()] })
            }
            Backend::Graded => {
                if self.poset.components_of(&u).len() != 1 {
                    return Err(Error::Unsupported("graded sections over a disconnected set are not a monomial ring".into()));
                }
                let mut meet: Option<Mono> = None;
                for &p in &u {
                    let m = self.rings[p].as_mono()?.clone();
                    meet = Some(match meet {
                        None => m,
                        Some(acc) => acc.meet(&m),
                    });
                }
                let meet = meet.expect("nonempty");
                let maps = u.iter().map(|&p| RingHom::inclusion(&meet, self.rings[p].as_mono()?)).collect::<Result<Vec<_>>>()?;
                Ok(SectionRing { ring: Ring::Mono(meet), points: u, maps })
            }
            Backend::FinDimQ => self.alg_section_ring(u),
        }
    }

    fn alg_section_ring(&self, u: Vec<usize>) -> Result<SectionRing> {
        if u.is_empty() {
            return Ok(SectionRing { ring: Ring::alg(Algebra::zero_ring()), points: u, maps: Vec::new() });
        }
        let algs: Vec<_> = u.iter().map(|&p| self.rings[p].as_alg().cloned()).collect::<Result<_>>()?;
        let offs: Vec<usize> = algs.iter().scan(0, |acc, a| {
            let s = *acc;
            *acc += a.dim();
            Some(s)
        }).collect();
        let total: usize = algs.iter().map(|a| a.dim()).sum();
        let pos = |p: usize| u.iter().position(|&x| x == p).expect("point in subset");
        let edges = self.poset.hasse_in(&u);
        let rows: usize = edges.iter().map(|&(_, q)| algs[pos(q)].dim()).sum();
        let mut d = QMat::zeros(rows, total);
        let mut r = 0;
        for &(p, q) in &edges {
            let (i, j) = (pos(p), pos(q));
            let h = self.res(p, q).as_alg()?;
            d.add_block(r, offs[i], &h.mat);
            d.add_block(r, offs[j], &QMat::identity(algs[j].dim()).scale(&Rat::from_integer((-1).into())));
            r += algs[j].dim();
        }
        let k = d.nullspace();
        let m = k.cols();
        let split = |v: &[Rat]| -> Vec<Vec<Rat>> { (0..algs.len()).map(|i| v[offs[i]..offs[i] + algs[i].dim()].to_vec()).collect() };
        let mut products = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            let va = split(&k.col(a));
            for b in 0..m {
                let vb = split(&k.col(b));
                let prod: Vec<Rat> = (0..algs.len()).flat_map(|i| algs[i].mul(&va[i], &vb[i])).collect();
                let c = k.solve(&QMat::column(&prod)).expect("sections form a subring");
                products[a][b] = c.col(0);
            }
        }
        let one: Vec<Rat> = algs.iter().flat_map(|a| a.unit().to_vec()).collect();
        let unit = k.solve(&QMat::column(&one)).expect("unit is a section").col(0);
        let ring = Ring::alg(Algebra::new(&products, unit)?);
        let maps = (0..u.len())
            .map(|i| {
                let idx: Vec<usize> = (offs[i]..offs[i] + algs[i].dim()).collect();
                RingHom::alg(&ring, &self.rings[u[i]], k.select_rows(&idx))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SectionRing { ring, points: u, maps })
    }

    /// `A = O(X)` with the structure maps `A -> O_p`.
    pub fn global_sections(&self) -> Result<SectionRing> {
        self.section_ring(&(0..self.len()).collect::<Vec<_>>())
    }
}

/// The ring of sections over a subset and its restriction to each point.
#[derive(Clone, Debug)]
pub struct SectionRing {
    pub ring: Ring,
    pub points: Vec<usize>,
    pub maps: Vec<RingHom>,
}

impl SectionRing {
    pub fn map_to(&self, p: usize) -> &RingHom {
        let i = self.points.iter().position(|&x| x == p).expect("point outside the section set");
        &self.maps[i]
    }

    /// The map `R -> O(U)` whose composite with each restriction is `phis[i]: R -> O_{points[i]}`.
    pub fn factor(&self, source: &Ring, phis: &[RingHom]) -> Result<RingHom> {
        if phis.len() != self.points.len() {
            return Err(Error::Mismatch("one map per point of the section set is required".into()));
        }
        match (&self.ring, source) {
            (Ring::Z, Ring::Z) => Ok(RingHom::Z),
            (Ring::Mono(s), Ring::Mono(r)) => RingHom::inclusion(r, s),
            (Ring::Alg(s), Ring::Alg(r)) => {
                let mut k = QMat::zeros(0, s.dim());
                let mut phi = QMat::zeros(0, r.dim());
                for (h, p) in self.maps.iter().zip(phis) {
                    k = k.vcat(&h.as_alg()?.mat);
                    phi = phi.vcat(&p.as_alg()?.mat);
                }
                let m = k.solve(&phi).ok_or_else(|| Error::InvalidHom("the maps do not glue to a section".into()))?;
                RingHom::alg(source, &self.ring, m)
            }
            _ => Err(Error::BackendMismatch("section ring and source on different backends".into())),
        }
    }
}

/// A ringed space whose restrictions are all certified flat.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpace {
    space: RingedSpace,
}

impl FiniteSpace {
    pub fn space(&self) -> &RingedSpace {
        &self.space
    }

    pub fn into_space(self) -> RingedSpace {
        self.space
    }
}

impl Deref for FiniteSpace {
    type Target = RingedSpace;

    fn deref(&self) -> &RingedSpace {
        &self.space
    }
}

/// The punctual space `(*, A)`.
pub fn punctual(ring: Ring) -> RingedSpace {
    let backend = ring.backend();
    let poset = Preorder::build(&["*"], &[]).expect("one point");
    RingedSpace::new(poset, backend, vec![ring], BTreeMap::new()).expect("punctual space")
}

/// A morphism of ringed spaces: a monotone map and comorphisms `O_{f(x)} -> O_x`.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<RingedSpace>,
    target: Arc<RingedSpace>,
    map: Vec<usize>,
    co: Vec<RingHom>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.co == other.co
    }
}

impl Morphism {
    pub fn new(source: &RingedSpace, target: &RingedSpace, map: Vec<usize>, co: Vec<RingHom>) -> Result<Morphism> {
        Morphism::from_arcs(Arc::new(source.clone()), Arc::new(target.clone()), map, co)
    }

    pub fn from_arcs(source: Arc<RingedSpace>, target: Arc<RingedSpace>, map: Vec<usize>, co: Vec<RingHom>) -> Result<Morphism> {
        if source.backend() != target.backend() {
            return Err(Error::BackendMismatch("morphism between spaces of different backends".into()));
        }
        if map.len() != source.len() || co.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::Mismatch("point map or comorphisms have the wrong length".into()));
        }
        source.poset().is_monotone(target.poset(), &map)?;
        for x in 0..source.len() {
            if co[x].source() != *target.ring(map[x]) || co[x].target() != *source.ring(x) {
                return Err(Error::InvalidHom(format!("comorphism at `{}` does not connect the stalk rings", source.id(x))));
            }
        }
        for (p, q) in source.poset().hasse() {
            let left = source.res(p, q).after(&co[p])?;
            let right = co[q].after(target.res(map[p], map[q]))?;
            if left != right {
                return Err(Error::NonCommutingSquare(source.id(p).to_string(), source.id(q).to_string()));
            }
        }
        Ok(Morphism { source, target, map, co })
    }

    /// Build with the point map given by ids.
    pub fn by_ids(source: &RingedSpace, target: &RingedSpace, pairs: &[(&str, &str)], co: &[(&str, RingHom)]) -> Result<Morphism> {
        let mut map = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            map[source.index(x)?] = target.index(y)?;
        }
        if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Mismatch(format!("no image given for `{}`", source.id(x))));
        }
        let mut cv: Vec<Option<RingHom>> = vec![None; source.len()];
        for (x, h) in co {
            cv[source.index(x)?] = Some(h.clone());
        }
        let co = cv
            .into_iter()
            .enumerate()
            .map(|(x, h)| h.ok_or_else(|| Error::Mismatch(format!("no comorphism given at `{}`", source.id(x)))))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, map, co)
    }

    /// A point map whose comorphisms are the canonical maps (identities on
    /// ZConst, inclusions on graded rings).
    pub fn canonical(source: &RingedSpace, target: &RingedSpace, map: Vec<usize>) -> Result<Morphism> {
        if map.len() != source.len() {
            return Err(Error::Mismatch("point map has the wrong length".into()));
        }
        let co = (0..source.len())
            .map(|x| {
                let (a, b) = (target.ring(map[x]), source.ring(x));
                match (a, b) {
                    (Ring::Z, Ring::Z) => Ok(RingHom::Z),
                    (Ring::Mono(a), Ring::Mono(b)) => RingHom::inclusion(a, b),
                    (a, b) if a == b => Ok(RingHom::identity(a)),
                    _ => Err(Error::InvalidHom(format!("no canonical map into the ring at `{}`", source.id(x)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, map, co)
    }

    pub fn identity(x: &RingedSpace) -> Morphism {
        let co = x.rings().iter().map(RingHom::identity).collect();
        let a = Arc::new(x.clone());
        Morphism { source: a.clone(), target: a, map: (0..x.len()).collect(), co }
    }

    /// The unique morphism to `(*, A)` given by a ring map `A -> O(X)`
    /// presented as maps `A -> O_p`.
    pub fn to_punctual(x: &RingedSpace, ring: Ring, maps: Vec<RingHom>) -> Result<Morphism> {
        let pt = punctual(ring);
        Morphism::new(x, &pt, vec![0; x.len()], maps)
    }

    /// `X -> (*, k)` through the structure maps of the backend.
    pub fn structure(x: &RingedSpace) -> Morphism {
        let base = Ring::base(x.backend());
        let maps = x.rings().iter().map(RingHom::structure).collect();
        Morphism::to_punctual(x, base, maps).expect("structure maps commute with restrictions")
    }

    /// `X -> (*, O(X))`.
    pub fn to_global_sections(x: &RingedSpace) -> Result<Morphism> {
        let a = x.global_sections()?;
        Morphism::to_punctual(x, a.ring.clone(), a.maps.clone())
    }

    /// Inclusion of the subspace on `subset`.
    pub fn inclusion(x: &RingedSpace, subset: &[usize]) -> (RingedSpace, Morphism) {
        let (sub, idx) = x.subspace(subset);
        let co = idx.iter().map(|&i| RingHom::identity(x.ring(i))).collect();
        let m = Morphism { source: Arc::new(sub.clone()), target: Arc::new(x.clone()), map: idx, co };
        (sub, m)
    }

    pub fn source(&self) -> &RingedSpace {
        &self.source
    }

    pub fn target(&self) -> &RingedSpace {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<RingedSpace> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<RingedSpace> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `f#_x : O_{f(x)} -> O_x`.
    pub fn co(&self, x: usize) -> &RingHom {
        &self.co[x]
    }

    pub fn comorphisms(&self) -> &[RingHom] {
        &self.co
    }

    /// The ring map `O_y -> O_x` for `y <= f(x)`.
    pub fn co_from(&self, y: usize, x: usize) -> Result<RingHom> {
        self.co[x].after(self.target.res(y, self.map[x]))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        if *first.target != *self.source {
            return Err(Error::Mismatch("composition of morphisms that do not meet".into()));
        }
        let map = first.map.iter().map(|&y| self.map[y]).collect();
        let co = (0..first.source.len()).map(|x| first.co[x].after(&self.co[first.map[x]])).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), map, co })
    }

    /// Preimage of `U_y`.
    pub fn preimage_of_open(&self, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.target.poset().leq(y, self.map[x])).collect()
    }

    /// Preimage of an arbitrary set of target points.
    pub fn preimage(&self, ys: &[usize]) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| ys.contains(&self.map[x])).collect()
    }
}

/// `X ×_S Y` with its projections.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    pub space: RingedSpace,
    /// Factor indices of each point.
    pub pairs: Vec<(usize, usize)>,
    pub p1: Morphism,
    pub p2: Morphism,
    tensors: Vec<crate::coeff::TensorRing>,
}

impl FiberedProduct {
    pub fn point(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (x, y))
    }

    /// The map into the product induced by `a: T -> X` and `b: T -> Y` with `f a = g b`.
    pub fn universal(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        if a.source() != b.source() {
            return Err(Error::Mismatch("universal map from different sources".into()));
        }
        let t = a.source();
        let mut map = Vec::with_capacity(t.len());
        let mut co = Vec::with_capacity(t.len());
        for z in 0..t.len() {
            let idx = self
                .point(a.apply(z), b.apply(z))
                .ok_or_else(|| Error::Mismatch(format!("`{}` does not land in the fibered product", t.id(z))))?;
            map.push(idx);
            co.push(self.tensors[idx].universal(a.co(z), b.co(z))?);
        }
        Morphism::from_arcs(a.source_arc().clone(), Arc::new(self.space.clone()), map, co)
    }
}

/// `X ×_S Y` for `f: X -> S`, `g: Y -> S`, with stalks `O_x ⊗_{O_s} O_y`.
pub fn fibered_product(f: &Morphism, g: &Morphism) -> Result<FiberedProduct> {
    if f.target() != g.target() {
        return Err(Error::Mismatch("fibered product over different bases".into()));
    }
    let (x, y) = (f.source(), g.source());
    let (poset, pairs) = x.poset().fibered_product(y.poset(), f.target().poset(), f.map(), g.map())?;
    let tensors = pairs.iter().map(|&(a, b)| tensor_rings(f.co(a), g.co(b))).collect::<Result<Vec<_>>>()?;
    let rings: Vec<Ring> = tensors.iter().map(|t| t.ring.clone()).collect();
    let mut given = BTreeMap::new();
    for (i, j) in poset.hasse() {
        let ((a, b), (a2, b2)) = (pairs[i], pairs[j]);
        let u1 = tensors[j].i1.after(x.res(a, a2))?;
        let u2 = tensors[j].i2.after(y.res(b, b2))?;
        given.insert((i, j), tensors[i].universal(&u1, &u2)?);
    }
    let space = RingedSpace::new(poset, x.backend(), rings, given)?;
    let sp = Arc::new(space.clone());
    let p1 = Morphism::from_arcs(sp.clone(), f.source_arc().clone(), pairs.iter().map(|p| p.0).collect(), tensors.iter().map(|t| t.i1.clone()).collect())?;
    let p2 = Morphism::from_arcs(sp, g.source_arc().clone(), pairs.iter().map(|p| p.1).collect(), tensors.iter().map(|t| t.i2.clone()).collect())?;
    Ok(FiberedProduct { space, pairs, p1, p2, tensors })
}

/// `X × Y` over the base ring of the backend.
pub fn product(x: &RingedSpace, y: &RingedSpace) -> Result<FiberedProduct> {
    fibered_product(&Morphism::structure(x), &Morphism::structure(y))
}

/// The graphic `X -> X ×_S Y` of `f: X -> Y`, for structure maps `sx: X -> S`,
/// `sy: Y -> S` with `sy ∘ f = sx`.
pub fn graphic(f: &Morphism, sx: &Morphism, sy: &Morphism) -> Result<(FiberedProduct, Morphism)> {
    if sy.after(f)? != *sx {
        return Err(Error::Mismatch("the morphism is not over the base".into()));
    }
    let fp = fibered_product(sx, sy)?;
    let id = Morphism::identity(f.source());
    let gamma = fp.universal(&id, f)?;
    Ok((fp, gamma))
}

/// The graphic over the base ring of the backend, into `X × Y`.
pub fn graphic_over_base(f: &Morphism) -> Result<(FiberedProduct, Morphism)> {
    graphic(f, &Morphism::structure(f.source()), &Morphism::structure(f.target()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::monomial::parse_mono;

    fn mono(s: &str) -> Ring {
        Ring::Mono(parse_mono(s).unwrap())
    }

    fn p1() -> RingedSpace {
        let poset = Preorder::build(&["x1", "x2", "x12"], &[("x1", "x12"), ("x2", "x12")]).unwrap();
        let rings = vec![mono("k[t]"), mono("k[t,t^-1]"), mono("k[t^-1]")];
        RingedSpace::with_canonical_maps(poset, Backend::Graded, rings).unwrap()
    }

    #[test]
    fn punctual_and_p1_validate() {
        let pt = punctual(Ring::Z);
        assert_eq!(pt.len(), 1);
        let x = p1();
        assert!(x.as_finite_space().is_ok());
        let a = x.global_sections().unwrap();
        assert_eq!(a.ring, mono("k"));
    }

    #[test]
    fn path_dependence_is_rejected() {
        // a < b, c < d with a square whose two composites differ
        let q = Ring::alg(Algebra::split(2));
        let id = RingHom::identity(&q);
        let swap = RingHom::alg(&q, &q, QMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let r = RingedSpace::build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
            Backend::FinDimQ,
            &[("a", q.clone()), ("b", q.clone()), ("c", q.clone()), ("d", q.clone())],
            &[("a", "b", id.clone()), ("a", "c", id.clone()), ("b", "d", id.clone()), ("c", "d", swap)],
        );
        assert!(matches!(r, Err(Error::PathDependent(_, _))));
    }

    #[test]
    fn non_flat_edge_is_named() {
        let qe = Ring::alg(Algebra::dual_numbers());
        let q = Ring::alg(Algebra::field());
        let h = RingHom::alg(&qe, &q, QMat::from_i64(&[&[1, 0]])).unwrap();
        let x = RingedSpace::build(&["a", "b"], &[("a", "b")], Backend::FinDimQ, &[("a", qe), ("b", q)], &[("a", "b", h)]).unwrap();
        let err = x.as_finite_space().unwrap_err();
        assert!(err.to_string().contains("`a` <= `b`"));
    }

    #[test]
    fn section_ring_of_disjoint_points_is_product() {
        let q = Ring::alg(Algebra::field());
        let qe = Ring::alg(Algebra::dual_numbers());
        let x = RingedSpace::build(&["a", "b"], &[], Backend::FinDimQ, &[("a", q), ("b", qe)], &[]).unwrap();
        let a = x.global_sections().unwrap();
        let Ring::Alg(alg) = &a.ring else { panic!() };
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.radical().cols(), 1);
    }

    #[test]
    fn morphism_validation() {
        let x = p1();
        let s = Morphism::structure(&x);
        assert_eq!(s.target().len(), 1);
        // x12 -> x1 collapses with no compatible comorphism (k[t] is not inside k[t^-1])
        let bad = Morphism::canonical(&x, &x, vec![0, 0, 0]);
        assert!(bad.is_err());
        let id = Morphism::identity(&x);
        assert_eq!(id.after(&id).unwrap(), id);
    }

    #[test]
    fn product_of_p1s() {
        let x = p1();
        let poset = Preorder::build(&["y1", "y2", "y12"], &[("y1", "y12"), ("y2", "y12")]).unwrap();
        let y = RingedSpace::with_canonical_maps(poset, Backend::Graded, vec![mono("k[s]"), mono("k[s,s^-1]"), mono("k[s^-1]")]).unwrap();
        let fp = product(&x, &y).unwrap();
        assert_eq!(fp.space.len(), 9);
        let corner = fp.point(x.index("x1").unwrap(), y.index("y1").unwrap()).unwrap();
        assert_eq!(*fp.space.ring(corner), mono("k[s,t]"));
        let generic = fp.point(x.index("x12").unwrap(), y.index("y12").unwrap()).unwrap();
        assert_eq!(*fp.space.ring(generic), mono("k[s,s^-1,t,t^-1]"));
        // the product of P^1 with itself in one variable needs a rename
        assert!(product(&x, &x).is_err());
    }

    #[test]
    fn graphic_is_a_section() {
        let x = p1();
        let f = Morphism::structure(&x);
        let (fp, gamma) = graphic_over_base(&f).unwrap();
        assert_eq!(fp.p1.after(&gamma).unwrap(), Morphism::identity(&x));
        assert_eq!(fp.p2.after(&gamma).unwrap(), f);
    }
}
