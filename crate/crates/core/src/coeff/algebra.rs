//! Commutative finite-dimensional Q-algebras given by structure constants,
//! their homomorphisms and their finite-dimensional modules.
//!
//! Modules are stored concretely: a Q-vector space together with the action
//! matrix of every basis element of the algebra.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::Search;
use crate::qmat::{rat, QMat, Quotient, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    dim: usize,
    /// `left[i]` is multiplication by `e_i`.
    left: Vec<QMat>,
    unit: Vec<Rat>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, unit {:?})", self.dim, self.unit.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl Algebra {
    /// From the products `e_i e_j` (as coordinate vectors) and the unit.
    pub fn new(products: &[Vec<Vec<Rat>>], unit: Vec<Rat>) -> Result<Algebra> {
        let dim = unit.len();
        if products.len() != dim || products.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidRing("structure constants have the wrong shape".into()));
        }
        let left = (0..dim).map(|i| QMat::from_cols(&products[i], dim)).collect();
        Algebra::from_left(left, unit)
    }

    pub fn from_left(left: Vec<QMat>, unit: Vec<Rat>) -> Result<Algebra> {
        let dim = unit.len();
        let a = Algebra { dim, left, unit };
        for i in 0..dim {
            for j in 0..dim {
                if a.left[i].col(j) != a.left[j].col(i) {
                    return Err(Error::InvalidRing(format!("e{} e{} != e{} e{}", i, j, j, i)));
                }
                // L_{e_i e_j} = L_i L_j
                if a.lmul(&a.left[i].col(j)) != a.left[i].mul(&a.left[j]) {
                    return Err(Error::InvalidRing(format!("associativity fails at e{}, e{}", i, j)));
                }
            }
        }
        if dim > 0 && a.lmul(&a.unit) != QMat::identity(dim) {
            return Err(Error::InvalidRing("the given unit is not a unit".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn basis_action(&self, i: usize) -> &QMat {
        &self.left[i]
    }

    /// Multiplication by an element.
    pub fn lmul(&self, a: &[Rat]) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left[i].scale(c));
            }
        }
        m
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        self.lmul(a).mul_vec(b)
    }

    pub fn product(&self, i: usize, j: usize) -> Vec<Rat> {
        self.left[i].col(j)
    }

    /// The field Q.
    pub fn field() -> Algebra {
        Algebra { dim: 1, left: vec![QMat::identity(1)], unit: vec![rat(1)] }
    }

    /// The zero ring.
    pub fn zero_ring() -> Algebra {
        Algebra { dim: 0, left: Vec::new(), unit: Vec::new() }
    }

    /// `Q[x]/(x^n)` on the basis `1, x, ..., x^{n-1}`.
    pub fn truncated(n: usize) -> Algebra {
        assert!(n >= 1);
        let left = (0..n)
            .map(|i| {
                let mut m = QMat::zeros(n, n);
                for j in 0..n {
                    if i + j < n {
                        m.set(i + j, j, rat(1));
                    }
                }
                m
            })
            .collect();
        let mut unit = vec![rat(0); n];
        unit[0] = rat(1);
        Algebra { dim: n, left, unit }
    }

    /// `Q[e]/(e^2)`.
    pub fn dual_numbers() -> Algebra {
        Algebra::truncated(2)
    }

    /// `Q[x]/(x^2 - d)` on the basis `1, x`.
    pub fn quadratic(d: i64) -> Algebra {
        let l0 = QMat::identity(2);
        let l1 = QMat::from_i64(&[&[0, d], &[1, 0]]);
        Algebra { dim: 2, left: vec![l0, l1], unit: vec![rat(1), rat(0)] }
    }

    /// Product ring on the concatenated bases.
    pub fn product_of(parts: &[&Algebra]) -> Algebra {
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut left = Vec::new();
        let mut unit = Vec::new();
        let mut off = 0;
        for p in parts {
            for l in &p.left {
                let mut m = QMat::zeros(dim, dim);
                m.add_block(off, off, l);
                left.push(m);
            }
            unit.extend(p.unit.iter().cloned());
            off += p.dim;
        }
        Algebra { dim, left, unit }
    }

    /// `Q^n` with orthogonal idempotent basis.
    pub fn split(n: usize) -> Algebra {
        let f = Algebra::field();
        let parts: Vec<&Algebra> = (0..n).map(|_| &f).collect();
        Algebra::product_of(&parts)
    }

    /// Basis of the Jacobson radical: the kernel of the trace form.
    pub fn radical(&self) -> QMat {
        let mut t = QMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let v = self.left[i].mul(&self.left[j]).trace();
                t.set(i, j, v.clone());
                t.set(j, i, v);
            }
        }
        t.nullspace()
    }

    /// Dimensions of `J, J^2, J^3, ...` down to zero.
    pub fn radical_filtration(&self) -> Vec<usize> {
        let j = self.radical();
        let mut out = Vec::new();
        let mut cur = j.clone();
        while cur.cols() > 0 {
            out.push(cur.cols());
            let mut prods = Vec::new();
            for a in 0..cur.cols() {
                let l = self.lmul(&cur.col(a));
                for b in 0..j.cols() {
                    prods.push(l.mul_vec(&j.col(b)));
                }
            }
            let m = QMat::from_cols(&prods, self.dim);
            cur = m.column_space();
            if out.len() > self.dim {
                break;
            }
        }
        out
    }

    /// Multiplication table rendered `e_i*e_j = ...`, used by printers.
    pub fn table(&self) -> Vec<Vec<Vec<Rat>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.product(i, j)).collect()).collect()
    }
}

/// A unital ring homomorphism, `mat` is `tgt.dim x src.dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgHom {
    pub src: Arc<Algebra>,
    pub tgt: Arc<Algebra>,
    pub mat: QMat,
}

impl AlgHom {
    pub fn new(src: Arc<Algebra>, tgt: Arc<Algebra>, mat: QMat) -> Result<AlgHom> {
        if mat.rows() != tgt.dim || mat.cols() != src.dim {
            return Err(Error::InvalidHom(format!(
                "matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                tgt.dim,
                src.dim
            )));
        }
        if mat.mul_vec(&src.unit) != tgt.unit {
            return Err(Error::InvalidHom("unit not preserved".into()));
        }
        for i in 0..src.dim {
            let hi = tgt.lmul(&mat.col(i));
            if mat.mul(&src.left[i]) != hi.mul(&mat) {
                return Err(Error::InvalidHom(format!("not multiplicative on e{}", i)));
            }
        }
        Ok(AlgHom { src, tgt, mat })
    }

    pub fn identity(a: &Arc<Algebra>) -> AlgHom {
        AlgHom { src: a.clone(), tgt: a.clone(), mat: QMat::identity(a.dim) }
    }

    /// The structure map `Q -> A`.
    pub fn structure(a: &Arc<Algebra>) -> AlgHom {
        AlgHom { src: Arc::new(Algebra::field()), tgt: a.clone(), mat: QMat::from_cols(&[a.unit.clone()], a.dim) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AlgHom) -> AlgHom {
        AlgHom { src: first.src.clone(), tgt: self.tgt.clone(), mat: self.mat.mul(&first.mat) }
    }

    pub fn apply(&self, a: &[Rat]) -> Vec<Rat> {
        self.mat.mul_vec(a)
    }

    pub fn inverse(&self) -> Option<AlgHom> {
        let inv = self.mat.inverse()?;
        Some(AlgHom { src: self.tgt.clone(), tgt: self.src.clone(), mat: inv })
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim == self.tgt.dim && self.mat.rank() == self.src.dim
    }

    /// Whether the target is flat over the source: `Tor_1(A/J, B) = 0`,
    /// i.e. `J ⊗_A B -> B` is injective.
    pub fn is_flat(&self) -> bool {
        let a = &self.src;
        let j = a.radical();
        if j.cols() == 0 {
            return true;
        }
        let jm = AlgModule::ideal(a, &j);
        let (jb, q) = jm.base_change(self);
        if jb.dim == 0 {
            return true;
        }
        // (j_s ⊗ t_u) -> h(j_s) t_u
        let db = self.tgt.dim;
        let mut cols = Vec::with_capacity(j.cols() * db);
        for s in 0..j.cols() {
            let hj = self.tgt.lmul(&self.apply(&j.col(s)));
            for u in 0..db {
                cols.push(hj.col(u));
            }
        }
        let v = QMat::from_cols(&cols, db);
        v.mul(&q.s).rank() == jb.dim
    }
}

/// Finite-dimensional module over an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgModule {
    pub ring: Arc<Algebra>,
    pub dim: usize,
    /// Action of each basis element of the ring.
    pub act: Vec<QMat>,
}

impl AlgModule {
    pub fn new(ring: Arc<Algebra>, act: Vec<QMat>) -> Result<AlgModule> {
        if act.len() != ring.dim {
            return Err(Error::InvalidModule(format!("{} action matrices for a ring of dimension {}", act.len(), ring.dim)));
        }
        let dim = act.first().map_or(0, |m| m.rows());
        let m = AlgModule { ring, dim, act };
        for a in &m.act {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule("action matrices have inconsistent sizes".into()));
            }
        }
        if m.ring.dim > 0 && m.action_of(&m.ring.unit) != QMat::identity(dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..m.ring.dim {
            for j in 0..m.ring.dim {
                if m.act[i].mul(&m.act[j]) != m.action_of(&m.ring.product(i, j)) {
                    return Err(Error::InvalidModule(format!("action is not associative at e{}, e{}", i, j)));
                }
            }
        }
        Ok(m)
    }

    pub fn free(ring: &Arc<Algebra>, n: usize) -> AlgModule {
        let act = (0..ring.dim).map(|i| QMat::identity(n).kron(&ring.left[i])).collect();
        AlgModule { ring: ring.clone(), dim: n * ring.dim, act }
    }

    pub fn zero(ring: &Arc<Algebra>) -> AlgModule {
        AlgModule { ring: ring.clone(), dim: 0, act: vec![QMat::zeros(0, 0); ring.dim] }
    }

    /// The ideal spanned by the columns of `basis` (assumed closed under multiplication by the ring).
    pub fn ideal(ring: &Arc<Algebra>, basis: &QMat) -> AlgModule {
        let act = (0..ring.dim)
            .map(|i| basis.solve(&ring.left[i].mul(basis)).expect("columns span an ideal"))
            .collect();
        AlgModule { ring: ring.clone(), dim: basis.cols(), act }
    }

    /// Quotient `A / I` for the ideal spanned by the columns of `basis`.
    pub fn quotient_ring_module(ring: &Arc<Algebra>, basis: &QMat) -> AlgModule {
        let q = Quotient::new(ring.dim, basis);
        let act = (0..ring.dim).map(|i| q.p.mul(&ring.left[i]).mul(&q.s)).collect();
        AlgModule { ring: ring.clone(), dim: q.dim(), act }
    }

    pub fn action_of(&self, a: &[Rat]) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.act[i].scale(c));
            }
        }
        m
    }

    /// Whether `f: self -> other` is linear over `h: self.ring -> other.ring`.
    pub fn is_semilinear(&self, f: &QMat, other: &AlgModule, h: &AlgHom) -> bool {
        if f.rows() != other.dim || f.cols() != self.dim {
            return false;
        }
        (0..self.ring.dim).all(|i| f.mul(&self.act[i]) == other.action_of(&h.mat.col(i)).mul(f))
    }

    /// The same space as a module over `h.src`.
    pub fn restrict_scalars(&self, h: &AlgHom) -> AlgModule {
        let act = (0..h.src.dim).map(|i| self.action_of(&h.mat.col(i))).collect();
        AlgModule { ring: h.src.clone(), dim: self.dim, act }
    }

    /// `self ⊗_A B` along `h: A -> B`, as a quotient of `self ⊗_Q B`
    /// (index `s * dim B + u`).
    pub fn base_change(&self, h: &AlgHom) -> (AlgModule, Quotient) {
        let (n, db) = (self.dim, h.tgt.dim);
        let big = n * db;
        let mut rels = Vec::new();
        for i in 0..self.ring.dim {
            let hl = h.tgt.lmul(&h.mat.col(i));
            for s in 0..n {
                for u in 0..db {
                    let mut v = vec![Rat::zero(); big];
                    for r in 0..n {
                        let c = self.act[i].get(r, s);
                        if !c.is_zero() {
                            v[r * db + u] += c;
                        }
                    }
                    for w in 0..db {
                        let c = hl.get(w, u);
                        if !c.is_zero() {
                            v[s * db + w] -= c;
                        }
                    }
                    if v.iter().any(|x| !x.is_zero()) {
                        rels.push(v);
                    }
                }
            }
        }
        let w = QMat::from_cols(&rels, big);
        let q = Quotient::new(big, &w);
        let act = (0..db)
            .map(|k| q.p.mul(&QMat::identity(n).kron(&h.tgt.left[k])).mul(&q.s))
            .collect();
        (AlgModule { ring: h.tgt.clone(), dim: q.dim(), act }, q)
    }

    /// `self ⊗_A other` over a common ring, index `s * other.dim + t`.
    pub fn tensor(&self, other: &AlgModule) -> (AlgModule, Quotient) {
        let (n, m) = (self.dim, other.dim);
        let mut rels = Vec::new();
        for i in 0..self.ring.dim {
            let d = self.act[i].kron(&QMat::identity(m)).sub(&QMat::identity(n).kron(&other.act[i]));
            for c in 0..d.cols() {
                let v = d.col(c);
                if v.iter().any(|x| !x.is_zero()) {
                    rels.push(v);
                }
            }
        }
        let w = QMat::from_cols(&rels, n * m);
        let q = Quotient::new(n * m, &w);
        let act = (0..self.ring.dim)
            .map(|i| q.p.mul(&self.act[i].kron(&QMat::identity(m))).mul(&q.s))
            .collect();
        (AlgModule { ring: self.ring.clone(), dim: q.dim(), act }, q)
    }
}

/// `A1 ⊗_{R} A2` for `h1: R -> A1`, `h2: R -> A2`, with the two injections
/// and the section used to build universal maps out of it.
#[derive(Clone, Debug)]
pub struct AlgTensor {
    pub ring: Arc<Algebra>,
    pub i1: AlgHom,
    pub i2: AlgHom,
    s: QMat,
    d2: usize,
}

impl AlgTensor {
    pub fn new(h1: &AlgHom, h2: &AlgHom) -> Result<AlgTensor> {
        if h1.src != h2.src {
            return Err(Error::InvalidHom("tensor product over different base rings".into()));
        }
        let a1 = AlgModule::free(&h1.tgt, 1).restrict_scalars(h1);
        let (_, q) = a1.base_change(h2);
        let (d1, d2) = (h1.tgt.dim, h2.tgt.dim);
        let n = q.dim();
        let mut left = Vec::with_capacity(n);
        for k in 0..n {
            let rep = q.s.col(k);
            let mut l = QMat::zeros(d1 * d2, d1 * d2);
            for (idx, c) in rep.iter().enumerate() {
                if !c.is_zero() {
                    let (i, u) = (idx / d2, idx % d2);
                    l = l.add(&h1.tgt.left[i].kron(&h2.tgt.left[u]).scale(c));
                }
            }
            left.push(q.p.mul(&l).mul(&q.s));
        }
        let mut one = vec![Rat::zero(); d1 * d2];
        for i in 0..d1 {
            for u in 0..d2 {
                let c = &h1.tgt.unit[i] * &h2.tgt.unit[u];
                one[i * d2 + u] = c;
            }
        }
        let unit = q.p.mul_vec(&one);
        let ring = Arc::new(Algebra::from_left(left, unit)?);
        let mut c1 = Vec::new();
        for i in 0..d1 {
            let mut v = vec![Rat::zero(); d1 * d2];
            for u in 0..d2 {
                v[i * d2 + u] = h2.tgt.unit[u].clone();
            }
            c1.push(q.p.mul_vec(&v));
        }
        let mut c2 = Vec::new();
        for u in 0..d2 {
            let mut v = vec![Rat::zero(); d1 * d2];
            for i in 0..d1 {
                v[i * d2 + u] = h1.tgt.unit[i].clone();
            }
            c2.push(q.p.mul_vec(&v));
        }
        let i1 = AlgHom::new(h1.tgt.clone(), ring.clone(), QMat::from_cols(&c1, n))?;
        let i2 = AlgHom::new(h2.tgt.clone(), ring.clone(), QMat::from_cols(&c2, n))?;
        Ok(AlgTensor { ring, i1, i2, s: q.s, d2 })
    }

    /// The map out of the tensor product induced by `u1: A1 -> C`, `u2: A2 -> C`.
    pub fn universal(&self, u1: &AlgHom, u2: &AlgHom) -> Result<AlgHom> {
        if u1.tgt != u2.tgt {
            return Err(Error::InvalidHom("universal map into different rings".into()));
        }
        let c = &u1.tgt;
        let d1 = u1.src.dim;
        let mut cols = Vec::with_capacity(d1 * self.d2);
        for i in 0..d1 {
            let a = u1.mat.col(i);
            for u in 0..self.d2 {
                cols.push(c.mul(&a, &u2.mat.col(u)));
            }
        }
        let v = QMat::from_cols(&cols, c.dim);
        AlgHom::new(self.ring.clone(), c.clone(), v.mul(&self.s))
    }
}

/// Minimal polynomial of `x`, monic, coefficients from the constant term up.
pub fn min_poly(a: &Algebra, x: &[Rat]) -> Vec<Rat> {
    let mut pows = vec![a.unit.clone()];
    loop {
        let next = a.mul(pows.last().expect("nonempty"), x);
        let m = QMat::from_cols(&pows, a.dim);
        if let Some(c) = m.solve(&QMat::column(&next)) {
            let mut poly: Vec<Rat> = c.col(0).iter().map(|v| -v.clone()).collect();
            poly.push(Rat::one());
            return poly;
        }
        pows.push(next);
    }
}

/// Basis elements generating `a` as an algebra, a spanning set of words in
/// them, and the matrix expressing basis vectors in those words.
struct Presentation {
    gens: Vec<usize>,
    words: Vec<Vec<usize>>,
    express: QMat,
}

fn present(a: &Algebra) -> Presentation {
    let d = a.dim;
    let mut vecs = vec![a.unit.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut gens = Vec::new();
    let independent = |vecs: &Vec<Vec<Rat>>, v: &Vec<Rat>| {
        let mut cols = vecs.clone();
        cols.push(v.clone());
        QMat::from_cols(&cols, d).rank() == cols.len()
    };
    for i in 0..d {
        if vecs.len() == d {
            break;
        }
        let mut e = vec![Rat::zero(); d];
        e[i] = Rat::one();
        if !independent(&vecs, &e) {
            continue;
        }
        gens.push(i);
        // close the span under multiplication by all generators so far
        let mut k = 0;
        while k < vecs.len() {
            for (g, &gi) in gens.iter().enumerate() {
                let mut ge = vec![Rat::zero(); d];
                ge[gi] = Rat::one();
                let v = a.mul(&vecs[k], &ge);
                if v.iter().any(|x| !x.is_zero()) && independent(&vecs, &v) {
                    let mut w = words[k].clone();
                    w.push(g);
                    vecs.push(v);
                    words.push(w);
                }
            }
            k += 1;
        }
    }
    let express = QMat::from_cols(&vecs, d).inverse().expect("words span the algebra");
    Presentation { gens, words, express }
}

/// Isomorphisms `a -> b` sending each algebra generator of `a` to an element
/// of `b` with coordinates in `{-1, 0, 1}` and the same minimal polynomial,
/// visited in a fixed order. `visit` returns `false` to stop.
///
/// Returns whether the enumeration completed inside the budget.
pub fn for_each_iso_candidate(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    budget: usize,
    mut visit: impl FnMut(AlgHom) -> bool,
) -> bool {
    if a.dim != b.dim {
        return true;
    }
    if a == b && !visit(AlgHom::identity(a)) {
        return true;
    }
    if a.dim == 0 || a.radical_filtration() != b.radical_filtration() {
        return true;
    }
    let d = a.dim;
    if 3usize.saturating_pow(d as u32) > budget {
        return false;
    }
    let pres = present(a);
    let mut grid: Vec<Vec<Rat>> = Vec::new();
    let mut digits = vec![0u8; d];
    loop {
        let v: Vec<Rat> = digits.iter().map(|&x| rat(x as i64 - 1)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            grid.push(v);
        }
        let mut k = 0;
        while k < d {
            digits[k] += 1;
            if digits[k] < 3 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    let cands: Vec<Vec<&Vec<Rat>>> = pres
        .gens
        .iter()
        .map(|&gi| {
            let mut e = vec![Rat::zero(); d];
            e[gi] = Rat::one();
            let mp = min_poly(a, &e);
            grid.iter().filter(|c| min_poly(b, c) == mp).collect()
        })
        .collect();
    let mut spent = 0usize;
    let mut choice = vec![0usize; pres.gens.len()];
    if cands.iter().any(|c| c.is_empty()) {
        return true;
    }
    loop {
        spent += 1;
        if spent > budget {
            return false;
        }
        let imgs: Vec<&Vec<Rat>> = choice.iter().zip(&cands).map(|(&k, c)| c[k]).collect();
        let cols: Vec<Vec<Rat>> = pres
            .words
            .iter()
            .map(|w| w.iter().fold(b.unit.clone(), |acc, &g| b.mul(&acc, imgs[g])))
            .collect();
        let m = QMat::from_cols(&cols, d).mul(&pres.express);
        if m.rank() == d && !(a == b && m == QMat::identity(d)) {
            if let Ok(h) = AlgHom::new(a.clone(), b.clone(), m) {
                if !visit(h) {
                    return true;
                }
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return true;
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// First isomorphism found by [`for_each_iso_candidate`].
pub fn iso_search(a: &Arc<Algebra>, b: &Arc<Algebra>, budget: usize) -> Search<AlgHom> {
    if a.dim != b.dim || a.radical_filtration() != b.radical_filtration() {
        return Search::Absent;
    }
    let mut found = None;
    for_each_iso_candidate(a, b, budget, |h| {
        found = Some(h);
        false
    });
    // a miss on the coefficient grid proves nothing
    match found {
        Some(h) => Search::Found(h),
        None => Search::Exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn catalog_validates() {
        for a in [Algebra::field(), Algebra::dual_numbers(), Algebra::split(3), Algebra::truncated(3), Algebra::quadratic(2)] {
            Algebra::from_left(a.left.clone(), a.unit.clone()).unwrap();
        }
        let bad = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(Algebra::from_left(vec![QMat::identity(2), bad.transpose()], vec![rat(1), rat(0)]).is_ok());
        assert!(Algebra::from_left(vec![QMat::identity(2), QMat::identity(2)], vec![rat(1), rat(0)]).is_err());
    }

    #[test]
    fn radical_dimensions() {
        assert_eq!(Algebra::dual_numbers().radical().cols(), 1);
        assert_eq!(Algebra::split(2).radical().cols(), 0);
        assert_eq!(Algebra::truncated(3).radical_filtration(), vec![2, 1]);
    }

    #[test]
    fn flatness_oracles() {
        let qe = arc(Algebra::dual_numbers());
        let q = arc(Algebra::field());
        let quot = AlgHom::new(qe.clone(), q.clone(), QMat::from_i64(&[&[1, 0]])).unwrap();
        assert!(!quot.is_flat());
        let qq = arc(Algebra::split(2));
        let diag = AlgHom::new(q.clone(), qq.clone(), QMat::from_i64(&[&[1], &[1]])).unwrap();
        assert!(diag.is_flat());
        // Q[e] -> Q[e] x Q[e] diagonal is free of rank 2
        let two = arc(Algebra::product_of(&[&qe, &qe]));
        let d2 = AlgHom::new(qe.clone(), two, QMat::from_i64(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]])).unwrap();
        assert!(d2.is_flat());
        // Q[e] -> Q[e] x Q kills e on one factor only: not flat
        let mixed = arc(Algebra::product_of(&[&qe, &q]));
        let m = AlgHom::new(qe.clone(), mixed, QMat::from_i64(&[&[1, 0], &[0, 1], &[1, 0]])).unwrap();
        assert!(!m.is_flat());
    }

    #[test]
    fn base_change_of_residue_field() {
        let qe = arc(Algebra::dual_numbers());
        let q = arc(Algebra::field());
        let quot = AlgHom::new(qe.clone(), q, QMat::from_i64(&[&[1, 0]])).unwrap();
        let res = AlgModule::quotient_ring_module(&qe, &QMat::from_i64(&[&[0], &[1]]));
        assert_eq!(res.dim, 1);
        let (m, _) = res.base_change(&quot);
        assert_eq!(m.dim, 1);
        let (f, _) = AlgModule::free(&qe, 2).base_change(&quot);
        assert_eq!(f.dim, 2);
    }

    #[test]
    fn tensor_of_split_and_dual() {
        let qq = arc(Algebra::split(2));
        let qe = arc(Algebra::dual_numbers());
        let t = AlgTensor::new(&AlgHom::structure(&qq), &AlgHom::structure(&qe)).unwrap();
        assert_eq!(t.ring.dim(), 4);
        assert_eq!(t.ring.radical().cols(), 2);
        let t2 = AlgTensor::new(&AlgHom::structure(&qe), &AlgHom::structure(&qq)).unwrap();
        assert!(iso_search(&t.ring, &t2.ring, 100_000).found().is_some());
        // over the split algebra itself the tensor collapses
        let id = AlgHom::identity(&qq);
        assert_eq!(AlgTensor::new(&id, &id).unwrap().ring.dim(), 2);
    }

    #[test]
    fn universal_map_of_tensor() {
        let qe = arc(Algebra::dual_numbers());
        let s = AlgHom::structure(&qe);
        let t = AlgTensor::new(&s, &s).unwrap();
        assert_eq!(t.ring.dim(), 4);
        let id = AlgHom::identity(&qe);
        let mult = t.universal(&id, &id).unwrap();
        assert_eq!(mult.after(&t.i1), id);
        assert_eq!(mult.after(&t.i2), id);
    }

    #[test]
    fn iso_search_finds_swap() {
        let qq = arc(Algebra::split(2));
        let q2 = arc(Algebra::quadratic(1));
        assert!(iso_search(&q2, &qq, 10_000).found().is_some());
        let qe = arc(Algebra::dual_numbers());
        assert!(matches!(iso_search(&qq, &qe, 10_000), Search::Absent));
    }
}
