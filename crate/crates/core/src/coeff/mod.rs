//! Coefficient backends: rings, ring maps and modules behind one interface.
//!
//! * ZConst: every ring is `Z`, modules are finitely presented abelian groups.
//! * FinDimQ: commutative finite-dimensional Q-algebras.
//! * Graded: multigraded monomial rings with inclusions as the only maps.
//!
//! Module maps are plain matrices ([`Mat`]); the ring map they are linear
//! over is passed alongside wherever it matters.

pub mod algebra;
pub mod monomial;
pub mod zconst;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lin::{Invariants, Kind, LinObj, Mat, Slicer};
use crate::poset::Search;
use crate::qmat::{rat, QMat, Quotient};
use crate::verdict::{Check, Value, Window};
use crate::zmat::ZMat;

pub use algebra::{AlgHom, AlgModule, AlgTensor, Algebra};
pub use monomial::{Axis, Degree, Mono, MonoModule, Summand};
pub use zconst::ZPres;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    #[serde(rename = "zconst")]
    ZConst,
    #[serde(rename = "findimq")]
    FinDimQ,
    #[serde(rename = "graded")]
    Graded,
}

impl Backend {
    pub fn kind(self) -> Kind {
        match self {
            Backend::ZConst => Kind::Z,
            Backend::FinDimQ => Kind::Q,
            Backend::Graded => Kind::G,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::ZConst => "zconst",
            Backend::FinDimQ => "findimq",
            Backend::Graded => "graded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Alg(Arc<Algebra>),
    Mono(Mono),
}

impl Ring {
    pub fn backend(&self) -> Backend {
        match self {
            Ring::Z => Backend::ZConst,
            Ring::Alg(_) => Backend::FinDimQ,
            Ring::Mono(_) => Backend::Graded,
        }
    }

    pub fn kind(&self) -> Kind {
        self.backend().kind()
    }

    pub fn alg(a: Algebra) -> Ring {
        Ring::Alg(Arc::new(a))
    }

    /// The base ring of the backend (`Z`, `Q`, `k`).
    pub fn base(backend: Backend) -> Ring {
        match backend {
            Backend::ZConst => Ring::Z,
            Backend::FinDimQ => Ring::alg(Algebra::field()),
            Backend::Graded => Ring::Mono(Mono::constants()),
        }
    }

    pub fn as_alg(&self) -> Result<&Arc<Algebra>> {
        match self {
            Ring::Alg(a) => Ok(a),
            _ => Err(Error::BackendMismatch(format!("expected an algebra, got {}", self))),
        }
    }

    pub fn as_mono(&self) -> Result<&Mono> {
        match self {
            Ring::Mono(m) => Ok(m),
            _ => Err(Error::BackendMismatch(format!("expected a monomial ring, got {}", self))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => f.write_str("Z"),
            Ring::Alg(a) => write!(f, "Q-algebra of dimension {}", a.dim()),
            Ring::Mono(m) => write!(f, "{}", m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingHom {
    Z,
    Alg(AlgHom),
    /// The inclusion `src ⊆ tgt`.
    Mono { src: Mono, tgt: Mono },
}

impl RingHom {
    pub fn identity(r: &Ring) -> RingHom {
        match r {
            Ring::Z => RingHom::Z,
            Ring::Alg(a) => RingHom::Alg(AlgHom::identity(a)),
            Ring::Mono(m) => RingHom::Mono { src: m.clone(), tgt: m.clone() },
        }
    }

    /// Structure map from the base ring of the backend.
    pub fn structure(r: &Ring) -> RingHom {
        match r {
            Ring::Z => RingHom::Z,
            Ring::Alg(a) => RingHom::Alg(AlgHom::structure(a)),
            Ring::Mono(m) => RingHom::Mono { src: Mono::constants(), tgt: m.clone() },
        }
    }

    pub fn alg(src: &Ring, tgt: &Ring, mat: QMat) -> Result<RingHom> {
        Ok(RingHom::Alg(AlgHom::new(src.as_alg()?.clone(), tgt.as_alg()?.clone(), mat)?))
    }

    pub fn inclusion(src: &Mono, tgt: &Mono) -> Result<RingHom> {
        if !src.is_subring_of(tgt) {
            return Err(Error::InvalidHom(format!("{} is not contained in {}", src, tgt)));
        }
        Ok(RingHom::Mono { src: src.clone(), tgt: tgt.clone() })
    }

    pub fn source(&self) -> Ring {
        match self {
            RingHom::Z => Ring::Z,
            RingHom::Alg(h) => Ring::Alg(h.src.clone()),
            RingHom::Mono { src, .. } => Ring::Mono(src.clone()),
        }
    }

    pub fn target(&self) -> Ring {
        match self {
            RingHom::Z => Ring::Z,
            RingHom::Alg(h) => Ring::Alg(h.tgt.clone()),
            RingHom::Mono { tgt, .. } => Ring::Mono(tgt.clone()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RingHom) -> Result<RingHom> {
        if first.target() != self.source() {
            return Err(Error::InvalidHom("composition of maps that do not meet".into()));
        }
        Ok(match (self, first) {
            (RingHom::Z, RingHom::Z) => RingHom::Z,
            (RingHom::Alg(g), RingHom::Alg(f)) => RingHom::Alg(g.after(f)),
            (RingHom::Mono { tgt, .. }, RingHom::Mono { src, .. }) => RingHom::Mono { src: src.clone(), tgt: tgt.clone() },
            _ => return Err(Error::BackendMismatch("composition across backends".into())),
        })
    }

    pub fn is_iso(&self) -> bool {
        match self {
            RingHom::Z => true,
            RingHom::Alg(h) => h.is_iso(),
            RingHom::Mono { src, tgt } => src == tgt,
        }
    }

    pub fn inverse(&self) -> Option<RingHom> {
        match self {
            RingHom::Z => Some(RingHom::Z),
            RingHom::Alg(h) => h.inverse().map(RingHom::Alg),
            RingHom::Mono { src, tgt } if src == tgt => Some(self.clone()),
            RingHom::Mono { .. } => None,
        }
    }

    /// Flatness of the target over the source.
    ///
    /// Monomial inclusions are flat axis by axis: each step adjoins a free
    /// variable or inverts one.
    pub fn is_flat(&self) -> Value {
        match self {
            RingHom::Z => Value::Yes,
            RingHom::Alg(h) => {
                if h.is_flat() {
                    Value::Yes
                } else {
                    Value::No
                }
            }
            RingHom::Mono { .. } => Value::Yes,
        }
    }

    /// The action of a source element on the target as a matrix, for FinDimQ.
    pub fn as_alg(&self) -> Result<&AlgHom> {
        match self {
            RingHom::Alg(h) => Ok(h),
            _ => Err(Error::BackendMismatch("expected an algebra map".into())),
        }
    }
}

/// `R1 ⊗_R0 R2` with its injections.
#[derive(Clone, Debug)]
pub struct TensorRing {
    pub ring: Ring,
    pub i1: RingHom,
    pub i2: RingHom,
    alg: Option<AlgTensor>,
}

impl TensorRing {
    /// The map `R1 ⊗ R2 -> C` induced by `u1: R1 -> C` and `u2: R2 -> C`.
    pub fn universal(&self, u1: &RingHom, u2: &RingHom) -> Result<RingHom> {
        if u1.target() != u2.target() || u1.source() != self.i1.source() || u2.source() != self.i2.source() {
            return Err(Error::InvalidHom("universal map data does not match the tensor factors".into()));
        }
        match (&self.ring, u1, u2) {
            (Ring::Z, _, _) => Ok(RingHom::Z),
            (Ring::Alg(_), RingHom::Alg(a), RingHom::Alg(b)) => {
                Ok(RingHom::Alg(self.alg.as_ref().expect("algebra tensor").universal(a, b)?))
            }
            (Ring::Mono(m), RingHom::Mono { tgt, .. }, _) => RingHom::inclusion(m, tgt),
            _ => Err(Error::BackendMismatch("universal map across backends".into())),
        }
    }
}

pub fn tensor_rings(h1: &RingHom, h2: &RingHom) -> Result<TensorRing> {
    if h1.source() != h2.source() {
        return Err(Error::InvalidHom("tensor product over different base rings".into()));
    }
    match (h1, h2) {
        (RingHom::Z, RingHom::Z) => Ok(TensorRing { ring: Ring::Z, i1: RingHom::Z, i2: RingHom::Z, alg: None }),
        (RingHom::Alg(a), RingHom::Alg(b)) => {
            let t = AlgTensor::new(a, b)?;
            Ok(TensorRing {
                ring: Ring::Alg(t.ring.clone()),
                i1: RingHom::Alg(t.i1.clone()),
                i2: RingHom::Alg(t.i2.clone()),
                alg: Some(t),
            })
        }
        (RingHom::Mono { src, tgt: a }, RingHom::Mono { tgt: b, .. }) => {
            let m = Mono::tensor_over(src, a, b)?;
            Ok(TensorRing {
                i1: RingHom::inclusion(a, &m)?,
                i2: RingHom::inclusion(b, &m)?,
                ring: Ring::Mono(m),
                alg: None,
            })
        }
        _ => Err(Error::BackendMismatch("tensor across backends".into())),
    }
}

/// Isomorphisms `a -> b` in a fixed order; returns whether the enumeration completed.
pub fn for_each_ring_iso(a: &Ring, b: &Ring, budget: usize, mut visit: impl FnMut(RingHom) -> bool) -> bool {
    match (a, b) {
        (Ring::Z, Ring::Z) => {
            visit(RingHom::Z);
            true
        }
        (Ring::Alg(x), Ring::Alg(y)) => algebra::for_each_iso_candidate(x, y, budget, |h| visit(RingHom::Alg(h))),
        (Ring::Mono(x), Ring::Mono(y)) => {
            if x == y {
                visit(RingHom::identity(a));
            }
            true
        }
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Module {
    Z(ZPres),
    Alg(AlgModule),
    Mono(MonoModule),
}

impl Module {
    pub fn ring(&self) -> Ring {
        match self {
            Module::Z(_) => Ring::Z,
            Module::Alg(m) => Ring::Alg(m.ring.clone()),
            Module::Mono(m) => Ring::Mono(m.ring.clone()),
        }
    }

    pub fn kind(&self) -> Kind {
        self.ring().kind()
    }

    /// `R^n`; for monomial rings all shifts are zero.
    pub fn free(ring: &Ring, n: usize) -> Module {
        match ring {
            Ring::Z => Module::Z(ZPres::free(n)),
            Ring::Alg(a) => Module::Alg(AlgModule::free(a, n)),
            Ring::Mono(m) => Module::Mono(MonoModule::free(m, &vec![Degree::new(); n])),
        }
    }

    pub fn zero(ring: &Ring) -> Module {
        Module::free(ring, 0)
    }

    /// Forget the ring.
    pub fn underlying(&self) -> LinObj {
        match self {
            Module::Z(p) => LinObj::Z(p.clone()),
            Module::Alg(m) => LinObj::Q(m.dim),
            Module::Mono(m) => LinObj::G(m.summands.clone()),
        }
    }

    pub fn size(&self) -> usize {
        self.underlying().size()
    }

    pub fn invariants(&self, window: Option<&Window>) -> Result<Invariants> {
        match self {
            Module::Z(p) => Ok(p.invariants()),
            Module::Alg(m) => Ok(Invariants::Q { dim: m.dim }),
            Module::Mono(m) => {
                let w = window.ok_or_else(|| Error::WindowRequired("graded module invariants".into()))?;
                let sl = Slicer::new(&[&m.summands]);
                let mut pieces = Vec::new();
                for d in sl.frame.degrees(w) {
                    let n = sl.active(0, &d).len();
                    if n > 0 {
                        pieces.push((sl.frame.label(&d), n));
                    }
                }
                Ok(Invariants::G { window: *w, pieces })
            }
        }
    }

    /// The same module over `h.source()`.
    pub fn restrict_scalars(&self, h: &RingHom) -> Result<Module> {
        if h.target() != self.ring() {
            return Err(Error::InvalidHom("restriction of scalars along a map into another ring".into()));
        }
        Ok(match (self, h) {
            (Module::Z(p), _) => Module::Z(p.clone()),
            (Module::Alg(m), RingHom::Alg(h)) => Module::Alg(m.restrict_scalars(h)),
            (Module::Mono(m), RingHom::Mono { src, .. }) => Module::Mono(m.restrict_scalars(src)?),
            _ => return Err(Error::BackendMismatch("restriction of scalars".into())),
        })
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Module::Z(p) => write!(f, "{}", p.invariants()),
            Module::Alg(m) => write!(f, "Q^{} (module)", m.dim),
            Module::Mono(m) => write!(f, "{}", m),
        }
    }
}

/// `M ⊗_R S` along `h: R -> S`, with its universal property.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: Module,
    source_size: usize,
    quot: Option<Quotient>,
}

impl Extension {
    /// The unit `M -> M ⊗_R S`, linear over `h`.
    pub fn unit_map(&self) -> Mat {
        match &self.quot {
            None => Mat::identity(self.module.kind(), self.source_size),
            Some(q) => {
                let Module::Alg(m) = &self.module else { unreachable!() };
                let s = m.ring.dim();
                let unit = m.ring.unit();
                let mut cols = Vec::new();
                for a in 0..self.source_size {
                    let mut v = vec![rat(0); self.source_size * s];
                    for u in 0..s {
                        v[a * s + u] = unit[u].clone();
                    }
                    cols.push(q.p.mul_vec(&v));
                }
                Mat::Q(QMat::from_cols(&cols, q.dim()))
            }
        }
    }

    /// Given `phi: M -> N` linear over `c ∘ h`, the induced `M ⊗_R S -> N` linear over `c: S -> T`.
    pub fn lift(&self, phi: &Mat, target: &Module, c: &RingHom) -> Result<Mat> {
        match &self.quot {
            None => Ok(phi.clone()),
            Some(q) => {
                let (Module::Alg(n), RingHom::Alg(c)) = (target, c) else {
                    return Err(Error::BackendMismatch("lift of an algebra extension".into()));
                };
                let s = c.src.dim();
                let phi = phi.q();
                let mut cols = Vec::with_capacity(self.source_size * s);
                for a in 0..self.source_size {
                    let col = phi.col(a);
                    for u in 0..s {
                        cols.push(n.action_of(&c.mat.col(u)).mul_vec(&col));
                    }
                }
                Ok(Mat::Q(QMat::from_cols(&cols, n.dim).mul(&q.s)))
            }
        }
    }
}

pub fn base_change(m: &Module, h: &RingHom) -> Result<Extension> {
    if m.ring() != h.source() {
        return Err(Error::BackendMismatch(format!("base change of a module over {} along a map from {}", m.ring(), h.source())));
    }
    Ok(match (m, h) {
        (Module::Z(p), RingHom::Z) => Extension { module: Module::Z(p.clone()), source_size: p.gens, quot: None },
        (Module::Alg(a), RingHom::Alg(h)) => {
            let (module, q) = a.base_change(h);
            Extension { module: Module::Alg(module), source_size: a.dim, quot: Some(q) }
        }
        (Module::Mono(a), RingHom::Mono { tgt, .. }) => {
            Extension { module: Module::Mono(a.base_change(tgt)?), source_size: a.rank(), quot: None }
        }
        _ => return Err(Error::BackendMismatch("base change across backends".into())),
    })
}

/// `M ⊗_R N` with a way to tensor maps.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: Module,
    quot: Option<Quotient>,
}

impl TensorModule {
    /// `f ⊗ g` from `self` into `out`.
    pub fn map(&self, f: &Mat, g: &Mat, out: &TensorModule) -> Mat {
        let k = f.kron(g);
        match (&self.quot, &out.quot) {
            (Some(a), Some(b)) => Mat::Q(b.p.mul(k.q()).mul(&a.s)),
            _ => k,
        }
    }
}

pub fn tensor(m: &Module, n: &Module) -> Result<TensorModule> {
    if m.ring() != n.ring() {
        return Err(Error::BackendMismatch("tensor of modules over different rings".into()));
    }
    Ok(match (m, n) {
        (Module::Z(a), Module::Z(b)) => TensorModule { module: Module::Z(a.tensor(b)), quot: None },
        (Module::Alg(a), Module::Alg(b)) => {
            let (module, q) = a.tensor(b);
            TensorModule { module: Module::Alg(module), quot: Some(q) }
        }
        (Module::Mono(a), Module::Mono(b)) => TensorModule { module: Module::Mono(a.tensor(b)?), quot: None },
        _ => return Err(Error::BackendMismatch("tensor across backends".into())),
    })
}

/// Validates that `f: src -> tgt` is linear over `h`.
pub fn check_map(f: &Mat, src: &Module, tgt: &Module, h: &RingHom) -> Result<()> {
    if h.source() != src.ring() || h.target() != tgt.ring() {
        return Err(Error::InvalidMap("ring map does not match the module rings".into()));
    }
    if f.rows() != tgt.size() || f.cols() != src.size() {
        return Err(Error::InvalidMap(format!(
            "matrix is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            tgt.size(),
            src.size()
        )));
    }
    match (f, src, tgt, h) {
        (Mat::Z(f), Module::Z(a), Module::Z(b), _) => {
            if !b.maps_well(f, a) {
                return Err(Error::InvalidMap("relations are not sent to relations".into()));
            }
        }
        (Mat::Q(f), Module::Alg(a), Module::Alg(b), RingHom::Alg(h)) => {
            if !a.is_semilinear(f, b, h) {
                return Err(Error::InvalidMap("map does not commute with the ring action".into()));
            }
        }
        (Mat::Q(f), Module::Mono(a), Module::Mono(b), _) => {
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    if !f.get(i, j).is_zero() && !monomial::entry_valid(&a.summands[j], &b.summands[i]) {
                        return Err(Error::InvalidMap(format!(
                            "entry ({}, {}) does not define a map {} -> {}",
                            i, j, a.summands[j].ring, b.summands[i].ring
                        )));
                    }
                }
            }
        }
        _ => return Err(Error::BackendMismatch("map and modules over different backends".into())),
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Test {
    Iso,
    Surjective,
    Injective,
}

fn test_map(f: &Mat, src: &Module, tgt: &Module, window: Option<&Window>, t: Test) -> Result<Check> {
    let yes = |b: bool| if b { Check::Yes } else { Check::No(None) };
    match (src, tgt) {
        (Module::Z(a), Module::Z(b)) => Ok(yes(match t {
            Test::Iso => zconst::is_iso(f.z(), a, b),
            Test::Surjective => zconst::is_surjective(f.z(), b),
            Test::Injective => zconst::is_injective(f.z(), a, b),
        })),
        (Module::Alg(a), Module::Alg(b)) => {
            let r = if a.dim == 0 || b.dim == 0 { 0 } else { f.q().rank() };
            Ok(yes(match t {
                Test::Iso => r == a.dim && r == b.dim,
                Test::Surjective => r == b.dim,
                Test::Injective => r == a.dim,
            }))
        }
        (Module::Mono(a), Module::Mono(b)) => {
            let w = window.ok_or_else(|| Error::WindowRequired("graded module map test".into()))?;
            let sl = Slicer::new(&[&a.summands, &b.summands]);
            for d in sl.frame.degrees(w) {
                let (ra, rb) = (sl.active(0, &d), sl.active(1, &d));
                let r = if ra.is_empty() || rb.is_empty() { 0 } else { f.q().submatrix(&rb, &ra).rank() };
                let ok = match t {
                    Test::Iso => r == ra.len() && r == rb.len(),
                    Test::Surjective => r == rb.len(),
                    Test::Injective => r == ra.len(),
                };
                if !ok {
                    return Ok(Check::No(Some(sl.frame.label(&d))));
                }
            }
            Ok(Check::WindowYes(*w))
        }
        _ => Err(Error::BackendMismatch("map between modules of different backends".into())),
    }
}

/// Bijectivity, exactly (graded: degreewise on the window).
pub fn is_iso(f: &Mat, src: &Module, tgt: &Module, window: Option<&Window>) -> Result<Check> {
    test_map(f, src, tgt, window, Test::Iso)
}

pub fn is_surjective(f: &Mat, src: &Module, tgt: &Module, window: Option<&Window>) -> Result<Check> {
    test_map(f, src, tgt, window, Test::Surjective)
}

pub fn is_injective(f: &Mat, src: &Module, tgt: &Module, window: Option<&Window>) -> Result<Check> {
    test_map(f, src, tgt, window, Test::Injective)
}

fn alg_sub(m: &AlgModule, basis: &QMat) -> AlgModule {
    let act = m.act.iter().map(|a| basis.solve(&a.mul(basis)).expect("submodule is stable")).collect();
    AlgModule { ring: m.ring.clone(), dim: basis.cols(), act }
}

fn alg_quot(m: &AlgModule, w: &QMat) -> (AlgModule, Quotient) {
    let q = Quotient::new(m.dim, w);
    let act = m.act.iter().map(|a| q.p.mul(a).mul(&q.s)).collect();
    (AlgModule { ring: m.ring.clone(), dim: q.dim(), act }, q)
}

/// Kernel of an R-linear map, with its inclusion.
pub fn kernel(f: &Mat, src: &Module, tgt: &Module) -> Result<(Module, Mat)> {
    match (src, tgt) {
        (Module::Z(a), Module::Z(b)) => {
            let (k, inc) = zconst::kernel(f.z(), a, b);
            Ok((Module::Z(k), Mat::Z(inc)))
        }
        (Module::Alg(a), Module::Alg(_)) => {
            let k = f.q().nullspace();
            Ok((Module::Alg(alg_sub(a, &k)), Mat::Q(k)))
        }
        (Module::Mono(_), Module::Mono(_)) => Err(Error::WindowRequired("graded kernels (use degreewise dimensions)".into())),
        _ => Err(Error::BackendMismatch("kernel across backends".into())),
    }
}

/// Cokernel of an R-linear map, with its projection.
pub fn cokernel(f: &Mat, tgt: &Module) -> Result<(Module, Mat)> {
    match tgt {
        Module::Z(b) => {
            let (c, p) = zconst::cokernel(f.z(), b);
            Ok((Module::Z(c), Mat::Z(p)))
        }
        Module::Alg(b) => {
            let (c, q) = alg_quot(b, f.q());
            Ok((Module::Alg(c), Mat::Q(q.p)))
        }
        Module::Mono(_) => Err(Error::WindowRequired("graded cokernels (use degreewise dimensions)".into())),
    }
}

/// Image of an R-linear map, with its inclusion into the target.
pub fn image(f: &Mat, tgt: &Module) -> Result<(Module, Mat)> {
    match tgt {
        Module::Z(b) => {
            let (im, inc) = zconst::image(f.z(), b);
            Ok((Module::Z(im), Mat::Z(inc)))
        }
        Module::Alg(b) => {
            let c = f.q().column_space();
            Ok((Module::Alg(alg_sub(b, &c)), Mat::Q(c)))
        }
        Module::Mono(_) => Err(Error::WindowRequired("graded images (use degreewise dimensions)".into())),
    }
}

/// Degreewise dimensions of kernel and cokernel of a graded map inside the window.
pub fn graded_kernel_cokernel(f: &Mat, src: &Module, tgt: &Module, window: &Window) -> Result<(Invariants, Invariants)> {
    let (Module::Mono(a), Module::Mono(b)) = (src, tgt) else {
        return Err(Error::BackendMismatch("graded kernel of non-graded modules".into()));
    };
    let sl = Slicer::new(&[&a.summands, &b.summands]);
    let (mut ker, mut cok) = (Vec::new(), Vec::new());
    for d in sl.frame.degrees(window) {
        let (ra, rb) = (sl.active(0, &d), sl.active(1, &d));
        let r = if ra.is_empty() || rb.is_empty() { 0 } else { f.q().submatrix(&rb, &ra).rank() };
        if ra.len() > r {
            ker.push((sl.frame.label(&d), ra.len() - r));
        }
        if rb.len() > r {
            cok.push((sl.frame.label(&d), rb.len() - r));
        }
    }
    Ok((Invariants::G { window: *window, pieces: ker }, Invariants::G { window: *window, pieces: cok }))
}

/// Limit of a diagram of R-modules: tuples `(x_i)` with `f x_i = x_j` for every arrow `(i, j, f)`.
/// Returns the limit and its projections.
pub fn finite_limit(objs: &[Module], arrows: &[(usize, usize, Mat)]) -> Result<(Module, Vec<Mat>)> {
    let Some(first) = objs.first() else {
        return Err(Error::Unsupported("limit of an empty diagram needs a ring".into()));
    };
    let ring = first.ring();
    if objs.iter().any(|o| o.ring() != ring) {
        return Err(Error::BackendMismatch("incompatible rings in diagram".into()));
    }
    let kind = ring.kind();
    let offs: Vec<usize> = objs
        .iter()
        .scan(0, |acc, o| {
            let s = *acc;
            *acc += o.size();
            Some(s)
        })
        .collect();
    let total: usize = objs.iter().map(Module::size).sum();
    let rows: usize = arrows.iter().map(|(_, j, _)| objs[*j].size()).sum();
    let mut d = Mat::zeros(kind, rows, total);
    let mut r = 0;
    for (i, j, f) in arrows {
        d.add_block(r, offs[*i], f);
        d.add_block(r, offs[*j], &Mat::identity(kind, objs[*j].size()).neg());
        r += objs[*j].size();
    }
    let (lim, inc) = match kind {
        Kind::Z => {
            let src = objs.iter().fold(ZPres::free(0), |acc, o| match o {
                Module::Z(p) => acc.direct_sum(p),
                _ => unreachable!(),
            });
            let tgt = arrows.iter().fold(ZPres::free(0), |acc, (_, j, _)| match &objs[*j] {
                Module::Z(p) => acc.direct_sum(p),
                _ => unreachable!(),
            });
            let (k, inc) = zconst::kernel(d.z(), &src, &tgt);
            (Module::Z(k), Mat::Z(inc))
        }
        Kind::Q => {
            let Ring::Alg(a) = &ring else { unreachable!() };
            let mut act = vec![QMat::zeros(total, total); a.dim()];
            for (o, off) in objs.iter().zip(&offs) {
                let Module::Alg(m) = o else { unreachable!() };
                for (k, ak) in act.iter_mut().enumerate() {
                    ak.add_block(*off, *off, &m.act[k]);
                }
            }
            let big = AlgModule { ring: a.clone(), dim: total, act };
            let k = d.q().nullspace();
            (Module::Alg(alg_sub(&big, &k)), Mat::Q(k))
        }
        Kind::G => return Err(Error::WindowRequired("graded limits".into())),
    };
    let projs = objs
        .iter()
        .zip(&offs)
        .map(|(o, off)| {
            let idx: Vec<usize> = (*off..off + o.size()).collect();
            inc.select_rows(&idx)
        })
        .collect();
    Ok((lim, projs))
}

/// An isomorphism `a -> b` of R-modules.
///
/// ZConst and graded are complete decisions. FinDimQ searches the space of
/// module maps at points of a grid large enough to certify absence when the
/// budget allows; otherwise `Exhausted`.
pub fn iso_search(a: &Module, b: &Module, budget: usize) -> Search<Mat> {
    match (a, b) {
        (Module::Z(x), Module::Z(y)) => match zconst::iso_search(x, y) {
            Some(m) => Search::Found(Mat::Z(m)),
            None => Search::Absent,
        },
        (Module::Mono(x), Module::Mono(y)) => {
            if x.ring != y.ring || x.rank() != y.rank() {
                return Search::Absent;
            }
            let mut used = vec![false; y.rank()];
            let mut m = QMat::zeros(y.rank(), x.rank());
            for (j, s) in x.summands.iter().enumerate() {
                match (0..y.rank()).find(|&i| !used[i] && y.summands[i] == *s) {
                    Some(i) => {
                        used[i] = true;
                        m.set(i, j, rat(1));
                    }
                    None => return Search::Absent,
                }
            }
            Search::Found(Mat::Q(m))
        }
        (Module::Alg(x), Module::Alg(y)) => {
            if x.ring != y.ring || x.dim != y.dim {
                return Search::Absent;
            }
            let n = x.dim;
            if n == 0 {
                return Search::Found(Mat::Q(QMat::zeros(0, 0)));
            }
            // Hom_A(x, y) = {X : X a_i = b_i X}, vectorised row-major
            let mut eqs: Option<QMat> = None;
            for (ai, bi) in x.act.iter().zip(&y.act) {
                let e = QMat::identity(n).kron(&ai.transpose()).sub(&bi.kron(&QMat::identity(n)));
                eqs = Some(match eqs {
                    None => e,
                    Some(acc) => acc.vcat(&e),
                });
            }
            let basis = eqs.map(|e| e.nullspace()).unwrap_or_else(|| QMat::identity(n * n));
            let mdim = basis.cols();
            if mdim == 0 {
                return Search::Absent;
            }
            // det is a polynomial of degree <= n in each coordinate; a grid of n+1 values per coordinate decides it
            let mut digits = vec![0usize; mdim];
            let mut spent = 0;
            loop {
                spent += 1;
                if spent > budget {
                    return Search::Exhausted;
                }
                let mut v = vec![rat(0); n * n];
                for (k, &c) in digits.iter().enumerate() {
                    if c > 0 {
                        for (idx, x) in basis.col(k).iter().enumerate() {
                            v[idx] += x * rat(c as i64);
                        }
                    }
                }
                let rows: Vec<Vec<_>> = (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect();
                let m = QMat::from_rows(rows, n);
                if m.rank() == n {
                    return Search::Found(Mat::Q(m));
                }
                let mut k = 0;
                loop {
                    if k == mdim {
                        return Search::Absent;
                    }
                    digits[k] += 1;
                    if digits[k] <= n {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
        _ => Search::Absent,
    }
}

/// Matrix of a ZConst map given as integers.
pub fn zmat(rows: &[&[i64]]) -> Mat {
    Mat::Z(ZMat::from_i64(rows))
}

/// Matrix of a rational map given as integers.
pub fn qmat(rows: &[&[i64]]) -> Mat {
    Mat::Q(QMat::from_i64(rows))
}
