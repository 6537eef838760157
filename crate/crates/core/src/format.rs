//! The space document format: TOML for hand-written files, with an
//! equivalent JSON form.
//!
//! ```toml
//! format = "finspace/1"
//! backend = "graded"            # "zconst", "findimq" or "graded"
//! window = [-3, 3]              # optional degree window
//! points = ["x1", "x2", "x12"]
//! relations = [["x1", "x12"], ["x2", "x12"]]   # p <= q, transitively closed on load
//!
//! [rings]
//! x1 = "k[t]"
//! x2 = "k[t^-1]"
//! x12 = "k[t,t^-1]"
//! ```
//!
//! ZConst documents omit `rings`. FinDimQ rings are catalog names (`Q`,
//! `Q^n`, `Q[x]/(x^n)`, `Q(sqrt d)`, `0`) or tables `{ products, unit }`,
//! and their restrictions are `[[restrictions]]` entries with a `matrix`
//! (rows are target coordinates). Missing restrictions default to the
//! identity between equal rings and to inclusions of monomial rings.
//! Optional `[[modules]]`, `[[morphisms]]` and `[expected]` sections carry
//! sheaves, maps to other documents and golden classifications.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::monomial::{parse_mono, Degree, MonoModule};
use crate::coeff::{Algebra, AlgModule, Backend, Module, Ring, RingHom, ZPres};
use crate::error::{Error, Result};
use crate::lin::{Kind, Mat};
use crate::poset::Preorder;
use crate::qmat::{QMat, Rat};
use crate::sheafmod::SheafModule;
use crate::space::{Morphism, RingedSpace};
use crate::verdict::{Value, Window};
use crate::zmat::{Int, ZMat};

pub const FORMAT: &str = "finspace/1";

/// An exact number: an integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn rat(&self) -> Result<Rat> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Text(s) => Rat::from_str(s.trim()).map_err(|_| Error::Document(format!("not a rational number: `{}`", s))),
        }
    }

    fn int(&self) -> Result<Int> {
        match self {
            Num::Int(n) => Ok((*n).into()),
            Num::Text(s) => Int::from_str(s.trim()).map_err(|_| Error::Document(format!("not an integer: `{}`", s))),
        }
    }

    fn of_rat(r: &Rat) -> Num {
        if r.is_integer() {
            if let Ok(n) = i64::try_from(r.numer().clone()) {
                return Num::Int(n);
            }
        }
        Num::Text(r.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendName {
    Zconst,
    Findimq,
    Graded,
}

impl From<BackendName> for Backend {
    fn from(b: BackendName) -> Backend {
        match b {
            BackendName::Zconst => Backend::ZConst,
            BackendName::Findimq => Backend::FinDimQ,
            BackendName::Graded => Backend::Graded,
        }
    }
}

impl From<Backend> for BackendName {
    fn from(b: Backend) -> BackendName {
        match b {
            Backend::ZConst => BackendName::Zconst,
            Backend::FinDimQ => BackendName::Findimq,
            Backend::Graded => BackendName::Graded,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingDoc {
    Name(String),
    Table { products: Vec<Vec<Vec<Num>>>, unit: Vec<Num> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StalkDoc {
    /// Abelian group `Z^gens / relations`, one relation vector per entry.
    Group {
        gens: usize,
        #[serde(default)]
        relations: Vec<Vec<Num>>,
    },
    /// Module over a FinDimQ ring: action matrix of each ring basis element.
    Vector { dim: usize, action: Vec<Vec<Vec<Num>>> },
    /// Graded free module: one shift per generator.
    Graded { shifts: Vec<BTreeMap<String, i64>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub name: String,
    /// `structure` for `O`, otherwise `stalks` is read.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub structure: bool,
    #[serde(default)]
    pub stalks: BTreeMap<String, StalkDoc>,
    #[serde(default)]
    pub restrictions: Vec<MapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoDoc {
    pub point: String,
    pub matrix: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    /// `"structure"` for the map to the base ring, otherwise a document path
    /// relative to this file.
    pub target: String,
    #[serde(default)]
    pub map: BTreeMap<String, String>,
    /// Comorphisms `O_{f(x)} -> O_x`; canonical maps when omitted.
    #[serde(default)]
    pub comorphisms: Vec<CoDoc>,
}

/// Golden classifications checked by the test suites.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasicoherent_space: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schematic: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiseparated: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<Value>,
    /// `H^i(X, O)` by degree, as printed invariants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Where each expected value comes from.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub backend: BackendName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    pub points: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrictions: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_toml(src: &str) -> Result<SpaceDoc> {
    let doc: SpaceDoc = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        Error::Parse { line, column, message: e.message().to_string() }
    })?;
    doc.check_format()?;
    Ok(doc)
}

pub fn parse_json(src: &str) -> Result<SpaceDoc> {
    let doc: SpaceDoc = serde_json::from_str(src)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    doc.check_format()?;
    Ok(doc)
}

/// JSON when the text starts with `{`, TOML otherwise.
pub fn parse(src: &str) -> Result<SpaceDoc> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_toml(src)
    }
}

/// A parsed document with the directory it was read from.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: SpaceDoc,
    pub dir: PathBuf,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("cannot read {}: {}", path.display(), e)))?;
    let doc = parse(&src)?;
    Ok(Loaded { doc, dir: path.parent().map(Path::to_path_buf).unwrap_or_default() })
}

fn rat_matrix(rows: &[Vec<Num>], shape: (usize, usize), what: &str) -> Result<QMat> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Document(format!("{}: expected a {}x{} matrix", what, shape.0, shape.1)));
    }
    let rows = rows.iter().map(|r| r.iter().map(Num::rat).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(QMat::from_rows(rows, shape.1))
}

fn int_matrix(rows: &[Vec<Num>], shape: (usize, usize), what: &str) -> Result<ZMat> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Document(format!("{}: expected a {}x{} matrix", what, shape.0, shape.1)));
    }
    let rows = rows.iter().map(|r| r.iter().map(Num::int).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(ZMat::from_rows(rows, shape.1))
}

fn rat_rows(m: &QMat) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| r.iter().map(Num::of_rat).collect()).collect()
}

fn catalog(name: &str) -> Option<Algebra> {
    let n = name.replace(' ', "");
    if n == "Q" {
        return Some(Algebra::field());
    }
    if n == "0" {
        return Some(Algebra::zero_ring());
    }
    if let Some(k) = n.strip_prefix("Q^") {
        return k.parse().ok().filter(|&k: &usize| k >= 1).map(Algebra::split);
    }
    if let Some(k) = n.strip_prefix("Q[x]/(x^").and_then(|r| r.strip_suffix(')')) {
        return k.parse().ok().filter(|&k: &usize| k >= 1).map(Algebra::truncated);
    }
    if let Some(d) = n.strip_prefix("Q(sqrt").and_then(|r| r.strip_suffix(')')) {
        return d.parse().ok().map(Algebra::quadratic);
    }
    None
}

fn catalog_name(a: &Algebra) -> Option<String> {
    let mut names = vec!["Q".to_string(), "0".to_string()];
    for k in 2..=4 {
        names.push(format!("Q^{}", k));
        names.push(format!("Q[x]/(x^{})", k));
    }
    names.into_iter().find(|n| catalog(n).as_ref() == Some(a))
}

impl RingDoc {
    fn ring(&self, backend: Backend) -> Result<Ring> {
        match (backend, self) {
            (Backend::ZConst, RingDoc::Name(n)) if n == "Z" => Ok(Ring::Z),
            (Backend::Graded, RingDoc::Name(n)) => Ok(Ring::Mono(parse_mono(n)?)),
            (Backend::FinDimQ, RingDoc::Name(n)) => {
                catalog(n).map(Ring::alg).ok_or_else(|| Error::Document(format!("unknown algebra `{}`", n)))
            }
            (Backend::FinDimQ, RingDoc::Table { products, unit }) => {
                let prods = products
                    .iter()
                    .map(|row| row.iter().map(|v| v.iter().map(Num::rat).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let unit = unit.iter().map(Num::rat).collect::<Result<Vec<_>>>()?;
                Ok(Ring::alg(Algebra::new(&prods, unit)?))
            }
            _ => Err(Error::Document(format!("ring description does not fit the {:?} backend", backend))),
        }
    }

    fn of(r: &Ring) -> Option<RingDoc> {
        match r {
            Ring::Z => None,
            Ring::Mono(m) => Some(RingDoc::Name(m.to_string())),
            Ring::Alg(a) => Some(catalog_name(a).map_or_else(
                || {
                    let d = a.dim();
                    let products = (0..d).map(|i| (0..d).map(|j| a.product(i, j).iter().map(Num::of_rat).collect()).collect()).collect();
                    RingDoc::Table { products, unit: a.unit().iter().map(Num::of_rat).collect() }
                },
                RingDoc::Name,
            )),
        }
    }
}

fn default_hom(a: &Ring, b: &Ring) -> Option<RingHom> {
    match (a, b) {
        (Ring::Z, Ring::Z) => Some(RingHom::Z),
        (Ring::Mono(x), Ring::Mono(y)) => RingHom::inclusion(x, y).ok(),
        (x, y) if x == y => Some(RingHom::identity(x)),
        (Ring::Alg(x), Ring::Alg(_)) if x.dim() == 1 => Some(RingHom::structure(b)),
        _ => None,
    }
}

fn read_hom(a: &Ring, b: &Ring, matrix: Option<&Vec<Vec<Num>>>, what: &str) -> Result<RingHom> {
    match (a, b, matrix) {
        (Ring::Alg(x), Ring::Alg(y), Some(m)) => RingHom::alg(a, b, rat_matrix(m, (y.dim(), x.dim()), what)?),
        (_, _, Some(_)) => Err(Error::Document(format!("{}: matrices are only read for FinDimQ rings", what))),
        (_, _, None) => default_hom(a, b).ok_or_else(|| Error::Document(format!("{}: a matrix is required", what))),
    }
}

impl SpaceDoc {
    fn check_format(&self) -> Result<()> {
        if self.format != FORMAT {
            return Err(Error::Document(format!("unsupported format `{}` (expected `{}`)", self.format, FORMAT)));
        }
        Ok(())
    }

    pub fn window(&self) -> Option<Window> {
        self.window.map(|[lo, hi]| Window::new(lo, hi))
    }

    pub fn space(&self) -> Result<RingedSpace> {
        let backend: Backend = self.backend.into();
        let rel: Vec<(String, String)> = self.relations.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let poset = Preorder::build(&self.points, &rel)?;
        for id in self.rings.keys() {
            poset.index(id)?;
        }
        let rings = (0..poset.len())
            .map(|p| match (backend, self.rings.get(poset.id(p))) {
                (Backend::ZConst, None) => Ok(Ring::Z),
                (_, Some(r)) => r.ring(backend),
                (_, None) => Err(Error::MissingRing(poset.id(p).to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut explicit = BTreeMap::new();
        for m in &self.restrictions {
            explicit.insert((poset.index(&m.from)?, poset.index(&m.to)?), m);
        }
        let mut given = BTreeMap::new();
        for (p, q) in poset.hasse() {
            let what = format!("restriction `{}` <= `{}`", poset.id(p), poset.id(q));
            let h = match explicit.remove(&(p, q)) {
                Some(m) => read_hom(&rings[p], &rings[q], m.matrix.as_ref(), &what)?,
                None => default_hom(&rings[p], &rings[q])
                    .ok_or_else(|| Error::MissingRestriction(poset.id(p).to_string(), poset.id(q).to_string()))?,
            };
            given.insert((p, q), h);
        }
        if let Some(((p, q), _)) = explicit.into_iter().next() {
            return Err(Error::Document(format!(
                "restriction `{}` <= `{}` is not on a covering relation",
                poset.id(p),
                poset.id(q)
            )));
        }
        RingedSpace::new(poset, backend, rings, given)
    }

    pub fn module_names(&self) -> Vec<&str> {
        self.modules.iter().map(|m| m.name.as_str()).collect()
    }

    pub fn module(&self, x: &RingedSpace, name: &str) -> Result<SheafModule> {
        let md = self.modules.iter().find(|m| m.name == name).ok_or_else(|| Error::Document(format!("no module named `{}`", name)))?;
        if md.structure {
            return Ok(SheafModule::structure(x));
        }
        for id in md.stalks.keys() {
            x.index(id)?;
        }
        let stalks = (0..x.len())
            .map(|p| {
                let sd = md.stalks.get(x.id(p)).ok_or_else(|| Error::Document(format!("module `{}` has no stalk at `{}`", name, x.id(p))))?;
                read_stalk(x.ring(p), sd)
            })
            .collect::<Result<Vec<_>>>()?;
        let kind = x.backend().kind();
        let mut explicit = BTreeMap::new();
        for m in &md.restrictions {
            explicit.insert((x.index(&m.from)?, x.index(&m.to)?), m);
        }
        let mut given = BTreeMap::new();
        for (p, q) in x.poset().hasse() {
            let shape = (stalks[q].size(), stalks[p].size());
            let what = format!("module `{}`, restriction `{}` <= `{}`", name, x.id(p), x.id(q));
            let mat = match explicit.remove(&(p, q)).and_then(|m| m.matrix.as_ref()) {
                Some(rows) if kind == Kind::Z => Mat::Z(int_matrix(rows, shape, &what)?),
                Some(rows) => Mat::Q(rat_matrix(rows, shape, &what)?),
                None if shape.0 == shape.1 => Mat::identity(kind, shape.0),
                None => return Err(Error::Document(format!("{}: a matrix is required", what))),
            };
            given.insert((p, q), mat);
        }
        SheafModule::new(x, stalks, given)
    }

    /// The morphism `name`, with its target read relative to `dir`.
    pub fn morphism(&self, x: &RingedSpace, name: &str, dir: &Path) -> Result<Morphism> {
        let md = self.morphisms.iter().find(|m| m.name == name).ok_or_else(|| Error::Document(format!("no morphism named `{}`", name)))?;
        if md.target == "structure" {
            return Ok(Morphism::structure(x));
        }
        let target = load(&dir.join(&md.target))?.doc.space()?;
        self.morphism_into(x, name, &target)
    }

    /// The morphism `name` into an already loaded target.
    pub fn morphism_into(&self, x: &RingedSpace, name: &str, target: &RingedSpace) -> Result<Morphism> {
        let md = self.morphisms.iter().find(|m| m.name == name).ok_or_else(|| Error::Document(format!("no morphism named `{}`", name)))?;
        if md.target == "structure" {
            return Ok(Morphism::structure(x));
        }
        let map = (0..x.len())
            .map(|p| {
                let to = md.map.get(x.id(p)).ok_or_else(|| Error::Document(format!("morphism `{}` does not map `{}`", name, x.id(p))))?;
                target.index(to)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut explicit: BTreeMap<usize, &CoDoc> = BTreeMap::new();
        for c in &md.comorphisms {
            explicit.insert(x.index(&c.point)?, c);
        }
        let co = (0..x.len())
            .map(|p| {
                let what = format!("morphism `{}` at `{}`", name, x.id(p));
                read_hom(target.ring(map[p]), x.ring(p), explicit.get(&p).map(|c| &c.matrix), &what)
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(x, target, map, co)
    }

    /// The document describing a space (no modules, morphisms or expectations).
    pub fn from_space(x: &RingedSpace, name: Option<&str>, window: Option<Window>) -> SpaceDoc {
        let po = x.poset();
        let rings = (0..x.len()).filter_map(|p| RingDoc::of(x.ring(p)).map(|r| (x.id(p).to_string(), r))).collect();
        let restrictions = if x.backend() == Backend::FinDimQ {
            po.hasse()
                .into_iter()
                .filter(|&(p, q)| default_hom(x.ring(p), x.ring(q)).as_ref() != Some(x.res(p, q)))
                .map(|(p, q)| MapDoc {
                    from: x.id(p).into(),
                    to: x.id(q).into(),
                    matrix: x.res(p, q).as_alg().ok().map(|h| rat_rows(&h.mat)),
                })
                .collect()
        } else {
            Vec::new()
        };
        SpaceDoc {
            format: FORMAT.into(),
            name: name.map(str::to_string),
            backend: x.backend().into(),
            window: window.map(|w| [w.lo, w.hi]),
            points: po.ids().to_vec(),
            relations: po.hasse().into_iter().map(|(p, q)| [x.id(p).to_string(), x.id(q).to_string()]).collect(),
            rings,
            restrictions,
            modules: Vec::new(),
            morphisms: Vec::new(),
            expected: None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize to TOML")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize to JSON")
    }
}

fn read_stalk(ring: &Ring, sd: &StalkDoc) -> Result<Module> {
    match (ring, sd) {
        (Ring::Z, StalkDoc::Group { gens, relations }) => {
            let cols = relations
                .iter()
                .map(|r| {
                    if r.len() != *gens {
                        return Err(Error::Document(format!("relation of length {} for {} generators", r.len(), gens)));
                    }
                    r.iter().map(Num::int).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Module::Z(ZPres::new(*gens, ZMat::from_cols(&cols, *gens))))
        }
        (Ring::Alg(a), StalkDoc::Vector { dim, action }) => {
            if action.len() != a.dim() {
                return Err(Error::Document(format!("{} action matrices for an algebra of dimension {}", action.len(), a.dim())));
            }
            let act = action.iter().map(|m| rat_matrix(m, (*dim, *dim), "module action")).collect::<Result<Vec<_>>>()?;
            Ok(Module::Alg(AlgModule::new(a.clone(), act)?))
        }
        (Ring::Mono(m), StalkDoc::Graded { shifts }) => {
            let shifts: Vec<Degree> = shifts.iter().map(|s| s.iter().map(|(k, v)| (k.clone(), *v)).collect()).collect();
            Ok(Module::Mono(MonoModule::free(m, &shifts)))
        }
        _ => Err(Error::Document(format!("stalk description does not fit the ring {}", ring))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    const P1: &str = r#"
format = "finspace/1"
backend = "graded"
window = [-4, 4]
points = ["x1", "x2", "x12"]
relations = [["x1", "x12"], ["x2", "x12"]]

[rings]
x1 = "k[t]"
x2 = "k[t^-1]"
x12 = "k[t,t^-1]"

[[modules]]
name = "O(2)"
stalks.x1 = { shifts = [{}] }
stalks.x2 = { shifts = [{ t = -2 }] }
stalks.x12 = { shifts = [{}] }
"#;

    #[test]
    fn reads_p1_and_twist() {
        let doc = parse_toml(P1).unwrap();
        let x = doc.space().unwrap();
        assert_eq!(x, *models::p1_model());
        let m = doc.module(&x, "O(2)").unwrap();
        let h0 = crate::cohomology::cohomology(&m, &[0, 1, 2], 0, doc.window().as_ref()).unwrap();
        assert_eq!(h0.total(), 3);
    }

    #[test]
    fn toml_and_json_round_trip() {
        let x = models::doubled_origin_plane();
        let doc = SpaceDoc::from_space(&x, Some("plane"), Some(models::PLANE_WINDOW));
        let back = parse_toml(&doc.to_toml()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.space().unwrap(), *x);
        assert_eq!(parse_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn algebra_documents_round_trip() {
        let poset = Preorder::build(&["a", "b"], &[("a", "b")]).unwrap();
        let q2 = Ring::alg(Algebra::split(2));
        let qe = Ring::alg(Algebra::quadratic(-1));
        let h = RingHom::structure(&q2);
        let x = RingedSpace::new(poset.clone(), Backend::FinDimQ, vec![Ring::alg(Algebra::field()), q2.clone()], [((0, 1), h)].into()).unwrap();
        let doc = SpaceDoc::from_space(&x, None, None);
        assert_eq!(parse_toml(&doc.to_toml()).unwrap().space().unwrap(), x);
        let y = RingedSpace::with_canonical_maps(poset, Backend::FinDimQ, vec![qe.clone(), qe]).unwrap();
        assert_eq!(parse_toml(&SpaceDoc::from_space(&y, None, None).to_toml()).unwrap().space().unwrap(), y);
    }

    #[test]
    fn parse_errors_have_positions() {
        let bad = "format = \"finspace/1\"\nbackend = \"zconst\"\npoints = [\"a\", 3]\n";
        match parse_toml(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {:?}", other),
        }
        match parse_json("{\n  \"format\": 1\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn wrong_format_is_rejected() {
        let bad = "format = \"other/2\"\nbackend = \"zconst\"\npoints = [\"a\"]\n";
        assert!(matches!(parse_toml(bad), Err(Error::Document(_))));
    }
}
