//! Multigraded monomial rings `k[x, y, x^-1, ...]` and direct sums of shifted
//! monomial modules over them.
//!
//! A ring is described axis by axis: an absent axis contributes only exponent
//! 0, `Pos` allows exponents `>= 0`, `Neg` exponents `<= 0` and `Free` all of
//! them. Rings are therefore subrings of a Laurent ring spanned by monomials,
//! and inclusions between them are the only homomorphisms we model.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent constraint on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Pos,
    Neg,
    Free,
}

/// Lattice order on constraints, with `None` the zero constraint `{0}`.
pub fn axis_leq(a: Option<Axis>, b: Option<Axis>) -> bool {
    match (a, b) {
        (None, _) => true,
        (_, Some(Axis::Free)) => true,
        (Some(x), Some(y)) => x == y,
        (Some(_), None) => false,
    }
}

pub fn axis_join(a: Option<Axis>, b: Option<Axis>) -> Option<Axis> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) if x == y => Some(x),
        _ => Some(Axis::Free),
    }
}

pub fn axis_meet(a: Option<Axis>, b: Option<Axis>) -> Option<Axis> {
    match (a, b) {
        (None, _) | (_, None) => None,
        (Some(Axis::Free), x) | (x, Some(Axis::Free)) => x,
        (Some(x), Some(y)) if x == y => Some(x),
        _ => None,
    }
}

pub fn axis_contains(a: Option<Axis>, e: i64) -> bool {
    match a {
        None => e == 0,
        Some(Axis::Pos) => e >= 0,
        Some(Axis::Neg) => e <= 0,
        Some(Axis::Free) => true,
    }
}

/// Multidegree: exponent per axis name, zero entries omitted.
pub type Degree = BTreeMap<String, i64>;

pub fn degree_add(a: &Degree, b: &Degree) -> Degree {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.clone()).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn degree_sub(a: &Degree, b: &Degree) -> Degree {
    let neg: Degree = b.iter().map(|(k, v)| (k.clone(), -v)).collect();
    degree_add(a, &neg)
}

/// A monomial ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mono {
    axes: BTreeMap<String, Axis>,
}

impl Mono {
    /// The ground field `k`.
    pub fn constants() -> Mono {
        Mono::default()
    }

    pub fn new<S: Into<String>>(axes: impl IntoIterator<Item = (S, Axis)>) -> Mono {
        Mono { axes: axes.into_iter().map(|(s, a)| (s.into(), a)).collect() }
    }

    /// `k[vars]` with the variables in `inverted` made invertible.
    pub fn polynomial(vars: &[&str], inverted: &[&str]) -> Mono {
        let mut axes = BTreeMap::new();
        for v in vars {
            axes.insert(v.to_string(), Axis::Pos);
        }
        for v in inverted {
            axes.insert(v.to_string(), Axis::Free);
        }
        Mono { axes }
    }

    pub fn axis(&self, name: &str) -> Option<Axis> {
        self.axes.get(name).copied()
    }

    pub fn axes(&self) -> impl Iterator<Item = (&str, Axis)> {
        self.axes.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn axis_names(&self) -> impl Iterator<Item = &str> {
        self.axes.keys().map(|s| s.as_str())
    }

    /// Whether `x^d` lies in the ring.
    pub fn contains(&self, d: &Degree) -> bool {
        d.iter().all(|(k, e)| axis_contains(self.axis(k), *e))
    }

    pub fn is_subring_of(&self, other: &Mono) -> bool {
        self.axes.iter().all(|(k, a)| axis_leq(Some(*a), other.axis(k)))
    }

    /// Smallest monomial ring containing both.
    pub fn join(&self, other: &Mono) -> Mono {
        let mut axes = self.axes.clone();
        for (k, b) in &other.axes {
            let j = axis_join(axes.get(k).copied(), Some(*b));
            axes.insert(k.clone(), j.expect("join of nonzero constraint"));
        }
        Mono { axes }
    }

    pub fn meet(&self, other: &Mono) -> Mono {
        let mut axes = BTreeMap::new();
        for (k, a) in &self.axes {
            if let Some(m) = axis_meet(Some(*a), other.axis(k)) {
                axes.insert(k.clone(), m);
            }
        }
        Mono { axes }
    }

    /// `a ⊗_base b` for inclusions `base ⊆ a`, `base ⊆ b`.
    ///
    /// On an axis where the base is nonzero the tensor product is the join.
    /// On an axis where the base is zero the two sides must not both use the
    /// axis: `k[t] ⊗_k k[t]` is not a monomial ring in one variable.
    pub fn tensor_over(base: &Mono, a: &Mono, b: &Mono) -> Result<Mono> {
        if !base.is_subring_of(a) || !base.is_subring_of(b) {
            return Err(Error::InvalidHom(format!("{} is not a subring of both {} and {}", base, a, b)));
        }
        let names: BTreeSet<&str> = a.axis_names().chain(b.axis_names()).collect();
        let mut axes = BTreeMap::new();
        for k in names {
            let (x, y) = (a.axis(k), b.axis(k));
            let v = if base.axis(k).is_some() {
                axis_join(x, y)
            } else {
                match (x, y) {
                    (Some(_), Some(_)) => {
                        return Err(Error::Unsupported(format!(
                            "monomial tensor {} ⊗ {} over {} shares free axis `{}`; rename one side",
                            a, b, base, k
                        )))
                    }
                    (x, None) => x,
                    (None, y) => y,
                }
            };
            if let Some(v) = v {
                axes.insert(k.to_string(), v);
            }
        }
        Ok(Mono { axes })
    }

    /// Rename axes; unmapped names are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Mono {
        Mono {
            axes: self
                .axes
                .iter()
                .map(|(k, a)| (map.get(k).cloned().unwrap_or_else(|| k.clone()), *a))
                .collect(),
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.axes.is_empty() {
            return f.write_str("k");
        }
        let mut gens = Vec::new();
        for (k, a) in &self.axes {
            match a {
                Axis::Pos => gens.push(k.clone()),
                Axis::Neg => gens.push(format!("{}^-1", k)),
                Axis::Free => {
                    gens.push(k.clone());
                    gens.push(format!("{}^-1", k));
                }
            }
        }
        write!(f, "k[{}]", gens.join(","))
    }
}

/// Parse `k`, `k[t]`, `k[t,t^-1,s]`, `k[x,y,x^-1]`.
pub fn parse_mono(s: &str) -> Result<Mono> {
    let s = s.trim();
    if s == "k" {
        return Ok(Mono::constants());
    }
    let inner = s
        .strip_prefix("k[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidRing(format!("cannot read monomial ring `{}`", s)))?;
    let mut axes: BTreeMap<String, Axis> = BTreeMap::new();
    for g in inner.split(',').map(str::trim).filter(|g| !g.is_empty()) {
        let (name, a) = match g.strip_suffix("^-1") {
            Some(n) => (n.trim(), Axis::Neg),
            None => (g, Axis::Pos),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::InvalidRing(format!("bad variable `{}` in `{}`", g, s)));
        }
        let j = axis_join(axes.get(name).copied(), Some(a)).expect("nonzero");
        axes.insert(name.to_string(), j);
    }
    Ok(Mono { axes })
}

/// One summand `Λ(a)` of a monomial module: the monomial module `Λ` with its
/// generator placed in degree `-a`, so that `Λ(a)_d = Λ_{a+d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub ring: Mono,
    pub shift: Degree,
}

impl Summand {
    pub fn new(ring: Mono, shift: Degree) -> Summand {
        let mut shift = shift;
        shift.retain(|_, v| *v != 0);
        Summand { ring, shift }
    }

    pub fn free(ring: &Mono) -> Summand {
        Summand { ring: ring.clone(), shift: Degree::new() }
    }
}

/// Whether the coefficient `c·x^{b-a}` from `Λ_j(a)` into `Λ_i(b)` is a
/// well-defined homomorphism, i.e. `Λ_j + (b - a) ⊆ Λ_i`.
pub fn entry_valid(src: &Summand, tgt: &Summand) -> bool {
    let delta = degree_sub(&tgt.shift, &src.shift);
    let names: BTreeSet<&str> = src
        .ring
        .axis_names()
        .chain(tgt.ring.axis_names())
        .chain(delta.keys().map(|s| s.as_str()))
        .collect();
    let ok = names.into_iter().all(|k| {
        let d = delta.get(k).copied().unwrap_or(0);
        let ci = tgt.ring.axis(k);
        match src.ring.axis(k) {
            None => axis_contains(ci, d),
            Some(Axis::Pos) => ci == Some(Axis::Free) || (ci == Some(Axis::Pos) && d >= 0),
            Some(Axis::Neg) => ci == Some(Axis::Free) || (ci == Some(Axis::Neg) && d <= 0),
            Some(Axis::Free) => ci == Some(Axis::Free),
        }
    });
    ok
}

/// Monomial module: a direct sum of shifted monomial modules over `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoModule {
    pub ring: Mono,
    pub summands: Vec<Summand>,
}

impl MonoModule {
    pub fn new(ring: Mono, summands: Vec<Summand>) -> Result<MonoModule> {
        for s in &summands {
            if !ring.is_subring_of(&s.ring) {
                return Err(Error::InvalidModule(format!("summand {} is not a module over {}", s.ring, ring)));
            }
        }
        Ok(MonoModule { ring, summands })
    }

    /// Free module over `ring` with generators in degrees `-shift`.
    pub fn free(ring: &Mono, shifts: &[Degree]) -> MonoModule {
        MonoModule {
            ring: ring.clone(),
            summands: shifts.iter().map(|a| Summand::new(ring.clone(), a.clone())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Restriction of scalars along an inclusion `sub ⊆ ring`.
    pub fn restrict_scalars(&self, sub: &Mono) -> Result<MonoModule> {
        if !sub.is_subring_of(&self.ring) {
            return Err(Error::InvalidHom(format!("{} is not a subring of {}", sub, self.ring)));
        }
        Ok(MonoModule { ring: sub.clone(), summands: self.summands.clone() })
    }

    /// `M ⊗_R S` for an inclusion `R ⊆ S`: summandwise `Λ ⊗_R S`.
    pub fn base_change(&self, target: &Mono) -> Result<MonoModule> {
        let summands = self
            .summands
            .iter()
            .map(|s| Ok(Summand::new(Mono::tensor_over(&self.ring, &s.ring, target)?, s.shift.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonoModule { ring: target.clone(), summands })
    }

    /// `M ⊗_R N`, summand `(j, k)` at index `j * n + k`.
    pub fn tensor(&self, other: &MonoModule) -> Result<MonoModule> {
        if self.ring != other.ring {
            return Err(Error::BackendMismatch(format!("tensor over {} and {}", self.ring, other.ring)));
        }
        let mut summands = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.summands {
            for b in &other.summands {
                let ring = Mono::tensor_over(&self.ring, &a.ring, &b.ring)?;
                summands.push(Summand::new(ring, degree_add(&a.shift, &b.shift)));
            }
        }
        Ok(MonoModule { ring: self.ring.clone(), summands })
    }
}

impl fmt::Display for MonoModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.shift.is_empty() {
                    s.ring.to_string()
                } else {
                    let d: Vec<String> = s.shift.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
                    format!("{}({})", s.ring, d.join(","))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(pairs: &[(&str, i64)]) -> Degree {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn parse_and_print() {
        let r = parse_mono("k[t,t^-1]").unwrap();
        assert_eq!(r.axis("t"), Some(Axis::Free));
        assert_eq!(r.to_string(), "k[t,t^-1]");
        assert_eq!(parse_mono("k").unwrap(), Mono::constants());
        assert!(parse_mono("k[t^-1]").unwrap().contains(&deg(&[("t", -3)])));
        assert!(parse_mono("Q[t]").is_err());
    }

    #[test]
    fn tensor_of_polynomial_rings() {
        let k = Mono::constants();
        let t = Mono::polynomial(&["t"], &[]);
        let s = Mono::polynomial(&["s"], &[]);
        assert_eq!(Mono::tensor_over(&k, &t, &s).unwrap(), Mono::polynomial(&["t", "s"], &[]));
        assert!(Mono::tensor_over(&k, &t, &t).is_err());
        let tt = Mono::polynomial(&[], &["t"]);
        assert_eq!(Mono::tensor_over(&t, &tt, &t).unwrap(), tt);
        let tn = parse_mono("k[t^-1]").unwrap();
        assert_eq!(Mono::tensor_over(&k, &t, &t.meet(&tn)).unwrap(), t);
    }

    #[test]
    fn entry_validity() {
        let t = Mono::polynomial(&["t"], &[]);
        let tt = Mono::polynomial(&[], &["t"]);
        let tn = parse_mono("k[t^-1]").unwrap();
        // k[t] -> k[t,t^-1] is fine in any shift
        assert!(entry_valid(&Summand::free(&t), &Summand::new(tt.clone(), deg(&[("t", 5)]))));
        // k[t] -> k[t](1): generator maps to t
        assert!(entry_valid(&Summand::free(&t), &Summand::new(t.clone(), deg(&[("t", 1)]))));
        assert!(!entry_valid(&Summand::free(&t), &Summand::new(t.clone(), deg(&[("t", -1)]))));
        assert!(!entry_valid(&Summand::free(&tt), &Summand::free(&t)));
        assert!(entry_valid(&Summand::free(&tn), &Summand::new(tn.clone(), deg(&[("t", -2)]))));
    }
}
