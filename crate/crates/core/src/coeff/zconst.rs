//! Finitely presented abelian groups `Z^gens / im(rels)`.

use num_traits::One;

use crate::lin::{z_invariants, Invariants};
use crate::zmat::{self, ZMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPres {
    pub gens: usize,
    /// `gens x r`, one relation per column.
    pub rels: ZMat,
}

impl ZPres {
    pub fn new(gens: usize, rels: ZMat) -> ZPres {
        assert_eq!(rels.rows(), gens, "relation matrix has wrong height");
        ZPres { gens, rels }
    }

    pub fn free(n: usize) -> ZPres {
        ZPres { gens: n, rels: ZMat::zeros(n, 0) }
    }

    /// `Z/n` (with `n = 0` giving `Z`).
    pub fn cyclic(n: i64) -> ZPres {
        if n == 0 {
            return ZPres::free(1);
        }
        ZPres { gens: 1, rels: ZMat::from_i64(&[&[n]]) }
    }

    /// `Z^rank ⊕ ⊕ Z/t`.
    pub fn from_invariants(rank: usize, torsion: &[i64]) -> ZPres {
        let mut p = ZPres::free(rank);
        for &t in torsion {
            p = p.direct_sum(&ZPres::cyclic(t));
        }
        p
    }

    pub fn direct_sum(&self, other: &ZPres) -> ZPres {
        ZPres { gens: self.gens + other.gens, rels: self.rels.dsum(&other.rels) }
    }

    pub fn invariants(&self) -> Invariants {
        z_invariants(self.gens, &self.rels)
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    /// Whether `f: src -> self` sends relations of `src` into relations of `self`.
    pub fn maps_well(&self, f: &ZMat, src: &ZPres) -> bool {
        if src.rels.cols() == 0 {
            return true;
        }
        zmat::solve(&self.rels, &f.mul(&src.rels)).is_some()
    }

    /// `self ⊗ other`, generator `(i, k)` at index `i * other.gens + k`.
    pub fn tensor(&self, other: &ZPres) -> ZPres {
        let a = self.rels.kron(&ZMat::identity(other.gens));
        let b = ZMat::identity(self.gens).kron(&other.rels);
        ZPres { gens: self.gens * other.gens, rels: a.hcat(&b) }
    }

    /// Minimal presentation: `Z^r ⊕ Z/t_1 ⊕ ...` together with mutually inverse isos.
    ///
    /// Returns `(canon, to, from)` with `to: self -> canon`, `from: canon -> self`.
    pub fn canonical(&self) -> (ZPres, ZMat, ZMat) {
        let s = zmat::snf(&self.rels);
        let uinv = zmat::solve(&s.u, &ZMat::identity(self.gens)).expect("unimodular");
        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..self.gens {
            match s.diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) => {
                    keep.push(i);
                    torsion.push(d.clone());
                }
                None => keep.push(i),
            }
        }
        // free generators first, then torsion in divisibility order
        let free: Vec<usize> = keep.iter().copied().filter(|&i| i >= s.diag.len()).collect();
        let tors: Vec<usize> = keep.iter().copied().filter(|&i| i < s.diag.len()).collect();
        let order: Vec<usize> = free.iter().chain(tors.iter()).copied().collect();
        let mut rels = ZMat::zeros(order.len(), tors.len());
        for (k, t) in torsion.iter().enumerate() {
            rels.set(free.len() + k, k, t.clone());
        }
        let to = s.u.select_rows(&order);
        let from = uinv.select_cols(&order);
        (ZPres { gens: order.len(), rels }, to, from)
    }
}

/// Preimage lattice `{x : f x ∈ im tgt.rels}`, as a column basis.
pub fn preimage_lattice(f: &ZMat, tgt: &ZPres) -> ZMat {
    let g = f.cols();
    if f.rows() == 0 {
        return ZMat::identity(g);
    }
    let k = zmat::kernel_basis(&f.hcat(&tgt.rels));
    let top: Vec<usize> = (0..g).collect();
    zmat::column_basis(&k.select_rows(&top))
}

pub fn is_surjective(f: &ZMat, tgt: &ZPres) -> bool {
    if tgt.gens == 0 {
        return true;
    }
    let d = zmat::invariant_factors(&f.hcat(&tgt.rels));
    d.len() == tgt.gens && d.iter().all(|x| x.is_one())
}

pub fn is_injective(f: &ZMat, src: &ZPres, tgt: &ZPres) -> bool {
    let k = preimage_lattice(f, tgt);
    if k.cols() == 0 {
        return true;
    }
    zmat::solve(&src.rels, &k).is_some()
}

pub fn is_iso(f: &ZMat, src: &ZPres, tgt: &ZPres) -> bool {
    is_surjective(f, tgt) && is_injective(f, src, tgt)
}

/// Kernel module and its inclusion.
pub fn kernel(f: &ZMat, src: &ZPres, tgt: &ZPres) -> (ZPres, ZMat) {
    let k = preimage_lattice(f, tgt);
    let rels = zmat::solve(&k, &src.rels).expect("relations lie in the preimage lattice");
    (ZPres::new(k.cols(), rels), k)
}

/// Cokernel module and its projection.
pub fn cokernel(f: &ZMat, tgt: &ZPres) -> (ZPres, ZMat) {
    (ZPres::new(tgt.gens, tgt.rels.hcat(f)), ZMat::identity(tgt.gens))
}

/// Image as a quotient of the source, with the map into the target.
pub fn image(f: &ZMat, tgt: &ZPres) -> (ZPres, ZMat) {
    let k = preimage_lattice(f, tgt);
    (ZPres::new(f.cols(), k), f.clone())
}

/// An isomorphism `a -> b` when one exists (a complete decision).
pub fn iso_search(a: &ZPres, b: &ZPres) -> Option<ZMat> {
    let (ca, to_a, _) = a.canonical();
    let (cb, _, from_b) = b.canonical();
    if ca.gens != cb.gens || ca.invariants() != cb.invariants() {
        return None;
    }
    Some(from_b.mul(&to_a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_iso() {
        let a = ZPres::from_invariants(0, &[2, 3]);
        let b = ZPres::cyclic(6);
        let f = iso_search(&a, &b).expect("Z/2+Z/3 = Z/6");
        assert!(b.maps_well(&f, &a));
        assert!(is_iso(&f, &a, &b));
        assert!(iso_search(&ZPres::cyclic(4), &ZPres::from_invariants(0, &[2, 2])).is_none());
    }

    #[test]
    fn kernels_and_cokernels() {
        let f = ZMat::from_i64(&[&[1, 1]]);
        let (k, inc) = kernel(&f, &ZPres::free(2), &ZPres::free(1));
        assert_eq!(k.invariants(), Invariants::Z { rank: 1, torsion: vec![] });
        assert!(f.mul(&inc).is_zero());
        let two = ZMat::from_i64(&[&[2]]);
        let (c, _) = cokernel(&two, &ZPres::free(1));
        assert_eq!(c.invariants(), Invariants::Z { rank: 0, torsion: vec!["2".into()] });
        assert!(!is_iso(&two, &ZPres::free(1), &ZPres::free(1)));
        assert!(is_injective(&two, &ZPres::free(1), &ZPres::free(1)));
    }

    #[test]
    fn tensor_of_cyclics() {
        let t = ZPres::cyclic(2).tensor(&ZPres::cyclic(3));
        assert!(t.is_zero());
        let t = ZPres::cyclic(4).tensor(&ZPres::cyclic(6));
        assert_eq!(t.invariants(), Invariants::Z { rank: 0, torsion: vec!["2".into()] });
    }

    #[test]
    fn canonical_round_trip() {
        let a = ZPres::new(2, ZMat::from_i64(&[&[2, 0], &[4, 6]]));
        let (c, to, from) = a.canonical();
        assert!(is_iso(&to, &a, &c));
        assert!(is_iso(&from, &c, &a));
    }
}
