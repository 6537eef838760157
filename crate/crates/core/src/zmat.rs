//! Dense integer matrices over arbitrary-precision integers.
//!
//! Smith normal form with unimodular transforms is the backbone of the
//! constant-integer backend: kernels, cokernels, lattice membership and the
//! invariant factors reported for cohomology groups are all derived from it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl fmt::Debug for ZMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZMat{}x{}[", self.rows, self.cols)?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

impl ZMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Int) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = c.clone();
        }
        m
    }

    /// Builds a matrix from rows; an empty row list gives a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
        }
        ZMat { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_rows(data, cols)
    }

    pub fn from_cols(cols: &[Vec<Int>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn transpose(&self) -> ZMat {
        let mut t = ZMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows, "integer matrix shape mismatch");
        let mut out = ZMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ZMat) -> ZMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] += &other.data[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &Int) -> ZMat {
        let mut out = self.clone();
        for r in out.data.iter_mut() {
            for x in r.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn neg(&self) -> ZMat {
        self.scale(&Int::from(-1))
    }

    pub fn hcat(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut out = ZMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i][..self.cols].clone_from_slice(&self.data[i]);
            out.data[i][self.cols..].clone_from_slice(&other.data[i]);
        }
        out
    }

    pub fn vcat(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ZMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn dsum(&self, other: &ZMat) -> ZMat {
        let mut out = ZMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i][..self.cols].clone_from_slice(&self.data[i]);
        }
        for i in 0..other.rows {
            out.data[self.rows + i][self.cols..].clone_from_slice(&other.data[i]);
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r, c)`, adding to what is there.
    pub fn add_block(&mut self, r: usize, c: usize, block: &ZMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block.data[i][j];
                if !b.is_zero() {
                    self.data[r + i][c + j] += b;
                }
            }
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> ZMat {
        let mut out = ZMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i][k] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> ZMat {
        let data = rows.iter().map(|&i| self.data[i].clone()).collect();
        ZMat { rows: rows.len(), cols: self.cols, data }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &ZMat) -> ZMat {
        let mut out = ZMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[i * other.rows + k][j * other.cols + l] = a * &other.data[k][l];
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.data.iter_mut() {
            r.swap(a, b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in self.data.iter_mut() {
            if !r[src].is_zero() {
                let v = q * &r[src];
                r[dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.data[i].iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

/// Result of [`snf`]: `u * a * v` is diagonal with entries `diag` (then zeros).
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<Int>,
    pub u: ZMat,
    pub v: ZMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// The returned invariant factors are positive and each divides the next.
pub fn snf(a: &ZMat) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut a = a.clone();
    let mut u = ZMat::identity(m);
    let mut v = ZMat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &a.data[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.data[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let q = a.data[i][t].div_floor(&a.data[t][t]);
                let nq = -q;
                a.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !a.data[i][t].is_zero() {
                    a.swap_rows(i, t);
                    u.swap_rows(i, t);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let q = a.data[t][j].div_floor(&a.data[t][t]);
                let nq = -q;
                a.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !a.data[t][j].is_zero() {
                    a.swap_cols(j, t);
                    v.swap_cols(j, t);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = a.data[t][t].clone();
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !a.data[i][j].is_multiple_of(&p) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..t).map(|k| a.data[k][k].clone()).collect();
    Snf { diag, u, v }
}

/// Invariant factors only.
pub fn invariant_factors(a: &ZMat) -> Vec<Int> {
    snf(a).diag
}

/// Columns spanning the integer kernel `{x : a x = 0}` (a lattice basis).
pub fn kernel_basis(a: &ZMat) -> ZMat {
    let s = snf(a);
    let r = s.rank();
    let idx: Vec<usize> = (r..a.cols).collect();
    s.v.select_cols(&idx)
}

/// Solves `a x = b` over the integers (column by column). `None` if some column has no integral solution.
pub fn solve(a: &ZMat, b: &ZMat) -> Option<ZMat> {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let s = snf(a);
    solve_with(&s, a.cols, b)
}

pub fn solve_with(s: &Snf, ncols: usize, b: &ZMat) -> Option<ZMat> {
    let ub = s.u.mul(b);
    let r = s.rank();
    let mut y = ZMat::zeros(ncols, b.cols);
    for j in 0..b.cols {
        for i in 0..ub.rows {
            let x = &ub.data[i][j];
            if i < r {
                let (q, rem) = x.div_rem(&s.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                y.data[i][j] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// A lattice basis (independent columns) of the column span of `gens`.
pub fn column_basis(gens: &ZMat) -> ZMat {
    let mut a = gens.clone();
    let (m, n) = (a.rows, a.cols);
    let mut c = 0;
    for r in 0..m {
        if c >= n {
            break;
        }
        loop {
            // smallest nonzero in row r among columns >= c
            let mut best: Option<usize> = None;
            for j in c..n {
                let x = &a.data[r][j];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < a.data[r][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(c, b);
            let mut done = true;
            for j in c + 1..n {
                if a.data[r][j].is_zero() {
                    continue;
                }
                let q = -a.data[r][j].div_floor(&a.data[r][c]);
                a.add_col_multiple(j, c, &q);
                if !a.data[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                c += 1;
                break;
            }
        }
    }
    let idx: Vec<usize> = (0..c).collect();
    a.select_cols(&idx)
}

/// Rank over the rationals.
pub fn rank(a: &ZMat) -> usize {
    snf(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(s: &Snf, a: &ZMat) -> ZMat {
        s.u.mul(a).mul(&s.v)
    }

    #[test]
    fn snf_of_two_three() {
        let a = ZMat::from_i64(&[&[2, 0], &[0, 3]]);
        let s = snf(&a);
        assert_eq!(s.diag, vec![Int::from(1), Int::from(6)]);
        let d = diag_of(&s, &a);
        assert_eq!(d, ZMat::from_i64(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = snf(&ZMat::identity(3));
        assert_eq!(s.diag, vec![Int::one(); 3]);
        assert!(snf(&ZMat::zeros(2, 3)).diag.is_empty());
    }

    #[test]
    fn snf_rectangular_and_divisibility() {
        let a = ZMat::from_i64(&[&[4, 6, 2], &[6, 9, 3], &[2, 3, 1]]);
        let s = snf(&a);
        assert_eq!(s.diag, vec![Int::one()]);
        let a = ZMat::from_i64(&[&[6, 4], &[10, 8], &[0, 2]]);
        let s = snf(&a);
        let d = diag_of(&s, &a);
        for i in 0..3 {
            for j in 0..2 {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        assert!(s.diag[1].is_multiple_of(&s.diag[0]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = ZMat::from_i64(&[&[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let a = ZMat::from_i64(&[&[2, 0], &[0, 3]]);
        let b = ZMat::from_i64(&[&[4], &[9]]);
        assert_eq!(solve(&a, &b).unwrap(), ZMat::from_i64(&[&[2], &[3]]));
        assert!(solve(&a, &ZMat::from_i64(&[&[1], &[0]])).is_none());
    }

    #[test]
    fn column_basis_drops_dependents() {
        let g = ZMat::from_i64(&[&[2, 4, 1], &[0, 0, 0]]);
        let b = column_basis(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.get(0, 0).abs(), Int::one());
    }
}
