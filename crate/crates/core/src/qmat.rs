//! Dense matrices over exact rationals and the row-reduction routines built on them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMat{}x{}[", self.rows, self.cols)?;
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

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![vec![Rat::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rational matrix");
        }
        QMat { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(data, cols)
    }

    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn column(v: &[Rat]) -> Self {
        Self::from_cols(&[v.to_vec()], v.len())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "rational matrix shape mismatch");
        let mut out = QMat::zeros(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rat::zero(); self.rows];
        for i in 0..self.rows {
            for (a, b) in self.data[i].iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    out[i] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] += &other.data[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        let mut out = self.clone();
        for r in out.data.iter_mut() {
            for x in r.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn hcat(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut out = QMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i][..self.cols].clone_from_slice(&self.data[i]);
            out.data[i][self.cols..].clone_from_slice(&other.data[i]);
        }
        out
    }

    pub fn vcat(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn dsum(&self, other: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i][..self.cols].clone_from_slice(&self.data[i]);
        }
        for i in 0..other.rows {
            out.data[self.rows + i][self.cols..].clone_from_slice(&other.data[i]);
        }
        out
    }

    pub fn add_block(&mut self, r: usize, c: usize, block: &QMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block.data[i][j];
                if !b.is_zero() {
                    self.data[r + i][c + j] += b;
                }
            }
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> QMat {
        let mut out = QMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i][k] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> QMat {
        let data = rows.iter().map(|&i| self.data[i].clone()).collect();
        QMat { rows: rows.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMat {
        let mut out = QMat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a][b] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn kron(&self, other: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other.data[k][l];
                        if !b.is_zero() {
                            out.data[i * other.rows + k][j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.data[i][i].clone()).fold(Rat::zero(), |a, b| a + b)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.data[i][c].is_zero()) else { continue };
            a.data.swap(r, p);
            let inv = a.data[r][c].recip();
            for x in a.data[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a.data[r].clone();
            for i in 0..a.rows {
                if i == r || a.data[i][c].is_zero() {
                    continue;
                }
                let f = a.data[i][c].clone();
                for (x, y) in a.data[i].iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Columns forming a basis of `{x : self x = 0}`.
    pub fn nullspace(&self) -> QMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f][k] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                out.data[p][k] = -r.data[i][f].clone();
            }
        }
        out
    }

    /// Rows forming a basis of `{y : y self = 0}`.
    pub fn left_nullspace(&self) -> QMat {
        self.transpose().nullspace().transpose()
    }

    /// Independent columns spanning the column space (chosen among the given columns).
    pub fn column_space(&self) -> QMat {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Solves `self x = b` for all columns of `b` at once.
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let aug = self.hcat(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMat::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[p][j] = r.data[i][self.cols + j].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&QMat::identity(self.rows))?;
        if self.mul(&x) == QMat::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }
}

/// Quotient of `Q^n` by the column span of `w`: a surjection `p` with kernel `span(w)`
/// and a section `s` with `p s = 1`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub p: QMat,
    pub s: QMat,
}

impl Quotient {
    /// The section picks standard basis vectors, so quotient coordinates of
    /// natural elements stay small.
    pub fn new(n: usize, w: &QMat) -> Quotient {
        assert_eq!(w.rows(), n);
        if n == 0 {
            return Quotient { p: QMat::zeros(0, 0), s: QMat::zeros(0, 0) };
        }
        let aug = w.hcat(&QMat::identity(n));
        let (_, pivots) = aug.rref();
        let wp: Vec<usize> = pivots.iter().copied().filter(|&c| c < w.cols()).collect();
        let free: Vec<usize> = pivots.iter().copied().filter(|&c| c >= w.cols()).map(|c| c - w.cols()).collect();
        let s = QMat::identity(n).select_cols(&free);
        let basis = w.select_cols(&wp).hcat(&s);
        let inv = basis.inverse().expect("complement completes a basis");
        let tail: Vec<usize> = (wp.len()..n).collect();
        let p = if free.is_empty() { QMat::zeros(0, n) } else { inv.select_rows(&tail) };
        Quotient { p, s }
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let a = QMat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = QMat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        assert!(QMat::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_none());
        let b = QMat::from_i64(&[&[3], &[2]]);
        assert_eq!(a.solve(&b).unwrap(), QMat::from_i64(&[&[1], &[1]]));
    }

    #[test]
    fn quotient_kills_subspace() {
        let w = QMat::from_i64(&[&[1], &[1], &[0]]);
        let q = Quotient::new(3, &w);
        assert_eq!(q.dim(), 2);
        assert!(q.p.mul(&w).is_zero());
        assert_eq!(q.p.mul(&q.s), QMat::identity(2));
    }
}
