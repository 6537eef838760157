//! Independent integer linear algebra for small matrices: Bareiss
//! determinants, determinantal divisors, and simplicial cohomology of order
//! complexes. Nothing here calls into the library's linear algebra.

pub type IMat = Vec<Vec<i128>>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free determinant.
pub fn det(m: &IMat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank over `Q`, by fraction-free elimination.
pub fn rank(m: &IMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0, |g, &v| gcd(g, v));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors `d_k / d_{k-1}` from the gcds `d_k` of all `k x k` minors.
pub fn invariant_factors(m: &IMat) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: IMat = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
                if g == 1 {
                    break;
                }
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// `Z^rank ⊕ ⊕ Z/t`, torsion factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Cohomology `ker d_i / im d_{i-1}` of a cochain complex given by its differentials and term sizes.
pub fn cochain_cohomology(sizes: &[usize], diffs: &[IMat]) -> Vec<Group> {
    let rk: Vec<usize> = diffs.iter().map(rank).collect();
    (0..sizes.len())
        .map(|i| {
            let out = if i < diffs.len() { rk[i] } else { 0 };
            let inc = if i > 0 { rk[i - 1] } else { 0 };
            let torsion = if i > 0 { invariant_factors(&diffs[i - 1]).into_iter().filter(|&t| t > 1).collect() } else { Vec::new() };
            Group { rank: sizes[i] - out - inc, torsion }
        })
        .collect()
}

/// Strict chains `c0 < c1 < ... < cn` in `points` under `lt`.
pub fn strict_chains(points: &[usize], lt: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<Vec<usize>>> {
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![points.iter().map(|&p| vec![p]).collect()];
    loop {
        let last = by_len.last().unwrap();
        let next: Vec<Vec<usize>> = last
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                points.iter().filter(move |&&q| lt(top, q)).map(move |&q| {
                    let mut d = c.clone();
                    d.push(q);
                    d
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        by_len.push(next);
    }
    by_len
}

/// Integer cohomology of the order complex of `points` (simplicial coboundaries of strict chains).
pub fn order_complex_cohomology(points: &[usize], lt: &dyn Fn(usize, usize) -> bool) -> Vec<Group> {
    if points.is_empty() {
        return Vec::new();
    }
    let chains = strict_chains(points, lt);
    let sizes: Vec<usize> = chains.iter().map(|c| c.len()).collect();
    let diffs: Vec<IMat> = (0..chains.len().saturating_sub(1))
        .map(|n| {
            let (src, tgt) = (&chains[n], &chains[n + 1]);
            tgt.iter()
                .map(|t| {
                    let mut row = vec![0i128; src.len()];
                    for k in 0..t.len() {
                        let mut face = t.clone();
                        face.remove(k);
                        let j = src.iter().position(|s| *s == face).expect("faces are chains");
                        row[j] += if k % 2 == 0 { 1 } else { -1 };
                    }
                    row
                })
                .collect()
        })
        .collect();
    cochain_cohomology(&sizes, &diffs)
}
