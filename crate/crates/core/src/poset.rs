//! Finite preorders with the topology of minimal open sets.
//!
//! Points carry opaque string ids and are kept sorted, so the internal index
//! order is the lexicographic order of ids. With the convention used
//! throughout the crate, `U_p = {q : p <= q}` is the smallest open set
//! containing `p` and the closure of `p` is `{q : q <= p}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Preorder {
    ids: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// An upward closed subset of a preorder, as sorted point indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OpenSet(Vec<usize>);

impl OpenSet {
    pub fn new(x: &Preorder, mut pts: Vec<usize>) -> Result<OpenSet> {
        pts.sort_unstable();
        pts.dedup();
        for &p in &pts {
            for q in 0..x.len() {
                if x.leq(p, q) && pts.binary_search(&q).is_err() {
                    return Err(Error::NotOpen(x.id(q).to_string()));
                }
            }
        }
        Ok(OpenSet(pts))
    }

    pub fn whole(x: &Preorder) -> OpenSet {
        OpenSet((0..x.len()).collect())
    }

    pub fn empty() -> OpenSet {
        OpenSet(Vec::new())
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersect(&self, other: &OpenSet) -> OpenSet {
        OpenSet(self.0.iter().copied().filter(|p| other.contains(*p)).collect())
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        let s: BTreeSet<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        OpenSet(s.into_iter().collect())
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    Exhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

impl Preorder {
    /// Reflexive-transitive closure of the generating relations `a <= b`.
    pub fn build<S: AsRef<str>>(points: &[S], relations: &[(S, S)]) -> Result<Preorder> {
        let mut ids: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0].clone()));
            }
        }
        let n = ids.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let idx = |s: &str| ids.binary_search_by(|x| x.as_str().cmp(s)).map_err(|_| Error::UnknownPoint(s.to_string()));
        for (a, b) in relations {
            let (i, j) = (idx(a.as_ref())?, idx(b.as_ref())?);
            leq[i][j] = true;
        }
        close_transitively(&mut leq);
        Ok(Preorder { ids, leq })
    }

    /// Builds from ids (any order) and a full relation matrix indexed like `ids`; the
    /// matrix is closed reflexively and transitively.
    pub fn from_relation(ids: Vec<String>, rel: &[Vec<bool>]) -> Result<Preorder> {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let sorted: Vec<String> = order.iter().map(|&i| ids[i].clone()).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0].clone()));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[a][b] = a == b || rel[order[a]][order[b]];
            }
        }
        close_transitively(&mut leq);
        Ok(Preorder { ids: sorted, leq })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).map_err(|_| Error::UnknownPoint(id.to_string()))
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    /// Strict order: `p <= q` and not `q <= p`.
    pub fn lt(&self, p: usize, q: usize) -> bool {
        self.leq[p][q] && !self.leq[q][p]
    }

    pub fn equiv(&self, p: usize, q: usize) -> bool {
        self.leq[p][q] && self.leq[q][p]
    }

    pub fn is_poset(&self) -> bool {
        (0..self.len()).all(|p| (0..self.len()).all(|q| p == q || !self.equiv(p, q)))
    }

    pub fn min_open(&self, p: usize) -> OpenSet {
        OpenSet((0..self.len()).filter(|&q| self.leq(p, q)).collect())
    }

    pub fn closure(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.leq(q, p)).collect()
    }

    /// Generating pairs of the relation: strict covers plus equivalences.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if p == q || !self.leq(p, q) {
                    continue;
                }
                if self.equiv(p, q) {
                    out.push((p, q));
                    continue;
                }
                let between = (0..n).any(|r| self.lt(p, r) && self.lt(r, q));
                if !between {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Covering pairs inside a subset, with the order inherited from `self`.
    pub fn hasse_in(&self, subset: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &p in subset {
            for &q in subset {
                if p == q || !self.leq(p, q) {
                    continue;
                }
                if self.equiv(p, q) || !subset.iter().any(|&r| self.lt(p, r) && self.lt(r, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Kolmogorov quotient. Each class is named after its lexicographically
    /// smallest member; the second component sends a point to its class.
    pub fn t0_quotient(&self) -> (Preorder, Vec<usize>) {
        let n = self.len();
        let mut rep = vec![0; n];
        for p in 0..n {
            rep[p] = (0..n).find(|&q| self.equiv(p, q)).unwrap();
        }
        let reps: Vec<usize> = (0..n).filter(|&p| rep[p] == p).collect();
        let ids: Vec<String> = reps.iter().map(|&r| self.ids[r].clone()).collect();
        let leq: Vec<Vec<bool>> = reps.iter().map(|&a| reps.iter().map(|&b| self.leq(a, b)).collect()).collect();
        let q = Preorder { ids, leq };
        let map = (0..n).map(|p| reps.iter().position(|&r| r == rep[p]).unwrap()).collect();
        (q, map)
    }

    /// Representatives (smallest index) of the equivalence classes.
    pub fn class_representative(&self, p: usize) -> usize {
        (0..self.len()).find(|&q| self.equiv(p, q)).unwrap()
    }

    /// Maximal length of a strict chain `x0 < ... < xn`.
    pub fn dimension(&self) -> usize {
        self.dimension_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn dimension_of(&self, subset: &[usize]) -> usize {
        // longest chain ending at each point, by increasing height
        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order = subset.to_vec();
        order.sort_by_key(|&p| subset.iter().filter(|&&q| self.lt(q, p)).count());
        let mut dim = 0;
        for &p in &order {
            let h = subset.iter().filter(|&&q| self.lt(q, p)).map(|q| best[q] + 1).max().unwrap_or(0);
            best.insert(p, h);
            dim = dim.max(h);
        }
        dim
    }

    /// Strict chains with `n + 1` elements, lexicographic in point ids.
    pub fn chains(&self, n: usize) -> Vec<Vec<usize>> {
        self.chains_in(&(0..self.len()).collect::<Vec<_>>(), n)
    }

    pub fn chains_in(&self, subset: &[usize], n: usize) -> Vec<Vec<usize>> {
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        self.extend_chains(&sub, n + 1, &mut cur, &mut out);
        out
    }

    fn extend_chains(&self, sub: &[usize], len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for &p in sub {
            if cur.last().is_none_or(|&l| self.lt(l, p)) {
                cur.push(p);
                self.extend_chains(sub, len, cur, out);
                cur.pop();
            }
        }
    }

    /// All strict chains in `subset`, grouped by length.
    pub fn all_chains_in(&self, subset: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut n = 0;
        loop {
            let c = self.chains_in(subset, n);
            if c.is_empty() {
                break;
            }
            out.push(c);
            n += 1;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Connected components of a subset (comparability graph restricted to it).
    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        for &s in &sub {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let p = comp[i];
                for &q in &sub {
                    if !seen.contains(&q) && (self.leq(p, q) || self.leq(q, p)) {
                        seen.insert(q);
                        comp.push(q);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced preorder on a subset. Ids are kept, so the returned index
    /// list maps new indices to old ones in the same relative order.
    pub fn subspace(&self, subset: &[usize]) -> (Preorder, Vec<usize>) {
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let ids = sub.iter().map(|&i| self.ids[i].clone()).collect();
        let leq = sub.iter().map(|&a| sub.iter().map(|&b| self.leq(a, b)).collect()).collect();
        (Preorder { ids, leq }, sub)
    }

    /// Maximal points.
    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| !(0..self.len()).any(|q| self.lt(p, q))).collect()
    }

    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| !(0..self.len()).any(|q| self.lt(q, p))).collect()
    }

    /// A point below every point, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&p| (0..self.len()).all(|q| self.leq(p, q)))
    }

    pub fn is_monotone(&self, target: &Preorder, map: &[usize]) -> Result<()> {
        for p in 0..self.len() {
            for q in 0..self.len() {
                if self.leq(p, q) && !target.leq(map[p], map[q]) {
                    return Err(Error::NotMonotone(self.id(p).to_string(), self.id(q).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Product with componentwise order. Point `(x, y)` gets id `(x,y)`; the
    /// returned pairs give, for each new index, the factor indices.
    pub fn product(&self, other: &Preorder) -> (Preorder, Vec<(usize, usize)>) {
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            for y in 0..other.len() {
                pairs.push((x, y));
            }
        }
        self.pairs_preorder(other, pairs)
    }

    /// Fibered product over `s` for monotone maps `f: self -> s`, `g: other -> s`.
    pub fn fibered_product(&self, other: &Preorder, s: &Preorder, f: &[usize], g: &[usize]) -> Result<(Preorder, Vec<(usize, usize)>)> {
        if f.len() != self.len() || g.len() != other.len() || f.iter().chain(g).any(|&t| t >= s.len()) {
            return Err(Error::Mismatch("fibered product maps do not land in a common base".into()));
        }
        self.is_monotone(s, f)?;
        other.is_monotone(s, g)?;
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            for y in 0..other.len() {
                if f[x] == g[y] {
                    pairs.push((x, y));
                }
            }
        }
        Ok(self.pairs_preorder(other, pairs))
    }

    fn pairs_preorder(&self, other: &Preorder, pairs: Vec<(usize, usize)>) -> (Preorder, Vec<(usize, usize)>) {
        let ids: Vec<String> = pairs.iter().map(|&(x, y)| pair_id(self.id(x), other.id(y))).collect();
        let n = pairs.len();
        let mut rel = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                rel[a][b] = self.leq(pairs[a].0, pairs[b].0) && other.leq(pairs[a].1, pairs[b].1);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let p = Preorder::from_relation(ids, &rel).expect("pair ids are distinct");
        let sorted_pairs = order.iter().map(|&i| pairs[i]).collect();
        (p, sorted_pairs)
    }

    /// Level signature used to prune isomorphism searches.
    fn signature(&self, p: usize) -> (usize, usize, usize, usize) {
        let up = (0..self.len()).filter(|&q| self.leq(p, q)).count();
        let down = (0..self.len()).filter(|&q| self.leq(q, p)).count();
        let covers_up = self.hasse().iter().filter(|&&(a, _)| a == p).count();
        let covers_down = self.hasse().iter().filter(|&&(_, b)| b == p).count();
        (up, down, covers_up, covers_down)
    }

    /// First order isomorphism in lexicographic search order.
    pub fn iso(&self, other: &Preorder, budget: usize) -> Search<Vec<usize>> {
        let mut found = None;
        let r = self.for_each_iso(other, budget, |m| {
            found = Some(m.to_vec());
            false
        });
        match (found, r) {
            (Some(m), _) => Search::Found(m),
            (None, true) => Search::Absent,
            (None, false) => Search::Exhausted,
        }
    }

    /// Calls `visit` on every order isomorphism until it returns `false`.
    /// Returns `false` if the node budget ran out before the search completed.
    pub fn for_each_iso(&self, other: &Preorder, budget: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        let n = self.len();
        if n != other.len() {
            return true;
        }
        let sa: Vec<_> = (0..n).map(|p| self.signature(p)).collect();
        let sb: Vec<_> = (0..n).map(|p| other.signature(p)).collect();
        let mut ma = sa.clone();
        let mut mb = sb.clone();
        ma.sort();
        mb.sort();
        if ma != mb {
            return true;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut nodes = 0usize;
        let mut stop = false;
        let complete = self.iso_rec(other, &sa, &sb, 0, &mut map, &mut used, &mut nodes, budget, &mut visit, &mut stop);
        complete || stop
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_rec(
        &self,
        other: &Preorder,
        sa: &[(usize, usize, usize, usize)],
        sb: &[(usize, usize, usize, usize)],
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
        budget: usize,
        visit: &mut impl FnMut(&[usize]) -> bool,
        stop: &mut bool,
    ) -> bool {
        if *stop {
            return true;
        }
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let n = self.len();
        if i == n {
            if !visit(map) {
                *stop = true;
            }
            return true;
        }
        for y in 0..n {
            if used[y] || sa[i] != sb[y] {
                continue;
            }
            let ok = (0..i).all(|a| self.leq(a, i) == other.leq(map[a], y) && self.leq(i, a) == other.leq(y, map[a]));
            if !ok {
                continue;
            }
            map[i] = y;
            used[y] = true;
            let done = self.iso_rec(other, sa, sb, i + 1, map, used, nodes, budget, visit, stop);
            used[y] = false;
            map[i] = usize::MAX;
            if !done {
                return false;
            }
            if *stop {
                return true;
            }
        }
        true
    }
}

pub fn pair_id(x: &str, y: &str) -> String {
    format!("({},{})", x, y)
}

fn close_transitively(leq: &mut [Vec<bool>]) {
    let n = leq.len();
    for k in 0..n {
        for i in 0..n {
            if !leq[i][k] {
                continue;
            }
            for j in 0..n {
                if leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
}

/// All order-preserving maps `x -> y`, as image index lists in lexicographic order.
pub fn monotone_maps(x: &Preorder, y: &Preorder) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(x.len());
    fn rec(x: &Preorder, y: &Preorder, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == x.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..y.len() {
            let ok = (0..i).all(|a| (!x.leq(a, i) || y.leq(cur[a], t)) && (!x.leq(i, a) || y.leq(t, cur[a])));
            if ok {
                cur.push(t);
                rec(x, y, cur, out);
                cur.pop();
            }
        }
    }
    rec(x, y, &mut cur, &mut out);
    out
}

/// All partial orders on `n` labelled points up to isomorphism, points named `p0..`.
pub fn posets_up_to_iso(n: usize) -> Vec<Preorder> {
    let ids: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b))).collect();
    let mut seen: Vec<Preorder> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                rel[a][b] = true;
            }
        }
        // only relations that are already transitive and antisymmetric
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || a == c || rel[a][c])));
        let antisym = (0..n).all(|a| (0..n).all(|b| !(rel[a][b] && rel[b][a])));
        if !transitive || !antisym {
            continue;
        }
        let p = Preorder::from_relation(ids.clone(), &rel).unwrap();
        if seen.iter().any(|q| q.iso(&p, usize::MAX).found().is_some()) {
            continue;
        }
        seen.push(p);
    }
    seen
}
