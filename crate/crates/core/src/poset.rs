//! Finite posets on `0..n` (n ≤ 64) with up-set and down-set masks.

use std::collections::HashSet;

use crate::bits::{self, bit, elems, has, Set};
use crate::error::{Error, Result};
use crate::matching::{konig_cover, max_matching, Bipartite};
use crate::par::{self, Mode};

/// An order-preserving map, stored as the image of each source element.
pub type OrderMap = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    /// `up[i]` holds every `j` with `i ≤ j`.
    up: Vec<Set>,
    down: Vec<Set>,
}

impl Poset {
    /// Builds the poset generated by `covers`, where `(i, j)` means `i < j`.
    pub fn new(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if n > bits::MAX_GROUND {
            return Err(Error::TooLarge(n));
        }
        let mut up: Vec<Set> = (0..n).map(bit).collect();
        for &(i, j) in covers {
            for e in [i, j] {
                if e >= n {
                    return Err(Error::OutOfRange { elem: e, size: n });
                }
            }
            if i == j {
                return Err(Error::Cycle(i));
            }
            up[i] |= bit(j);
        }
        // Warshall closure on masks.
        for k in 0..n {
            for i in 0..n {
                if has(up[i], k) {
                    up[i] |= up[k];
                }
            }
        }
        for (i, &ui) in up.iter().enumerate() {
            for j in elems(ui) {
                if j != i && has(up[j], i) {
                    return Err(Error::Cycle(i.min(j)));
                }
            }
        }
        Ok(Self::from_up(up))
    }

    /// Builds a poset from a relation, checking the order axioms.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        if n > bits::MAX_GROUND {
            return Err(Error::TooLarge(n));
        }
        let up: Vec<Set> = (0..n)
            .map(|i| (0..n).filter(|&j| leq(i, j)).fold(0, |s, j| s | bit(j)))
            .collect();
        for i in 0..n {
            if !has(up[i], i) {
                return Err(Error::Precondition(format!("relation not reflexive at {i}")));
            }
            for j in elems(up[i]) {
                if j != i && has(up[j], i) {
                    return Err(Error::Cycle(i));
                }
                if !bits::subset(up[j], up[i]) {
                    return Err(Error::Precondition(format!("relation not transitive at {i} ≤ {j}")));
                }
            }
        }
        Ok(Self::from_up(up))
    }

    fn from_up(up: Vec<Set>) -> Poset {
        let n = up.len();
        let mut down = vec![0; n];
        for (i, &ui) in up.iter().enumerate() {
            for j in elems(ui) {
                down[j] |= bit(i);
            }
        }
        Poset { up, down }
    }

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new(n, &covers).expect("chain")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::new(n, &[]).expect("antichain")
    }

    /// The k-element antichain below a single top element `k`.
    pub fn antichain_under_top(k: usize) -> Poset {
        let covers: Vec<_> = (0..k).map(|i| (i, k)).collect();
        Poset::new(k + 1, &covers).expect("antichain under top")
    }

    /// `w` layers of sizes `w, w-1, .., 1`, each element below everything
    /// in higher layers.
    pub fn layered(w: usize) -> Poset {
        let mut layer = Vec::new();
        for (i, sz) in (1..=w).rev().enumerate() {
            layer.extend(std::iter::repeat_n(i, sz));
        }
        let n = layer.len();
        Poset::from_leq(n, |i, j| i == j || layer[i] < layer[j]).expect("layered")
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn all(&self) -> Set {
        bits::full(self.len())
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        has(self.up[i], j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    #[inline]
    pub fn up(&self, i: usize) -> Set {
        self.up[i]
    }

    #[inline]
    pub fn down(&self, i: usize) -> Set {
        self.down[i]
    }

    /// Elements strictly above `i` with nothing in between.
    pub fn upper_covers(&self, i: usize) -> Set {
        let above = self.up[i] & !bit(i);
        let mut c = above;
        for j in elems(above) {
            c &= !(self.up[j] & !bit(j));
        }
        c
    }

    pub fn lower_covers(&self, i: usize) -> Set {
        let below = self.down[i] & !bit(i);
        let mut c = below;
        for j in elems(below) {
            c &= !(self.down[j] & !bit(j));
        }
        c
    }

    /// Cover pairs `(i, j)` with `j` covering `i`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| elems(self.upper_covers(i)).map(move |j| (i, j))).collect()
    }

    pub fn minimal(&self, s: Set) -> Set {
        elems(s).filter(|&i| self.down[i] & s == bit(i)).fold(0, |a, i| a | bit(i))
    }

    pub fn maximal(&self, s: Set) -> Set {
        elems(s).filter(|&i| self.up[i] & s == bit(i)).fold(0, |a, i| a | bit(i))
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i] == self.all())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i] == self.all())
    }

    /// The filter `[s)`.
    pub fn filter_of(&self, s: Set) -> Set {
        elems(s).fold(0, |a, i| a | self.up[i])
    }

    /// The ideal `(s]`.
    pub fn ideal_of(&self, s: Set) -> Set {
        elems(s).fold(0, |a, i| a | self.down[i])
    }

    pub fn is_filter(&self, s: Set) -> bool {
        self.filter_of(s) == s
    }

    pub fn is_ideal(&self, s: Set) -> bool {
        self.ideal_of(s) == s
    }

    pub fn is_antichain(&self, s: Set) -> bool {
        elems(s).all(|i| self.up[i] & s == bit(i))
    }

    pub fn is_chain(&self, s: Set) -> bool {
        elems(s).all(|i| (self.up[i] | self.down[i]) & s == s)
    }

    /// Maximum antichain via König on the comparability split.
    pub fn width(&self) -> (usize, Set) {
        let (w, a) = width_by(self.len(), |i, j| self.lt(i, j));
        (w, bits::from_elems(a))
    }

    /// Width by exhaustive antichain search; used as a cross-check.
    pub fn width_brute(&self) -> usize {
        self.antichains().into_iter().map(bits::size).max().unwrap_or(0)
    }

    pub fn chain_decomposition(&self) -> Vec<Vec<usize>> {
        chain_cover_by(self.len(), |i, j| self.lt(i, j))
    }

    /// Kahn's algorithm, smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed: Set = 0;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&i| !has(placed, i) && bits::subset(self.down[i] & !bit(i), placed))
                .expect("acyclic");
            placed |= bit(next);
            out.push(next);
        }
        out
    }

    /// All antichains, ordered by the size of the ideal they generate, then
    /// by mask.
    pub fn antichains(&self) -> Vec<Set> {
        let mut out = Vec::new();
        self.antichain_dfs(0, 0, &mut out);
        out.sort_by_key(|&a| (bits::size(self.ideal_of(a)), a));
        out
    }

    fn antichain_dfs(&self, i: usize, cur: Set, out: &mut Vec<Set>) {
        if i == self.len() {
            out.push(cur);
            return;
        }
        self.antichain_dfs(i + 1, cur, out);
        if (self.up[i] | self.down[i]) & cur == 0 {
            self.antichain_dfs(i + 1, cur | bit(i), out);
        }
    }

    /// All filters, in the order of their minimal-element antichains.
    pub fn filters(&self) -> Vec<Set> {
        let mut v: Vec<Set> = self.antichains().into_iter().map(|a| self.filter_of(a)).collect();
        v.sort_by_key(|&f| (bits::size(f), f));
        v
    }

    pub fn ideals(&self) -> Vec<Set> {
        let mut v: Vec<Set> = self.antichains().into_iter().map(|a| self.ideal_of(a)).collect();
        v.sort_by_key(|&f| (bits::size(f), f));
        v
    }

    /// Visits every order-preserving map into `q`. Enumeration follows the
    /// linear extension of `self`, with target values tried in ascending
    /// order.
    pub fn for_each_order_map(&self, q: &Poset, mut f: impl FnMut(&[usize])) {
        let order = self.linear_extension();
        let mut vals = vec![usize::MAX; self.len()];
        self.map_dfs(q, &order, 0, &mut vals, &mut f);
    }

    fn map_dfs(&self, q: &Poset, order: &[usize], k: usize, vals: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k == order.len() {
            f(vals);
            return;
        }
        let x = order[k];
        let mut cand = q.all();
        for y in elems(self.down[x] & !bit(x)) {
            cand &= q.up[vals[y]];
        }
        for v in elems(cand) {
            vals[x] = v;
            self.map_dfs(q, order, k + 1, vals, f);
        }
        vals[x] = usize::MAX;
    }

    pub fn order_maps(&self, q: &Poset) -> Vec<OrderMap> {
        let mut out = Vec::new();
        self.for_each_order_map(q, |m| out.push(m.to_vec()));
        out
    }

    /// `|q^self|` with checked arithmetic.
    pub fn count_order_maps(&self, q: &Poset) -> Result<u64> {
        self.count_order_maps_with(q, Mode::default())
    }

    pub fn count_order_maps_with(&self, q: &Poset, mode: Mode) -> Result<u64> {
        if self.is_empty() {
            return Ok(1);
        }
        let order = self.linear_extension();
        let first = order[0];
        let parts = par::map_range(mode, q.len(), |v| {
            let mut vals = vec![usize::MAX; self.len()];
            vals[first] = v;
            self.count_dfs(q, &order, 1, &mut vals)
        });
        parts.into_iter().try_fold(0u64, |acc, p| acc.checked_add(p?).ok_or(Error::Overflow))
    }

    fn count_dfs(&self, q: &Poset, order: &[usize], k: usize, vals: &mut Vec<usize>) -> Result<u64> {
        if k == order.len() {
            return Ok(1);
        }
        let x = order[k];
        let mut cand = q.all();
        for y in elems(self.down[x] & !bit(x)) {
            cand &= q.up[vals[y]];
        }
        let mut total = 0u64;
        for v in elems(cand) {
            vals[x] = v;
            total = total.checked_add(self.count_dfs(q, order, k + 1, vals)?).ok_or(Error::Overflow)?;
        }
        Ok(total)
    }

    pub fn is_order_map(&self, q: &Poset, f: &[usize]) -> bool {
        f.len() == self.len()
            && f.iter().all(|&v| v < q.len())
            && (0..self.len()).all(|i| elems(self.up[i]).all(|j| q.leq(f[i], f[j])))
    }

    /// Cartesian product; element `(i, j)` has index `i * |q| + j`.
    pub fn product(&self, q: &Poset) -> Result<Poset> {
        let m = q.len();
        Poset::from_leq(self.len() * m, |a, b| self.leq(a / m, b / m) && q.leq(a % m, b % m))
    }

    /// Side-by-side union; elements of `q` are shifted by `|self|`.
    pub fn disjoint_union(&self, q: &Poset) -> Result<Poset> {
        let n = self.len();
        Poset::from_leq(n + q.len(), |a, b| match (a < n, b < n) {
            (true, true) => self.leq(a, b),
            (false, false) => q.leq(a - n, b - n),
            _ => false,
        })
    }

    pub fn dual(&self) -> Poset {
        Poset { up: self.down.clone(), down: self.up.clone() }
    }

    /// Subposet on `s`, relabelled in ascending order; returns the labels.
    pub fn induced(&self, s: Set) -> (Poset, Vec<usize>) {
        let labels: Vec<usize> = elems(s).collect();
        let p = Poset::from_leq(labels.len(), |a, b| self.leq(labels[a], labels[b])).expect("subposet");
        (p, labels)
    }

    /// Number of covers on a longest chain.
    pub fn height(&self) -> usize {
        let order = self.linear_extension();
        let mut best = vec![0usize; self.len()];
        for &x in &order {
            for y in elems(self.down[x] & !bit(x)) {
                best[x] = best[x].max(best[y] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Canonical form: the lexicographically least down-mask sequence over
    /// relabellings that sort elements by (down-set size, up-set size).
    pub fn canonical_key(&self) -> Vec<Set> {
        let n = self.len();
        let key = |i: usize| (bits::size(self.down[i]), bits::size(self.up[i]));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| key(i));
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut s = 0;
        for e in 1..=n {
            if e == n || key(order[e]) != key(order[s]) {
                blocks.push((s, e));
                s = e;
            }
        }
        let mut best: Option<Vec<Set>> = None;
        let mut perm = order.clone();
        self.canon_rec(&blocks, 0, &mut perm, &mut best);
        best.unwrap_or_default()
    }

    fn canon_rec(&self, blocks: &[(usize, usize)], b: usize, perm: &mut Vec<usize>, best: &mut Option<Vec<Set>>) {
        if b == blocks.len() {
            // perm[new] = old
            let n = perm.len();
            let mut pos = vec![0; n];
            for (new, &old) in perm.iter().enumerate() {
                pos[old] = new;
            }
            let code: Vec<Set> = perm
                .iter()
                .map(|&old| elems(self.down[old]).fold(0, |a, j| a | bit(pos[j])))
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let (s, e) = blocks[b];
        permute_block(perm, s, s, e, &mut |p| self.canon_rec(blocks, b + 1, p, best));
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }

    /// One representative of every isomorphism class of `n`-element posets.
    pub fn all_up_to_iso(n: usize) -> Vec<Poset> {
        let mut labelled = vec![Poset { up: vec![], down: vec![] }];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &labelled {
                for ideal in p.ideals() {
                    next.push(p.extend_above(ideal));
                }
            }
            labelled = next;
        }
        let mut seen = HashSet::new();
        labelled.into_iter().filter(|p| seen.insert(p.canonical_key())).collect()
    }

    /// Adds a new element whose strict down-set is the ideal `below`.
    fn extend_above(&self, below: Set) -> Poset {
        let n = self.len();
        let mut up = self.up.clone();
        for i in elems(below) {
            up[i] |= bit(n);
        }
        up.push(bit(n));
        Poset::from_up(up)
    }
}

fn permute_block(perm: &mut Vec<usize>, k: usize, s: usize, e: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if e - s <= 1 || k + 1 >= e {
        f(perm);
        return;
    }
    for i in k..e {
        perm.swap(k, i);
        permute_block(perm, k + 1, s, e, f);
        perm.swap(k, i);
    }
}

/// Width of the strict order `lt` on `0..n`, with a maximum antichain.
pub fn width_by(n: usize, lt: impl Fn(usize, usize) -> bool) -> (usize, Vec<usize>) {
    let g = comparability_split(n, &lt);
    let m = max_matching(&g);
    let (cl, cr) = konig_cover(&g, &m);
    let anti: Vec<usize> = (0..n).filter(|&i| !cl[i] && !cr[i]).collect();
    debug_assert_eq!(anti.len(), n - m.size);
    (n - m.size, anti)
}

/// Minimum chain cover of the strict order `lt`; chains listed bottom-up.
pub fn chain_cover_by(n: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let g = comparability_split(n, &lt);
    let m = max_matching(&g);
    let mut chains = Vec::new();
    for start in 0..n {
        if m.of_right[start].is_some() {
            continue;
        }
        let mut c = vec![start];
        let mut cur = start;
        while let Some(nx) = m.of_left[cur] {
            c.push(nx);
            cur = nx;
        }
        chains.push(c);
    }
    chains
}

fn comparability_split(n: usize, lt: &impl Fn(usize, usize) -> bool) -> Bipartite {
    let mut g = Bipartite::new(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && lt(i, j) {
                g.edge(i, j);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean2() -> Poset {
        Poset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_examples() {
        let c = Poset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.leq(0, 2));
        assert_eq!(c.width().0, 1);
        assert_eq!(Poset::antichain(4).width().0, 4);
        let l = Poset::layered(3);
        assert_eq!(l.len(), 6);
        assert_eq!(l.height(), 2);
        assert_eq!(l.width().0, 3);
        assert_eq!(Poset::new(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(0)));
        assert!(Poset::new(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn chains_and_extensions() {
        assert_eq!(Poset::chain(5).chain_decomposition().len(), 1);
        assert_eq!(Poset::antichain(3).chain_decomposition().len(), 3);
        assert_eq!(boolean2().chain_decomposition().len(), 2);
        assert_eq!(Poset::chain(4).linear_extension(), vec![0, 1, 2, 3]);
        assert_eq!(boolean2().linear_extension(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn filter_counts() {
        assert_eq!(Poset::chain(4).filters().len(), 5);
        assert_eq!(Poset::antichain(3).filters().len(), 8);
        assert_eq!(Poset::antichain_under_top(3).filters().len(), 9);
    }

    #[test]
    fn map_counts() {
        let two = Poset::chain(2);
        for n in 1..6 {
            assert_eq!(Poset::chain(n).count_order_maps(&two).unwrap(), n as u64 + 1);
        }
        let b2 = boolean2();
        let p = Poset::antichain_under_top(2);
        let pf = p.filters().len() as u64;
        assert_eq!(p.count_order_maps(&b2).unwrap(), pf * pf);
    }

    #[test]
    fn product_union_dual() {
        let two = Poset::chain(2);
        assert!(two.product(&two).unwrap().is_isomorphic(&boolean2()));
        let u = Poset::chain(3).disjoint_union(&Poset::chain(2)).unwrap();
        assert_eq!(u.width().0, 2);
        let b = boolean2();
        assert_eq!(b.dual().dual(), b);
    }

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| Poset::all_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }
}
