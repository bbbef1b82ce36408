//! Chain counts and the Zeta polynomial, the `[n]`-density threshold, the
//! bounds `M(n)`, `M°(n)`, `δ_k`, `g(n)`, exhaustive `h`/`h̄`/`g` over small
//! semilattices, and multi-lattices.

use std::collections::HashSet;

use super::{Closure, Semilattice};
use crate::bits::{self, bit, elems, Set};
use crate::error::{pre, Error, Result};
use crate::family::Family;
use crate::poset::{OrderMap, Poset};

/// `c_i(P)`: the number of chains with `i + 1` elements, for `i = 0..=h(P)`.
pub fn chain_counts(p: &Poset) -> Vec<u64> {
    let n = p.len();
    if n == 0 {
        return Vec::new();
    }
    let h = p.height();
    // ending[x][j]: chains with j + 1 elements whose top is x.
    let mut ending = vec![vec![0u64; h + 1]; n];
    for &x in &p.linear_extension() {
        ending[x][0] = 1;
        for y in elems(p.down(x) & !bit(x)) {
            for j in 1..=h {
                ending[x][j] += ending[y][j - 1];
            }
        }
    }
    (0..=h).map(|j| ending.iter().map(|e| e[j]).sum()).collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    crate::antichain::binomial(n, k)
}

/// `|P^[m+1]| = Σ_i c_i(P)·C(m, i)`.
pub fn zeta(p: &Poset, m: u64) -> Result<u64> {
    if p.is_empty() {
        return Ok(0);
    }
    let mut total: u128 = 0;
    for (i, &c) in chain_counts(p).iter().enumerate() {
        total = total.checked_add((c as u128).checked_mul(binomial(m, i as u64)).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    }
    u64::try_from(total).map_err(|_| Error::Overflow)
}

/// Whether some proper join-irreducible `a` has `(n+1)·|[a)^[n]| ≤ |L^[n]|`,
/// i.e. `L` has the `[n]`-density property (`[n]` has `n + 1` filters).
pub fn has_chain_density(l: &Semilattice, n: u64) -> Result<Option<usize>> {
    let total = zeta(l.order(), n - 1)? as u128;
    for a in l.join_irreducibles() {
        let (fa, _) = l.order().induced(l.filter(a));
        if (n as u128 + 1) * zeta(&fa, n - 1)? as u128 <= total {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Smallest `m ≥ 1` such that `L` has the `[n]`-density property for every
/// `n ∈ [m, n_max]`; `None` when it fails at `n_max`.
pub fn density_threshold(l: &Semilattice, n_max: u64) -> Result<Option<u64>> {
    if l.is_trivial() {
        return pre("the trivial lattice has no join-irreducibles");
    }
    let mut m = None;
    for n in (1..=n_max).rev() {
        if has_chain_density(l, n)?.is_none() {
            break;
        }
        m = Some(n);
    }
    Ok(m)
}

fn filter_count(p: &Poset) -> Result<i128> {
    let c = p.filters().len() as i128;
    if c < 2 {
        return pre("P needs at least two filters");
    }
    Ok(c)
}

fn pow(p: i128, k: u32) -> Result<i128> {
    p.checked_pow(k).ok_or(Error::Overflow)
}

fn to_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow)
}

/// `M(n) = max{kn − p^{k−1}(k(p−1) − p) : k ≥ 1, p^{k−1}(p−1) ≤ n}` for
/// `n ≥ p − 1`, and 1 below that; `p` counts the filters of `P`.
pub fn m_bound(n: u64, p: &Poset) -> Result<u64> {
    m_formula(n as i128, filter_count(p)?)
}

fn m_formula(n: i128, p: i128) -> Result<u64> {
    if n < p - 1 {
        return Ok(1);
    }
    let mut best = i128::MIN;
    let mut k = 1u32;
    while pow(p, k - 1)? * (p - 1) <= n {
        let k_ = k as i128;
        best = best.max(k_ * n - pow(p, k - 1)? * (k_ * (p - 1) - p));
        k += 1;
    }
    to_u64(best)
}

/// `δ_k = |B_k^P ∖ (B_k°)^P|`: maps sending some point to the top. A map
/// into `B_k` is a `k`-tuple of filters and hits the top exactly where all
/// of them meet, so `δ_k = p^k − #{tuples with empty intersection}`.
pub fn delta(k: u32, p: &Poset) -> Result<u64> {
    to_u64(delta_i(k, p)?)
}

fn delta_i(k: u32, p: &Poset) -> Result<i128> {
    let filters = p.filters();
    // exact[g]: tuples whose intersection is exactly filter g; visit larger
    // filters first so every proper superset is already known.
    let mut order: Vec<Set> = filters.clone();
    order.sort_by_key(|&f| std::cmp::Reverse(bits::size(f)));
    let mut exact: std::collections::HashMap<Set, i128> = std::collections::HashMap::new();
    for &g in &order {
        let above = filters.iter().filter(|&&f| bits::subset(g, f)).count() as i128;
        let mut e = pow(above, k)?;
        for &f in &filters {
            if f != g && bits::subset(g, f) {
                e -= exact[&f];
            }
        }
        exact.insert(g, e);
    }
    Ok(pow(filters.len() as i128, k)? - exact[&0])
}

/// `δ_k` by enumerating maps into `B_k` minus its top (`k ≤ 5`).
pub fn delta_brute(k: u32, p: &Poset) -> Result<u64> {
    if k > 5 {
        return Err(Error::TooLarge(1 << k));
    }
    let top = (1u64 << k) - 1;
    let inner = Poset::from_leq(top as usize, |i, j| bits::subset(i as Set, j as Set))?;
    let all = p.filters().len() as u64;
    Ok(all.pow(k) - p.count_order_maps(&inner)?)
}

/// `M°(n)`: the maximum of `kn − p^{k−1}(k(p−1) − p) + (k−1)δ_k − kδ_{k−1}`
/// over `k ≥ 2` with `p^{k−1}(p−1) − δ_k + δ_{k−1} ≤ n`; 0 when no `k`
/// qualifies.
pub fn m_circ_bound(n: u64, p: &Poset) -> Result<u64> {
    let pc = filter_count(p)?;
    let n = n as i128;
    let mut best = 0i128;
    let mut k = 2u32;
    // Since δ_k ≤ (p−1)^k, any admissible k has
    // p^{k−1}(p−1) − (p−1)^{k−1}p ≤ n, and the left side grows with k.
    while pow(pc, k - 1)? * (pc - 1) - pow(pc - 1, k - 1)? * pc <= n {
        let (dk, dk1) = (delta_i(k, p)?, delta_i(k - 1, p)?);
        if pow(pc, k - 1)? * (pc - 1) - dk + dk1 <= n {
            let k_ = k as i128;
            best = best.max(k_ * n - pow(pc, k - 1)? * (k_ * (pc - 1) - pc) + (k_ - 1) * dk - k_ * dk1);
        }
        k += 1;
    }
    to_u64(best)
}

/// `(⌈(n−1)/(p−1)⌉ + 1)(p − 1) + 1` for `n ≥ 1` and `P` with a greatest
/// element.
pub fn g_formula(n: u64, p: &Poset) -> Result<u64> {
    if n == 0 {
        return pre("n must be at least 1");
    }
    if p.maximum().is_none() {
        return pre("P needs a greatest element");
    }
    let q = filter_count(p)? as u64 - 1;
    let m = (n - 1).div_ceil(q);
    (m + 1).checked_mul(q).and_then(|x| x.checked_add(1)).ok_or(Error::Overflow)
}

/// Every non-empty family on `0..d` closed under `closure`, one per
/// set-system isomorphism class (canonical under all `d!` relabellings).
/// Supports `d ≤ 4`.
pub fn closed_families(d: usize, closure: Closure) -> Result<Vec<Family>> {
    if d > 4 {
        return Err(Error::Budget(format!("exhaustive search needs a domain of at most 4 points, got {d}")));
    }
    let subsets = 1usize << d;
    let perms = permutations(d);
    let tables: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| (0..subsets).map(|s| elems(s as Set).fold(0, |t, i| t | (1 << perm[i]))).collect())
        .collect();
    let op = |a: usize, b: usize| match closure {
        Closure::Intersection => a & b,
        Closure::Union => a | b,
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 1u64..(1u64 << subsets) {
        let members: Vec<usize> = (0..subsets).filter(|&s| code >> s & 1 == 1).collect();
        if !members.iter().all(|&a| members.iter().all(|&b| code >> op(a, b) & 1 == 1)) {
            continue;
        }
        let canon = tables
            .iter()
            .map(|t| members.iter().fold(0u64, |c, &s| c | 1 << t[s]))
            .min()
            .unwrap();
        if seen.insert(canon) {
            let fam = (0..subsets).filter(|&s| canon >> s & 1 == 1).map(|s| s as Set);
            out.push(Family::new(d, fam)?);
        }
    }
    Ok(out)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HKind {
    /// Least `|L^P|` with `|[a)^P| ≥ n` for every `a ∈ J(L) ∪ {0̂}`.
    Lower,
    /// Greatest `|L^P|` with `|L^P ∖ [a)^P| ≤ n` for every `a ∈ J(L) ∪ {0̂}`.
    Upper,
    /// Least `|L^P|` over non-trivial `L` with `|T(L^P, ∅, a)| ≥ n` for
    /// every `a ∈ J(L)`.
    G,
}

/// Exhaustive `h`, `h̄` or `g` over the semilattices represented by
/// intersection-closed families on at most `max_domain ≤ 4` points (every
/// semilattice with at most that many join-irreducibles). Returns the value
/// and the first witness, or `None` when no semilattice qualifies.
pub fn h_small(kind: HKind, p: &Poset, n: u64, max_domain: usize) -> Result<Option<(u64, Family)>> {
    let mut best: Option<(u64, Family)> = None;
    for f in closed_families(max_domain, Closure::Intersection)? {
        let l = Semilattice::from_family(&f, Closure::Intersection)?;
        let total = p.count_order_maps(l.order())?;
        let size = |s: Set| -> Result<u64> { p.count_order_maps(&l.order().induced(s).0) };
        let j = l.join_irreducibles();
        let ok = match kind {
            HKind::Lower => total >= n && j.iter().map(|&a| size(l.filter(a))).collect::<Result<Vec<_>>>()?.iter().all(|&c| c >= n),
            HKind::Upper => j.iter().map(|&a| size(l.filter(a))).collect::<Result<Vec<_>>>()?.iter().all(|&c| total - c <= n),
            HKind::G => {
                !l.is_trivial()
                    && j.iter().map(|&a| size(l.order().all() & !l.filter(a))).collect::<Result<Vec<_>>>()?.iter().all(|&c| c >= n)
            }
        };
        if !ok {
            continue;
        }
        let better = match (&best, kind) {
            (None, _) => true,
            (Some((b, _)), HKind::Upper) => total > *b,
            (Some((b, _)), _) => total < *b,
        };
        if better {
            best = Some((total, f));
        }
    }
    Ok(best)
}

/// Maps `P → L` with positive integer multiplicities.
#[derive(Clone, Debug)]
pub struct MultiLattice {
    pub host: Semilattice,
    pub p: Poset,
    pub maps: Vec<OrderMap>,
    pub alpha: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiReport {
    pub total: u64,
    pub bound: u64,
    pub holds: bool,
}

impl MultiLattice {
    pub fn new(host: Semilattice, p: Poset, alpha: impl Fn(&[usize]) -> u64) -> Result<MultiLattice> {
        let maps = super::types::maps(&host, &p)?;
        let alpha: Vec<u64> = maps.iter().map(|m| alpha(m)).collect();
        if alpha.contains(&0) {
            return pre("multiplicities must be positive");
        }
        Ok(MultiLattice { host, p, maps, alpha })
    }

    pub fn total(&self) -> u64 {
        self.alpha.iter().sum()
    }

    /// `|L^P ∖ [a)^P|_α`.
    pub fn outside(&self, a: usize) -> u64 {
        self.maps.iter().zip(&self.alpha).filter(|(m, _)| m.iter().any(|&v| !self.host.leq(a, v))).map(|(_, &w)| w).sum()
    }

    /// Checks `|L^P ∖ [a)^P|_α ≤ n` for every join-irreducible, then compares
    /// the total with `M(n)` (lattices, top map of multiplicity 1) or `M°(n)`
    /// (semilattices without a top).
    pub fn bound_check(&self, n: u64) -> Result<MultiReport> {
        if let Some(t) = self.host.top() {
            let i = self.maps.iter().position(|m| m.iter().all(|&v| v == t)).expect("constant top map");
            if self.alpha[i] != 1 {
                return pre("the top map must have multiplicity 1");
            }
        }
        for a in self.host.join_irreducibles() {
            let out = self.outside(a);
            if out > n {
                return pre(format!("hypothesis fails at join-irreducible {a}: {out} > {n}"));
            }
        }
        let bound = if self.host.is_lattice() { m_bound(n, &self.p)? } else { m_circ_bound(n, &self.p)? };
        let total = self.total();
        Ok(MultiReport { total, bound, holds: total <= bound })
    }

    /// `B_k` over `P` with the excess `n − p^{k−1}(p−1)` placed on one
    /// coatom map per atom (the map sending the first minimal point of `P`
    /// to the atom's complement and everything else to the top).
    pub fn boolean_equality_case(k: usize, p: &Poset, n: u64) -> Result<MultiLattice> {
        let pc = filter_count(p)? as u64;
        let base = pc.pow(k as u32 - 1) * (pc - 1);
        let excess = n.checked_sub(base).ok_or_else(|| Error::Precondition("n below p^{k-1}(p-1)".into()))?;
        let host = Semilattice::boolean(k)?;
        let top = host.top().unwrap();
        let x = elems(p.minimal(p.all())).next().ok_or_else(|| Error::Precondition("P is empty".into()))?;
        let coatoms = host.coatoms();
        MultiLattice::new(host, p.clone(), |m| {
            let is_coatom_map = coatoms.contains(&m[x]) && m.iter().enumerate().all(|(y, &v)| y == x || v == top);
            if is_coatom_map { 1 + excess } else { 1 }
        })
    }
}

/// Wrapper matching the free-function name used elsewhere.
pub fn multilattice_bound_check(ml: &MultiLattice, n: u64) -> Result<MultiReport> {
    ml.bound_check(n)
}
