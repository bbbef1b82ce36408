//! Union-closed families generated by graphs: closures, escape sets `E(X)`,
//! the average `μ` over extensions and its minimisation over filters, the
//! `ν` product bound, the minimum-degree density certificate, and brute
//! force over small union-closed families.

use num_bigint::BigInt;
use num_traits::One;

use crate::bits::{self, bit, elems, full, size, subset, subsets, Set};
use crate::error::{pre, Error, Result};
use crate::family::{Family, Restriction};
use crate::lattice::{closed_families, Closure};
use crate::par::{self, Mode};
use crate::poset::Poset;
use crate::Ratio;

/// Largest `|N² ∖ U|` any `μ` minimisation accepts.
pub const MAX_FREE: usize = 12;
/// Largest `|N² ∖ U|` for which every filter is enumerated.
pub const MAX_EXHAUSTIVE_FREE: usize = 5;

/// A union-closed family containing `∅`, with its proper generators `J(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcFamily {
    family: Family,
    gens: Vec<Set>,
}

impl UcFamily {
    pub fn new(family: Family) -> Result<UcFamily> {
        if !family.contains(0) {
            return pre("family must contain the empty set");
        }
        if !family.is_union_closed() {
            return pre("family is not union-closed");
        }
        let gens = family.generators().members().iter().copied().filter(|&g| g != 0).collect();
        Ok(UcFamily { family, gens })
    }

    /// The union-closed family generated by `gens` and `∅`.
    pub fn generated(ground: usize, gens: &[Set]) -> Result<UcFamily> {
        let base = Family::new(ground, gens.iter().copied().chain([0]))?;
        UcFamily::new(base.union_closure())
    }

    /// Edges `(i, j)` (equal ends give a loop).
    pub fn from_edges(ground: usize, edges: &[(usize, usize)]) -> Result<UcFamily> {
        for &(i, j) in edges {
            if i.max(j) >= ground {
                return Err(Error::OutOfRange { elem: i.max(j), size: ground });
            }
        }
        let gens: Vec<Set> = edges.iter().map(|&(i, j)| bit(i) | bit(j)).collect();
        UcFamily::generated(ground, &gens)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `J(F)`, ascending.
    pub fn gens(&self) -> &[Set] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn ground(&self) -> usize {
        self.family.ground()
    }

    /// Whether every generator has at most two elements.
    pub fn is_graph(&self) -> bool {
        self.gens.iter().all(|&g| size(g) <= 2)
    }

    /// `J'(F)`: the two-element generators.
    pub fn simple_edges(&self) -> Vec<Set> {
        self.gens.iter().copied().filter(|&g| size(g) == 2).collect()
    }

    /// `π_F(X)`: the union of the generators inside `X`.
    pub fn pi(&self, x: Set) -> Set {
        self.gens.iter().filter(|&&g| subset(g, x)).fold(0, |a, &g| a | g)
    }

    /// `X ∖ π_F(X)`.
    pub fn isolated(&self, x: Set) -> Set {
        x & !self.pi(x)
    }

    /// `N_F(X) = X ∪ ⋃{V ∈ J(F) : V ∩ X ≠ ∅}`.
    pub fn neighborhood(&self, x: Set) -> Set {
        self.gens.iter().filter(|&&g| g & x != 0).fold(x, |a, &g| a | g)
    }

    /// `(N_F(U), N_F(N_F(U)))`.
    pub fn neighborhoods(&self, u: Set) -> (Set, Set) {
        let n = self.neighborhood(u);
        (n, self.neighborhood(n))
    }

    /// The lattice neighbourhood `𝒩_F(X)`: generated by `∅` and the
    /// generators meeting `X`.
    pub fn lattice_neighborhood(&self, x: Set) -> UcFamily {
        let gens: Vec<Set> = self.gens.iter().copied().filter(|&g| g & x != 0).collect();
        UcFamily::generated(self.ground(), &gens).expect("sub-generators")
    }

    /// `𝒩³_F(U) = 𝒩_F(⋃𝒩_F(U))`.
    pub fn third_neighborhood(&self, u: Set) -> UcFamily {
        let first = self.lattice_neighborhood(u);
        self.lattice_neighborhood(first.family.union_all())
    }

    fn check_disjoint(&self, u: Set, x: Set) -> Result<()> {
        if x & u != 0 {
            return pre(format!("X = {} meets U = {}", bits::show(x), bits::show(u)));
        }
        let all = full(self.ground());
        if !subset(u | x, all) {
            let elem = elems((u | x) & !all).next().unwrap();
            return Err(Error::OutOfRange { elem, size: self.ground() });
        }
        Ok(())
    }

    /// `E(X)`: the `Y ⊆ U` with `π(X ∪ Y) ∩ U = Y` and
    /// `π(X ∪ Y) ⊇ π(X ∪ U) ∖ U`, ascending.
    pub fn escape_set(&self, u: Set, x: Set) -> Result<Vec<Set>> {
        self.check_disjoint(u, x)?;
        Ok(self.escape_unchecked(u, x))
    }

    fn escape_unchecked(&self, u: Set, x: Set) -> Vec<Set> {
        let outside = self.pi(x | u) & !u;
        subsets(u)
            .filter(|&y| {
                let p = self.pi(x | y);
                p & u == y && subset(outside, p)
            })
            .collect()
    }

    /// `E(X)` from generator conditions alone: every point of `Y` lies in a
    /// generator inside `X ∪ Y`, and for every generator `V` with
    /// `V ∖ U ⊆ X`, each point of `V ∖ U` lies in a generator inside `X ∪ Y`.
    pub fn escape_set_by_generators(&self, u: Set, x: Set) -> Result<Vec<Set>> {
        self.check_disjoint(u, x)?;
        let covered = |p: usize, within: Set| self.gens.iter().any(|&v| bits::has(v, p) && subset(v, within));
        Ok(subsets(u)
            .filter(|&y| {
                let xy = x | y;
                let first = elems(y).all(|p| covered(p, xy));
                let second = self.gens.iter().filter(|&&v| subset(v & !u, x)).all(|&v| elems(v & !u).all(|p| covered(p, xy)));
                first && second
            })
            .collect())
    }

    /// `(1/ρ)`'s lower estimate
    /// `μ = Σ_{X ∈ F'_{∖U}} |E(X)| / |F'_{∖U}|` for an extension `F'`.
    pub fn mu(&self, extension: &Family, u: Set) -> Result<Ratio> {
        self.extension_part(extension, u)?;
        let free = extension.restrict(u, Restriction::Minus);
        let total: usize = free.members().iter().map(|&x| self.escape_unchecked(u, x).len()).sum();
        Ok(Ratio::new(BigInt::from(total), BigInt::from(free.len())))
    }

    /// The largest `H` with `(⋃H) ∩ U = ∅` and `F ∨ H ⊆ F'`; errors unless
    /// `F'` is union-closed and equals `F ∨ H` (i.e. `F'` extends `(F, U)`).
    pub fn extension_part(&self, extension: &Family, u: Set) -> Result<Family> {
        if !extension.is_union_closed() {
            return pre("extension is not union-closed");
        }
        if extension.ground() < self.ground() {
            return pre("extension has a smaller ground set");
        }
        let h = extension.filter(|b| b & u == 0 && self.family.members().iter().all(|&a| extension.contains(a | b)));
        if h.is_empty() || self.family.join(&h).members() != extension.members() {
            return pre("not an extension of (F, U)");
        }
        Ok(h)
    }

    /// `|F_{⊇U}| / |F|`.
    pub fn density(&self, u: Set) -> Ratio {
        let up = self.family.members().iter().filter(|&&m| subset(u, m)).count();
        Ratio::new(BigInt::from(up), BigInt::from(self.len()))
    }

    /// `d(V) = |{W ∈ J'(F) ∖ {V} : W ∩ V ≠ ∅}|`.
    pub fn edge_degree(&self, v: Set) -> usize {
        edge_degree(&self.simple_edges(), v)
    }
}

pub fn edge_degree(edges: &[Set], v: Set) -> usize {
    edges.iter().filter(|&&w| w != v && w & v != 0).count()
}

/// Spreads the low bits of `t` over the positions of `s`.
fn deposit(t: usize, s: Set) -> Set {
    elems(s).enumerate().filter(|&(i, _)| t >> i & 1 == 1).fold(0, |a, (_, p)| a | bit(p))
}

/// `|E(X)|` for every `X ⊆ free`, indexed by the bits of `free`.
fn free_weights(f: &UcFamily, u: Set, free: Set, mode: Mode) -> Vec<u32> {
    par::map_range(mode, 1 << size(free), |t| f.escape_unchecked(u, deposit(t, free)).len() as u32)
}

/// The outcome of minimising `μ` over extensions `F ∨ H`, `H` a filter of
/// `2^{N² ∖ U}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMu {
    pub value: Ratio,
    /// Members of the minimising filter, ascending.
    pub witness: Vec<Set>,
    /// Whether every filter was enumerated (otherwise parametric min-cut).
    pub exhaustive: bool,
}

fn free_part(f: &UcFamily, u: Set, budget: usize) -> Result<Set> {
    if !f.gens.contains(&u) {
        return pre(format!("{} is not a generator", bits::show(u)));
    }
    let (_, n2) = f.neighborhoods(u);
    let free = n2 & !u;
    let limit = budget.min(MAX_FREE);
    if size(free) > limit {
        return Err(Error::Budget(format!("|N² ∖ U| = {} exceeds {limit}", size(free))));
    }
    Ok(free)
}

/// Minimum of `μ_{F, F ∨ H}(U)` over filters `H` of `2^{N² ∖ U}`, which is
/// the minimum over all extensions. Small cases enumerate every filter;
/// larger ones use parametric minimum cuts (exact).
pub fn min_mu_over_extensions(f: &UcFamily, u: Set, budget: usize) -> Result<MinMu> {
    min_mu_over_extensions_with(f, u, budget, Mode::default())
}

pub fn min_mu_over_extensions_with(f: &UcFamily, u: Set, budget: usize, mode: Mode) -> Result<MinMu> {
    let free = free_part(f, u, budget)?;
    let w = free_weights(f, u, free, mode);
    let (value, members) = if size(free) <= MAX_EXHAUSTIVE_FREE {
        exhaustive_min(&w, size(free), |_| true).expect("the top filter exists")
    } else {
        parametric_min(&w, size(free))
    };
    let exhaustive = size(free) <= MAX_EXHAUSTIVE_FREE;
    Ok(MinMu { value, witness: sorted_sets(&members, free), exhaustive })
}

/// The parametric minimum-cut search, regardless of size (for
/// cross-checking against enumeration).
pub fn min_mu_parametric(f: &UcFamily, u: Set, budget: usize) -> Result<MinMu> {
    let free = free_part(f, u, budget)?;
    let w = free_weights(f, u, free, Mode::default());
    let (value, members) = parametric_min(&w, size(free));
    Ok(MinMu { value, witness: sorted_sets(&members, free), exhaustive: false })
}

/// Minimum `μ` over the filters whose minimal members all have
/// `|E(X)| = 1` (the extensions the `ν` bound speaks about); `None` when no
/// filter qualifies. Enumerates every filter, so `|N² ∖ U| ≤ 5`.
pub fn min_mu_qualifying(f: &UcFamily, u: Set) -> Result<Option<MinMu>> {
    let free = free_part(f, u, MAX_EXHAUSTIVE_FREE)?;
    let w = free_weights(f, u, free, Mode::default());
    let k = size(free);
    Ok(exhaustive_min(&w, k, |h| minimal_members(h, k).iter().all(|&t| w[t] == 1))
        .map(|(value, m)| MinMu { value, witness: sorted_sets(&m, free), exhaustive: true }))
}

/// A filter `H` of `2^{N² ∖ U}` with `μ < 2` whose minimal members all
/// have `|E(X)| = 1`, searched over antichains of such sets only. By the
/// reduction that removes minimal members with `|E| ≥ 2`, one exists iff
/// some extension has `μ < 2`.
pub fn filter_below_two(f: &UcFamily, u: Set, budget: usize) -> Result<Option<Vec<Set>>> {
    let free = free_part(f, u, budget)?;
    let k = size(free);
    let w = free_weights(f, u, free, Mode::default());
    let singles: Vec<usize> = (0..1usize << k).filter(|&t| w[t] == 1).collect();
    let mut visited = 0u64;
    let mut chosen = Vec::new();
    let found = antichain_search(&singles, 0, &mut chosen, &mut visited, &mut |ac| {
        let h = up_closure(ac, k);
        let total: u64 = h.iter().map(|&t| w[t] as u64).sum();
        (total < 2 * h.len() as u64).then_some(h)
    })?;
    Ok(found.map(|h| sorted_sets(&h, free)))
}

const ANTICHAIN_BUDGET: u64 = 5_000_000;

fn antichain_search(
    pool: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    visited: &mut u64,
    test: &mut impl FnMut(&[usize]) -> Option<Vec<usize>>,
) -> Result<Option<Vec<usize>>> {
    for i in start..pool.len() {
        let t = pool[i];
        if chosen.iter().any(|&c| c & t == c || c & t == t) {
            continue;
        }
        *visited += 1;
        if *visited > ANTICHAIN_BUDGET {
            return Err(Error::Budget(format!("more than {ANTICHAIN_BUDGET} antichains")));
        }
        chosen.push(t);
        if let Some(h) = test(chosen) {
            return Ok(Some(h));
        }
        if let Some(h) = antichain_search(pool, i + 1, chosen, visited, test)? {
            return Ok(Some(h));
        }
        chosen.pop();
    }
    Ok(None)
}

fn up_closure(gens: &[usize], k: usize) -> Vec<usize> {
    (0..1usize << k).filter(|&t| gens.iter().any(|&g| g & !t == 0)).collect()
}

fn minimal_members(h: &[usize], k: usize) -> Vec<usize> {
    let set: std::collections::HashSet<usize> = h.iter().copied().collect();
    h.iter().copied().filter(|&t| (0..k).all(|i| t >> i & 1 == 0 || !set.contains(&(t & !(1 << i))))).collect()
}

fn sorted_sets(members: &[usize], free: Set) -> Vec<Set> {
    let mut v: Vec<Set> = members.iter().map(|&t| deposit(t, free)).collect();
    v.sort_unstable();
    v
}

/// Minimum average weight over non-empty filters of `2^k` that pass `keep`,
/// ties broken by the lexicographically smallest member list.
fn exhaustive_min(w: &[u32], k: usize, keep: impl Fn(&[usize]) -> bool) -> Option<(Ratio, Vec<usize>)> {
    let cube = Poset::from_leq(1 << k, |i, j| i & j == i).expect("boolean order");
    let mut best: Option<(u64, u64, Vec<usize>)> = None;
    for mask in cube.filters() {
        if mask == 0 {
            continue;
        }
        let h: Vec<usize> = elems(mask).collect();
        if !keep(&h) {
            continue;
        }
        let (s, c) = (h.iter().map(|&t| w[t] as u64).sum::<u64>(), h.len() as u64);
        let better = match &best {
            None => true,
            Some((bs, bc, bh)) => s * bc < bs * c || (s * bc == bs * c && h < *bh),
        };
        if better {
            best = Some((s, c, h));
        }
    }
    best.map(|(s, c, h)| (Ratio::new(BigInt::from(s), BigInt::from(c)), h))
}

/// Dinkelbach iteration: with `λ = p/q`, the filter minimising
/// `Σ (q·w − p)` is a minimum-weight closure, found by a minimum cut. The
/// average strictly drops until no filter beats `λ`.
fn parametric_min(w: &[u32], k: usize) -> (Ratio, Vec<usize>) {
    let top = (1usize << k) - 1;
    let mut h = vec![top];
    let (mut p, mut q) = (w[top] as i64, 1i64);
    loop {
        let cost: Vec<i64> = w.iter().map(|&x| q * x as i64 - p).collect();
        let (value, chosen) = min_closure(&cost, k);
        if value >= 0 {
            break;
        }
        p = chosen.iter().map(|&t| w[t] as i64).sum();
        q = chosen.len() as i64;
        h = chosen;
    }
    (Ratio::new(BigInt::from(p), BigInt::from(q)), h)
}

/// Minimum of `Σ_{t ∈ H} cost[t]` over up-sets `H` of `2^k`, with the
/// smallest minimising up-set.
fn min_closure(cost: &[i64], k: usize) -> (i64, Vec<usize>) {
    let n = cost.len();
    let (s, t) = (n, n + 1);
    let mut g = FlowGraph::new(n + 2);
    let inf = cost.iter().map(|c| c.abs()).sum::<i64>() + 1;
    let mut negative = 0;
    for (v, &c) in cost.iter().enumerate() {
        if c < 0 {
            g.add(s, v, -c);
            negative += c;
        } else if c > 0 {
            g.add(v, t, c);
        }
        for i in 0..k {
            if v >> i & 1 == 0 {
                g.add(v, v | 1 << i, inf);
            }
        }
    }
    let cut = g.max_flow(s, t);
    let side = g.reachable(s);
    ((negative + cut), (0..n).filter(|&v| side[v]).collect())
}

/// Dinic's maximum flow on integer capacities.
struct FlowGraph {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowGraph {
    fn new(n: usize) -> FlowGraph {
        FlowGraph { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.head.len()];
        level[s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v].is_none() {
                    level[v] = Some(level[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, f: i64, level: &[Option<usize>], it: &mut [usize]) -> i64 {
        if u == t {
            return f;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u].map(|l| l + 1) {
                let d = self.push(v, t, f.min(self.cap[e]), level, it);
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return flow;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).iter().map(Option::is_some).collect()
    }
}

/// `U = {a, b}` split of `N ∖ U` into points joined to `a` only, `b` only,
/// or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub a: usize,
    pub b: usize,
    pub only_a: Set,
    pub only_b: Set,
    pub both: Set,
}

fn split(f: &UcFamily, u: Set) -> Result<Split> {
    if size(u) != 2 || !f.gens.contains(&u) {
        return pre(format!("{} is not a two-element generator", bits::show(u)));
    }
    let mut it = elems(u);
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    let (n, _) = f.neighborhoods(u);
    let has = |x: usize, y: usize| f.gens.contains(&(bit(x) | bit(y)));
    let (mut only_a, mut only_b, mut both) = (0, 0, 0);
    for x in elems(n & !u) {
        match (has(x, a), has(x, b)) {
            (true, true) => both |= bit(x),
            (true, false) => only_a |= bit(x),
            (false, true) => only_b |= bit(x),
            (false, false) => {}
        }
    }
    Ok(Split { a, b, only_a, only_b, both })
}

/// `ν(𝓔(Y, x))` in closed form: 1 if `{x}` is a generator or `x` has a
/// generator edge into `Y`, else `1 − 2^{−n(x)}` with `n(x)` the number of
/// edges from `x` to points outside `U`.
pub fn nu_factor(f: &UcFamily, u: Set, y: Set, x: usize) -> Ratio {
    if f.gens.contains(&bit(x)) || f.gens.iter().any(|&g| size(g) == 2 && bits::has(g, x) && g & y & !bit(x) != 0) {
        return Ratio::one();
    }
    let n = f.gens.iter().filter(|&&g| size(g) == 2 && bits::has(g, x) && g & u == 0).count();
    Ratio::one() - Ratio::new(BigInt::one(), BigInt::one() << n)
}

/// `𝓔(Y, x)`: the `X ⊆ N² ∖ U` such that some generator `{x, y}` has
/// `y ∈ X ∪ Y` or `y = x`, listed directly.
pub fn e_filter(f: &UcFamily, u: Set, y: Set, x: usize) -> Family {
    let (_, n2) = f.neighborhoods(u);
    let free = n2 & !u;
    let hits = |xs: Set| {
        f.gens.iter().any(|&g| bits::has(g, x) && size(g) <= 2 && {
            let other = if g == bit(x) { bit(x) } else { g & !bit(x) };
            g == bit(x) || other & (xs | y) != 0
        })
    };
    Family::new(f.ground(), subsets(free).filter(|&xs| hits(xs))).expect("subsets of the ground")
}

/// The lower bound `1 + Σ_{Y ⊊ U} Π_{x ∈ N ∖ U} ν(𝓔(Y, x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuBound {
    pub value: Ratio,
    /// `(Y, Π_x ν(𝓔(Y, x)))` for `Y = ∅, {a}, {b}`.
    pub terms: Vec<(Set, Ratio)>,
    pub split: Split,
}

pub fn nu_lower_bound(f: &UcFamily, u: Set) -> Result<NuBound> {
    let sp = split(f, u)?;
    if !f.lattice_neighborhood(u).is_graph() {
        return pre("generators meeting U must have at most two elements");
    }
    let (n, _) = f.neighborhoods(u);
    let terms: Vec<(Set, Ratio)> = [0, bit(sp.a), bit(sp.b)]
        .into_iter()
        .map(|y| (y, elems(n & !u).map(|x| nu_factor(f, u, y, x)).fold(Ratio::one(), |acc, r| acc * r)))
        .collect();
    let value = terms.iter().fold(Ratio::one(), |acc, (_, r)| acc + r);
    Ok(NuBound { value, terms, split: sp })
}

/// Result of [`min_degree_density_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCheck {
    pub certified: bool,
    /// `ν` bound on the graph part of `F` around `U`.
    pub nu_bound: Ratio,
    /// `1 + (1 − 2^{−n_a})^{n_b} + (1 − 2^{−n_b})^{n_a}` when both counts
    /// are positive (otherwise no filter qualifies and `μ ≥ 2` outright).
    pub estimate: Option<Ratio>,
    /// `|F_{⊇U}| / |F|`, counted directly.
    pub density: Ratio,
}

/// Certifies that `(F, U)` has the density property when `U` is a
/// two-element generator, the generators meeting `U` form a graph, and
/// every two-element generator meeting `U` has degree in `J'(F)` at least
/// that of `U`. Errors name the first violated hypothesis.
pub fn min_degree_density_check(f: &UcFamily, u: Set) -> Result<DensityCheck> {
    if size(u) != 2 || !f.gens.contains(&u) {
        return pre(format!("{} is not a two-element generator", bits::show(u)));
    }
    let edges = f.simple_edges();
    let meeting: Vec<Set> = f.gens.iter().copied().filter(|&g| g & u != 0).collect();
    if let Some(&g) = meeting.iter().find(|&&g| size(g) > 2) {
        return pre(format!("generator {} meets U and has more than two elements", bits::show(g)));
    }
    let du = edge_degree(&edges, u);
    for &v in meeting.iter().filter(|&&g| size(g) == 2) {
        let dv = edge_degree(&edges, v);
        if dv < du {
            return pre(format!("edge {} has degree {dv} below the degree {du} of U", bits::show(v)));
        }
    }
    // The family generated by the edges meeting U and all simple edges: its
    // escape sets are contained in those of F.
    let mut gens = edges.clone();
    gens.extend(meeting.iter().copied());
    let local = UcFamily::generated(f.ground(), &gens)?;
    let nu = nu_lower_bound(&local, u)?;
    let sp = &nu.split;
    let (na, nb) = (size(sp.only_a), size(sp.only_b));
    let estimate = (na >= 1 && nb >= 1).then(|| {
        let half = |n: usize| Ratio::new(BigInt::one(), BigInt::one() << n);
        let c1 = num_traits::pow(Ratio::one() - half(na), nb);
        let c2 = num_traits::pow(Ratio::one() - half(nb), na);
        Ratio::one() + c1 + c2
    });
    let two = Ratio::from_integer(BigInt::from(2));
    let certified = estimate.as_ref().is_none_or(|e| *e >= two) && nu.value >= two;
    Ok(DensityCheck { certified, nu_bound: nu.value, estimate, density: f.density(u) })
}

/// Element densities of a union-closed family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcscReport {
    pub max: Ratio,
    pub max_witness: usize,
    pub min: Ratio,
    pub min_witness: usize,
    /// Some element lies in at least half the members.
    pub holds: bool,
}

/// Exact element densities `|F_{⊇{x}}| / |F|` over `x ∈ ⋃F`, smallest
/// witness on ties.
pub fn ucsc_brute(f: &Family) -> Result<UcscReport> {
    if f.len() < 2 {
        return pre("family needs at least two members");
    }
    if !f.is_union_closed() {
        return pre("family is not union-closed");
    }
    let count = |x: usize| f.members().iter().filter(|&&m| bits::has(m, x)).count();
    let pts: Vec<(usize, usize)> = elems(f.union_all()).map(|x| (x, count(x))).collect();
    let (max_witness, hi) = pts.iter().copied().fold((usize::MAX, 0), |b, p| if p.1 > b.1 { p } else { b });
    let (min_witness, lo) = pts.iter().copied().fold((usize::MAX, usize::MAX), |b, p| if p.1 < b.1 { p } else { b });
    let r = |c: usize| Ratio::new(BigInt::from(c), BigInt::from(f.len()));
    Ok(UcscReport { max: r(hi), max_witness, min: r(lo), min_witness, holds: 2 * hi >= f.len() })
}

/// Exhaustive run over union-closed families on at most `max_domain ≤ 4`
/// points, up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcscSummary {
    pub instances: usize,
    pub violations: usize,
    /// Smallest maximum element density seen, and a family attaining it.
    pub tightest: Ratio,
    pub tightest_family: Family,
}

pub fn ucsc_exhaustive(max_domain: usize, mode: Mode) -> Result<UcscSummary> {
    let fams: Vec<Family> = closed_families(max_domain, Closure::Union)?.into_iter().filter(|f| f.len() >= 2).collect();
    let reports = par::map(mode, &fams, |f| ucsc_brute(f).expect("union-closed with two members"));
    let violations = reports.iter().filter(|r| !r.holds).count();
    let (i, tight) = reports.iter().enumerate().min_by(|a, b| a.1.max.cmp(&b.1.max)).ok_or_else(|| Error::Precondition("no instances".into()))?;
    Ok(UcscSummary { instances: fams.len(), violations, tightest: tight.max.clone(), tightest_family: fams[i].clone() })
}

/// `x ∧ (y₀ ∨ y₁ ∨ y₂) = ⋁_{i<j} x ∧ (yᵢ ∨ yⱼ)` in the lattice of a
/// union-closed family with `∅` (join `∪`, meet `π(A ∩ B)`); returns a
/// failing quadruple if any.
pub fn two_distributive_violation(f: &UcFamily) -> Option<[Set; 4]> {
    let m = f.family.members();
    let meet = |a: Set, b: Set| f.pi(a & b);
    for &x in m {
        for (i, &y0) in m.iter().enumerate() {
            for (j, &y1) in m.iter().enumerate().skip(i) {
                for &y2 in &m[j..] {
                    let lhs = meet(x, y0 | y1 | y2);
                    let rhs = meet(x, y0 | y1) | meet(x, y0 | y2) | meet(x, y1 | y2);
                    if lhs != rhs {
                        return Some([x, y0, y1, y2]);
                    }
                }
            }
        }
    }
    None
}

/// Edge lists of the test graphs.
pub mod graphs {
    use crate::bits::{bit, Set};

    pub fn cycle(n: usize) -> Vec<Set> {
        (0..n).map(|i| bit(i) | bit((i + 1) % n)).collect()
    }

    pub fn complete(n: usize) -> Vec<Set> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| bit(i) | bit(j))).collect()
    }

    pub fn star(k: usize) -> Vec<Set> {
        (1..=k).map(|i| bit(0) | bit(i)).collect()
    }

    pub fn path(n: usize) -> Vec<Set> {
        (0..n.saturating_sub(1)).map(|i| bit(i) | bit(i + 1)).collect()
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `{i, i+5}`.
    pub fn petersen() -> Vec<Set> {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push(bit(i) | bit((i + 1) % 5));
            e.push(bit(5 + i) | bit(5 + (i + 2) % 5));
            e.push(bit(i) | bit(5 + i));
        }
        e
    }

    /// Two hubs `a = 0`, `b = 1` joined by an edge; `x1..x5 = 2..6` with
    /// `x1, x2, x3 ~ a`, `x3, x4 ~ b` and `x4 ~ x5`.
    pub fn two_hubs() -> Vec<Set> {
        [(0, 1), (2, 0), (3, 0), (4, 0), (4, 1), (5, 1), (5, 6)].iter().map(|&(i, j)| bit(i) | bit(j)).collect()
    }

    pub const TWO_HUB_NAMES: [&str; 7] = ["a", "b", "x1", "x2", "x3", "x4", "x5"];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn hubs() -> UcFamily {
        UcFamily::generated(7, &graphs::two_hubs()).unwrap()
    }

    fn s(v: &[usize]) -> Set {
        bits::from_elems(v.iter().copied())
    }

    #[test]
    fn two_hub_escape_sets() {
        let f = hubs();
        let u = s(&[0, 1]);
        assert_eq!(f.gens().len(), 7);
        assert_eq!(f.escape_set(u, s(&[5, 6])).unwrap(), vec![0, s(&[1]), u]);
        assert_eq!(f.escape_set(u, s(&[4])).unwrap(), vec![s(&[0]), s(&[1]), u]);
        assert_eq!(f.escape_set(u, s(&[2, 5])).unwrap(), vec![u]);
        assert!(f.escape_set(u, s(&[0])).is_err());
    }

    #[test]
    fn generator_conditions_match_closure_conditions() {
        let f = hubs();
        for u in f.gens().to_vec() {
            for x in subsets(full(7) & !u) {
                assert_eq!(f.escape_set(u, x).unwrap(), f.escape_set_by_generators(u, x).unwrap());
            }
        }
    }

    #[test]
    fn closure_and_isolated_points() {
        let f = hubs();
        assert_eq!(f.pi(s(&[2, 0])), s(&[0, 2]));
        assert_eq!(f.pi(s(&[6])), 0);
        for x in subsets(full(7)) {
            assert_eq!(f.pi(x) | f.isolated(x), x);
            assert_eq!(f.pi(x) & f.isolated(x), 0);
            assert_eq!(f.family().contains(x), f.pi(x) == x);
        }
    }

    #[test]
    fn two_hub_neighbourhoods() {
        let f = hubs();
        let (n, n2) = f.neighborhoods(s(&[0, 1]));
        assert_eq!(n, s(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(n2, full(7));
        assert_eq!(f.neighborhood(0), 0);
    }

    #[test]
    fn boolean_atom_mu_is_two() {
        let f = UcFamily::new(Family::power_set(2)).unwrap();
        assert_eq!(f.mu(f.family(), 1).unwrap(), ratio(2, 1));
    }

    #[test]
    fn two_hub_mu_fixture() {
        // Oracle: average of |E(X)| over the members of F with U removed,
        // computed independently from the closure definition.
        let f = hubs();
        let u = s(&[0, 1]);
        let free = f.family().restrict(u, Restriction::Minus);
        let mut total = 0;
        for &x in free.members() {
            let pix = |z: Set| f.family().members().iter().filter(|&&m| subset(m, z)).fold(0, |a, &m| a | m);
            total += subsets(u).filter(|&y| pix(x | y) & u == y && subset(pix(x | u) & !u, pix(x | y))).count();
        }
        let expected = Ratio::new(BigInt::from(total), BigInt::from(free.len()));
        assert_eq!(f.mu(f.family(), u).unwrap(), expected);
        assert_eq!(expected, ratio(total as i64, free.len() as i64));
    }

    #[test]
    fn mu_is_local() {
        let f = hubs();
        let u = s(&[0, 1]);
        let n3 = f.third_neighborhood(u);
        for x in subsets(full(7) & !u) {
            assert_eq!(f.escape_set(u, x).unwrap(), n3.escape_set(u, x).unwrap());
        }
    }

    #[test]
    fn rejects_non_extensions() {
        let f = UcFamily::new(Family::power_set(2)).unwrap();
        let g = Family::new(2, [0, 2]).unwrap();
        assert!(f.mu(&g, 1).is_err());
    }

    #[test]
    fn min_cut_matches_enumeration() {
        for gens in [graphs::star(3), graphs::cycle(5), graphs::path(4), graphs::complete(4)] {
            let n = gens.iter().fold(0, |a, &g| a | g).count_ones() as usize;
            let f = UcFamily::generated(n, &gens).unwrap();
            for &u in f.gens() {
                let Ok(ex) = min_mu_over_extensions(&f, u, MAX_EXHAUSTIVE_FREE) else { continue };
                assert!(ex.exhaustive);
                let pm = min_mu_parametric(&f, u, MAX_EXHAUSTIVE_FREE).unwrap();
                assert_eq!(ex.value, pm.value);
            }
        }
    }

    #[test]
    fn star_and_pentagon_min_mu_at_least_two() {
        for gens in [graphs::star(3), graphs::cycle(5)] {
            let n = gens.iter().fold(0, |a, &g| a | g).count_ones() as usize;
            let f = UcFamily::generated(n, &gens).unwrap();
            for &u in f.gens() {
                let m = min_mu_over_extensions(&f, u, MAX_FREE).unwrap();
                assert!(m.value >= ratio(2, 1), "{}", bits::show(u));
                assert!(filter_below_two(&f, u, MAX_FREE).unwrap().is_none());
            }
        }
    }

    #[test]
    fn pruned_search_finds_low_filters() {
        // A pendant edge next to a high-degree hub: degrees differ, so the
        // minimum can dip below 2 and the pruned search must agree.
        let mut gens = graphs::star(4);
        gens.push(bit(1) | bit(5));
        let f = UcFamily::generated(6, &gens).unwrap();
        for &u in f.gens() {
            let Ok(m) = min_mu_over_extensions(&f, u, MAX_EXHAUSTIVE_FREE) else { continue };
            let pruned = filter_below_two(&f, u, MAX_FREE).unwrap();
            assert_eq!(m.value < ratio(2, 1), pruned.is_some());
        }
    }

    #[test]
    fn nu_factors_match_direct_count() {
        let f = hubs();
        let u = s(&[0, 1]);
        let (n, n2) = f.neighborhoods(u);
        for y in [0, s(&[0]), s(&[1])] {
            for x in elems(n & !u) {
                let fam = e_filter(&f, u, y, x);
                assert_eq!(fam.filter_density(n2 & !u).unwrap(), nu_factor(&f, u, y, x));
            }
        }
    }

    #[test]
    fn nu_cases() {
        let f = hubs();
        let nb = nu_lower_bound(&f, s(&[0, 1])).unwrap();
        assert_eq!(nb.split.both, s(&[4]));
        assert_eq!(nb.split.only_a, s(&[2, 3]));
        assert_eq!(nb.split.only_b, s(&[5]));
        // x3 is joined to both hubs.
        assert_eq!(nu_factor(&f, s(&[0, 1]), s(&[0]), 4), Ratio::one());
        assert_eq!(nu_factor(&f, s(&[0, 1]), s(&[1]), 4), Ratio::one());
        assert!(nu_lower_bound(&f, s(&[2, 0])).is_ok());
        assert!(nu_lower_bound(&f, s(&[2, 3])).is_err());
    }

    #[test]
    fn pendant_side_collapses_to_two() {
        // On the 4-cycle each side of U has one private neighbour, so the
        // estimate is 1 + 1/2 + 1/2.
        let f = UcFamily::generated(4, &graphs::cycle(4)).unwrap();
        let c = min_degree_density_check(&f, s(&[0, 1])).unwrap();
        assert_eq!(c.estimate, Some(ratio(2, 1)));
    }

    #[test]
    fn cycle_certificates() {
        for n in [5usize, 6] {
            let f = UcFamily::generated(n, &graphs::cycle(n)).unwrap();
            for &u in f.gens() {
                let c = min_degree_density_check(&f, u).unwrap();
                assert!(c.certified);
                assert!(c.density <= ratio(1, 2));
            }
        }
    }

    #[test]
    fn degree_hypothesis_reports_edge() {
        let mut gens = graphs::star(3);
        gens.push(bit(1) | bit(4));
        let f = UcFamily::generated(5, &gens).unwrap();
        // {0,1} has degree 3; its neighbour {0,2} has degree 2.
        let err = min_degree_density_check(&f, s(&[0, 1])).unwrap_err();
        assert!(err.to_string().contains("{0,2}"), "{err}");
    }

    #[test]
    fn ucsc_small() {
        let r = ucsc_brute(&Family::power_set(3)).unwrap();
        assert_eq!(r.max, ratio(1, 2));
        assert_eq!(r.min, ratio(1, 2));
        let pentagon = UcFamily::generated(5, &graphs::cycle(5)).unwrap();
        let r = ucsc_brute(pentagon.family()).unwrap();
        assert!(r.holds);
        assert!(ucsc_brute(&Family::new(2, [0]).unwrap()).is_err());
    }

    #[test]
    fn small_graph_families_are_two_distributive() {
        for gens in [graphs::cycle(4), graphs::cycle(5), graphs::complete(4), graphs::path(5), graphs::star(3)] {
            let n = gens.iter().fold(0, |a, &g| a | g).count_ones() as usize;
            let f = UcFamily::generated(n, &gens).unwrap();
            assert_eq!(two_distributive_violation(&f), None);
        }
        // Distributive, hence 2-distributive.
        assert_eq!(two_distributive_violation(&UcFamily::new(Family::power_set(3)).unwrap()), None);
    }

    #[test]
    fn petersen_family_size() {
        let f = UcFamily::generated(10, &graphs::petersen()).unwrap();
        // Vertex sets with no isolated vertex in the induced subgraph.
        let adj = |i: usize, j: usize| graphs::petersen().contains(&(bit(i) | bit(j)));
        let direct = subsets(full(10)).filter(|&x| elems(x).all(|i| elems(x).any(|j| adj(i, j)))).count();
        assert_eq!(f.len(), direct);
        assert_eq!(f.gens().len(), 15);
    }
}
