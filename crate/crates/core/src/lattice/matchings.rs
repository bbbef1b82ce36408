//! Explicit matchings between type classes, and the operations that move
//! matchings between lattices and posets. Every result is validated before
//! it is returned.

use std::collections::HashMap;

use super::subdirect::{lattice_neighborhood, Bowtie};
use super::types::{maps, type_of, Direction, Matching};
use super::{Closure, Semilattice};
use crate::bits::{self, bit, elems, has, Set};
use crate::error::{pre, Error, Result};
use crate::family::Family;
use crate::poset::{OrderMap, Poset};

fn class(l: &Semilattice, p: &Poset, a: usize, filter: Set) -> Result<Vec<OrderMap>> {
    Ok(maps(l, p)?.into_iter().filter(|f| type_of(l, f, a) == filter).collect())
}

fn checked(m: Matching, l: &Semilattice, p: &Poset) -> Result<Matching> {
    m.validate(l, p)?;
    Ok(m)
}

/// Meets with a lower semimodular coatom `c` outside the filter:
/// `T(L^P, P, a) → T(L^P, F, a)`, `f(x) ↦ f(x) ∧ c` off `F`.
pub fn matching_lsm(l: &Semilattice, c: usize, a: usize, p: &Poset, filter: Set) -> Result<Matching> {
    if !l.coatoms().contains(&c) || !l.is_lower_semimodular_element(c) {
        return pre(format!("{c} is not a lower semimodular coatom"));
    }
    if !l.join_irreducibles().contains(&a) || l.leq(a, c) {
        return pre(format!("{a} is not a join-irreducible outside ({c}]"));
    }
    if !p.is_filter(filter) {
        return pre("target is not a filter");
    }
    let pairs = class(l, p, a, p.all())?
        .into_iter()
        .map(|f| {
            let g = f.iter().enumerate().map(|(x, &u)| if has(filter, x) { u } else { l.meet(u, c) }).collect();
            (f, g)
        })
        .collect();
    checked(Matching { a, from: p.all(), to: filter, dir: Direction::Down, pairs }, l, p)
}

/// `[k, n]` on the chain `0 < 1 < … < n−1`, with `k` counted from 1.
fn tail(n: usize, k: usize) -> Set {
    bits::full(n) & !bits::full(k - 1)
}

/// Greedily extends an independent set of atoms inside `(target]`, atoms
/// taken by index. Independence is `rank(∨B) = |B|`.
fn extend_independent(l: &Semilattice, rank: &[usize], mut b: Vec<usize>, target: usize) -> Result<Vec<usize>> {
    let join = |s: &[usize]| l.join_all(s.iter().fold(0, |m, &x| m | bit(x))).expect("lattice");
    if rank[join(&b)] != b.len() {
        return pre("starting atoms are not independent");
    }
    for x in l.atoms() {
        if l.leq(x, target) && !b.contains(&x) {
            b.push(x);
            if rank[join(&b)] != b.len() {
                b.pop();
            }
        }
    }
    if join(&b) != target {
        return pre("independent atoms do not span the target");
    }
    Ok(b)
}

/// Matchings `σ_k : T(L^[n], [k,n], a) → T(L^[n], [k+1,n], a)` for a
/// geometric lattice and an atom `a`, built by exchanging `a` out of an
/// independent spanning set of atoms.
pub fn matching_geometric(l: &Semilattice, a: usize, n: usize) -> Result<Vec<Matching>> {
    if !l.is_geometric() {
        return pre("lattice is not geometric");
    }
    if !l.atoms().contains(&a) {
        return pre(format!("{a} is not an atom"));
    }
    let rank: Vec<usize> = (0..l.len()).map(|u| l.rank(u)).collect();
    let p = Poset::chain(n);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut pairs = Vec::new();
        for f in class(l, &p, a, tail(n, k))? {
            let prev = if k == 1 { l.bottom() } else { f[k - 2] };
            let base = extend_independent(l, &rank, Vec::new(), prev)?;
            let mut start = base.clone();
            start.push(a);
            let b = extend_independent(l, &rank, start, f[k - 1])?;
            let rest = b.iter().filter(|&&x| x != a).fold(0, |m, &x| m | bit(x));
            let s = l.join_all(rest).expect("lattice");
            if l.join(s, a) != Some(f[k - 1]) || l.leq(a, s) {
                return pre("exchange step failed");
            }
            let mut g = f.clone();
            g[k - 1] = s;
            pairs.push((f, g));
        }
        out.push(checked(Matching { a, from: tail(n, k), to: tail(n, k + 1), dir: Direction::Down, pairs }, l, &p)?);
    }
    Ok(out)
}

/// Matchings `σ_k` for a lattice whose dual is geometric:
/// `f(k) ↦ f(k) ∧ γ(f(k−1))`, with `γ(u)` the least-index coatom above `u`
/// that is not above `a`.
pub fn matching_dual_geometric(l: &Semilattice, a: usize, n: usize) -> Result<Vec<Matching>> {
    if !l.is_dual_geometric() {
        return pre("lattice is not dually geometric");
    }
    if !l.join_irreducibles().contains(&a) {
        return pre(format!("{a} is not a proper join-irreducible"));
    }
    let coatoms = l.coatoms();
    let gamma = |u: usize| coatoms.iter().copied().find(|&c| l.leq(u, c) && !l.leq(a, c));
    let p = Poset::chain(n);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut pairs = Vec::new();
        for f in class(l, &p, a, tail(n, k))? {
            let prev = if k == 1 { l.bottom() } else { f[k - 2] };
            let c = gamma(prev).ok_or_else(|| Error::Precondition(format!("no coatom above {prev} avoids [{a})")))?;
            let mut g = f.clone();
            g[k - 1] = l.meet(f[k - 1], c);
            pairs.push((f, g));
        }
        out.push(checked(Matching { a, from: tail(n, k), to: tail(n, k + 1), dir: Direction::Down, pairs }, l, &p)?);
    }
    Ok(out)
}

/// The matching `f ↦ f(u) ∖ {x}` on `F ∖ G` over the lattice of ideals of
/// `q` (`x` maximal), or `f(u) ∪ {x}` on `G ∖ F` for the upward case (`x`
/// minimal). Returns the lattice of ideals (labelled) and the matching.
pub fn matching_distributive(q: &Poset, x: usize, p: &Poset, from: Set, to: Set) -> Result<(Semilattice, Matching)> {
    let down = bits::subset(to, from);
    if !down && !bits::subset(from, to) {
        return pre("filters are not nested");
    }
    let extreme = if down { q.maximal(q.all()) } else { q.minimal(q.all()) };
    if !has(extreme, x) {
        return pre(format!("{x} is not {}", if down { "maximal" } else { "minimal" }));
    }
    let l = Semilattice::from_family(&Family::new(q.len(), q.ideals())?, Closure::Union)?;
    let a = l.index_of(q.down(x)).expect("principal ideal");
    let moved = from ^ to;
    let pairs = class(&l, p, a, from)?
        .into_iter()
        .map(|f| {
            let g = f
                .iter()
                .enumerate()
                .map(|(u, &v)| {
                    if !has(moved, u) {
                        return v;
                    }
                    let s = l.label(v).unwrap();
                    l.index_of(if down { s & !bit(x) } else { s | bit(x) }).expect("still an ideal")
                })
                .collect();
            (f, g)
        })
        .collect();
    let dir = if down { Direction::Down } else { Direction::Up };
    let m = checked(Matching { a, from, to, dir, pairs }, &l, p)?;
    Ok((l, m))
}

/// `σ + ρ` on `P + Q`, with `Q`'s elements shifted by `|P|`.
pub fn sum(sigma: &Matching, rho: &Matching, np: usize) -> Result<Matching> {
    if sigma.a != rho.a || sigma.dir != rho.dir {
        return pre("matchings disagree on a or direction");
    }
    let mut pairs = Vec::with_capacity(sigma.pairs.len() * rho.pairs.len());
    for (f1, g1) in &sigma.pairs {
        for (f2, g2) in &rho.pairs {
            pairs.push(([f1.as_slice(), f2].concat(), [g1.as_slice(), g2].concat()));
        }
    }
    Ok(Matching { a: sigma.a, from: sigma.from | rho.from << np, to: sigma.to | rho.to << np, dir: sigma.dir, pairs })
}

/// Restriction to the maps into an ideal `ideal` (a down-closed element set).
pub fn restrict_to_ideal(sigma: &Matching, l: &Semilattice, p: &Poset, ideal: Set) -> Result<Matching> {
    if !l.order().is_ideal(ideal) {
        return pre("not an ideal");
    }
    let inside = |f: &OrderMap| f.iter().all(|&v| has(ideal, v));
    let pairs: Vec<_> = sigma.pairs.iter().filter(|(f, _)| inside(f)).cloned().collect();
    let m = Matching { pairs, ..sigma.clone() };
    m.validate_within(l, p, ideal)?;
    Ok(m)
}

/// Lifts `σ` on `L` to `L × M` at `⟨a, 0̂⟩`, keeping the `M` component.
/// Product elements are indexed `u * |M| + v`.
pub fn lift_product(sigma: &Matching, l: &Semilattice, m: &Semilattice, p: &Poset) -> Result<Matching> {
    let prod = l.product(m)?;
    let w = m.len();
    let hs = maps(m, p)?;
    let mut pairs = Vec::with_capacity(sigma.pairs.len() * hs.len());
    for (f, g) in &sigma.pairs {
        for h in &hs {
            let zip = |x: &OrderMap| x.iter().zip(h).map(|(&u, &v)| u * w + v).collect::<OrderMap>();
            pairs.push((zip(f), zip(g)));
        }
    }
    let out = Matching { a: sigma.a * w + m.bottom(), pairs, ..sigma.clone() };
    checked(out, &prod, p)
}

/// Lifts `σ` on `L1` to `L1 ⋈_f L2` at `⟨a, ι̲1(a)⟩`; needs `f` antitone.
pub fn lift_subdirect(sigma: &Matching, bt: &Bowtie, p: &Poset) -> Result<Matching> {
    if !bt.is_antitone() {
        return pre("f is not order-reversing");
    }
    let a2 = bt.low1(sigma.a);
    let a = bt.index(sigma.a, a2).expect("⟨a, ι̲1(a)⟩ belongs to the product");
    let images: HashMap<&OrderMap, &OrderMap> = sigma.pairs.iter().map(|(f, g)| (f, g)).collect();
    let mut pairs = Vec::new();
    for g in class(&bt.lattice, p, a, sigma.from)? {
        let first: OrderMap = g.iter().map(|&u| bt.pairs[u].0).collect();
        let img = images.get(&first).ok_or_else(|| Error::Precondition("σ misses a projected map".into()))?;
        let h = g
            .iter()
            .enumerate()
            .map(|(x, &u)| bt.index(img[x], bt.pairs[u].1).ok_or_else(|| Error::Precondition("lifted value leaves the product".into())))
            .collect::<Result<OrderMap>>()?;
        pairs.push((g, h));
    }
    checked(Matching { a, pairs, ..sigma.clone() }, &bt.lattice, p)
}

/// Restriction to the second neighbourhood of `a` (the ideal below the
/// union of the generators meeting `a`).
pub fn restrict_to_neighborhood(sigma: &Matching, l: &Semilattice, p: &Poset) -> Result<Matching> {
    let a = l.label(sigma.a).ok_or_else(|| Error::Precondition("lattice needs set labels".into()))?;
    let ideal = lattice_neighborhood(l, a, 2)?;
    let m = restrict_to_ideal(sigma, l, p, ideal)?;
    if sigma.is_a_invertible(l) && !m.is_a_invertible(l) {
        return pre("restriction lost a-invertibility");
    }
    Ok(m)
}

/// Extends an a-invertible `σ′` on a join-subsemilattice `sub ⊇ N_L(a)` to
/// all of `L`: `σ(f)(x) = π_B(f(x)) ∪ σ′(π_sub ∘ f)(x)`, with `B` the
/// generators disjoint from `a`.
pub fn lift_from_neighborhood(sigma: &Matching, l: &Semilattice, sub: Set, p: &Poset) -> Result<Matching> {
    let fam = l.labels().ok_or_else(|| Error::Precondition("lattice needs set labels".into()))?;
    if !fam.is_union_closed() {
        return pre("lattice is not a union-closed family");
    }
    let a_set = fam.members()[sigma.a];
    let sets: Vec<Set> = elems(sub).map(|u| fam.members()[u]).collect();
    let closed = sets.iter().all(|&u| sets.iter().all(|&v| sets.contains(&(u | v))));
    if !closed || !has(sub, l.bottom()) {
        return pre("sub is not a join-subsemilattice with 0̂");
    }
    let n1 = lattice_neighborhood(l, a_set, 1)?;
    if !bits::subset(n1, sub) {
        return pre("sub does not contain N_L(a)");
    }
    if !sigma.is_a_invertible(l) {
        return pre("σ′ is not a-invertible");
    }
    sigma.validate_within(l, p, sub)?;
    let b: Vec<Set> = l.join_irreducibles().into_iter().map(|u| fam.members()[u]).filter(|&s| s & a_set == 0).collect();
    let pi = |pool: &[Set], u: Set| pool.iter().filter(|&&w| bits::subset(w, u)).fold(0, |acc, &w| acc | w);
    let idx = |s: Set| l.index_of(s).ok_or_else(|| Error::Precondition("value leaves the lattice".into()));
    let images: HashMap<&OrderMap, &OrderMap> = sigma.pairs.iter().map(|(f, g)| (f, g)).collect();
    let mut pairs = Vec::new();
    for f in class(l, p, sigma.a, sigma.from)? {
        let proj: OrderMap = f.iter().map(|&u| idx(pi(&sets, fam.members()[u]))).collect::<Result<_>>()?;
        let img = images.get(&proj).ok_or_else(|| Error::Precondition("σ′ misses a projected map".into()))?;
        let g = f
            .iter()
            .enumerate()
            .map(|(x, &u)| idx(pi(&b, fam.members()[u]) | fam.members()[img[x]]))
            .collect::<Result<OrderMap>>()?;
        pairs.push((f, g));
    }
    let m = checked(Matching { pairs, ..sigma.clone() }, l, p)?;
    if !m.is_a_invertible(l) {
        return pre("lift is not a-invertible");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::types::{check_matching_property, Kind, Strength};

    #[test]
    fn lsm_on_b2_meets_with_coatom() {
        let b = Semilattice::boolean(2).unwrap();
        // Labels: ∅, {0}, {1}, {0,1}.
        let (c, a) = (b.index_of(0b01).unwrap(), b.index_of(0b10).unwrap());
        let m = matching_lsm(&b, c, a, &Poset::chain(1), 0).unwrap();
        let img: Vec<(Set, Set)> = m.pairs.iter().map(|(f, g)| (b.label(f[0]).unwrap(), b.label(g[0]).unwrap())).collect();
        assert_eq!(img, vec![(0b10, 0b00), (0b11, 0b01)]);
        assert!(m.is_a_invertible(&b));
    }

    #[test]
    fn lsm_rejects_bad_inputs() {
        let b = Semilattice::boolean(2).unwrap();
        let c = b.index_of(0b01).unwrap();
        assert!(matching_lsm(&b, c, c, &Poset::chain(1), 0).is_err());
        assert!(matching_lsm(&b, b.bottom(), c, &Poset::chain(1), 0).is_err());
    }

    #[test]
    fn m_hat_3_lsm_for_every_filter_on_two_chain() {
        let l = Semilattice::m_hat(3).unwrap();
        let p = Poset::chain(2);
        for c in l.coatoms() {
            for a in l.join_irreducibles().into_iter().filter(|&a| !l.leq(a, c)) {
                for f in p.filters() {
                    assert!(matching_lsm(&l, c, a, &p, f).unwrap().is_a_invertible(&l));
                }
            }
        }
    }

    #[test]
    fn geometric_constructor_on_boolean_and_m_hat() {
        for l in [Semilattice::boolean(3).unwrap(), Semilattice::m_hat(4).unwrap()] {
            for a in l.atoms() {
                for n in 1..=3 {
                    let ms = matching_geometric(&l, a, n).unwrap();
                    assert_eq!(ms.len(), n);
                    assert!(ms.iter().all(|m| m.is_a_invertible(&l)));
                    // Composites give every nested pair of tails.
                    let mut acc = ms[0].clone();
                    for m in &ms[1..] {
                        acc = acc.then(m).unwrap();
                        acc.validate(&l, &Poset::chain(n)).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn dual_geometric_agrees_with_decider() {
        for l in [Semilattice::boolean(3).unwrap(), Semilattice::m_hat(4).unwrap().dual().unwrap()] {
            for a in l.join_irreducibles() {
                let ms = matching_dual_geometric(&l, a, 2).unwrap();
                assert!(ms.iter().all(|m| m.is_a_invertible(&l)));
                let v = check_matching_property(&l, &Poset::chain(2), Some(a), Kind::down(Strength::Full)).unwrap();
                assert!(v.holds);
            }
        }
    }

    #[test]
    fn geometric_rejects_pentagon() {
        let l = Semilattice::pentagon_edge_lattice();
        assert!(matching_geometric(&l, l.atoms()[0], 2).is_err());
    }

    #[test]
    fn distributive_constructor() {
        // Q = 0 < 1, 0 < 2: ideals form a 5-element distributive lattice.
        let q = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
        let p = Poset::chain(2);
        for (from, to) in [(0b11, 0b10), (0b11, 0), (0b10, 0)] {
            let (l, m) = matching_distributive(&q, 1, &p, from, to).unwrap();
            assert!(l.is_distributive());
            assert!(m.is_a_invertible(&l));
            let (_, up) = matching_distributive(&q, 0, &p, to, from).unwrap();
            assert_eq!(up.dir, Direction::Up);
        }
        assert!(matching_distributive(&q, 0, &p, 0b11, 0).is_err());
    }

    #[test]
    fn sum_of_identities_is_identity() {
        let l = Semilattice::chain(2).unwrap();
        let p = Poset::chain(1);
        let id = Matching { a: 1, from: 1, to: 1, dir: Direction::Down, pairs: vec![(vec![1], vec![1])] };
        id.validate(&l, &p).unwrap();
        let s = sum(&id, &id, 1).unwrap();
        assert_eq!(s.pairs, vec![(vec![1, 1], vec![1, 1])]);
        s.validate(&l, &p.disjoint_union(&p).unwrap()).unwrap();
    }

    #[test]
    fn sum_of_top_matchings() {
        let l = Semilattice::boolean(2).unwrap();
        let (p, q) = (Poset::chain(1), Poset::chain(2));
        let a = l.atoms()[0];
        let s = check_matching_property(&l, &p, Some(a), Kind::down(Strength::Top)).unwrap().witnesses[0].clone();
        let r = check_matching_property(&l, &q, Some(a), Kind::down(Strength::Top)).unwrap();
        for rho in &r.witnesses {
            let m = sum(&s, rho, 1).unwrap();
            m.validate(&l, &p.disjoint_union(&q).unwrap()).unwrap();
        }
    }

    #[test]
    fn lift_product_into_two_times_m2() {
        let two = Semilattice::chain(2).unwrap();
        let m2 = Semilattice::m_flat(2).unwrap();
        let p = Poset::chain(2);
        let v = check_matching_property(&two, &p, Some(1), Kind::down(Strength::Full)).unwrap();
        assert!(!v.witnesses.is_empty());
        for s in &v.witnesses {
            let m = lift_product(s, &two, &m2, &p).unwrap();
            assert_eq!(two.product(&m2).unwrap().len(), 6);
            assert_eq!(m.a, 3);
        }
    }

    #[test]
    fn restriction_to_ideal_keeps_a_matching() {
        let l = Semilattice::boolean(3).unwrap();
        let p = Poset::chain(2);
        let a = l.index_of(0b001).unwrap();
        let v = check_matching_property(&l, &p, Some(a), Kind::down(Strength::Full)).unwrap();
        let ideal = l.ideal(l.index_of(0b011).unwrap());
        for s in &v.witnesses {
            restrict_to_ideal(s, &l, &p, ideal).unwrap();
        }
    }

    #[test]
    fn neighbourhood_round_trip() {
        // Path 0-1-2-3 as a graph; a = edge {0,1}.
        let edges = Family::new(4, [0, 0b0011, 0b0110, 0b1100]).unwrap().union_closure();
        let l = Semilattice::from_family(&edges, Closure::Union).unwrap();
        let p = Poset::chain(1);
        let a = l.index_of(0b0011).unwrap();
        let n1 = lattice_neighborhood(&l, 0b0011, 1).unwrap();
        let whole = check_matching_property(&l, &p, Some(a), Kind::down(Strength::Top)).unwrap();
        assert!(whole.holds);
        // Build an a-invertible matching on N_L(a) with f ↦ f ∖ a-part.
        let sub_pairs: Vec<(OrderMap, OrderMap)> = elems(n1)
            .filter(|&u| l.leq(a, u))
            .map(|u| {
                let s = l.label(u).unwrap();
                let lower = elems(n1).filter(|&w| !l.leq(a, w) && l.join(w, a) == Some(u)).min_by_key(|&w| l.label(w).unwrap());
                (vec![u], vec![lower.unwrap_or_else(|| panic!("no partner for {s:#b}"))])
            })
            .collect();
        let sig = Matching { a, from: 1, to: 0, dir: Direction::Down, pairs: sub_pairs };
        sig.validate_within(&l, &p, n1).unwrap();
        let lifted = lift_from_neighborhood(&sig, &l, n1, &p).unwrap();
        assert!(lifted.is_a_invertible(&l));
        let back = restrict_to_neighborhood(&lifted, &l, &p).unwrap();
        assert!(back.is_a_invertible(&l));
    }
}
