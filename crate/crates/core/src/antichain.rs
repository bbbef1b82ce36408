//! Antichains under the filter order, maximal r-antichains and the Sperner
//! closure on families of sets.
//!
//! `A ≤ B` iff `[A) ⊇ [B)`. The meet is `min(A ∪ B)`; the join is
//! `min([A) ∩ [B))`, which equals `max(A ∪ B)` when both are Sperner.

use std::collections::BTreeMap;

use crate::bits::{self, bit, elems, subset, Set};
use crate::error::{pre, Error, Result};
use crate::family::{Family, Restriction};
use crate::poset::{width_by, Poset};

fn check(p: &Poset, a: Set) -> Result<()> {
    if !subset(a, p.all()) || !p.is_antichain(a) {
        return pre(format!("{} is not an antichain", bits::show(a)));
    }
    Ok(())
}

/// `A ≤ B` in the filter order.
pub fn filter_le(p: &Poset, a: Set, b: Set) -> bool {
    subset(p.filter_of(b), p.filter_of(a))
}

pub fn antichain_meet(p: &Poset, a: Set, b: Set) -> Result<Set> {
    check(p, a)?;
    check(p, b)?;
    Ok(p.minimal(a | b))
}

pub fn antichain_join(p: &Poset, a: Set, b: Set) -> Result<Set> {
    check(p, a)?;
    check(p, b)?;
    Ok(p.minimal(p.filter_of(a) & p.filter_of(b)))
}

/// Indices lying in at least one maximum antichain of the strict order `lt`.
pub fn in_some_max_antichain(n: usize, lt: impl Fn(usize, usize) -> bool) -> (usize, Vec<usize>) {
    let (w, _) = width_by(n, &lt);
    let hits = (0..n)
        .filter(|&x| {
            let inc: Vec<usize> = (0..n).filter(|&y| y != x && !lt(x, y) && !lt(y, x)).collect();
            1 + width_by(inc.len(), |i, j| lt(inc[i], inc[j])).0 == w
        })
        .collect();
    (w, hits)
}

/// The filter-order greatest Sperner antichain of `lt` on `0..n`.
///
/// It is the set of maximal elements among all points that lie in some
/// maximum antichain; the result is checked to have full width.
pub fn top_sperner_by(n: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let (w, hits) = in_some_max_antichain(n, &lt);
    let top: Vec<usize> = hits.iter().copied().filter(|&x| !hits.iter().any(|&y| lt(x, y))).collect();
    assert_eq!(top.len(), w, "maximal Sperner antichain is not unique");
    top
}

pub fn max_sperner_antichain(p: &Poset) -> Set {
    bits::from_elems(top_sperner_by(p.len(), |i, j| p.lt(i, j)))
}

/// Every antichain `B ≠ A` inside `[A)` has fewer than `|A|` elements.
pub fn is_maximal_r_antichain(p: &Poset, a: Set) -> Result<bool> {
    check(p, a)?;
    let (sub, labels) = p.induced(p.filter_of(a));
    let (w, hits) = in_some_max_antichain(sub.len(), |i, j| sub.lt(i, j));
    let hits = hits.iter().fold(0, |s, &i| s | bit(labels[i]));
    Ok(w == bits::size(a) && hits == a)
}

/// Smallest `i ≥ -1` with `A ∈ C_i`.
pub fn class_index(p: &Poset, a: Set) -> Result<i64> {
    if is_maximal_r_antichain(p, a)? {
        return Ok(-1);
    }
    let (sub, _) = p.induced(p.filter_of(a));
    Ok(sub.width().0 as i64 - bits::size(a) as i64)
}

/// `C_{-1}`, the maximal *-antichains, in antichain enumeration order.
pub fn maximal_star_antichains(p: &Poset) -> Vec<Set> {
    p.antichains().into_iter().filter(|&a| is_maximal_r_antichain(p, a).unwrap()).collect()
}

pub fn maximal_r_antichains(p: &Poset, r: usize) -> Vec<Set> {
    maximal_star_antichains(p).into_iter().filter(|&a| bits::size(a) == r).collect()
}

pub fn star_union(p: &Poset) -> Set {
    maximal_star_antichains(p).into_iter().fold(0, |s, a| s | a)
}

/// Checks a sequence of pairwise incomparable r-antichains in which every
/// later member is a maximal r-antichain of its union with any earlier
/// one, and reports whether its length is at most `C(w, r)`.
pub fn incomparable_sequence_check(p: &Poset, seq: &[Set]) -> Result<bool> {
    let Some(&first) = seq.first() else {
        return Ok(true);
    };
    let r = bits::size(first);
    for &a in seq {
        check(p, a)?;
        if bits::size(a) != r {
            return pre("antichains differ in size");
        }
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let (a, b) = (seq[i], seq[j]);
            if filter_le(p, a, b) || filter_le(p, b, a) {
                return pre(format!("{} and {} are comparable", bits::show(a), bits::show(b)));
            }
            let (sub, labels) = p.induced(a | b);
            let local = labels.iter().enumerate().filter(|(_, &l)| bits::has(b, l)).fold(0, |s, (i, _)| s | bit(i));
            if !is_maximal_r_antichain(&sub, local)? {
                return pre(format!("{} is not maximal in its union with {}", bits::show(b), bits::show(a)));
            }
        }
    }
    Ok(seq.len() as u128 <= binomial(p.width().0 as u64, r as u64))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The maximal Sperner antichain of a family under inclusion.
pub fn family_top_sperner(f: &Family) -> Vec<Set> {
    let m = f.members();
    top_sperner_by(m.len(), |i, j| i != j && subset(m[i], m[j])).into_iter().map(|i| m[i]).collect()
}

/// `SC_F(A)`: intersection of the maximal Sperner antichain of `F_{⊇A}`,
/// or `∪F` when no member contains `A`.
pub fn sperner_closure(f: &Family, a: Set) -> Set {
    let up = f.restrict(a, Restriction::Containing);
    if up.is_empty() {
        return f.union_all();
    }
    family_top_sperner(&up).into_iter().fold(bits::full(f.ground()), |s, u| s & u)
}

/// Largest `|∪F|` accepted by [`sc_layers`].
pub const SC_BUDGET: usize = 20;

/// `r ↦ SC_r(F)`, where `r` is the width of `F_{⊇A}`.
pub fn sc_layers(f: &Family) -> Result<BTreeMap<usize, Family>> {
    let dom = f.union_all();
    if bits::size(dom) > SC_BUDGET {
        return Err(Error::Budget(format!("|∪F| = {} exceeds {SC_BUDGET}", bits::size(dom))));
    }
    let mut out: BTreeMap<usize, Family> = BTreeMap::new();
    for a in bits::subsets(dom) {
        let r = f.restrict(a, Restriction::Containing).width().0;
        out.entry(r).or_insert_with(|| Family::empty(f.ground())).insert(sperner_closure(f, a));
    }
    Ok(out)
}

/// `SC(F)` as a family.
pub fn sc_family(f: &Family) -> Result<Family> {
    let mut all = Family::empty(f.ground());
    for layer in sc_layers(f)?.values() {
        for &m in layer.members() {
            all.insert(m);
        }
    }
    Ok(all)
}

/// The antichains of `F` (as member sets) that are maximal *-antichains.
pub fn family_star_antichains(f: &Family) -> Result<Vec<Vec<Set>>> {
    let p = f.inclusion_poset()?;
    let m = f.members();
    Ok(maximal_star_antichains(&p).into_iter().map(|a| elems(a).map(|i| m[i]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_maximal(p: &Poset, a: Set) -> bool {
        let fa = p.filter_of(a);
        p.antichains().into_iter().filter(|&b| subset(b, fa) && b != a).all(|b| bits::size(b) < bits::size(a))
    }

    fn brute_class(p: &Poset, a: Set) -> i64 {
        let fa = p.filter_of(a);
        let r = bits::size(a) as i64;
        (-1..=p.len() as i64)
            .find(|&i| {
                p.antichains()
                    .into_iter()
                    .filter(|&b| subset(b, fa) && (i >= 0 || !subset(b, a)))
                    .all(|b| bits::size(b) as i64 <= r + i)
            })
            .unwrap()
    }

    fn brute_top_sperner(p: &Poset) -> Set {
        let w = p.width_brute();
        let sp: Vec<Set> = p.antichains().into_iter().filter(|&a| bits::size(a) == w).collect();
        let top: Vec<Set> = sp.iter().copied().filter(|&a| sp.iter().all(|&b| filter_le(p, b, a))).collect();
        assert_eq!(top.len(), 1);
        top[0]
    }

    #[test]
    fn maximality_matches_definition() {
        for n in 0..=5 {
            for p in Poset::all_up_to_iso(n) {
                for a in p.antichains() {
                    assert_eq!(is_maximal_r_antichain(&p, a).unwrap(), brute_maximal(&p, a));
                    assert_eq!(class_index(&p, a).unwrap(), brute_class(&p, a));
                }
                assert_eq!(max_sperner_antichain(&p), brute_top_sperner(&p));
            }
        }
    }

    #[test]
    fn layered_examples() {
        let p = Poset::layered(3);
        let layers = [0b000111, 0b011000, 0b100000];
        assert_eq!(antichain_meet(&p, layers[0], layers[1]).unwrap(), layers[0]);
        assert_eq!(antichain_meet(&p, layers[1], layers[1]).unwrap(), layers[1]);
        for (i, &l) in layers.iter().enumerate() {
            assert_eq!(maximal_r_antichains(&p, 3 - i), vec![l]);
        }
        assert_eq!(bits::size(star_union(&p)), 6);
    }

    #[test]
    fn chain_has_single_star_antichain() {
        // the empty antichain is the unique (hence maximal) 0-antichain
        let p = Poset::chain(5);
        assert_eq!(maximal_star_antichains(&p), vec![0, bit(4)]);
        assert_eq!(star_union(&p), bit(4));
    }

    #[test]
    fn join_is_not_always_union_maximum() {
        // 0 < 2, 1 < 2: {0} and {1} are incomparable antichains whose join is {2}
        let p = Poset::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(antichain_join(&p, bit(0), bit(1)).unwrap(), bit(2));
        assert_eq!(antichain_meet(&p, bit(0), bit(1)).unwrap(), 0b011);
        assert!(antichain_join(&p, 0b101, 0).is_err());
    }

    #[test]
    fn non_maximal_two_antichain() {
        // 2-antichain {0,1} below the 3-antichain {2,3,4}
        let covers = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        let p = Poset::new(5, &covers).unwrap();
        assert!(!is_maximal_r_antichain(&p, 0b00011).unwrap());
        assert!(is_maximal_r_antichain(&p, 0b11100).unwrap());
    }

    #[test]
    fn sperner_closure_examples() {
        let f = Family::from_lists(2, &[&[0], &[1], &[0, 1]]).unwrap();
        assert_eq!(sperner_closure(&f, 0), 0);
        // a chain's greatest Sperner antichain is its top member
        assert_eq!(sperner_closure(&f, bit(0)), 0b11);
        let chain = Family::from_lists(3, &[&[0], &[0, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(sperner_closure(&chain, bit(1)), 0b111);
        assert_eq!(sperner_closure(&chain, 0), 0b111);
    }

    #[test]
    fn discrete_sequence_attains_binomial() {
        let p = Poset::antichain(4);
        let seq: Vec<Set> = bits::subsets(0b1111).filter(|&s| bits::size(s) == 2).collect();
        assert_eq!(seq.len(), 6);
        assert!(incomparable_sequence_check(&p, &seq).unwrap());
        assert!(incomparable_sequence_check(&p, &seq[..1]).unwrap());
    }
}
