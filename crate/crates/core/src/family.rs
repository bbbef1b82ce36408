//! Families of subsets of `0..ground`, kept sorted and duplicate-free.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bits::{self, bit, elems, subset, Set};
use crate::error::{Error, Result};
use crate::poset::{width_by, Poset};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    ground: usize,
    members: Vec<Set>,
}

/// The four restrictions `F_{⊆X}`, `F_{⊇X}`, `F_{∩X}`, `F_{∖X}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    Within,
    Containing,
    Intersect,
    Minus,
}

impl Family {
    pub fn new<I: IntoIterator<Item = Set>>(ground: usize, members: I) -> Result<Family> {
        if ground > bits::MAX_GROUND {
            return Err(Error::TooLarge(ground));
        }
        let all = bits::full(ground);
        let mut v: Vec<Set> = members.into_iter().collect();
        for &m in &v {
            if !subset(m, all) {
                let elem = elems(m & !all).next().unwrap();
                return Err(Error::OutOfRange { elem, size: ground });
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(Family { ground, members: v })
    }

    /// Builds from element lists, e.g. `&[&[0, 1], &[2]]`.
    pub fn from_lists(ground: usize, lists: &[&[usize]]) -> Result<Family> {
        Family::new(ground, lists.iter().map(|l| bits::from_elems(l.iter().copied())))
    }

    pub fn empty(ground: usize) -> Family {
        Family { ground, members: vec![] }
    }

    pub fn power_set(ground: usize) -> Family {
        Family::new(ground, bits::subsets(bits::full(ground))).expect("power set")
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[Set] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Set) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn with_ground(&self, ground: usize) -> Result<Family> {
        Family::new(ground, self.members.iter().copied())
    }

    pub fn filter(&self, pred: impl Fn(Set) -> bool) -> Family {
        Family { ground: self.ground, members: self.members.iter().copied().filter(|&m| pred(m)).collect() }
    }

    pub fn insert(&mut self, s: Set) {
        if let Err(pos) = self.members.binary_search(&s) {
            self.members.insert(pos, s);
        }
    }

    pub fn union_all(&self) -> Set {
        self.members.iter().fold(0, |a, &m| a | m)
    }

    /// `∩F`; the ground set for the empty family.
    pub fn intersection_all(&self) -> Set {
        self.members.iter().fold(bits::full(self.ground), |a, &m| a & m)
    }

    pub fn inclusion_poset(&self) -> Result<Poset> {
        let m = &self.members;
        Poset::from_leq(m.len(), |i, j| subset(m[i], m[j]))
    }

    /// Width under inclusion, with a maximum antichain.
    pub fn width(&self) -> (usize, Vec<Set>) {
        let m = &self.members;
        let (w, a) = width_by(m.len(), |i, j| i != j && subset(m[i], m[j]));
        (w, a.into_iter().map(|i| m[i]).collect())
    }

    pub fn width_degree(&self, x: usize) -> Result<usize> {
        if x >= self.ground {
            return Err(Error::OutOfRange { elem: x, size: self.ground });
        }
        Ok(self.restrict(bit(x), Restriction::Containing).width().0)
    }

    /// `Ok(())` when locally k-wide, else a (k+1)-antichain with a common
    /// element.
    pub fn locally_k_wide(&self, k: usize) -> std::result::Result<(), Vec<Set>> {
        for x in 0..self.ground {
            let (w, a) = self.restrict(bit(x), Restriction::Containing).width();
            if w > k {
                return Err(a.into_iter().take(k + 1).collect());
            }
        }
        Ok(())
    }

    pub fn is_locally_k_wide(&self, k: usize) -> bool {
        self.locally_k_wide(k).is_ok()
    }

    /// Least k for which the family is locally k-wide.
    pub fn local_width(&self) -> usize {
        (0..self.ground).map(|x| self.restrict(bit(x), Restriction::Containing).width().0).max().unwrap_or(0)
    }

    /// `C(A)`: elements of `A` lying in no member incomparable to `A`.
    pub fn center(&self, a: Set) -> Set {
        let mut c = a;
        for &u in &self.members {
            if !subset(u, a) && !subset(a, u) {
                c &= !u;
            }
        }
        c
    }

    pub fn is_centered(&self) -> bool {
        self.members.iter().all(|&u| self.center(u) != 0)
    }

    fn has_ground_and_singletons(&self) -> bool {
        self.contains(bits::full(self.ground)) && (0..self.ground).all(|x| self.contains(bit(x)))
    }

    pub fn is_pseudotree(&self) -> bool {
        self.is_centered() && self.has_ground_and_singletons()
    }

    pub fn is_k_pseudotree(&self, k: usize) -> bool {
        self.is_pseudotree() && self.is_locally_k_wide(k)
    }

    /// Non-empty members, pairwise comparable or disjoint.
    pub fn is_forest(&self) -> bool {
        let m = &self.members;
        m.iter().all(|&u| u != 0)
            && (0..m.len()).all(|i| {
                (i + 1..m.len()).all(|j| m[i] & m[j] == 0 || subset(m[i], m[j]) || subset(m[j], m[i]))
            })
    }

    pub fn is_tree(&self) -> bool {
        self.ground > 0 && self.is_forest() && self.has_ground_and_singletons()
    }

    /// `(|F|, Σ r_i)` where each non-singleton member covers `2 + r_i` others.
    pub fn tree_size_identity(&self) -> Result<(usize, usize)> {
        if !self.is_tree() {
            return Err(Error::Precondition("family is not a tree of sets".into()));
        }
        let p = self.inclusion_poset()?;
        let mut sum = 0;
        for (i, &u) in self.members.iter().enumerate() {
            if bits::size(u) > 1 {
                sum += bits::size(p.lower_covers(i)) - 2;
            }
        }
        Ok((self.len(), sum))
    }

    pub fn is_union_closed(&self) -> bool {
        let m = &self.members;
        m.iter().all(|&a| m.iter().all(|&b| self.contains(a | b)))
    }

    pub fn is_intersection_closed(&self) -> bool {
        let m = &self.members;
        m.iter().all(|&a| m.iter().all(|&b| self.contains(a & b)))
    }

    pub fn union_closure(&self) -> Family {
        self.closure(|a, b| a | b)
    }

    pub fn intersection_closure(&self) -> Family {
        self.closure(|a, b| a & b)
    }

    fn closure(&self, op: impl Fn(Set, Set) -> Set) -> Family {
        let mut all: BTreeSet<Set> = self.members.iter().copied().collect();
        let mut frontier: Vec<Set> = self.members.clone();
        while let Some(x) = frontier.pop() {
            let snapshot: Vec<Set> = all.iter().copied().collect();
            for y in snapshot {
                let z = op(x, y);
                if all.insert(z) {
                    frontier.push(z);
                }
            }
        }
        Family { ground: self.ground, members: all.into_iter().collect() }
    }

    /// Members that are not the union of the members strictly below them;
    /// `∅` counts when present.
    pub fn generators(&self) -> Family {
        self.filter(|u| {
            let below = self.members.iter().filter(|&&v| v != u && subset(v, u)).fold(0, |a, &v| a | v);
            u == 0 || below != u
        })
    }

    pub fn restrict(&self, x: Set, mode: Restriction) -> Family {
        let m = self.members.iter().copied();
        let v: Vec<Set> = match mode {
            Restriction::Within => m.filter(|&u| subset(u, x)).collect(),
            Restriction::Containing => m.filter(|&u| subset(x, u)).collect(),
            Restriction::Intersect => m.map(|u| u & x).collect(),
            Restriction::Minus => m.map(|u| u & !x).collect(),
        };
        Family::new(self.ground, v).expect("restriction stays in ground")
    }

    /// `F ∨ G = {U ∪ V}`.
    pub fn join(&self, other: &Family) -> Family {
        let g = self.ground.max(other.ground);
        let v = self.members.iter().flat_map(|&a| other.members.iter().map(move |&b| a | b));
        Family::new(g, v).expect("join")
    }

    /// `F ∧ G = {U ∩ V}`.
    pub fn meet(&self, other: &Family) -> Family {
        let g = self.ground.max(other.ground);
        let v = self.members.iter().flat_map(|&a| other.members.iter().map(move |&b| a & b));
        Family::new(g, v).expect("meet")
    }

    /// Relabels elements by `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Family {
        let v = self.members.iter().map(|&m| elems(m).fold(0, |a, i| a | bit(perm[i])));
        Family::new(self.ground, v).expect("permutation")
    }

    /// Whether the family is upward closed inside `2^x`.
    pub fn is_filter_in(&self, x: Set) -> bool {
        self.members.iter().all(|&u| subset(u, x) && elems(x & !u).all(|e| self.contains(u | bit(e))))
    }

    /// `|F| / 2^|X|` for a filter of `2^X`.
    pub fn filter_density(&self, x: Set) -> Result<BigRational> {
        if !self.is_filter_in(x) {
            return Err(Error::Precondition("family is not a filter of the power set".into()));
        }
        Ok(BigRational::new(BigInt::from(self.len()), BigInt::from(1u8) << bits::size(x)))
    }

    pub fn lines(&self) -> Vec<String> {
        self.members.iter().map(|&m| bits::show(m)).collect()
    }
}

/// Kleitman's inequality `ν(F ∩ G) ≥ ν(F) ν(G)` for filters of `2^x`.
pub fn kleitman_check(f: &Family, g: &Family, x: Set) -> Result<bool> {
    let nf = f.filter_density(x)?;
    let ng = g.filter_density(x)?;
    let both = f.filter(|u| g.contains(u));
    Ok(both.filter_density(x)? >= nf * ng)
}

/// Arc `[i, j]` of `Z_n`: `i, i+1, .., j` taken mod `n`.
pub fn arc(n: usize, i: usize, j: usize) -> Set {
    let len = (j + n - i) % n + 1;
    (0..len).fold(0, |a, t| a | bit((i + t) % n))
}

/// Segment `[i, j]` of `0..`, empty when `j < i`.
pub fn segment(i: usize, j: usize) -> Set {
    if j < i {
        0
    } else {
        bits::full(j + 1) & !bits::full(i)
    }
}

/// Whether `s` is a non-empty proper arc of `Z_n`.
pub fn is_arc(n: usize, s: Set) -> bool {
    let all = bits::full(n);
    if s == 0 || s == all || !subset(s, all) {
        return false;
    }
    // exactly one element of s whose predecessor is outside s
    (0..n).filter(|&i| bits::has(s, i) && !bits::has(s, (i + n - 1) % n)).count() == 1
}

/// Endpoints `(left, right)` of a proper arc.
pub fn arc_ends(n: usize, s: Set) -> Option<(usize, usize)> {
    if !is_arc(n, s) {
        return None;
    }
    let l = (0..n).find(|&i| bits::has(s, i) && !bits::has(s, (i + n - 1) % n))?;
    let r = (0..n).find(|&i| bits::has(s, i) && !bits::has(s, (i + 1) % n))?;
    Some((l, r))
}

pub fn is_segment(s: Set) -> bool {
    s != 0 && {
        let lo = s.trailing_zeros() as usize;
        let hi = 63 - s.leading_zeros() as usize;
        s == segment(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(ground: usize, lists: &[&[usize]]) -> Family {
        Family::from_lists(ground, lists).unwrap()
    }

    #[test]
    fn width_degree_examples() {
        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(f.width_degree(1).unwrap(), 2);
        assert!(f.width_degree(3).is_err());
        assert!(Family::power_set(2).is_locally_k_wide(1));
        let g = fam(4, &[&[0, 1], &[0, 2], &[0, 3]]);
        let w = g.locally_k_wide(2).unwrap_err();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|&u| bits::has(u, 0)));
    }

    #[test]
    fn centers() {
        let f = fam(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 1, 2]]);
        assert_eq!(f.center(bit(1)), bit(1));
        assert_eq!(f.center(0b111), 0b111);
        // {0,1} is crossed by {1,2} on element 1
        assert_eq!(f.center(0b011), 0b001);
        // arc family on Z_4 where V = [1,2] is covered at both ends
        let n = 4;
        let h = Family::new(n, [arc(n, 0, 1), arc(n, 1, 2), arc(n, 2, 3)]).unwrap();
        assert_eq!(h.center(arc(n, 1, 2)), 0);
        assert!(!h.is_centered());
    }

    #[test]
    fn trees() {
        let bin = fam(4, &[&[0], &[1], &[2], &[3], &[0, 1], &[2, 3], &[0, 1, 2, 3]]);
        assert!(bin.is_tree());
        assert_eq!(bin.tree_size_identity().unwrap(), (7, 0));
        assert!(bin.is_k_pseudotree(1));
        let star = fam(5, &[&[0], &[1], &[2], &[3], &[4], &[0, 1, 2, 3, 4]]);
        assert_eq!(star.tree_size_identity().unwrap(), (6, 3));
        assert!(fam(3, &[&[0, 1], &[1, 2]]).tree_size_identity().is_err());
    }

    #[test]
    fn closures_and_generators() {
        let f = fam(3, &[&[0, 1], &[1, 2]]);
        assert!(f.intersection_closure().contains(bit(1)));
        let p = Family::power_set(3).filter(|s| s != 0);
        assert_eq!(p.generators(), fam(3, &[&[0], &[1], &[2]]));
        let u = f.union_closure();
        assert_eq!(u.len(), 3);
        assert_eq!(u.generators().union_closure(), u);
    }

    #[test]
    fn restrictions() {
        let f = fam(3, &[&[0], &[0, 1], &[2]]);
        assert_eq!(f.restrict(0, Restriction::Intersect).members(), &[0]);
        assert_eq!(f.restrict(0b011, Restriction::Containing).members(), &[0b011]);
        assert_eq!(f.restrict(0b111, Restriction::Containing).len(), 0);
        assert_eq!(f.restrict(0b001, Restriction::Minus).members(), &[0, 0b010, 0b100]);
    }

    #[test]
    fn densities() {
        let x = bits::full(4);
        let all = Family::power_set(4);
        assert_eq!(all.filter_density(x).unwrap(), BigRational::from_integer(1.into()));
        let up = all.filter(|u| subset(0b0011, u));
        assert_eq!(up.filter_density(x).unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(fam(2, &[&[0]]).filter_density(0b11).is_err());
    }

    #[test]
    fn arcs_and_segments() {
        assert_eq!(arc(5, 3, 1), 0b11011);
        assert_eq!(arc_ends(5, 0b11011), Some((3, 1)));
        assert!(!is_arc(5, 0b10101));
        assert!(!is_arc(5, 0b11111));
        assert_eq!(segment(1, 3), 0b1110);
        assert!(is_segment(0b1110) && !is_segment(0b1010));
    }
}
