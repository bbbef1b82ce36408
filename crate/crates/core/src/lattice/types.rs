//! Type classes of order-preserving maps, decreasing/increasing matchings
//! between them, and P-densities.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;

use super::Semilattice;
use crate::bits::{self, has, Set};
use crate::error::{pre, Error, Result};
use crate::matching::{saturate_left, Bipartite, Saturation};
use crate::par::{self, Mode};
use crate::poset::{OrderMap, Poset};
use crate::Ratio;

/// Largest `|L^P|` the deciders will enumerate.
pub const MAP_BUDGET: u64 = 2_000_000;

/// Every order-preserving map `P → L`, refusing past [`MAP_BUDGET`].
pub fn maps(l: &Semilattice, p: &Poset) -> Result<Vec<OrderMap>> {
    let count = p.count_order_maps(l.order())?;
    if count > MAP_BUDGET {
        return Err(Error::Budget(format!("|L^P| = {count} exceeds {MAP_BUDGET}")));
    }
    Ok(p.order_maps(l.order()))
}

/// `{x : f(x) ≥ a}`, the filter that fixes the type of `f`.
pub fn type_of(l: &Semilattice, f: &[usize], a: usize) -> Set {
    f.iter().enumerate().filter(|&(_, &v)| l.leq(a, v)).fold(0, |s, (x, _)| s | bits::bit(x))
}

fn pointwise_le(l: &Semilattice, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&x, &y)| l.leq(x, y))
}

/// `L^P` split by type for a fixed join-irreducible `a`. Every filter of
/// `P` has an entry, possibly empty.
#[derive(Clone, Debug)]
pub struct TypePartition {
    pub a: usize,
    pub maps: Vec<OrderMap>,
    pub classes: BTreeMap<Set, Vec<usize>>,
}

impl TypePartition {
    pub fn class(&self, filter: Set) -> &[usize] {
        self.classes.get(&filter).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn size(&self, filter: Set) -> usize {
        self.class(filter).len()
    }
}

pub fn type_partition(l: &Semilattice, p: &Poset, a: usize) -> Result<TypePartition> {
    partition_of(l, p, a, maps(l, p)?)
}

fn partition_of(l: &Semilattice, p: &Poset, a: usize, maps: Vec<OrderMap>) -> Result<TypePartition> {
    if a >= l.len() || !l.is_join_irreducible(a) {
        return pre(format!("element {a} is not join-irreducible"));
    }
    let mut classes: BTreeMap<Set, Vec<usize>> = p.filters().into_iter().map(|f| (f, Vec::new())).collect();
    for (i, f) in maps.iter().enumerate() {
        classes.get_mut(&type_of(l, f, a)).expect("type is a filter").push(i);
    }
    Ok(TypePartition { a, maps, classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Full,
    Top,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kind {
    pub strength: Strength,
    pub dir: Direction,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind { strength: Strength::Full, dir: Direction::Down },
        Kind { strength: Strength::Top, dir: Direction::Down },
        Kind { strength: Strength::Weak, dir: Direction::Down },
        Kind { strength: Strength::Full, dir: Direction::Up },
        Kind { strength: Strength::Top, dir: Direction::Up },
        Kind { strength: Strength::Weak, dir: Direction::Up },
    ];

    pub const fn down(strength: Strength) -> Kind {
        Kind { strength, dir: Direction::Down }
    }

    pub const fn up(strength: Strength) -> Kind {
        Kind { strength, dir: Direction::Up }
    }

    /// Parses `MPf`, `MPt`, `MPw` with an optional `-up` suffix.
    pub fn parse(s: &str) -> Result<Kind> {
        Kind::ALL.into_iter().find(|k| k.to_string() == s).ok_or_else(|| Error::Unknown(s.to_string()))
    }

    /// Filter pairs `(from, to)` that need a matching.
    fn pairs(self, filters: &[Set], whole: Set) -> Vec<(Set, Set)> {
        let mut out = Vec::new();
        for &f in filters {
            for &g in filters {
                let wanted = match (self.strength, self.dir) {
                    (Strength::Full, Direction::Down) => f != g && bits::subset(g, f),
                    (Strength::Full, Direction::Up) => f != g && bits::subset(f, g),
                    (_, Direction::Down) => f == whole && g != whole,
                    (_, Direction::Up) => f == 0 && g != 0,
                };
                if wanted {
                    out.push((f, g));
                }
            }
        }
        out
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.strength {
            Strength::Full => "MPf",
            Strength::Top => "MPt",
            Strength::Weak => "MPw",
        };
        let d = if self.dir == Direction::Up { "-up" } else { "" };
        write!(f, "{s}{d}")
    }
}

/// An injective map between two type classes, listed as `(f, σ(f))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub a: usize,
    pub from: Set,
    pub to: Set,
    pub dir: Direction,
    pub pairs: Vec<(OrderMap, OrderMap)>,
}

impl Matching {
    pub fn validate(&self, l: &Semilattice, p: &Poset) -> Result<()> {
        self.validate_within(l, p, l.order().all())
    }

    /// Checks the matching on the maps into `universe` (a set of elements
    /// of `l`): its domain is exactly `T(universe^P, from, a)`, every image
    /// is an order map into `universe` of type `to`, images are distinct and
    /// each pair respects the direction.
    pub fn validate_within(&self, l: &Semilattice, p: &Poset, universe: Set) -> Result<()> {
        let (sub, labels) = l.order().induced(universe);
        let mut domain: HashSet<OrderMap> = HashSet::new();
        p.for_each_order_map(&sub, |m| {
            let f: OrderMap = m.iter().map(|&i| labels[i]).collect();
            if type_of(l, &f, self.a) == self.from {
                domain.insert(f);
            }
        });
        if domain.len() != self.pairs.len() {
            return pre(format!("matching covers {} maps, class has {}", self.pairs.len(), domain.len()));
        }
        let mut seen = HashSet::new();
        for (f, g) in &self.pairs {
            if !domain.contains(f) {
                return pre(format!("{f:?} is not in the source class"));
            }
            if !p.is_order_map(l.order(), g) || g.iter().any(|&v| !has(universe, v)) {
                return pre(format!("{g:?} is not an order map into the universe"));
            }
            if type_of(l, g, self.a) != self.to {
                return pre(format!("{g:?} has the wrong type"));
            }
            let ok = match self.dir {
                Direction::Down => pointwise_le(l, g, f),
                Direction::Up => pointwise_le(l, f, g),
            };
            if !ok {
                return pre(format!("{f:?} ↦ {g:?} breaks the direction"));
            }
            if !seen.insert(g) {
                return pre(format!("{g:?} is hit twice"));
            }
        }
        Ok(())
    }

    /// `f(x) = σ(f)(x) ∨ a` on the source filter, `σ(f)(x)` elsewhere.
    pub fn is_a_invertible(&self, l: &Semilattice) -> bool {
        self.dir == Direction::Down
            && self.pairs.iter().all(|(f, g)| {
                (0..f.len()).all(|x| {
                    let want = if has(self.from, x) { l.join(g[x], self.a) } else { Some(g[x]) };
                    want == Some(f[x])
                })
            })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Matching) -> Result<Matching> {
        if self.to != other.from || self.a != other.a || self.dir != other.dir {
            return pre("matchings do not compose");
        }
        let next: HashMap<&OrderMap, &OrderMap> = other.pairs.iter().map(|(f, g)| (f, g)).collect();
        let pairs = self
            .pairs
            .iter()
            .map(|(f, g)| next.get(g).map(|h| (f.clone(), (*h).clone())).ok_or_else(|| Error::Precondition("image outside the next domain".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matching { a: self.a, from: self.from, to: other.to, dir: self.dir, pairs })
    }
}

/// Why a matching property fails for a given `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// `|T(from)| > |T(to)|`.
    Cardinality { a: usize, from: Set, to: Set, from_size: usize, to_size: usize },
    /// Maps of type `from` whose compatible partners are fewer than them.
    Hall { a: usize, from: Set, to: Set, violator: Vec<OrderMap>, neighbours: usize },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: Kind,
    pub holds: bool,
    /// The join-irreducible the verdict is about (the witness when the
    /// property holds for some candidate).
    pub a: Option<usize>,
    /// One matching per required filter pair (empty for weak kinds).
    pub witnesses: Vec<Matching>,
    /// One refusal per rejected candidate, in candidate order.
    pub failures: Vec<Failure>,
}

/// Decides a matching property for a fixed `a`, or for some candidate when
/// `a` is `None` (join-irreducibles including `0̂` downward, proper ones
/// upward, tried in index order).
pub fn check_matching_property(l: &Semilattice, p: &Poset, a: Option<usize>, kind: Kind) -> Result<Verdict> {
    check_matching_property_with(l, p, a, kind, Mode::default())
}

pub fn check_matching_property_with(l: &Semilattice, p: &Poset, a: Option<usize>, kind: Kind, mode: Mode) -> Result<Verdict> {
    let proper = kind.dir == Direction::Up;
    let ok = |u: usize| u < l.len() && l.is_join_irreducible(u) && !(proper && u == l.bottom());
    let candidates: Vec<usize> = match a {
        Some(u) if !ok(u) => return pre(format!("element {u} is not a {}join-irreducible", if proper { "proper " } else { "" })),
        Some(u) => vec![u],
        None => (0..l.len()).filter(|&u| ok(u)).collect(),
    };
    let all = maps(l, p)?;
    let filters = p.filters();
    let pairs = kind.pairs(&filters, p.all());
    let mut failures = Vec::new();
    for c in candidates {
        let part = partition_of(l, p, c, all.clone())?;
        match decide(l, &part, kind, &pairs, mode) {
            Ok(witnesses) => return Ok(Verdict { kind, holds: true, a: Some(c), witnesses, failures }),
            Err(f) => failures.push(f),
        }
    }
    Ok(Verdict { kind, holds: false, a, witnesses: Vec::new(), failures })
}

fn decide(l: &Semilattice, part: &TypePartition, kind: Kind, pairs: &[(Set, Set)], mode: Mode) -> std::result::Result<Vec<Matching>, Failure> {
    let a = part.a;
    for &(from, to) in pairs {
        let (fs, ts) = (part.size(from), part.size(to));
        if fs > ts {
            return Err(Failure::Cardinality { a, from, to, from_size: fs, to_size: ts });
        }
    }
    if kind.strength == Strength::Weak {
        return Ok(Vec::new());
    }
    let results = par::map(mode, pairs, |&(from, to)| match_classes(l, part, from, to, kind.dir));
    results.into_iter().collect()
}

fn match_classes(l: &Semilattice, part: &TypePartition, from: Set, to: Set, dir: Direction) -> std::result::Result<Matching, Failure> {
    let (left, right) = (part.class(from), part.class(to));
    let mut g = Bipartite::new(left.len(), right.len());
    for (i, &f) in left.iter().enumerate() {
        for (j, &h) in right.iter().enumerate() {
            let (f, h) = (&part.maps[f], &part.maps[h]);
            let ok = match dir {
                Direction::Down => pointwise_le(l, h, f),
                Direction::Up => pointwise_le(l, f, h),
            };
            if ok {
                g.edge(i, j);
            }
        }
    }
    match saturate_left(&g) {
        Saturation::Matched(m) => Ok(Matching {
            a: part.a,
            from,
            to,
            dir,
            pairs: m.iter().enumerate().map(|(i, &j)| (part.maps[left[i]].clone(), part.maps[right[j]].clone())).collect(),
        }),
        Saturation::Violator { left: v, neighbours } => Err(Failure::Hall {
            a: part.a,
            from,
            to,
            violator: v.iter().map(|&i| part.maps[left[i]].clone()).collect(),
            neighbours: neighbours.len(),
        }),
    }
}

/// `|[a)^P| / |L^P|`.
pub fn p_density(l: &Semilattice, p: &Poset, a: usize) -> Result<Ratio> {
    if a >= l.len() || !l.is_join_irreducible(a) {
        return pre(format!("element {a} is not join-irreducible"));
    }
    let (fa, _) = l.order().induced(l.filter(a));
    let top = p.count_order_maps(&fa)?;
    let all = p.count_order_maps(l.order())?;
    Ok(Ratio::new(BigInt::from(top), BigInt::from(all)))
}

/// The first proper join-irreducible with P-density at most `1/p`, where
/// `p` counts the filters of `P`. The trivial semilattice has none.
pub fn density_property(l: &Semilattice, p: &Poset) -> Result<Option<usize>> {
    let pc = p.filters().len() as u128;
    let all = p.count_order_maps(l.order())? as u128;
    for a in l.join_irreducibles() {
        let (fa, _) = l.order().induced(l.filter(a));
        if pc * p.count_order_maps(&fa)? as u128 <= all {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// The join-irreducibles (wide sense) of `l` in index order.
pub fn join_irreducibles_wide(l: &Semilattice) -> Vec<usize> {
    (0..l.len()).filter(|&u| l.is_join_irreducible(u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_posets() -> Vec<Poset> {
        (0..=3).flat_map(Poset::all_up_to_iso).collect()
    }

    #[test]
    fn types_partition_all_maps() {
        let l = Semilattice::m_hat(3).unwrap();
        for p in small_posets() {
            for a in join_irreducibles_wide(&l) {
                let t = type_partition(&l, &p, a).unwrap();
                let total: usize = t.classes.values().map(Vec::len).sum();
                assert_eq!(total as u64, p.count_order_maps(l.order()).unwrap());
            }
        }
    }

    #[test]
    fn two_element_lattice_has_one_map_per_type() {
        let l = Semilattice::chain(2).unwrap();
        for p in small_posets() {
            let t = type_partition(&l, &p, 1).unwrap();
            assert!(t.classes.values().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn two_element_lattice_has_all_six() {
        let l = Semilattice::chain(2).unwrap();
        for p in small_posets() {
            for k in Kind::ALL {
                let v = check_matching_property(&l, &p, None, k).unwrap();
                assert!(v.holds, "{k} on {p:?}");
                for m in &v.witnesses {
                    m.validate(&l, &p).unwrap();
                }
            }
        }
    }

    #[test]
    fn bottom_has_no_downward_property() {
        let l = Semilattice::boolean(2).unwrap();
        let p = Poset::chain(1);
        for s in [Strength::Full, Strength::Top, Strength::Weak] {
            assert!(!check_matching_property(&l, &p, Some(l.bottom()), Kind::down(s)).unwrap().holds);
        }
    }

    #[test]
    fn pentagon_fails_top_but_passes_weak() {
        let l = Semilattice::pentagon_edge_lattice();
        let p = Poset::chain(1);
        for a in l.join_irreducibles() {
            let v = check_matching_property(&l, &p, Some(a), Kind::down(Strength::Top)).unwrap();
            assert!(!v.holds);
            // The violator lives in the ideal spanned by the edge's neighbours.
            match &v.failures[0] {
                Failure::Hall { violator, neighbours, .. } => assert!(violator.len() > *neighbours),
                Failure::Cardinality { .. } => panic!("sizes alone do not refute it"),
            }
        }
        assert!(check_matching_property(&l, &p, None, Kind::down(Strength::Weak)).unwrap().holds);
    }

    #[test]
    fn m_hat_fails_weak_up() {
        for n in 3..=4 {
            let l = Semilattice::m_hat(n).unwrap();
            for p in (1..=2).flat_map(Poset::all_up_to_iso) {
                assert!(!check_matching_property(&l, &p, None, Kind::up(Strength::Weak)).unwrap().holds);
            }
        }
    }

    #[test]
    fn type_counts_for_m_hat_under_antichain_top() {
        for (n, k) in [(3usize, 2u32), (4, 2), (5, 3)] {
            let l = Semilattice::m_hat(n).unwrap();
            let p = Poset::antichain_under_top(k as usize);
            let a = l.atoms()[0];
            let t = type_partition(&l, &p, a).unwrap();
            assert_eq!(t.size(0), (n - 1) * 2usize.pow(k) + 1);
            assert_eq!(t.size(bits::bit(k as usize)), n.pow(k) + 1);
        }
    }

    #[test]
    fn boolean_atom_density_is_one_over_p() {
        for n in 1..=3 {
            let b = Semilattice::boolean(n).unwrap();
            for p in small_posets() {
                let pc = p.filters().len() as i64;
                for a in b.atoms() {
                    assert_eq!(p_density(&b, &p, a).unwrap(), crate::ratio(1, pc));
                }
            }
        }
    }

    #[test]
    fn density_property_examples() {
        let p = Poset::chain(1);
        assert_eq!(density_property(&Semilattice::chain(1).unwrap(), &p).unwrap(), None);
        assert!(density_property(&Semilattice::pentagon_edge_lattice(), &p).unwrap().is_some());
    }

    #[test]
    fn composition_of_witnesses_is_a_matching() {
        let l = Semilattice::boolean(2).unwrap();
        let p = Poset::chain(2);
        let v = check_matching_property(&l, &p, Some(l.atoms()[0]), Kind::down(Strength::Full)).unwrap();
        let find = |f: Set, g: Set| v.witnesses.iter().find(|m| m.from == f && m.to == g).unwrap().clone();
        let m = find(0b11, 0b10).then(&find(0b10, 0)).unwrap();
        m.validate(&l, &p).unwrap();
    }

    #[test]
    fn kind_names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(Kind::parse(&k.to_string()).unwrap(), k);
        }
    }
}
