//! Strategies and invariants shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use ordkit::antichain::sperner_closure;
use ordkit::bits::{self, subset, subsets, Set};
use ordkit::family::{kleitman_check, Restriction};
use ordkit::lattice::types::{check_matching_property, Direction, Kind, Strength};
use ordkit::lattice::{Closure, Semilattice};
use ordkit::{Family, Poset};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 10_000;
pub const SEED: u64 = 0x5eed_0bd5;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn runner() -> TestRunner {
    TestRunner::new_with_rng(config(), TestRng::from_seed(RngAlgorithm::ChaCha, &seed_bytes()))
}

fn seed_bytes() -> [u8; 32] {
    let mut b = [0u8; 32];
    b[..8].copy_from_slice(&SEED.to_le_bytes());
    b
}

/// A family of at most `max_members` sets on a ground of `1..=max_ground`.
pub fn family(max_ground: usize, max_members: usize) -> impl Strategy<Value = Family> {
    (1..=max_ground).prop_flat_map(move |n| {
        proptest::collection::vec(0..(1u64 << n), 0..=max_members).prop_map(move |sets| Family::new(n, sets).unwrap())
    })
}

/// Drops members with an empty center until none is left. Centers only
/// grow when members are removed, so this ends in a centered family.
pub fn centered_part(f: &Family) -> Family {
    let mut g = f.clone();
    while !g.is_centered() {
        let h = g.clone();
        g = g.filter(|u| h.center(u) != 0);
    }
    g
}

pub fn center_invariants(f: &Family) -> Result<(), TestCaseError> {
    let m = f.members();
    for &u in m {
        for &v in m {
            if subset(u, v) && u & f.center(v) != 0 {
                prop_assert!(subset(f.center(u), f.center(v)), "C({u:b}) ⊄ C({v:b})");
            }
        }
    }
    // Empty centers are left out: a forest has non-empty members only.
    let centers = Family::new(f.ground(), m.iter().map(|&u| f.center(u)).filter(|&c| c != 0)).unwrap();
    prop_assert!(centers.is_forest(), "centers of {:?} are not a forest", f.lines());
    Ok(())
}

pub fn width_transfer(f: &Family) -> Result<(), TestCaseError> {
    let g = centered_part(f);
    for &u in g.members() {
        let wc = g.restrict(g.center(u), Restriction::Containing).width().0;
        let wu = g.restrict(u, Restriction::Containing).width().0;
        prop_assert_eq!(wc, wu, "member {:b} of {:?}", u, g.lines());
    }
    Ok(())
}

/// Up-closure of `gens` inside `2^x`.
pub fn up_set(x: Set, gens: &[Set]) -> Family {
    let n = 64 - x.leading_zeros() as usize;
    Family::new(n, subsets(x).filter(|&s| gens.iter().any(|&g| subset(g & x, s)))).unwrap()
}

pub fn filter_pair() -> impl Strategy<Value = (Set, Vec<Set>, Vec<Set>)> {
    (0..=5usize).prop_flat_map(|n| {
        let x = bits::full(n);
        let sets = proptest::collection::vec(0..=x, 0..=4);
        (Just(x), sets.clone(), sets)
    })
}

pub fn kleitman(x: Set, a: &[Set], b: &[Set]) -> Result<(), TestCaseError> {
    let (f, g) = (up_set(x, a), up_set(x, b));
    prop_assert!(kleitman_check(&f, &g, x).unwrap());
    Ok(())
}

/// A family with sets `a ⊆ b ⊆ ∪F`.
pub fn closure_case() -> impl Strategy<Value = (Family, Set, Set)> {
    family(5, 7).prop_flat_map(|f| {
        let dom = f.union_all();
        (Just(f), 0..=dom, 0..=dom).prop_map(move |(f, a, extra)| {
            let a = a & dom;
            (f, a, a | (extra & dom))
        })
    })
}

pub fn closure_laws(f: &Family, a: Set, b: Set) -> Result<(), TestCaseError> {
    let sa = sperner_closure(f, a);
    prop_assert!(subset(a, sa), "not extensive");
    prop_assert_eq!(sperner_closure(f, sa), sa, "not idempotent");
    prop_assert!(subset(sa, sperner_closure(f, b)), "not monotone");
    Ok(())
}

/// An intersection-closed family on at most 3 points and a poset with at
/// most 3 elements.
pub fn lattice_case() -> impl Strategy<Value = (Family, usize)> {
    (family(3, 5), 0..posets_up_to(3).len())
}

pub fn posets_up_to(n: usize) -> Vec<Poset> {
    (1..=n).flat_map(Poset::all_up_to_iso).collect()
}

pub fn matching_chain(f: &Family, p: &Poset) -> Result<(), TestCaseError> {
    let mut f = f.clone();
    f.insert(bits::full(f.ground()));
    let l = Semilattice::from_family(&f.intersection_closure(), Closure::Intersection).unwrap();
    for dir in [Direction::Down, Direction::Up] {
        for a in l.join_irreducibles() {
            if dir == Direction::Up && a == l.bottom() {
                continue;
            }
            let holds = |s| check_matching_property(&l, p, Some(a), Kind { strength: s, dir }).unwrap().holds;
            let (full, top, weak) = (holds(Strength::Full), holds(Strength::Top), holds(Strength::Weak));
            prop_assert!(!full || top, "MPf without MPt ({dir:?}, a = {a})");
            prop_assert!(!top || weak, "MPt without MPw ({dir:?}, a = {a})");
        }
    }
    Ok(())
}
