//! Finite meet-semilattices and lattices on at most 64 elements.
//!
//! A [`Semilattice`] stores its order, a total meet table and a partial join
//! table. It is a lattice exactly when a greatest element exists. Lattices
//! built from families of sets keep the sets as labels, which the
//! neighbourhood and transfer operations rely on.

pub mod bounds;
pub mod matchings;
pub mod subdirect;
pub mod types;

use crate::bits::{self, bit, elems, has, Set};
use crate::error::{pre, Error, Result};
use crate::family::Family;
use crate::poset::Poset;

pub use bounds::{chain_counts, closed_families, delta, delta_brute, density_threshold, g_formula, h_small, has_chain_density, m_bound, m_circ_bound, multilattice_bound_check, zeta, HKind, MultiLattice, MultiReport};
pub use matchings::{matching_dual_geometric, matching_geometric, matching_lsm};
pub use subdirect::{bowtie, iota_maps, is_meet_concave, lattice_neighborhood, lub_generate, project, Bowtie, Iota};
pub use types::{
    check_matching_property, density_property, p_density, type_partition, Direction, Kind, Matching, Strength, TypePartition,
    Verdict,
};

/// Which operation a family of sets is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Intersection,
    Union,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semilattice {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<Option<usize>>,
    bottom: usize,
    top: Option<usize>,
    labels: Option<Family>,
}

impl Semilattice {
    /// Builds the semilattice on an order in which every pair has a meet.
    pub fn from_order(order: Poset) -> Result<Semilattice> {
        let n = order.len();
        if n == 0 {
            return pre("a semilattice needs at least one element");
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![None; n * n];
        for u in 0..n {
            for v in 0..n {
                let lower = order.down(u) & order.down(v);
                meet[u * n + v] = match greatest(&order, lower) {
                    Some(m) => m,
                    None => return pre(format!("elements {u} and {v} have no meet")),
                };
                join[u * n + v] = least(&order, order.up(u) & order.up(v));
            }
        }
        let bottom = order.minimum().expect("meets exist, so a least element exists");
        let top = order.maximum();
        Ok(Semilattice { order, meet, join, bottom, top, labels: None })
    }

    /// The family ordered by inclusion. Intersection-closed families give
    /// meet = ∩; union-closed families must have a least member and give
    /// join = ∪.
    pub fn from_family(f: &Family, closure: Closure) -> Result<Semilattice> {
        let ok = match closure {
            Closure::Intersection => f.is_intersection_closed(),
            Closure::Union => f.is_union_closed(),
        };
        if !ok || f.is_empty() {
            return pre(format!("family is not a non-empty {closure:?}-closed family"));
        }
        let mut l = Semilattice::from_order(f.inclusion_poset()?)?;
        l.labels = Some(f.clone());
        Ok(l)
    }

    /// The Boolean lattice on `n` atoms, labelled by the subsets of `0..n`.
    pub fn boolean(n: usize) -> Result<Semilattice> {
        if n > 6 {
            return Err(Error::TooLarge(1 << n.min(63)));
        }
        Semilattice::from_family(&Family::power_set(n), Closure::Union)
    }

    /// The chain with `n ≥ 1` elements.
    pub fn chain(n: usize) -> Result<Semilattice> {
        Semilattice::from_order(Poset::chain(n))
    }

    /// `0̂` (index 0) below `n` pairwise incomparable atoms `1..=n`.
    pub fn m_flat(n: usize) -> Result<Semilattice> {
        let covers: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Semilattice::from_order(Poset::new(n + 1, &covers)?)
    }

    /// `m_flat(n)` with a top element `n + 1` adjoined.
    pub fn m_hat(n: usize) -> Result<Semilattice> {
        Semilattice::m_flat(n)?.completion()
    }

    /// Union closure of the five pentagon edges together with ∅.
    pub fn pentagon_edge_lattice() -> Semilattice {
        let edges: Vec<Set> = (0..5).map(|i| bit(i) | bit((i + 1) % 5)).collect();
        let f = Family::new(5, edges.into_iter().chain([0])).expect("pentagon").union_closure();
        Semilattice::from_family(&f, Closure::Union).expect("pentagon edge lattice")
    }

    /// Cartesian product; `(u, v)` has index `u * |m| + v`.
    pub fn product(&self, m: &Semilattice) -> Result<Semilattice> {
        Semilattice::from_order(self.order.product(&m.order)?)
    }

    /// `L^Q` ordered pointwise, together with the maps behind each index.
    pub fn power(&self, q: &Poset) -> Result<(Semilattice, Vec<Vec<usize>>)> {
        let count = q.count_order_maps(&self.order)?;
        if count > bits::MAX_GROUND as u64 {
            return Err(Error::TooLarge(count as usize));
        }
        let maps = q.order_maps(&self.order);
        let order = Poset::from_leq(maps.len(), |i, j| maps[i].iter().zip(&maps[j]).all(|(&x, &y)| self.order.leq(x, y)))?;
        Ok((Semilattice::from_order(order)?, maps))
    }

    pub fn dual(&self) -> Result<Semilattice> {
        if self.top.is_none() {
            return pre("only a lattice has a dual semilattice");
        }
        Semilattice::from_order(self.order.dual())
    }

    /// Adjoins a new greatest element when none exists.
    pub fn completion(&self) -> Result<Semilattice> {
        if self.top.is_some() {
            return Ok(self.clone());
        }
        let n = self.len();
        if n + 1 > bits::MAX_GROUND {
            return Err(Error::TooLarge(n + 1));
        }
        Semilattice::from_order(Poset::from_leq(n + 1, |i, j| j == n || (i < n && self.order.leq(i, j)))?)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn labels(&self) -> Option<&Family> {
        self.labels.as_ref()
    }

    /// The set behind element `u` of a family-built semilattice.
    pub fn label(&self, u: usize) -> Option<Set> {
        self.labels.as_ref().map(|f| f.members()[u])
    }

    /// Element whose label is `s`.
    pub fn index_of(&self, s: Set) -> Option<usize> {
        self.labels.as_ref().and_then(|f| f.members().binary_search(&s).ok())
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn is_lattice(&self) -> bool {
        self.top.is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    #[inline]
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.order.leq(u, v)
    }

    #[inline]
    pub fn meet(&self, u: usize, v: usize) -> usize {
        self.meet[u * self.len() + v]
    }

    #[inline]
    pub fn join(&self, u: usize, v: usize) -> Option<usize> {
        self.join[u * self.len() + v]
    }

    /// Least upper bound of a set of elements, when one exists.
    pub fn join_all(&self, s: Set) -> Option<usize> {
        let ub = elems(s).fold(self.order.all(), |acc, u| acc & self.order.up(u));
        least(&self.order, ub)
    }

    /// Greatest lower bound; the empty meet is the top, if any.
    pub fn meet_all(&self, s: Set) -> Option<usize> {
        let mut it = elems(s);
        match it.next() {
            None => self.top,
            Some(first) => Some(it.fold(first, |acc, u| self.meet(acc, u))),
        }
    }

    /// `[u)` as a mask.
    pub fn filter(&self, u: usize) -> Set {
        self.order.up(u)
    }

    /// `(u]` as a mask.
    pub fn ideal(&self, u: usize) -> Set {
        self.order.down(u)
    }

    pub fn covers(&self, u: usize, v: usize) -> bool {
        has(self.order.lower_covers(v), u)
    }

    /// Proper join-irreducibles: elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| bits::size(self.order.lower_covers(u)) == 1).collect()
    }

    /// Join-irreducible in the wide sense, which admits `0̂`.
    pub fn is_join_irreducible(&self, u: usize) -> bool {
        bits::size(self.order.lower_covers(u)) <= 1
    }

    /// Meet-irreducibles of a lattice: elements covered by exactly one element.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| bits::size(self.order.upper_covers(u)) == 1).collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        elems(self.order.upper_covers(self.bottom)).collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        match self.top {
            Some(t) => elems(self.order.lower_covers(t)).collect(),
            None => Vec::new(),
        }
    }

    /// Length of a longest chain from `0̂` to `u`.
    pub fn rank(&self, u: usize) -> usize {
        self.order.induced(self.ideal(u)).0.height()
    }

    pub fn height(&self) -> usize {
        self.order.height()
    }

    /// Every join-irreducible is an atom.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.order.upper_covers(self.bottom);
        self.join_irreducibles().iter().all(|&a| has(atoms, a))
    }

    /// Every meet-irreducible is a coatom.
    pub fn is_coatomic(&self) -> bool {
        let Some(t) = self.top else { return false };
        let co = self.order.lower_covers(t);
        self.meet_irreducibles().iter().all(|&c| has(co, c))
    }

    /// For every `v` covering `u` and every `w`, `v ∧ w` covers or equals
    /// `u ∧ w`.
    pub fn is_lower_semimodular_element(&self, u: usize) -> bool {
        elems(self.order.upper_covers(u)).all(|v| {
            (0..self.len()).all(|w| {
                let (a, b) = (self.meet(u, w), self.meet(v, w));
                a == b || self.covers(a, b)
            })
        })
    }

    pub fn is_lower_semimodular(&self) -> bool {
        self.is_lattice() && (0..self.len()).all(|u| self.is_lower_semimodular_element(u))
    }

    /// Upper covering condition: `u ⋖ v` implies `u ∨ w ⋖ v ∨ w` or equality.
    pub fn is_upper_semimodular(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        (0..self.len()).all(|u| {
            elems(self.order.upper_covers(u)).all(|v| {
                (0..self.len()).all(|w| {
                    let (a, b) = (self.join(u, w).unwrap(), self.join(v, w).unwrap());
                    a == b || self.covers(a, b)
                })
            })
        })
    }

    pub fn is_geometric(&self) -> bool {
        self.is_atomic() && self.is_upper_semimodular()
    }

    /// The dual is geometric: coatomic and lower semimodular.
    pub fn is_dual_geometric(&self) -> bool {
        self.is_coatomic() && self.is_lower_semimodular()
    }

    pub fn is_distributive(&self) -> bool {
        self.is_lattice()
            && (0..self.len()).all(|u| {
                (0..self.len()).all(|v| {
                    (0..self.len()).all(|w| self.meet(u, self.join(v, w).unwrap()) == self.join(self.meet(u, v), self.meet(u, w)).unwrap())
                })
            })
    }

    /// Element set closed under meets (and non-empty).
    pub fn is_subsemilattice(&self, s: Set) -> bool {
        s != 0 && elems(s).all(|u| elems(s).all(|v| has(s, self.meet(u, v))))
    }

    /// `(u] ∩ J(L)` for every `u`, over ground `|J(L)|` indexed as in
    /// [`Semilattice::join_irreducibles`].
    pub fn canonical_intersection_rep(&self) -> Family {
        let j = self.join_irreducibles();
        let code = |u: usize| j.iter().enumerate().filter(|&(_, &a)| self.leq(a, u)).fold(0, |s, (i, _)| s | bit(i));
        Family::new(j.len(), (0..self.len()).map(code)).expect("ground fits")
    }

    /// `M(L) ∖ [u)` for every `u`, indexed as in
    /// [`Semilattice::meet_irreducibles`]. Joins become unions.
    pub fn canonical_union_rep(&self) -> Result<Family> {
        if !self.is_lattice() {
            return pre("the union representation needs a lattice");
        }
        let m = self.meet_irreducibles();
        let code = |u: usize| m.iter().enumerate().filter(|&(_, &c)| !self.leq(u, c)).fold(0, |s, (i, _)| s | bit(i));
        Family::new(m.len(), (0..self.len()).map(code))
    }

    /// Same semilattice structure under relabelling.
    pub fn is_isomorphic(&self, other: &Semilattice) -> bool {
        self.order.is_isomorphic(&other.order)
    }
}

/// Irredundant restriction of an intersection-closed family: each proper
/// join-irreducible member `a` is assigned the least point of `a` outside
/// the member it covers. Returns the `(member, point)` pairs and the
/// restriction of `f` to the chosen points.
pub fn irredundant_rep(f: &Family) -> Result<(Vec<(Set, usize)>, Family)> {
    let l = Semilattice::from_family(f, Closure::Intersection)?;
    let mut pairs = Vec::new();
    let mut x = 0;
    for a in l.join_irreducibles() {
        let c = elems(l.order.lower_covers(a)).next().unwrap();
        let (sa, sc) = (f.members()[a], f.members()[c]);
        let p = elems(sa & !sc).next().expect("a strictly contains the member it covers");
        pairs.push((sa, p));
        x |= bit(p);
    }
    let restricted = Family::new(f.ground(), f.members().iter().map(|&u| u & x))?;
    if restricted.len() != f.len() {
        return pre("restriction collapsed members");
    }
    Ok((pairs, restricted))
}

fn greatest(p: &Poset, s: Set) -> Option<usize> {
    elems(s).find(|&m| bits::subset(s, p.down(m)))
}

fn least(p: &Poset, s: Set) -> Option<usize> {
    elems(s).find(|&m| bits::subset(s, p.up(m)))
}
