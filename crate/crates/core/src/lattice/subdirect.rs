//! Subdirect products, lub-subsemilattices, projections and lattice
//! neighbourhoods.

use super::Semilattice;
use crate::bits::{self, bit, elems, has, Set};
use crate::error::{pre, Error, Result};
use crate::poset::Poset;

/// `L1 ⋈_f L2 = {⟨u, v⟩ : v ∈ f(u)}` with its pairs in index order.
#[derive(Clone, Debug)]
pub struct Bowtie {
    pub l1: Semilattice,
    pub l2: Semilattice,
    /// `f[u]` as a mask of elements of `l2`.
    pub f: Vec<Set>,
    pub pairs: Vec<(usize, usize)>,
    pub lattice: Semilattice,
}

impl Bowtie {
    pub fn index(&self, u: usize, v: usize) -> Option<usize> {
        self.pairs.binary_search(&(u, v)).ok()
    }

    /// `ι̲1(u)`, the least member of `f(u)`.
    pub fn low1(&self, u: usize) -> usize {
        self.l2.meet_all(self.f[u]).expect("f(u) is non-empty")
    }

    /// `u ≤ v` implies `f(u) ⊇ f(v)`.
    pub fn is_antitone(&self) -> bool {
        let n = self.l1.len();
        (0..n).all(|u| (0..n).all(|v| !self.l1.leq(u, v) || bits::subset(self.f[v], self.f[u])))
    }
}

/// `f(u) ∧ f(v) ⊆ f(u ∧ v)` for all `u, v`.
pub fn is_meet_concave(l1: &Semilattice, l2: &Semilattice, f: &[Set]) -> bool {
    (0..l1.len()).all(|u| {
        (0..l1.len()).all(|v| {
            let target = f[l1.meet(u, v)];
            elems(f[u]).all(|x| elems(f[v]).all(|y| has(target, l2.meet(x, y))))
        })
    })
}

/// Builds `L1 ⋈_f L2`; `f` must map into subsemilattices, be meet-concave
/// and cover `L2`, so the result is a subdirect product.
pub fn bowtie(l1: &Semilattice, l2: &Semilattice, f: &[Set]) -> Result<Bowtie> {
    if f.len() != l1.len() {
        return pre("f needs one value per element of L1");
    }
    if let Some(u) = (0..l1.len()).find(|&u| !bits::subset(f[u], l2.order().all()) || !l2.is_subsemilattice(f[u])) {
        return pre(format!("f({u}) is not a subsemilattice"));
    }
    if !is_meet_concave(l1, l2, f) {
        return pre("f is not meet-concave");
    }
    if f.iter().fold(0, |a, &s| a | s) != l2.order().all() {
        return pre("f does not cover L2");
    }
    let pairs: Vec<(usize, usize)> = (0..l1.len()).flat_map(|u| elems(f[u]).map(move |v| (u, v))).collect();
    if pairs.len() > bits::MAX_GROUND {
        return Err(Error::TooLarge(pairs.len()));
    }
    let order = Poset::from_leq(pairs.len(), |i, j| l1.leq(pairs[i].0, pairs[j].0) && l2.leq(pairs[i].1, pairs[j].1))?;
    let lattice = Semilattice::from_order(order)?;
    Ok(Bowtie { l1: l1.clone(), l2: l2.clone(), f: f.to_vec(), pairs, lattice })
}

/// The fibre maps of a subdirect product and their least members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iota {
    pub iota1: Vec<Set>,
    pub iota2: Vec<Set>,
    pub low1: Vec<usize>,
    pub low2: Vec<usize>,
}

/// `ι1, ι2, ι̲1, ι̲2` for a subdirect product given as pairs of `L1 × L2`.
pub fn iota_maps(l1: &Semilattice, l2: &Semilattice, members: &[(usize, usize)]) -> Result<Iota> {
    let set: std::collections::HashSet<_> = members.iter().copied().collect();
    for &(u1, v1) in members {
        for &(u2, v2) in members {
            if !set.contains(&(l1.meet(u1, u2), l2.meet(v1, v2))) {
                return pre("members are not closed under meets");
            }
        }
    }
    let mut iota1 = vec![0; l1.len()];
    let mut iota2 = vec![0; l2.len()];
    for &(u, v) in members {
        iota1[u] |= bit(v);
        iota2[v] |= bit(u);
    }
    if iota1.contains(&0) || iota2.contains(&0) {
        return pre("a projection is not onto");
    }
    let low1 = iota1.iter().map(|&s| l2.meet_all(s).unwrap()).collect();
    let low2 = iota2.iter().map(|&s| l1.meet_all(s).unwrap()).collect();
    Ok(Iota { iota1, iota2, low1, low2 })
}

/// `G_L(A)`: the joins (where they exist) of all subsets of `a`, including
/// the empty join `0̂`.
pub fn lub_generate(l: &Semilattice, a: Set) -> Set {
    let mut g = bit(l.bottom());
    loop {
        let mut next = g;
        for u in elems(g) {
            for x in elems(a) {
                if let Some(j) = l.join(u, x) {
                    next |= bit(j);
                }
            }
        }
        if next == g {
            return g;
        }
        g = next;
    }
}

/// `π_A(u) = ∨((u] ∩ A)`.
pub fn project(l: &Semilattice, a: Set, u: usize) -> usize {
    l.join_all(l.ideal(u) & a).expect("bounded by u")
}

/// Embeds `L` into `G_L(A1) × G_L(A2)` by `u ↦ ⟨π_{A1}(u), π_{A2}(u)⟩`,
/// checking injectivity and that each component preserves meets.
pub fn internal_decompose(l: &Semilattice, a1: Set, a2: Set) -> Result<Vec<(usize, usize)>> {
    let j = l.join_irreducibles().into_iter().fold(0, |s, u| s | bit(u));
    if !bits::subset(j, a1 | a2) {
        return pre("A1 ∪ A2 misses a join-irreducible");
    }
    let (g1, g2) = (lub_generate(l, a1), lub_generate(l, a2));
    let emb: Vec<(usize, usize)> = (0..l.len()).map(|u| (project(l, g1, u), project(l, g2, u))).collect();
    let mut seen = std::collections::HashSet::new();
    if !emb.iter().all(|e| seen.insert(*e)) {
        return pre("projections do not separate elements");
    }
    for u in 0..l.len() {
        for v in 0..l.len() {
            let m = l.meet(u, v);
            for (g, pick) in [(g1, 0), (g2, 1)] {
                let side = |w: usize| if pick == 0 { emb[w].0 } else { emb[w].1 };
                if side(m) != project(l, g, l.meet(side(u), side(v))) {
                    return pre("projection is not a meet-homomorphism");
                }
            }
        }
    }
    Ok(emb)
}

/// `N^i_L(U)` for a lattice built from a union-closed family containing ∅,
/// as a mask of elements. `N^1` is generated by ∅ and the generators
/// meeting `U`; odd levels iterate on the union of the previous odd level;
/// even levels are the ideals below that union; `N^0` is the ideal of `U`.
pub fn lattice_neighborhood(l: &Semilattice, u: Set, i: usize) -> Result<Set> {
    let fam = l.labels().ok_or_else(|| Error::Precondition("lattice needs set labels".into()))?;
    if !fam.is_union_closed() || !fam.contains(0) {
        return pre("lattice is not a union-closed family with ∅");
    }
    let sets = fam.members();
    let below = |x: Set| (0..l.len()).filter(|&v| bits::subset(sets[v], x)).fold(0, |s, v| s | bit(v));
    if i == 0 {
        return Ok(below(u));
    }
    let gens = l.join_irreducibles();
    let hood = |x: Set| -> Set {
        let seeds: Set = gens.iter().filter(|&&g| sets[g] & x != 0).fold(bit(l.bottom()), |s, &g| s | bit(g));
        lub_generate(l, seeds)
    };
    let union_of = |m: Set| elems(m).fold(0, |s, v| s | sets[v]);
    let mut odd = hood(u);
    for _ in 0..(i - 1) / 2 {
        odd = hood(union_of(odd));
    }
    Ok(if i % 2 == 1 { odd } else { below(union_of(odd)) })
}
