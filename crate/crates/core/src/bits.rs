//! Subsets of a ground set of at most 64 elements, stored as bit masks.

pub type Set = u64;

pub const MAX_GROUND: usize = 64;

#[inline]
pub fn bit(i: usize) -> Set {
    1u64 << i
}

#[inline]
pub fn full(n: usize) -> Set {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn has(s: Set, i: usize) -> bool {
    s >> i & 1 == 1
}

#[inline]
pub fn subset(a: Set, b: Set) -> bool {
    a & !b == 0
}

#[inline]
pub fn size(s: Set) -> usize {
    s.count_ones() as usize
}

pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> Set {
    it.into_iter().fold(0, |s, i| s | bit(i))
}

/// Elements in ascending order.
pub fn elems(s: Set) -> Elems {
    Elems(s)
}

pub struct Elems(Set);

impl Iterator for Elems {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// All subsets of `s`, in increasing numeric order.
pub fn subsets(s: Set) -> impl Iterator<Item = Set> {
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == s { None } else { Some((out.wrapping_sub(s)) & s) };
        Some(out)
    })
}

/// `{0,2,3}` style rendering.
pub fn show(s: Set) -> String {
    let parts: Vec<String> = elems(s).map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let v: Vec<Set> = subsets(0b1010).collect();
        assert_eq!(v, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(subsets(0).count(), 1);
        assert_eq!(subsets(full(5)).count(), 32);
    }

    #[test]
    fn elems_ascending() {
        assert_eq!(elems(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(show(0b101), "{0,2}");
        assert_eq!(full(64), u64::MAX);
    }
}
