//! Exact combinatorics on finite posets, families of sets and semilattices.
//!
//! Sets over a ground of at most 64 points are `u64` masks ([`bits::Set`]).
//! Counts are checked `u64`; ratios are [`Ratio`] (arbitrary precision).

pub mod antichain;
pub mod bits;
pub mod error;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod matching;
pub mod par;
pub mod poset;

pub use bits::Set;
pub use error::{Error, Result};
pub use family::{Family, Restriction};
pub use par::Mode;
pub use poset::{OrderMap, Poset};

pub type Ratio = num_rational::BigRational;

/// `num/den` rendering used by reports.
pub fn show_ratio(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio(n: i64, d: i64) -> Ratio {
    Ratio::new(n.into(), d.into())
}
