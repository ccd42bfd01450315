//! Exact computational engine for categories of partitions with a generic
//! loop parameter t: diagram calculus, category membership and closure,
//! morphism algebra over exact coefficient rings, Gram matrices and their
//! determinants, projective and surjective partitions with their symmetry
//! groups, throughput-one idempotents of the Temperley-Lieb tower, the
//! fattening functor, and negligibility tests at rational parameters.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! floating point appears only in root classification against closed trigono-
//! metric families, with pinned tolerances.

pub mod algebra;
pub mod categories;
pub mod diagram;
pub mod idempotents;
pub mod lattice;
pub mod projectives;

pub use algebra::{LaurentPoly, Morphism};
pub use categories::{Category, CategorySpec, Family};
pub use diagram::{CompositionResult, Partition, Point};
pub use idempotents::{JonesWenzl, RatFunc};
pub use lattice::{GramMatrix, IntPoly, RootReport};
pub use projectives::{CensusRow, PermGroup};

use std::fmt;

/// Crate-wide error type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// Block data does not describe a partition of the stated points.
    InvalidPartition(String),
    /// Operation applied to diagrams of incompatible shapes.
    ShapeMismatch(String),
    /// Category identifier or specification not recognized.
    UnknownCategory(String),
    /// Möbius/zeta machinery requires a meet-closed poset; carries a witness.
    NotMeetClosed(String),
    /// Symmetry-group computation refused: too many through-blocks.
    GroupTooLarge(String),
    /// Exact evaluation hit a pole or an undefined parameter value.
    BadParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPartition(m) => write!(f, "invalid partition: {m}"),
            Error::ShapeMismatch(m) => write!(f, "shape mismatch: {m}"),
            Error::UnknownCategory(m) => write!(f, "unknown category: {m}"),
            Error::NotMeetClosed(m) => write!(f, "poset not meet-closed: {m}"),
            Error::GroupTooLarge(m) => write!(f, "symmetry group too large: {m}"),
            Error::BadParameter(m) => write!(f, "bad parameter: {m}"),
        }
    }
}

impl std::error::Error for Error {}
