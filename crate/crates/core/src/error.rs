//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors produced by grid validation, complex construction, module
/// decomposition and the cobordism-map constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input array is not a permutation of `{0..n-1}`.
    NotAPermutation,
    /// A column of a grid with index `n >= 2` carries its O- and
    /// X-marking in the same square.
    CoincidentMarkings { column: usize },
    /// The grid has index zero.
    EmptyGrid,
    /// A state enumeration would exceed the configured budget.
    SizeLimitExceeded { index: usize, limit: usize },
    /// The differential of a purported complex does not square to zero.
    NotAComplex,
    /// A graded module is not divisible by the requested tensor factor;
    /// this signals an upstream bug, not a property of the input link.
    NotDivisible { grading2: i64, multiplicity: u64, divisor: u64 },
    /// The requested operation needs a one-component link.
    NotAKnot { components: usize },
    /// The two designated columns do not realize a crossing change.
    InvalidCrossingColumns { column: usize },
    /// Swapping the O-markings of the designated columns is not a
    /// saddle configuration.
    NotASaddleConfiguration { column: usize },
    /// The marking exchange resolves an orientation-compatible crossing,
    /// so the band is orientable.
    NotUnorientableConfiguration { column: usize },
    /// Torus-knot parameters must be coprime.
    NotCoprime { p: i64, q: i64 },
    /// Knot signatures are even.
    OddSignature { sigma: i64 },
    /// The requested pair is not in the validated signature table.
    NotInTable { p: i64, q: i64 },
    /// The planar projection admits no checkerboard data.
    DegenerateProjection,
    /// A grid file or complex dump could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAPermutation => write!(f, "marking rows are not a permutation"),
            Error::CoincidentMarkings { column } => {
                write!(f, "column {column} carries O and X in the same square")
            }
            Error::EmptyGrid => write!(f, "grid index must be at least 1"),
            Error::SizeLimitExceeded { index, limit } => {
                write!(f, "grid index {index} exceeds enumeration budget {limit}")
            }
            Error::NotAComplex => write!(f, "differential does not square to zero"),
            Error::NotDivisible { grading2, multiplicity, divisor } => write!(
                f,
                "summand at doubled grading {grading2} has multiplicity {multiplicity}, \
                 not divisible by {divisor}"
            ),
            Error::NotAKnot { components } => {
                write!(f, "operation requires a knot, link has {components} components")
            }
            Error::InvalidCrossingColumns { column } => write!(
                f,
                "columns {column},{} do not interleave as a crossing change",
                column + 1
            ),
            Error::NotASaddleConfiguration { column } => write!(
                f,
                "swapping the O-markings of columns {column},{} is not a saddle",
                column + 1
            ),
            Error::NotUnorientableConfiguration { column } => write!(
                f,
                "the marking exchange at columns {column},{} resolves an oriented band",
                column + 1
            ),
            Error::NotCoprime { p, q } => write!(f, "parameters ({p},{q}) are not coprime"),
            Error::OddSignature { sigma } => write!(f, "knot signature {sigma} is odd"),
            Error::NotInTable { p, q } => write!(f, "({p},{q}) is not in the validated table"),
            Error::DegenerateProjection => write!(f, "projection admits no checkerboard surface"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
