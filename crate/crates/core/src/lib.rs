//! Unoriented grid homology of knots and links.
//!
//! This crate computes the unoriented grid complex of a toroidal grid
//! diagram over the one-variable polynomial ring `F[U]` with `F` the
//! two-element field, reduces it to a graded module decomposition, and
//! extracts the concordance invariant upsilon together with the
//! upsilon-set of links. It also builds the chain maps induced by
//! crossing changes (pentagon counts), oriented saddles and
//! unorientable saddles, and verifies their algebraic identities on
//! the chain level. Signatures of grid projections are computed from a
//! Goeritz matrix with the Gordon-Litherland correction.
//!
//! All arithmetic is exact. Half-integer gradings are stored doubled.

pub mod closed_form;
pub mod cobordism;
pub mod complex;
pub mod error;
pub(crate) mod gf2;
pub mod grid;
pub mod homology;
pub mod io;
pub mod library;
pub mod rng;
pub mod signature;
pub mod upsilon;

pub use complex::UComplex;
pub use error::Error;
pub use grid::{GridDiagram, GridState, LinkStructure, PlanarRealization};
pub use homology::GradedModule;
