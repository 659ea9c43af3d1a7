//! Symmetry breaking in tournaments.
//!
//! This crate builds tournaments (including the recursive family `H_k`),
//! searches for automorphisms that preserve vertex or arc labelings, and
//! computes exact minimum sizes of distinguishing vertex classes,
//! distinguishing arc classes and determining sets by exhaustive search.
//! The `construct` module provides the explicit arc-labeling constructions,
//! each of which is verified before it is returned.

pub mod certificate;
pub mod construct;
pub mod format;
pub mod labeling;
pub mod perm;
pub mod search;
pub mod symmetry;
pub mod tournament;

pub use certificate::Certificate;
pub use construct::{
    construct_determining_arc_labeling, construct_hk_arc_labeling, ConstructionError, PipelineTrace,
};
pub use labeling::{ArcLabeling, Color, Verdict, VertexLabeling};
pub use perm::Permutation;
pub use search::{Exhaustion, Minimum, Quantity, SearchBudget, SearchError};

pub use symmetry::{find_automorphism, is_automorphism, SearchConstraints, SymmetryError};
pub use tournament::{HkIndex, Tournament, TournamentError};

/// `floor(n / 2)`: the vertex-class bound.
pub fn rho_bound(n: usize) -> usize {
    n / 2
}

/// `floor(n / 3)`: the determining-set bound.
pub fn det_bound(n: usize) -> usize {
    n / 3
}

/// `floor(7n / 36) + 3`: the arc-class bound.
pub fn rho_prime_bound(n: usize) -> usize {
    7 * n / 36 + 3
}
