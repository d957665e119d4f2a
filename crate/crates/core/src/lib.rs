//! Exact spectral characterization of small simple graphs.
//!
//! The crate computes adjacency, Laplacian and signless-Laplacian
//! characteristic polynomials with exact integer arithmetic, enumerates every
//! isomorphism class of a given order, groups those classes into cospectral
//! censuses, and checks determination claims for unions `G ∪ rK1 ∪ sK2` by
//! exhaustion.
//!
//! ```
//! use cospec::{char_poly, build_matrix, Graph, MatrixKind};
//!
//! let k3 = Graph::complete(3).unwrap();
//! let poly = char_poly(&build_matrix(&k3, MatrixKind::Q));
//! assert_eq!(poly.to_string(), "-4,9,-6,1");
//! ```

pub mod canon;
pub mod cospectral;
pub mod enumerate;
mod error;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod linalg;
pub mod roots;
pub mod theorems;

pub use canon::{canonical_code, canonical_form, CanonicalCode};

pub use cospectral::{
    determination_status, load_census, mates, save_census, Census, CensusStore,
    DeterminationStatus, SpectrumKey,
};
pub use enumerate::{enumerate, GraphFilter, WorkPartition};
pub use error::{Error, Result};
pub use graph::{
    complement, degree_stats, join, make_named, structure_class, union_with_isolates_and_matching,
    ComponentShape, DegreeStats, Family, Graph, StructureClass,
};
pub use graph6::{decode_graph6, encode_graph6};
pub use invariants::{summarize, LemmaCheckResult, Outcome, SpectralSummary};

pub use linalg::{
    build_matrix, char_poly, determinant, pseudo_det, spanning_tree_count, spectral_moments,
    zero_multiplicity, CharPoly, IntMatrix, MatrixKind,
};
pub use roots::largest_root;
pub use theorems::{run_theorem, verify_union_determined, Budget, TheoremId, TheoremReport};


/// Largest supported graph order.
#[cfg(not(feature = "wide"))]
pub const MAX_ORDER: usize = 16;
#[cfg(feature = "wide")]
pub const MAX_ORDER: usize = 32;

/// Neighbourhood bitset of a single vertex.
pub type Row = u32;
