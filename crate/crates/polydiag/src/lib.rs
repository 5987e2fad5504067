//! Exact cellular diagonals on permutahedra and associahedra.
//!
//! The permutahedron `P_n` has faces indexed by ordered partitions of
//! `{1..n}` and vertices indexed by permutations; the associahedron
//! `K_{n+1}` has faces indexed by planar rooted trees with `n+1` leaves.
//! Everything here is exact combinatorics — no floating point anywhere.
//!
//! The main pieces:
//!
//! * [`perm`], [`partition`] — permutations, the weak order via inversion
//!   sets, ordered set partitions, face order, degeneracy, mod-2 boundary.
//! * [`cube`] — the dyadic realization of `P_n` as a subdivision of the
//!   cube `I^{n-1}`, cubical vertices, subdivision-cube pairs at a vertex,
//!   and a brute-force geometric oracle for their unique maximal pair.
//! * [`pdiag`] — strong complementary pairs, step matrices, right-/left-
//!   shift actions, and the diagonal `Δ_P` they generate.
//! * [`tree`], [`kface`] — planar rooted trees, the Tonks projection,
//!   fibers of associahedral cells, and the Tamari order.
//! * [`kdiag`] — the two associahedron diagonals (`Δ_K` by shift
//!   enumeration through the Tonks projection and `Δ'_K` by matching-pair
//!   enumeration over the Tamari order), the constructive translation from
//!   matching pairs back to complementary pairs, and agreement
//!   certificates.
//! * [`chains`] — mod-2 chain-level checks (`∂∂ = 0` and the diagonal
//!   approximation identity `∂Δ = (∂⊗1 + 1⊗∂)Δ`).
//! * [`cache`] — a keyed JSON store so the command-line tool can reuse
//!   expensive enumerations.

pub mod cache;
pub mod chains;
pub mod cube;
pub mod kdiag;
pub mod kface;
pub mod partition;
pub mod pdiag;
pub mod perm;
pub mod tree;

pub use cube::{box_of_face, is_cubical_vertex, verify_tiling, DyBox, Dyadic, SubdivisionCubePair};
pub use kdiag::{
    delta_k_face, delta_k_magical, delta_k_su, lshift_path, mp_to_cp, rshift_path,
    verify_agreement, AgreementCertificate, MatchingPair,
};
pub use kface::{
    enumerate_faces_k, fiber, is_associahedral_vertex, tamari_leq, theta_vertex, tree_of, KFace,
};
pub use partition::{face_leq_p, faces, faces_with_dim, Block, OrderedPartition};
pub use pdiag::{
    delta_p_face, delta_p_top, enumerate_cps, left_shift, right_shift, scp, ComplementaryPair,
    DiagonalSet, Polytope, ShiftSequence, StepMatrix,
};
pub use perm::{weak_leq, InversionSet, Permutation};
pub use tree::Tree;

/// Version stamp carried by every serialized artifact (certificates,
/// cache entries, reports). Bump when the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: left has n={left}, right has n={right}")]
    SizeMismatch { left: u8, right: u8 },
    #[error("invalid notation: {0}")]
    Notation(String),
    #[error("dimension {dim} out of range for n={n}")]
    DimOutOfRange { n: u8, dim: u8 },
    #[error("rejected shift at position {position}: {reason}")]
    RejectedMove { position: u8, reason: String },
    #[error("not a matching pair: {0}")]
    NotMatchingPair(String),
    #[error("{0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
