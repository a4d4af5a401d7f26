//! Finite-group and modular-representation brute forces.
//!
//! Everything in this module is exhaustively verified at runtime:
//! groups carry full multiplication tables checked against the group
//! axioms, subgroup lattices are enumerated outright (orders ≤ 120),
//! and representation searches sweep all candidate generator images.
//! The searches parallelize with rayon when the `parallel` feature is
//! enabled; `_seq` twins force the sequential path so the two can be
//! compared.

pub mod group;
pub mod matrix;
pub mod modules;

pub use group::{
    group_preset, quotient_isomorphic, solvable_subgroup_caps, solvable_subgroup_caps_seq,
    FiniteGroup,
};
pub use matrix::{gl2_elements, FpMat};
pub use modules::{
    degree_partition, embeddings_in_gl2, embeddings_in_gl2_seq, fixed_space_dim,
    fixed_space_dim_seq, irreducible_reps, irreducible_reps_seq, sigma_splitting_check,
    EmbeddingReport, F2S3Module, FixedSpaceReport, IrreducibleRep, SigmaSplitting,
};
