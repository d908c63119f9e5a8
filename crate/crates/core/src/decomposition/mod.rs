//! Decompositions of a universe along ternary trees, their width, and the
//! duality between branch-width and tangles.

mod branch_width;
mod dot;
mod duality;
mod exactness;
mod pre;
mod tree;

pub use branch_width::{branch_width_exact, branch_width_exact_radius, BRANCH_WIDTH_CAP};
pub use dot::to_dot;
pub use duality::{
    construct_decomposition_over, verify_duality, DualityOutcome, DualityReport, SubsetFamily, CONSTRUCT_CAP,
};
pub use exactness::exactness_transform;
pub use pre::{
    from_atoms, validate_pre_decomposition, width, width_radius, BranchDecomposition, Decomposition,
    DecompositionReport, PreDecomposition,
};
pub use tree::TernaryTree;
