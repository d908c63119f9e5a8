//! Single-linkage hierarchical clustering, dendograms, ultrametrics and
//! their correspondence with tangles of the maximum linkage function.

mod dendogram;
mod equivalence;
pub mod remarks;
mod single_linkage;

pub use dendogram::{dendogram_evaluate, validate_dendogram, Dendogram, DendogramReport, Partition};
pub use equivalence::{
    block_tangle_correspondence, dendogram_from_kappa, dendogram_from_kappa_labelled, kappa_from_dendogram,
    separation_ultrametric, BlockLifetime, CorrespondenceReport, DendogramKappa, KAPPA_INVERSE_CAP,
    KAPPA_TABLE_CAP,
};
pub use single_linkage::{
    linkage_eval, minimax_ultrametric, psi, psi_inverse, single_linkage, single_linkage_with_tolerance,
    LinkageKind,
};
