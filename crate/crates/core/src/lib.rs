//! Tangles, branch decompositions and single-linkage clustering for
//! maximum-submodular connectivity functions on finite metric spaces.



pub mod cli;
pub mod clustering;
pub mod connectivity;
pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod instances;
pub mod io;


pub mod metric;
pub mod subset;
pub mod tangle;
pub mod union_find;

pub use error::{Error, Result};
pub use subset::Subset;
