//! Exact lattice arithmetic for even integral lattices and Hodge-lattice
//! models, with replayable equivalence certificates.

pub mod certify;
pub mod cli;
pub mod error;
pub mod hodge;
pub mod isometry;
pub mod json;
pub mod k3;
pub mod lattice;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
