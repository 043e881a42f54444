//! Chevalley basis, adjoint root elements and commutator collection.

mod basis;
mod collect;
mod matrix;

pub use basis::{ChevalleyBasis, SparseInt};
pub use collect::CommutatorTerm;
pub use matrix::{apply_root, Matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("structure constants are inconsistent: {0}")]
    Inconsistent(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("word mixes positive and negative roots")]
    MixedSigns,
    #[error("element does not factor over the requested roots")]
    NotInSubgroup,
    #[error("cannot divide by the pairing {0} in this ring")]
    NonUnitPairing(i64),
    #[error("commutator of opposite roots")]
    Collinear,
}

#[cfg(test)]
mod tests;
