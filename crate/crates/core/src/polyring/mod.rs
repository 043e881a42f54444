//! Exact coefficient arithmetic: localized multivariate polynomials and prime
//! fields.

mod fp;
mod poly;

pub use fp::{is_prime, Fp};
pub use poly::{Monomial, Poly, VarRegistry};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different variable registries")]
    RegistryMismatch,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("too many variables ({0})")]
    TooManyVariables(usize),
    #[error("localization requires a variable named `eps` in the registry")]
    MissingEpsilon,
    #[error("eps bound to {0}, which makes eps^2 - eps zero")]
    SingularEpsilon(String),
    #[error("eps must be bound to a constant when a denominator is present")]
    NonScalarEpsilon,
}

#[cfg(test)]
mod tests;
