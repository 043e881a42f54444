//! Exact toolkit for relative root systems of isotropic reductive groups.
//!
//! The crate builds irreducible root systems, folds them by diagram
//! automorphisms and Levi subsets into relative root systems, realizes the
//! Chevalley group in its adjoint representation over exact polynomial rings,
//! and verifies commutator identities and spanning statements by exact matrix
//! arithmetic. A small finite-group lab enumerates elementary groups over
//! prime fields.
//!
//! All algebra is generic over the coefficient type ([`scalar::Scalar`]);
//! the aliases below fix the types used by the verification suites.

pub mod scalar;
pub mod polyring;
pub mod rootcore;
pub mod chevalley;
pub mod folding;
pub mod relcalc;
pub mod theoremlab;
pub mod finitelab;

pub use scalar::{Ring, Scalar};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// Localized polynomials over the rationals, the ring all identities live in.
pub type QPoly = polyring::Poly<Rational>;
