//! Relative root subschemes in the split realization and the generalized
//! commutator maps `N_{ABij}`.
//!
//! `V_A` is the free module on the fiber of `A`, and `X_A(v)` is the product
//! of `x_alpha(v_alpha)` over the fiber in lexicographic coordinate order.

mod lemmas;
pub mod linalg;
mod nmaps;

pub use lemmas::{
    check_spanning_lemma3, Lemma3Case, Lemma3Report, N11Case, N11Report, N11Witness, SpanReport,
    SpanningReport, SumFormulaReport,
};
pub use nmaps::{NMapEntry, NMapTable};

use thiserror::Error;

use crate::chevalley::{ChevalleyBasis, ChevalleyError, Matrix};
use crate::folding::{FoldingError, FoldingSpec, RelativeRootSystem};
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error(transparent)]
    Folding(#[from] FoldingError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error("only the split realization (trivial Gamma) is implemented")]
    NonSplit,
    #[error("{0:?} is not a relative root")]
    NotARelativeRoot(Vec<i32>),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("relative roots {0:?} and {1:?} are opposite multiples")]
    OppositeCollinear(Vec<i32>, Vec<i32>),
    #[error("case hypothesis does not hold: {0}")]
    CaseNotApplicable(String),
    #[error("no unit-coefficient witness for root {0:?}")]
    NoUnitWitness(Vec<i32>),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// An element `v` of `V_A`, coordinates aligned with the fiber of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelElement<C> {
    pub root: Vec<i32>,
    pub coords: Vec<C>,
}

/// A relative root system together with the Chevalley basis of its
/// absolute system.
#[derive(Debug, Clone)]
pub struct SplitRealization {
    rrs: RelativeRootSystem,
    cb: ChevalleyBasis,
}

impl SplitRealization {
    pub fn new(spec: FoldingSpec) -> Result<Self, RelError> {
        if !spec.is_split() {
            return Err(RelError::NonSplit);
        }
        let rrs = RelativeRootSystem::new(spec);
        let cb = ChevalleyBasis::new(rrs.root_system().clone())?;
        Ok(SplitRealization { rrs, cb })
    }

    /// Parse a folding spec and build its realization.
    pub fn parse(spec: &str) -> Result<Self, RelError> {
        Self::new(spec.parse()?)
    }

    pub fn rrs(&self) -> &RelativeRootSystem {
        &self.rrs
    }

    pub fn cb(&self) -> &ChevalleyBasis {
        &self.cb
    }

    pub fn fiber(&self, a: &[i32]) -> Result<&[usize], RelError> {
        self.rrs
            .fiber_of(a)
            .ok_or_else(|| RelError::NotARelativeRoot(a.to_vec()))
    }

    /// The word of `X_A(v)`.
    pub fn x_word<C: Ring>(&self, a: &[i32], coords: &[C]) -> Result<Vec<(usize, C)>, RelError> {
        let fiber = self.fiber(a)?;
        if fiber.len() != coords.len() {
            return Err(RelError::WrongLength {
                expected: fiber.len(),
                got: coords.len(),
            });
        }
        Ok(fiber.iter().copied().zip(coords.iter().cloned()).collect())
    }

    /// `X_A(v)` as a matrix in the adjoint representation.
    pub fn embed<C: Ring>(&self, e: &RelElement<C>) -> Result<Matrix<C>, RelError> {
        Ok(self.cb.word_matrix(&self.x_word(&e.root, &e.coords)?))
    }

    /// True when `m a = -k b` for some positive `m, k`.
    pub fn opposite_collinear(a: &[i32], b: &[i32]) -> bool {
        let collinear = (0..a.len()).all(|p| (0..a.len()).all(|q| a[p] * b[q] == a[q] * b[p]));
        let dot: i32 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        collinear && dot < 0
    }

    /// Ordered pairs `(A, B)` of relative roots with `mA != -kB`.
    pub fn valid_pairs(&self) -> Vec<(Vec<i32>, Vec<i32>)> {
        let roots = self.rrs.roots();
        let mut out = Vec::new();
        for a in roots {
            for b in roots {
                if !Self::opposite_collinear(a, b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }
}

/// Inverse of a word of root elements.
pub fn inverse_word<C: Ring>(word: &[(usize, C)]) -> Vec<(usize, C)> {
    word.iter().rev().map(|(a, t)| (*a, -t.clone())).collect()
}

#[cfg(test)]
mod tests;
