//! Machine verification of the decomposition lemma over whole catalogs and of
//! the explicit commutator identities used for the rank-two cases.
//!
//! Every passing case carries a witness (signs, decompositions or factor
//! lists) that has been re-checked by plain matrix arithmetic.

mod identities;
mod lemma1;
mod lemma2;
mod schemas;

pub use identities::{verify_c2_identities, verify_g2_identities, EpsBinding};
pub use lemma1::{verify_lemma1_catalog, verify_lemma1_spec};
pub use lemma2::{verify_lemma2, verify_lemma3};
pub use schemas::{verify_case_schemas, Schema};

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::polyring::VarRegistry;
use crate::relcalc::{inverse_word, RelError, SplitRealization};
use crate::{QPoly, Rational, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified statement with its parameters and witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCase {
    pub id: String,
    pub spec: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witness: Value,
}

impl VerificationCase {
    pub fn new(id: impl Into<String>, spec: impl Into<String>) -> Self {
        VerificationCase {
            id: id.into(),
            spec: spec.into(),
            params: BTreeMap::new(),
            status: Status::Skipped,
            witness: Value::Null,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn finish(mut self, result: Result<Value, String>) -> Self {
        match result {
            Ok(w) => {
                self.status = Status::Pass;
                self.witness = w;
            }
            Err(e) => {
                self.status = Status::Fail;
                self.witness = Value::String(e);
            }
        }
        self
    }
}

/// Sign flips on the named slots of an identity, `+1` or `-1` each.
pub type SignAssignment = BTreeMap<String, i64>;

/// First assignment (in binary counting order, all `+1` first) accepted by `ok`.
pub fn search_signs<F>(slots: &[&str], mut ok: F) -> Option<SignAssignment>
where
    F: FnMut(&[i64]) -> bool,
{
    assert!(slots.len() <= 6, "sign search space is bounded by 2^6");
    for mask in 0u32..(1 << slots.len()) {
        let signs: Vec<i64> = (0..slots.len())
            .map(|i| if mask & (1 << i) == 0 { 1 } else { -1 })
            .collect();
        if ok(&signs) {
            return Some(
                slots
                    .iter()
                    .zip(&signs)
                    .map(|(s, &x)| (s.to_string(), x))
                    .collect(),
            );
        }
    }
    None
}

/// A split realization with polynomial variables `Z`, `v0..`, `eps`.
pub(crate) struct Workbench {
    pub sr: SplitRealization,
    pub reg: Arc<VarRegistry>,
}

impl Workbench {
    pub fn new(spec: &str, extra: &[String]) -> Result<Self, RelError> {
        let sr = SplitRealization::parse(spec)?;
        let mut names = vec!["Z".to_string(), "eps".to_string()];
        names.extend(extra.iter().cloned());
        let reg = VarRegistry::new(names).map_err(|e| RelError::Precondition(e.to_string()))?;
        Ok(Workbench { sr, reg })
    }

    pub fn var(&self, name: &str) -> QPoly {
        QPoly::var(&self.reg, name).expect("registered variable")
    }

    pub fn z_pow(&self, k: u32) -> QPoly {
        self.var("Z").pow(k)
    }

    /// `X_A(w)` as a word.
    pub fn x(&self, a: &[i32], w: &[QPoly]) -> Vec<(usize, QPoly)> {
        self.sr.x_word(a, w).expect("relative root with matching fiber")
    }

    /// `X_A(w)` for a one-element fiber.
    pub fn x1(&self, a: &[i32], w: QPoly) -> Vec<(usize, QPoly)> {
        self.x(a, &[w])
    }

    pub fn same(&self, lhs: &[(usize, QPoly)], rhs: &[(usize, QPoly)]) -> bool {
        let cb = self.sr.cb();
        cb.word_matrix(lhs) == cb.word_matrix(rhs)
    }
}

/// `g h g^-1 h^-1` for words.
pub fn commutator(g: &[(usize, QPoly)], h: &[(usize, QPoly)]) -> Vec<(usize, QPoly)> {
    let mut w = g.to_vec();
    w.extend(h.iter().cloned());
    w.extend(inverse_word(g));
    w.extend(inverse_word(h));
    w
}

pub(crate) fn int(n: i64) -> QPoly {
    QPoly::from_int(n)
}

pub(crate) fn scaled(p: &QPoly, c: i64) -> QPoly {
    p.scale(&Rational::from_int(c))
}

pub(crate) fn poly_strings(ps: &[QPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub(crate) fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    a.mul_ref(b)
}
