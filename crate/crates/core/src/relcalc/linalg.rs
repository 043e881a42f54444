//! Rank and span over an exact field.

use num_traits::ToPrimitive;

use crate::{Rational, Scalar};

/// A row echelon basis that grows one vector at a time.
#[derive(Debug, Clone)]
pub struct Echelon<C> {
    dim: usize,
    /// `(pivot column, row)` with the row normalized to 1 at the pivot.
    rows: Vec<(usize, Vec<C>)>,
}

impl<C: Scalar> Echelon<C> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Add a vector; true when it was independent of the current span.
    pub fn insert(&mut self, v: &[C]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.mul_ref(r);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank<C: Scalar>(dim: usize, vectors: &[Vec<C>]) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Image of a rational with small numerator and denominator in the field `C`,
/// `None` when the denominator vanishes there.
pub fn reduce<C: Scalar>(q: &Rational) -> Option<C> {
    let n = q.numer().to_i64().expect("numerator fits in i64");
    let d = q.denom().to_i64().expect("denominator fits in i64");
    let d = C::from_int(d).inverse()?;
    Some(C::from_int(n).mul_ref(&d))
}

pub fn reduce_vec<C: Scalar>(v: &[Rational]) -> Option<Vec<C>> {
    v.iter().map(reduce).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Fp;
    use crate::Ring;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // rows of [[1,1],[1,-1]] have determinant -2
        let rows = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(rank(2, &rows), 2);
        let f2: Vec<Vec<Fp<2>>> = rows.iter().map(|r| reduce_vec(r).unwrap()).collect();
        assert_eq!(rank(2, &f2), 1);
        let f3: Vec<Vec<Fp<3>>> = rows.iter().map(|r| reduce_vec(r).unwrap()).collect();
        assert_eq!(rank(2, &f3), 2);
    }

    #[test]
    fn zero_and_dependent_vectors() {
        let mut e = Echelon::<Rational>::new(3);
        assert!(!e.insert(&[q(0), q(0), q(0)]));
        assert!(e.insert(&[q(1), q(2), q(3)]));
        assert!(!e.insert(&[q(2), q(4), q(6)]));
        assert!(e.insert(&[q(0), q(0), q(1)]));
        assert_eq!(e.rank(), 2);
        assert!(!e.is_full());
    }
}
