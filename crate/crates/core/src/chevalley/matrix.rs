use std::fmt;

use super::ChevalleyBasis;
use crate::scalar::Ring;

/// Dense square matrix over a ring, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<C> {
    dim: usize,
    data: Vec<C>,
}

impl<C: fmt::Debug> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[C]> = self.data.chunks(self.dim.max(1)).collect();
        f.debug_struct("Matrix").field("rows", &rows).finish()
    }
}

impl<C: Ring> Matrix<C> {
    pub fn zero(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![C::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        (0..self.dim).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn map<D, F: Fn(&C) -> D>(&self, f: F) -> Matrix<D> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[i * n + j];
                    *cell = cell.add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    /// `self <- x_a(t) * self`.
    pub fn left_mul_root(&mut self, cb: &ChevalleyBasis, a: usize, t: &C) {
        if t.is_zero() {
            return;
        }
        let n = self.dim;
        let mut delta: Vec<Option<Vec<C>>> = vec![None; n];
        let mut tp = t.clone();
        for (k, power) in cb.ad_powers(a).iter().enumerate() {
            if k > 0 {
                tp = tp.mul_ref(t);
            }
            for &(r, c, v) in power {
                let coef = tp.mul_ref(&C::from_int(v));
                let src = &self.data[c * n..(c + 1) * n];
                let dst = delta[r].get_or_insert_with(|| vec![C::zero(); n]);
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d = d.add_ref(&coef.mul_ref(s));
                    }
                }
            }
        }
        for (r, d) in delta.into_iter().enumerate() {
            if let Some(d) = d {
                for (cell, x) in self.data[r * n..(r + 1) * n].iter_mut().zip(d) {
                    if !x.is_zero() {
                        *cell = cell.add_ref(&x);
                    }
                }
            }
        }
    }
}

/// `v <- x_a(t) v` for a column vector.
pub fn apply_root<C: Ring>(cb: &ChevalleyBasis, a: usize, t: &C, v: &mut [C]) {
    if t.is_zero() {
        return;
    }
    let mut delta: Vec<(usize, C)> = Vec::new();
    let mut tp = t.clone();
    for (k, power) in cb.ad_powers(a).iter().enumerate() {
        if k > 0 {
            tp = tp.mul_ref(t);
        }
        for &(r, c, val) in power {
            if v[c].is_zero() {
                continue;
            }
            delta.push((r, tp.mul_ref(&C::from_int(val)).mul_ref(&v[c])));
        }
    }
    for (r, d) in delta {
        v[r] = v[r].add_ref(&d);
    }
}

impl ChevalleyBasis {
    /// `x_a(t) = exp(t ad e_a)` as an exact matrix.
    pub fn root_element<C: Ring>(&self, a: usize, t: &C) -> Matrix<C> {
        let mut m = Matrix::identity(self.dim());
        m.left_mul_root(self, a, t);
        m
    }

    /// Product of a word of root elements, leftmost factor first.
    pub fn word_matrix<C: Ring>(&self, word: &[(usize, C)]) -> Matrix<C> {
        let mut m = Matrix::identity(self.dim());
        for (a, t) in word.iter().rev() {
            m.left_mul_root(self, *a, t);
        }
        m
    }

    /// The columns `g h_j` of a word's product, one vector per simple root.
    pub fn word_h_columns<C: Ring>(&self, word: &[(usize, C)]) -> Vec<Vec<C>> {
        (0..self.rank())
            .map(|j| {
                let mut v = vec![C::zero(); self.dim()];
                v[self.h_basis_index(j)] = C::one();
                for (a, t) in word.iter().rev() {
                    apply_root(self, *a, t, &mut v);
                }
                v
            })
            .collect()
    }
}
