use serde::Serialize;

use super::{apply_root, ChevalleyBasis, ChevalleyError};
use crate::polyring::VarRegistry;
use crate::rootcore::{add_coords, scale_coords};
use crate::scalar::Ring;
use crate::QPoly;

/// One factor `x_{i a + j b}(C s^i t^j)` of a Chevalley commutator formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub constant: i64,
}

impl ChevalleyBasis {
    /// Simple root index `j` used to read off the coefficient of `x_g`,
    /// together with `<g, alpha_j^vee>`. Pairings of absolute value 1 are
    /// preferred so the read-off stays integral.
    fn reading_pairing(&self, g: usize) -> (usize, i64) {
        let rs = self.root_system();
        let coords = &rs.root(g).coords;
        (0..self.rank())
            .map(|j| (j, rs.pairing(coords, &rs.simple_root(j))))
            .filter(|(_, p)| *p != 0)
            .min_by_key(|(j, p)| (p.abs(), *j))
            .expect("a root pairs nontrivially with some simple coroot")
    }

    /// Factor the element whose `h`-columns are `cols` as `prod x_g(t_g)`
    /// over `order` (leftmost first).
    ///
    /// `order` must list a closed set of roots in an order refining an
    /// additive grading that is positive on the set; the element must lie in
    /// the corresponding unipotent subgroup.
    pub fn collect_h_columns<C: Ring>(
        &self,
        mut cols: Vec<Vec<C>>,
        order: &[usize],
    ) -> Result<Vec<C>, ChevalleyError> {
        let mut out = Vec::with_capacity(order.len());
        for &g in order {
            let (j, pr) = self.reading_pairing(g);
            let entry = &cols[j][self.root_basis_index(g)];
            let t = entry
                .div_int(-pr)
                .ok_or(ChevalleyError::NonUnitPairing(pr))?;
            if !t.is_zero() {
                let minus = -t.clone();
                for col in cols.iter_mut() {
                    apply_root(self, g, &minus, col);
                }
            }
            out.push(t);
        }
        for (j, col) in cols.iter().enumerate() {
            let h = self.h_basis_index(j);
            for (r, x) in col.iter().enumerate() {
                let ok = if r == h { *x == C::one() } else { x.is_zero() };
                if !ok {
                    return Err(ChevalleyError::NotInSubgroup);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients of a word's product over `order`.
    pub fn collect_with_order<C: Ring>(
        &self,
        word: &[(usize, C)],
        order: &[usize],
    ) -> Result<Vec<C>, ChevalleyError> {
        self.collect_h_columns(self.word_h_columns(word), order)
    }

    /// Normal form of a word in the positive (or negative) unipotent
    /// subgroup, eliminating roots by increasing height. Only nonzero
    /// coefficients are returned.
    pub fn collect_to_normal_form<C: Ring>(
        &self,
        word: &[(usize, C)],
    ) -> Result<Vec<(usize, C)>, ChevalleyError> {
        let rs = self.root_system();
        let npos = rs.num_positive();
        let positive = word.iter().all(|(a, _)| *a < npos);
        let negative = word.iter().all(|(a, _)| *a >= npos);
        if !positive && !negative {
            return Err(ChevalleyError::MixedSigns);
        }
        let order: Vec<usize> = if positive {
            (0..npos).collect()
        } else {
            (npos..2 * npos).collect()
        };
        let coeffs = self.collect_with_order(word, &order)?;
        Ok(order
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// The word of `[x_a(s), x_b(t)] = x_a(s) x_b(t) x_a(-s) x_b(-t)`.
    pub fn commutator_word<C: Ring>(&self, a: usize, s: &C, b: usize, t: &C) -> Vec<(usize, C)> {
        vec![
            (a, s.clone()),
            (b, t.clone()),
            (a, -s.clone()),
            (b, -t.clone()),
        ]
    }

    /// Roots `i a + j b` with `i, j > 0`, sorted by `(i + j, i)`.
    pub fn commutator_roots(&self, a: usize, b: usize) -> Vec<(u32, u32, usize)> {
        let rs = self.root_system();
        let ca = &rs.root(a).coords;
        let cb = &rs.root(b).coords;
        let mut out = Vec::new();
        for i in 1..=3u32 {
            for j in 1..=3u32 {
                let c = add_coords(&scale_coords(i as i32, ca), &scale_coords(j as i32, cb));
                if let Some(r) = rs.index_of(&c) {
                    out.push((i, j, r));
                }
            }
        }
        out.sort_by_key(|&(i, j, _)| (i + j, i));
        out
    }

    /// Constants `C_ij` of `[x_a(s), x_b(t)] = prod x_{ia+jb}(C_ij s^i t^j)`.
    ///
    /// Computed by collecting the commutator at two integer points; the
    /// monomial shape is confirmed by agreement of both evaluations.
    pub fn commutator_constants(
        &self,
        a: usize,
        b: usize,
    ) -> Result<Vec<CommutatorTerm>, ChevalleyError> {
        let rs = self.root_system();
        if rs.negative_index(a) == b {
            return Err(ChevalleyError::Collinear);
        }
        let roots = self.commutator_roots(a, b);
        if roots.is_empty() {
            return Ok(Vec::new());
        }
        let order: Vec<usize> = roots.iter().map(|r| r.2).collect();
        let mut consts: Option<Vec<i64>> = None;
        for (s, t) in [(2i64, 3i64), (-3, 5)] {
            let word = self.commutator_word(a, &s, b, &t);
            let coeffs = self.collect_with_order(&word, &order)?;
            let these: Vec<i64> = roots
                .iter()
                .zip(&coeffs)
                .map(|(&(i, j, _), &c)| {
                    let m = s.pow(i) * t.pow(j);
                    if c % m == 0 {
                        Ok(c / m)
                    } else {
                        Err(ChevalleyError::Inconsistent(format!(
                            "commutator coefficient {c} is not a multiple of s^{i} t^{j}"
                        )))
                    }
                })
                .collect::<Result<_, _>>()?;
            if let Some(prev) = &consts {
                if *prev != these {
                    return Err(ChevalleyError::Inconsistent(
                        "commutator coefficients are not monomial".into(),
                    ));
                }
            }
            consts = Some(these);
        }
        Ok(roots
            .into_iter()
            .zip(consts.unwrap_or_default())
            .filter(|(_, c)| *c != 0)
            .map(|((i, j, root), constant)| CommutatorTerm {
                i,
                j,
                root,
                constant,
            })
            .collect())
    }

    /// Full symbolic matrix check of a commutator row in `Q[s, t]`.
    pub fn verify_commutator_row(&self, a: usize, b: usize, row: &[CommutatorTerm]) -> bool {
        let reg = VarRegistry::new(["s", "t"]).expect("distinct names");
        let s = QPoly::var(&reg, "s").expect("registered");
        let t = QPoly::var(&reg, "t").expect("registered");
        let lhs = self.word_matrix(&self.commutator_word(a, &s, b, &t));
        let rhs_word: Vec<(usize, QPoly)> = row
            .iter()
            .map(|term| {
                let c = &(&s.pow(term.i) * &t.pow(term.j)) * &QPoly::from_int(term.constant);
                (term.root, c)
            })
            .collect();
        lhs == self.word_matrix(&rhs_word)
    }
}
