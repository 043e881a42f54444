use std::collections::HashMap;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{inverse_word, RelError, SplitRealization};
use crate::polyring::{Monomial, VarRegistry};
use crate::rootcore::scale_coords;
use crate::{QPoly, Rational, Ring};

/// Commutator targets with the `(i, j)` exponents landing on each.
type Targets = Vec<(Vec<i32>, Vec<(u32, u32)>)>;

/// `N_{ABij}(u, v)` as polynomials in the coordinates of `u` and `v`.
#[derive(Debug, Clone)]
pub struct NMapEntry {
    pub i: u32,
    pub j: u32,
    /// Relative root `iA + jB`.
    pub target: Vec<i32>,
    /// One polynomial per fiber root of the target.
    pub coords: Vec<QPoly>,
}

/// The maps of the generalized commutator formula for one pair `(A, B)`.
///
/// Variables `u0, u1, ...` are the coordinates of `u` in `V_A`, `v0, ...`
/// those of `v` in `V_B`.
#[derive(Debug, Clone)]
pub struct NMapTable {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub registry: Arc<VarRegistry>,
    pub entries: Vec<NMapEntry>,
    /// Collected factors `X_C(w_C)` of the commutator in product order.
    pub factors: Vec<(Vec<i32>, Vec<QPoly>)>,
}

impl NMapTable {
    pub fn u_vars(&self) -> Vec<QPoly> {
        self.vars_with_prefix('u')
    }

    pub fn v_vars(&self) -> Vec<QPoly> {
        self.vars_with_prefix('v')
    }

    fn vars_with_prefix(&self, p: char) -> Vec<QPoly> {
        self.registry
            .names()
            .iter()
            .filter(|n| n.starts_with(p) && n[1..].parse::<usize>().is_ok())
            .map(|n| QPoly::var(&self.registry, n).expect("registered"))
            .collect()
    }

    pub fn entry(&self, i: u32, j: u32) -> Option<&NMapEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    /// Evaluate an entry at given `u`, `v`.
    pub fn evaluate(&self, e: &NMapEntry, u: &[QPoly], v: &[QPoly]) -> Result<Vec<QPoly>, RelError> {
        let mut bind = HashMap::new();
        for (k, x) in u.iter().enumerate() {
            bind.insert(self.var_index('u', k), x.clone());
        }
        for (k, x) in v.iter().enumerate() {
            bind.insert(self.var_index('v', k), x.clone());
        }
        e.coords
            .iter()
            .map(|p| {
                p.substitute(&bind)
                    .map_err(|err| RelError::Precondition(err.to_string()))
            })
            .collect()
    }

    fn var_index(&self, p: char, k: usize) -> usize {
        self.registry
            .index(&format!("{p}{k}"))
            .expect("coordinate variable")
    }

    /// Integer coefficient of the monomial `prod u_a^ea prod v_b^fb` in an entry coordinate.
    pub fn coefficient(&self, e: &NMapEntry, coord: usize, u_exps: &[(usize, u16)], v_exps: &[(usize, u16)]) -> i64 {
        let mut exps = vec![0u16; self.registry.len()];
        for &(k, x) in u_exps {
            exps[self.var_index('u', k)] += x;
        }
        for &(k, x) in v_exps {
            exps[self.var_index('v', k)] += x;
        }
        rational_to_i64(&e.coords[coord].coefficient(&Monomial::from_exponents(&exps)))
    }
}

impl SplitRealization {
    /// Recompose the grouped product and compare it with the commutator
    /// matrix entry by entry.
    pub fn verify_recomposition(&self, t: &NMapTable) -> Result<(), RelError> {
        let u = t.u_vars();
        let v = t.v_vars();
        let xa = self.x_word(&t.a, &u)?;
        let xb = self.x_word(&t.b, &v)?;
        let mut comm = xa.clone();
        comm.extend(xb.iter().cloned());
        comm.extend(inverse_word(&xa));
        comm.extend(inverse_word(&xb));
        let lhs = self.cb().word_matrix(&comm);
        let mut word = Vec::new();
        for (c, w) in &t.factors {
            word.extend(self.x_word(c, w)?);
        }
        if lhs != self.cb().word_matrix(&word) {
            return Err(RelError::Precondition(format!(
                "grouped product differs from [X_A(u), X_B(v)] for A={:?}, B={:?}",
                t.a, t.b
            )));
        }
        Ok(())
    }

    /// `N(lam u, mu v) = lam^i mu^j N(u, v)` for every entry.
    pub fn verify_homogeneity(&self, t: &NMapTable) -> Result<(), RelError> {
        let lam = QPoly::var(&t.registry, "lam").expect("registered");
        let mu = QPoly::var(&t.registry, "mu").expect("registered");
        let u: Vec<QPoly> = t.u_vars().iter().map(|x| lam.mul_ref(x)).collect();
        let v: Vec<QPoly> = t.v_vars().iter().map(|x| mu.mul_ref(x)).collect();
        for e in &t.entries {
            let scaled = t.evaluate(e, &u, &v)?;
            let factor = lam.pow(e.i).mul_ref(&mu.pow(e.j));
            for (s, p) in scaled.iter().zip(&e.coords) {
                if *s != factor.mul_ref(p) {
                    return Err(RelError::Precondition(format!(
                        "N_{{{},{}}} is not bihomogeneous",
                        e.i, e.j
                    )));
                }
            }
        }
        Ok(())
    }

    /// Each monomial on `e_gamma` multiplies coordinates whose roots sum to `gamma`.
    pub fn verify_fiber_grading(&self, t: &NMapTable) -> Result<(), RelError> {
        let rs = self.rrs().root_system();
        let mut var_roots: Vec<&[i32]> = Vec::new();
        for &r in self.fiber(&t.a)?.iter().chain(self.fiber(&t.b)?) {
            var_roots.push(&rs.root(r).coords);
        }
        for e in &t.entries {
            let fiber = self.fiber(&e.target)?;
            for (k, p) in e.coords.iter().enumerate() {
                let gamma = &rs.root(fiber[k]).coords;
                for (m, _) in p.terms() {
                    let mut sum = vec![0i32; rs.rank()];
                    for (var, x) in m.support() {
                        for (s, c) in sum.iter_mut().zip(var_roots[var]) {
                            *s += x as i32 * c;
                        }
                    }
                    if sum != *gamma {
                        return Err(RelError::Precondition(format!(
                            "monomial of weight {sum:?} on root {gamma:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn rational_to_i64(q: &Rational) -> i64 {
    assert!(q.is_integer(), "non-integral coefficient {q}");
    q.to_integer().to_i64().expect("coefficient fits in i64")
}

impl SplitRealization {
    /// Symbolic commutator `[X_A(u), X_B(v)]` collected into relative root
    /// factors, split by bidegree into the maps `N_{ABij}`.
    pub fn nmaps(&self, a: &[i32], b: &[i32]) -> Result<NMapTable, RelError> {
        let fa = self.fiber(a)?.to_vec();
        let fb = self.fiber(b)?.to_vec();
        if Self::opposite_collinear(a, b) {
            return Err(RelError::OppositeCollinear(a.to_vec(), b.to_vec()));
        }
        let mut names: Vec<String> = (0..fa.len()).map(|k| format!("u{k}")).collect();
        names.extend((0..fb.len()).map(|k| format!("v{k}")));
        names.extend(["lam".to_string(), "mu".to_string()]);
        let reg = VarRegistry::new(names).map_err(|e| RelError::Precondition(e.to_string()))?;
        let u: Vec<QPoly> = (0..fa.len())
            .map(|k| QPoly::var(&reg, &format!("u{k}")).expect("registered"))
            .collect();
        let v: Vec<QPoly> = (0..fb.len())
            .map(|k| QPoly::var(&reg, &format!("v{k}")).expect("registered"))
            .collect();

        let targets = self.commutator_targets(a, b);
        let order: Vec<usize> = targets
            .iter()
            .flat_map(|(c, _)| self.fiber(c).expect("target").iter().copied())
            .collect();

        let xa = self.x_word(a, &u)?;
        let xb = self.x_word(b, &v)?;
        let mut word = xa.clone();
        word.extend(xb.iter().cloned());
        word.extend(inverse_word(&xa));
        word.extend(inverse_word(&xb));
        let coeffs = self.cb().collect_with_order(&word, &order)?;

        let mut factors = Vec::new();
        let mut entries = Vec::new();
        let mut pos = 0;
        let nu = fa.len();
        for (c, ijs) in &targets {
            let n = self.fiber(c)?.len();
            let w: Vec<QPoly> = coeffs[pos..pos + n].to_vec();
            pos += n;
            for &(i, j) in ijs {
                let coords: Vec<QPoly> = w
                    .iter()
                    .map(|p| bidegree_part(&reg, p, nu, i, j))
                    .collect();
                entries.push(NMapEntry {
                    i,
                    j,
                    target: c.clone(),
                    coords,
                });
            }
            // every term must be accounted for by some bidegree
            for (k, p) in w.iter().enumerate() {
                let mut sum = QPoly::zero();
                for e in entries.iter().filter(|e| e.target == *c) {
                    sum = sum.add_ref(&e.coords[k]);
                }
                if sum != *p {
                    return Err(RelError::Precondition(format!(
                        "factor on {c:?} is not a sum of bihomogeneous parts"
                    )));
                }
            }
            factors.push((c.clone(), w));
        }
        entries.retain(|e| e.coords.iter().any(|p| !p.is_zero()));
        Ok(NMapTable {
            a: a.to_vec(),
            b: b.to_vec(),
            registry: reg,
            entries,
            factors,
        })
    }

    /// Relative roots `C = iA + jB` (`i, j > 0`) with their `(i, j)`, in the
    /// collection order: by grading (`i + j`, or the multiple of the
    /// primitive root when `A, B` are collinear), then `i`, then coordinates.
    fn commutator_targets(&self, a: &[i32], b: &[i32]) -> Targets {
        let collinear = (0..a.len()).all(|p| (0..a.len()).all(|q| a[p] * b[q] == a[q] * b[p]));
        let mut found: Targets = Vec::new();
        for i in 1..=6u32 {
            for j in 1..=6u32 {
                let c: Vec<i32> = scale_coords(i as i32, a)
                    .iter()
                    .zip(scale_coords(j as i32, b))
                    .map(|(x, y)| x + y)
                    .collect();
                if !self.rrs().contains(&c) {
                    continue;
                }
                match found.iter_mut().find(|(x, _)| *x == c) {
                    Some((_, ijs)) => ijs.push((i, j)),
                    None => found.push((c, vec![(i, j)])),
                }
            }
        }
        let grade = |c: &[i32], ij: (u32, u32)| -> i32 {
            if collinear {
                let g = c.iter().fold(0i32, |acc, &x| gcd(acc, x.abs()));
                g
            } else {
                (ij.0 + ij.1) as i32
            }
        };
        found.sort_by(|(c1, ij1), (c2, ij2)| {
            (grade(c1, ij1[0]), ij1[0].0, c1).cmp(&(grade(c2, ij2[0]), ij2[0].0, c2))
        });
        found
    }
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Terms of `p` of degree `i` in the first `nu` variables and `j` in the rest.
fn bidegree_part(reg: &Arc<VarRegistry>, p: &QPoly, nu: usize, i: u32, j: u32) -> QPoly {
    let terms = p.terms().filter(|(m, _)| {
        let (mut du, mut dv) = (0u32, 0u32);
        for (var, e) in m.support() {
            if var < nu {
                du += e as u32;
            } else {
                dv += e as u32;
            }
        }
        (du, dv) == (i, j)
    });
    QPoly::from_terms(reg, terms.map(|(m, c)| (m.clone(), c.clone())), 0).expect("same registry")
}
