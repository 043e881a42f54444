use std::collections::HashMap;

use num_rational::Ratio;

use super::ChevalleyError;
use crate::rootcore::{add_coords, RootSystem};

/// Sparse integer matrix stored as `(row, col, value)` triples.
pub type SparseInt = Vec<(usize, usize, i64)>;

/// Chevalley basis of the simple Lie algebra of a root system.
///
/// Basis order: positive roots (in [`RootSystem::roots`] order), then
/// `h_1..h_l`, then negative roots. Signs of the structure constants are
/// fixed by declaring `N = +(p+1)` on extraspecial pairs, where pairs are
/// ordered by root index.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    /// `n[a * |Phi| + b] = N_{a,b}` for root indices `a, b` (0 when `a+b` is not a root).
    n: Vec<i64>,
    /// `(M, M^2/2, M^3/6)` of `ad e_a` for every root index `a`, nonzero powers only.
    ad_powers: Vec<Vec<SparseInt>>,
}

impl ChevalleyBasis {
    pub fn new(rs: RootSystem) -> Result<Self, ChevalleyError> {
        let n = structure_constants(&rs)?;
        let mut cb = ChevalleyBasis {
            rs,
            n,
            ad_powers: Vec::new(),
        };
        cb.check_magnitudes()?;
        cb.check_jacobi()?;
        cb.ad_powers = (0..cb.rs.len()).map(|a| cb.build_powers(a)).collect();
        Ok(cb)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Dimension of the Lie algebra, `|Phi| + rank`.
    pub fn dim(&self) -> usize {
        self.rs.len() + self.rs.rank()
    }

    /// Basis position of `e_a` for root index `a`.
    pub fn root_basis_index(&self, a: usize) -> usize {
        if a < self.rs.num_positive() {
            a
        } else {
            a + self.rs.rank()
        }
    }

    /// Basis position of `h_i` (0-based simple root index).
    pub fn h_basis_index(&self, i: usize) -> usize {
        self.rs.num_positive() + i
    }

    /// Structure constant `N_{a,b}` for root indices.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.rs.len() + b]
    }

    /// `N_{a,b}` for coordinate vectors.
    pub fn n_coords(&self, a: &[i32], b: &[i32]) -> Result<i64, ChevalleyError> {
        let ia = self.root_index(a)?;
        let ib = self.root_index(b)?;
        Ok(self.n(ia, ib))
    }

    pub fn root_index(&self, coords: &[i32]) -> Result<usize, ChevalleyError> {
        self.rs
            .index_of(coords)
            .ok_or_else(|| ChevalleyError::NotARoot(coords.to_vec()))
    }

    /// Bracket of two basis vectors as a sparse combination of basis vectors.
    pub fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let p = self.rs.num_positive();
        let l = self.rs.rank();
        let as_root = |b: usize| -> Option<usize> {
            if b < p {
                Some(b)
            } else if b < p + l {
                None
            } else {
                Some(b - l)
            }
        };
        match (as_root(x), as_root(y)) {
            (None, None) => Vec::new(),
            (None, Some(b)) => {
                let i = x - p;
                let c = self.rs.pairing(&self.rs.root(b).coords, &self.rs.simple_root(i));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, c)]
                }
            }
            (Some(_), None) => self
                .bracket(y, x)
                .into_iter()
                .map(|(k, v)| (k, -v))
                .collect(),
            (Some(a), Some(b)) => {
                if self.rs.negative_index(a) == b {
                    let coroot = self.rs.coroot_coords(&self.rs.root(a).coords);
                    coroot
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (p + i, c))
                        .collect()
                } else {
                    let nab = self.n(a, b);
                    if nab == 0 {
                        Vec::new()
                    } else {
                        let s = add_coords(&self.rs.root(a).coords, &self.rs.root(b).coords);
                        let ic = self.rs.index_of(&s).expect("nonzero N on a non-root sum");
                        vec![(self.root_basis_index(ic), nab)]
                    }
                }
            }
        }
    }

    /// Nonzero powers `M^k / k!` of `ad e_a`, starting at `k = 1`.
    pub fn ad_powers(&self, a: usize) -> &[SparseInt] {
        &self.ad_powers[a]
    }

    fn build_powers(&self, a: usize) -> Vec<SparseInt> {
        let dim = self.dim();
        let ea = self.root_basis_index(a);
        // column-wise: image of basis vector c under ad e_a
        let mut m: Vec<Vec<(usize, i64)>> = (0..dim).map(|c| self.bracket(ea, c)).collect();
        let mut out = Vec::new();
        let first: Vec<Vec<(usize, i64)>> = m.clone();
        let mut k = 1i64;
        while m.iter().any(|col| !col.is_empty()) {
            let triples: SparseInt = m
                .iter()
                .enumerate()
                .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
                .collect();
            out.push(triples);
            k += 1;
            // next = first * m / k
            let mut next = Vec::with_capacity(dim);
            for col in &m {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(r, v) in col {
                    for &(r2, v2) in &first[r] {
                        *acc.entry(r2).or_insert(0) += v * v2;
                    }
                }
                let mut entries: Vec<(usize, i64)> = acc
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(r, v)| {
                        assert_eq!(v % k, 0, "divided power of ad e is not integral");
                        (r, v / k)
                    })
                    .collect();
                entries.sort_unstable();
                next.push(entries);
            }
            m = next;
        }
        out
    }

    fn check_magnitudes(&self) -> Result<(), ChevalleyError> {
        let len = self.rs.len();
        for a in 0..len {
            for b in 0..len {
                let ca = &self.rs.root(a).coords;
                let cb = &self.rs.root(b).coords;
                if self.rs.negative_index(a) == b || a == b {
                    if self.n(a, b) != 0 {
                        return Err(ChevalleyError::Inconsistent(format!(
                            "nonzero N on {ca:?}, {cb:?}"
                        )));
                    }
                    continue;
                }
                let nab = self.n(a, b);
                if nab != -self.n(b, a) {
                    return Err(ChevalleyError::Inconsistent(format!(
                        "antisymmetry fails on {ca:?}, {cb:?}"
                    )));
                }
                let expected = if self.rs.sum_is_root(ca, cb) {
                    let (p, _) = self.rs.root_string(ca, cb).expect("roots");
                    p as i64 + 1
                } else {
                    0
                };
                if nab.abs() != expected {
                    return Err(ChevalleyError::Inconsistent(format!(
                        "|N| = {} on {ca:?}, {cb:?}, expected {expected}",
                        nab.abs()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on every triple of basis vectors.
    fn check_jacobi(&self) -> Result<(), ChevalleyError> {
        let dim = self.dim();
        let table: Vec<Vec<Vec<(usize, i64)>>> = (0..dim)
            .map(|x| (0..dim).map(|y| self.bracket(x, y)).collect())
            .collect();
        let mut acc = vec![0i64; dim];
        let mut touched = Vec::new();
        for x in 0..dim {
            for y in x + 1..dim {
                for z in y + 1..dim {
                    for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                        for &(k, c) in &table[v][w] {
                            for &(r, d) in &table[u][k] {
                                if acc[r] == 0 {
                                    touched.push(r);
                                }
                                acc[r] += c * d;
                            }
                        }
                    }
                    let bad = touched.iter().any(|&r| acc[r] != 0);
                    for &r in &touched {
                        acc[r] = 0;
                    }
                    touched.clear();
                    if bad {
                        return Err(ChevalleyError::Inconsistent(format!(
                            "Jacobi identity fails on basis triple ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Signed structure constants by the extraspecial-pair recursion.
fn structure_constants(rs: &RootSystem) -> Result<Vec<i64>, ChevalleyError> {
    let len = rs.len();
    let npos = rs.num_positive();
    let mut pos: HashMap<(usize, usize), i64> = HashMap::new();
    let sq = |i: usize| rs.inner_product(&rs.root(i).coords, &rs.root(i).coords);

    for xi in 0..npos {
        let cxi = &rs.root(xi).coords;
        let mut special = Vec::new();
        for a in 0..npos {
            let rest: Vec<i32> = cxi.iter().zip(&rs.root(a).coords).map(|(x, y)| x - y).collect();
            if let Some(b) = rs.index_of(&rest) {
                if b < npos && a < b {
                    special.push((a, b));
                }
            }
        }
        let Some(&(a, b)) = special.first() else {
            continue;
        };
        let (p, _) = rs
            .root_string(&rs.root(a).coords, &rs.root(b).coords)
            .expect("roots");
        let nab = p as i64 + 1;
        pos.insert((a, b), nab);
        for &(g, d) in &special[1..] {
            let na = rs.negative_index(a);
            let nb = rs.negative_index(b);
            let mut total = Ratio::from_integer(0i64);
            let dma = add_coords(&rs.root(d).coords, &rs.root(na).coords);
            if let Some(i) = rs.index_of(&dma) {
                total += Ratio::new(general_n(rs, &pos, d, na) * general_n(rs, &pos, g, nb), sq(i));
            }
            let gma = add_coords(&rs.root(g).coords, &rs.root(na).coords);
            if let Some(i) = rs.index_of(&gma) {
                total += Ratio::new(general_n(rs, &pos, na, g) * general_n(rs, &pos, d, nb), sq(i));
            }
            let val = total * Ratio::new(sq(xi), nab);
            if !val.is_integer() {
                return Err(ChevalleyError::Inconsistent(format!(
                    "non-integral structure constant for {:?}",
                    cxi
                )));
            }
            pos.insert((g, d), val.to_integer());
        }
    }

    let mut n = vec![0i64; len * len];
    for a in 0..len {
        for b in 0..len {
            if a != rs.negative_index(b) && a != b {
                n[a * len + b] = general_n(rs, &pos, a, b);
            }
        }
    }
    Ok(n)
}

/// `N_{a,b}` for arbitrary roots, reduced to the positive-pair table.
fn general_n(rs: &RootSystem, pos: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> i64 {
    let npos = rs.num_positive();
    let ca = &rs.root(a).coords;
    let cb = &rs.root(b).coords;
    let sum = add_coords(ca, cb);
    let Some(c) = rs.index_of(&sum) else {
        return 0;
    };
    let sq = |i: usize| rs.inner_product(&rs.root(i).coords, &rs.root(i).coords);
    match (a < npos, b < npos) {
        (true, true) => {
            if a < b {
                *pos.get(&(a, b)).expect("positive pair computed out of order")
            } else {
                -*pos.get(&(b, a)).expect("positive pair computed out of order")
            }
        }
        (false, false) => -general_n(rs, pos, rs.negative_index(a), rs.negative_index(b)),
        (false, true) => -general_n(rs, pos, b, a),
        (true, false) => {
            // a + b + (-c) = 0: N_{a,b}/(c,c) = N_{b,-c}/(a,a) = N_{-c,a}/(b,b)
            let nc = rs.negative_index(c);
            let (num, den) = if c < npos {
                (sq(c) * general_n(rs, pos, b, nc), sq(a))
            } else {
                (sq(c) * general_n(rs, pos, nc, a), sq(b))
            };
            debug_assert_eq!(num % den, 0);
            num / den
        }
    }
}
