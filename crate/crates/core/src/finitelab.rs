//! Elementary groups over prime fields in the adjoint representation.
//!
//! Groups are enumerated by breadth-first closure over byte-encoded
//! matrices; the derived subgroup is the normal closure of the commutators
//! of generator pairs.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{ChevalleyBasis, ChevalleyError};
use crate::polyring::is_prime;
use crate::rootcore::{RootSystem, RootType, Series};

/// Closure size limit when `RELROOT_CAP` is not set.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),
    #[error("group order {predicted} exceeds the cap {cap}")]
    CapExceeded { predicted: u64, cap: u64 },
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

/// The cap from `RELROOT_CAP`, or [`DEFAULT_CAP`].
pub fn cap_from_env() -> u64 {
    std::env::var("RELROOT_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// A square matrix over `F_p`, entries stored row-major as bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    dim: usize,
    entries: Vec<u8>,
}

impl FqMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        FqMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.dim + c]
    }

    /// The canonical encoding used for hashing.
    pub fn as_bytes(&self) -> &[u8] {
        &self.entries
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        let n = self.dim;
        let mut out = vec![0u8; n * n];
        let mut row = vec![0u32; n];
        for i in 0..n {
            row.iter_mut().for_each(|x| *x = 0);
            for k in 0..n {
                let a = self.entries[i * n + k] as u32;
                if a == 0 {
                    continue;
                }
                let b = &other.entries[k * n..(k + 1) * n];
                for (x, &y) in row.iter_mut().zip(b) {
                    *x += a * y as u32;
                }
            }
            for (o, x) in out[i * n..(i + 1) * n].iter_mut().zip(&row) {
                *o = (x % p) as u8;
            }
        }
        FqMatrix { dim: n, entries: out }
    }
}

/// `x_alpha(c)` and its inverse, reduced mod `p`.
#[derive(Debug, Clone)]
pub struct Generator {
    pub root: Vec<i32>,
    pub c: u32,
    pub matrix: FqMatrix,
    pub inverse: FqMatrix,
}

/// Adjoint root element over the integers, reduced mod `p`.
fn root_element_mod(cb: &ChevalleyBasis, a: usize, c: i64, p: u32) -> FqMatrix {
    let m = cb.root_element(a, &c);
    let dim = m.dim();
    let entries = (0..dim * dim)
        .map(|i| m.get(i / dim, i % dim).rem_euclid(p as i64) as u8)
        .collect();
    FqMatrix { dim, entries }
}

/// All `x_alpha(c)`, `c != 0`, for the adjoint representation mod `p`.
pub fn root_generators(t: RootType, p: u32) -> Result<Vec<Generator>, FiniteError> {
    if !(p < 256 && is_prime(p)) {
        return Err(FiniteError::NotPrime(p));
    }
    let rs = RootSystem::new(t);
    let cb = ChevalleyBasis::new(rs.clone())?;
    let mut out = Vec::new();
    for (a, root) in rs.roots().iter().enumerate() {
        for c in 1..p {
            out.push(Generator {
                root: root.coords.clone(),
                c,
                matrix: root_element_mod(&cb, a, c as i64, p),
                inverse: root_element_mod(&cb, a, -(c as i64), p),
            });
        }
    }
    Ok(out)
}

/// `x_alpha(a) x_alpha(b) = x_alpha(a + b)` for all `a, b` in `F_p`.
pub fn check_one_parameter_law(t: RootType, p: u32) -> Result<bool, FiniteError> {
    let rs = RootSystem::new(t);
    let cb = ChevalleyBasis::new(rs.clone())?;
    for a in 0..rs.len() {
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let lhs = root_element_mod(&cb, a, x, p).mul(&root_element_mod(&cb, a, y, p), p);
                if lhs != root_element_mod(&cb, a, x + y, p) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A finite matrix group together with all of its elements.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    pub p: u32,
    pub generators: Vec<FqMatrix>,
    pub elements: HashSet<FqMatrix>,
}

impl GroupClosure {
    /// Breadth-first closure of the generators under right multiplication.
    pub fn generate(generators: Vec<FqMatrix>, p: u32, cap: u64) -> Result<Self, FiniteError> {
        let dim = generators.first().map_or(0, FqMatrix::dim);
        let mut g = GroupClosure {
            p,
            generators: Vec::new(),
            elements: HashSet::from([FqMatrix::identity(dim)]),
        };
        g.add_generators(generators, cap)?;
        Ok(g)
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, m: &FqMatrix) -> bool {
        self.elements.contains(m)
    }

    /// Adjoin generators and close again.
    fn add_generators(&mut self, new: Vec<FqMatrix>, cap: u64) -> Result<(), FiniteError> {
        self.generators.extend(new);
        let mut start: Vec<FqMatrix> = self.elements.iter().cloned().collect();
        start.sort();
        let mut queue = VecDeque::from(start);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.mul(g, self.p);
                if !self.elements.contains(&y) {
                    if self.elements.len() as u64 >= cap {
                        return Err(FiniteError::CapExceeded {
                            predicted: self.elements.len() as u64 + 1,
                            cap,
                        });
                    }
                    self.elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(())
    }

    /// True when right multiplication by any generator stays inside.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.generators.iter().all(|g| self.elements.contains(&x.mul(g, self.p))))
    }
}

/// The normal closure of `[g_i, g_j]` over generator pairs, given the
/// generators with their inverses.
pub fn derived_subgroup(gens: &[(FqMatrix, FqMatrix)], p: u32, cap: u64) -> Result<GroupClosure, FiniteError> {
    let dim = gens.first().map_or(0, |g| g.0.dim());
    let mut seeds: Vec<FqMatrix> = Vec::new();
    let mut seen = HashSet::new();
    for (a, ai) in gens {
        for (b, bi) in gens {
            let c = a.mul(b, p).mul(ai, p).mul(bi, p);
            if c != FqMatrix::identity(dim) && seen.insert(c.clone()) {
                seeds.push(c);
            }
        }
    }
    let mut h = GroupClosure::generate(seeds, p, cap)?;
    if h.generators.is_empty() {
        return Ok(h);
    }
    // conjugating the generators of h by those of g until nothing new appears
    loop {
        let mut fresh = Vec::new();
        for (g, gi) in gens {
            for s in &h.generators {
                let c = g.mul(s, p).mul(gi, p);
                if !h.contains(&c) && !fresh.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(h);
        }
        h.add_generators(fresh, cap)?;
    }
}

/// `[g : D(g)]`.
pub fn derived_subgroup_index(g: &GroupClosure, gens: &[(FqMatrix, FqMatrix)], cap: u64) -> Result<u64, FiniteError> {
    let d = derived_subgroup(gens, g.p, cap)?;
    Ok(g.order() / d.order())
}

/// Order of the adjoint Chevalley group of type `t` over `F_p`.
pub fn predicted_order(t: RootType, p: u32) -> u64 {
    let p = p as u128;
    let rs = RootSystem::new(t);
    let mut order: u128 = p.pow(rs.num_positive() as u32);
    for d in t.invariant_degrees() {
        order = order.saturating_mul(p.pow(d) - 1);
    }
    let l = t.rank as u128;
    let gcd = |a: u128, b: u128| num_integer::gcd(a, b);
    let center = match t.series {
        Series::A => gcd(l + 1, p - 1),
        Series::B | Series::C => gcd(2, p - 1),
        Series::D => gcd(4, p.pow(t.rank as u32) - 1),
        Series::E if t.rank == 6 => gcd(3, p - 1),
        Series::E if t.rank == 7 => gcd(2, p - 1),
        _ => 1,
    };
    u64::try_from(order / center).unwrap_or(u64::MAX)
}

/// One row of the perfectness table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectnessRow {
    #[serde(rename = "type")]
    pub root_type: String,
    pub p: u32,
    pub order: Option<u64>,
    #[serde(rename = "predictedOrder")]
    pub predicted_order: u64,
    #[serde(rename = "derivedIndex")]
    pub derived_index: Option<u64>,
    pub perfect: Option<bool>,
    /// Predicted perfectness; `None` outside the rank >= 2 hypothesis.
    pub expected: Option<bool>,
    pub verdict: String,
}

/// Expected perfectness of the adjoint image: perfect unless the type is
/// `B2 = C2` or `G2` over `F_2`; no prediction for rank 1.
pub fn expected_perfect(t: RootType, p: u32) -> Option<bool> {
    if t.rank < 2 {
        return None;
    }
    let small = matches!((t.series, t.rank), (Series::B | Series::C, 2) | (Series::G, 2));
    Some(!(small && p == 2))
}

pub fn perfectness_row(t: RootType, p: u32, cap: u64) -> Result<PerfectnessRow, FiniteError> {
    let predicted = predicted_order(t, p);
    let mut row = PerfectnessRow {
        root_type: t.to_string(),
        p,
        order: None,
        predicted_order: predicted,
        derived_index: None,
        perfect: None,
        expected: expected_perfect(t, p),
        verdict: "skipped: cap".to_string(),
    };
    if predicted > cap {
        return Ok(row);
    }
    let gens = root_generators(t, p)?;
    let mats: Vec<FqMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    let pairs: Vec<(FqMatrix, FqMatrix)> = gens.into_iter().map(|g| (g.matrix, g.inverse)).collect();
    let group = match GroupClosure::generate(mats, p, cap) {
        Ok(g) => g,
        Err(FiniteError::CapExceeded { .. }) => return Ok(row),
        Err(e) => return Err(e),
    };
    let index = derived_subgroup_index(&group, &pairs, cap)?;
    row.order = Some(group.order());
    row.derived_index = Some(index);
    row.perfect = Some(index == 1);
    row.verdict = match row.expected {
        None => "out of hypothesis (rank 1)".to_string(),
        Some(e) if e == (index == 1) => "agrees".to_string(),
        Some(_) => "disagrees".to_string(),
    };
    Ok(row)
}

/// Rows for every `(type, p)` in order; cap overruns become skipped rows.
pub fn perfectness_report(cases: &[(RootType, u32)], cap: u64) -> Result<Vec<PerfectnessRow>, FiniteError> {
    cases.iter().map(|&(t, p)| perfectness_row(t, p, cap)).collect()
}

/// The default catalog `{A2, C2, G2, A3, B3} x {2, 3}`.
pub fn default_catalog() -> Vec<(RootType, u32)> {
    let mut out = Vec::new();
    for t in ["A2", "C2", "G2", "A3", "B3"] {
        for p in [2, 3] {
            out.push((t.parse().expect("valid type"), p));
        }
    }
    out
}
