//! Irreducible reduced root systems of types A–G with Bourbaki numbering.
//!
//! Roots are integer coordinate vectors over the simple roots. Inner products
//! come from an integral Gram matrix (short simple roots have squared length
//! 2), so everything stays in exact integer arithmetic.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: Series, rank: usize },
    #[error("cannot parse root type {0:?}")]
    Parse(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("sum of {0:?} and {1:?} is not a root")]
    SumNotRoot(Vec<i32>, Vec<i32>),
    #[error("root string needs non-proportional roots, got {0:?} and {1:?}")]
    Proportional(Vec<i32>, Vec<i32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Cartan type of an irreducible root system, e.g. `C4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootType {
    pub series: Series,
    pub rank: usize,
}

impl RootType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(RootType { series, rank })
        } else {
            Err(RootError::InvalidRank { series, rank })
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// Every irreducible type of rank `1..=max_rank`, B2 and C2 both included.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<RootType> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            for s in [
                Series::A,
                Series::B,
                Series::C,
                Series::D,
                Series::E,
                Series::F,
                Series::G,
            ] {
                if let Ok(t) = RootType::new(s, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Number of roots, from the classical closed forms.
    pub fn expected_root_count(&self) -> usize {
        let l = self.rank;
        match self.series {
            Series::A => l * (l + 1),
            Series::B | Series::C => 2 * l * l,
            Series::D => 2 * l * (l - 1),
            Series::E => match l {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn invariant_degrees(&self) -> Vec<u32> {
        let l = self.rank as u32;
        match self.series {
            Series::A => (2..=l + 1).collect(),
            Series::B | Series::C => (1..=l).map(|i| 2 * i).collect(),
            Series::D => {
                let mut d: Vec<u32> = (1..l).map(|i| 2 * i).collect();
                d.push(l);
                d.sort_unstable();
                d
            }
            Series::E => match l {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Series::F => vec![2, 6, 8, 12],
            Series::G => vec![2, 6],
        }
    }

    /// Squared lengths of the simple roots (short = 2) and the off-diagonal
    /// inner products, in Bourbaki numbering.
    fn gram(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut g = vec![vec![0i64; l]; l];
        let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i - 1][j - 1] = v;
            g[j - 1][i - 1] = v;
        };
        match self.series {
            Series::A => {
                for i in 1..=l {
                    g[i - 1][i - 1] = 2;
                }
                for i in 1..l {
                    edge(&mut g, i, i + 1, -1);
                }
            }
            Series::B => {
                for i in 1..l {
                    g[i - 1][i - 1] = 4;
                }
                g[l - 1][l - 1] = 2;
                for i in 1..l {
                    edge(&mut g, i, i + 1, -2);
                }
            }
            Series::C => {
                for i in 1..l {
                    g[i - 1][i - 1] = 2;
                }
                g[l - 1][l - 1] = 4;
                for i in 1..l - 1 {
                    edge(&mut g, i, i + 1, -1);
                }
                edge(&mut g, l - 1, l, -2);
            }
            Series::D => {
                for i in 1..=l {
                    g[i - 1][i - 1] = 2;
                }
                for i in 1..l - 1 {
                    edge(&mut g, i, i + 1, -1);
                }
                edge(&mut g, l - 2, l, -1);
            }
            Series::E => {
                for i in 1..=l {
                    g[i - 1][i - 1] = 2;
                }
                edge(&mut g, 1, 3, -1);
                edge(&mut g, 2, 4, -1);
                for i in 3..l {
                    edge(&mut g, i, i + 1, -1);
                }
            }
            Series::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                edge(&mut g, 1, 2, -2);
                edge(&mut g, 2, 3, -2);
                edge(&mut g, 3, 4, -1);
            }
            Series::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                edge(&mut g, 1, 2, -3);
            }
        }
        g
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for RootType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(RootError::Parse(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootError::Parse(s.to_string()))?;
        RootType::new(series, rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i32>,
    pub length: LengthClass,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_long(&self) -> bool {
        self.length == LengthClass::Long
    }
}

/// Coordinates sum, used all over the crate.
pub fn add_coords(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_coords(k: i32, a: &[i32]) -> Vec<i32> {
    a.iter().map(|x| k * x).collect()
}

pub fn neg_coords(a: &[i32]) -> Vec<i32> {
    a.iter().map(|x| -x).collect()
}

/// The full root set of an irreducible type.
///
/// `roots()` lists the positive roots by increasing height (ties broken by
/// decreasing lexicographic coordinate order, so the simple roots come out
/// as `alpha_1, ..., alpha_l`) followed by their negatives in the same
/// order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: RootType,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    num_positive: usize,
}

impl RootSystem {
    pub fn new(ty: RootType) -> Self {
        let gram = ty.gram();
        let l = ty.rank;
        // cartan[i][j] = <alpha_i, alpha_j^vee>
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();

        let simple: Vec<Vec<i32>> = (0..l)
            .map(|i| (0..l).map(|j| (i == j) as i32).collect())
            .collect();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for s in &simple {
            seen.insert(s.clone(), ());
            queue.push_back(s.clone());
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..l {
                let pairing = 2 * ip(&gram, &b, &simple[i]) / gram[i][i];
                let mut r = b.clone();
                r[i] -= pairing as i32;
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    queue.push_back(r);
                }
            }
        }
        let max_len = (0..l).map(|i| gram[i][i]).max().unwrap_or(2);
        let mut pos: Vec<Vec<i32>> = seen
            .into_keys()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let num_positive = pos.len();
        let mut roots = Vec::with_capacity(2 * num_positive);
        for sign in [1, -1] {
            for c in &pos {
                let coords: Vec<i32> = c.iter().map(|x| sign * x).collect();
                let len = ip(&gram, &coords, &coords);
                roots.push(Root {
                    coords,
                    length: if len == max_len {
                        LengthClass::Long
                    } else {
                        LengthClass::Short
                    },
                });
            }
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();
        RootSystem {
            ty,
            gram,
            cartan,
            roots,
            index,
            num_positive,
        }
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `cartan()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn contains(&self, coords: &[i32]) -> bool {
        self.index.contains_key(coords)
    }

    /// Index of `-roots()[i]`.
    pub fn negative_index(&self, i: usize) -> usize {
        if i < self.num_positive {
            i + self.num_positive
        } else {
            i - self.num_positive
        }
    }

    pub fn simple_root(&self, i: usize) -> Vec<i32> {
        (0..self.rank()).map(|j| (i == j) as i32).collect()
    }

    pub fn inner_product(&self, a: &[i32], b: &[i32]) -> i64 {
        ip(&self.gram, a, b)
    }

    /// `<b, a^vee> = 2(b,a)/(a,a)`.
    pub fn pairing(&self, b: &[i32], a: &[i32]) -> i64 {
        2 * self.inner_product(b, a) / self.inner_product(a, a)
    }

    /// Coordinates of the coroot `a^vee` over the simple coroots.
    pub fn coroot_coords(&self, a: &[i32]) -> Vec<i64> {
        let aa = self.inner_product(a, a);
        a.iter()
            .enumerate()
            .map(|(i, &c)| c as i64 * self.gram[i][i] / aa)
            .collect()
    }

    pub fn sum_is_root(&self, a: &[i32], b: &[i32]) -> bool {
        self.contains(&add_coords(a, b))
    }

    pub fn sum(&self, a: &[i32], b: &[i32]) -> Result<Vec<i32>, RootError> {
        self.check(a)?;
        self.check(b)?;
        let s = add_coords(a, b);
        if self.contains(&s) {
            Ok(s)
        } else {
            Err(RootError::SumNotRoot(a.to_vec(), b.to_vec()))
        }
    }

    pub fn negate(&self, a: &[i32]) -> Result<Vec<i32>, RootError> {
        self.check(a)?;
        Ok(neg_coords(a))
    }

    pub fn height(&self, a: &[i32]) -> Result<i32, RootError> {
        self.check(a)?;
        Ok(a.iter().sum())
    }

    /// `(p, q)` with `b - p a, ..., b + q a` the `a`-string through `b`.
    pub fn root_string(&self, a: &[i32], b: &[i32]) -> Result<(u32, u32), RootError> {
        self.check(a)?;
        self.check(b)?;
        if a == b || a == neg_coords(b).as_slice() {
            return Err(RootError::Proportional(a.to_vec(), b.to_vec()));
        }
        let mut p = 0;
        while self.contains(&add_coords(b, &scale_coords(-(p as i32 + 1), a))) {
            p += 1;
        }
        let mut q = 0;
        while self.contains(&add_coords(b, &scale_coords(q as i32 + 1, a))) {
            q += 1;
        }
        Ok((p, q))
    }

    fn check(&self, a: &[i32]) -> Result<(), RootError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(RootError::NotARoot(a.to_vec()))
        }
    }
}

fn ip(gram: &[Vec<i64>], a: &[i32], b: &[i32]) -> i64 {
    let mut s = 0;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            s += x as i64 * y as i64 * gram[i][j];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    /// Independent oracle: every root is reachable from a simple root by
    /// adding simple roots while staying in the set (string condition).
    fn exhaustive_positive_count(sys: &RootSystem) -> usize {
        sys.roots().iter().filter(|r| r.is_positive()).count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(rs("G2").len(), 12);
        assert_eq!(rs("C4").len(), 32);
        let a1 = rs("A1");
        assert_eq!(a1.len(), 2);
        assert_eq!(a1.roots()[0].coords, vec![1]);
        assert_eq!(a1.roots()[1].coords, vec![-1]);
    }

    #[test]
    fn counts_match_closed_forms() {
        for t in RootType::all_up_to_rank(8) {
            let sys = RootSystem::new(t);
            assert_eq!(sys.len(), t.expected_root_count(), "{t}");
            assert_eq!(2 * exhaustive_positive_count(&sys), sys.len());
            // |Phi+| = sum of (degree - 1)
            let n: u32 = t.invariant_degrees().iter().map(|d| d - 1).sum();
            assert_eq!(n as usize, sys.num_positive(), "{t}");
        }
    }

    #[test]
    fn negation_sign_and_reducedness() {
        for t in RootType::all_up_to_rank(8) {
            let sys = RootSystem::new(t);
            for r in sys.roots() {
                assert!(sys.contains(&neg_coords(&r.coords)));
                let pos = r.coords.iter().all(|&c| c >= 0);
                let neg = r.coords.iter().all(|&c| c <= 0);
                assert!(pos || neg);
                assert!(!sys.contains(&scale_coords(2, &r.coords)));
            }
            for row in sys.cartan() {
                for &c in row {
                    assert!([2, 0, -1, -2, -3].contains(&c));
                }
            }
        }
    }

    #[test]
    fn string_lengths_equal_cartan_pairing() {
        for t in RootType::all_up_to_rank(6) {
            let sys = RootSystem::new(t);
            for a in sys.roots() {
                for b in sys.roots() {
                    if a.coords == b.coords || a.coords == neg_coords(&b.coords) {
                        continue;
                    }
                    let (p, q) = sys.root_string(&a.coords, &b.coords).unwrap();
                    assert_eq!(p as i64 - q as i64, sys.pairing(&b.coords, &a.coords));
                }
            }
        }
    }

    #[test]
    fn bourbaki_low_rank_roots() {
        let c2 = rs("C2");
        let pos: Vec<_> = c2.positive_roots().iter().map(|r| r.coords.clone()).collect();
        assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
        assert_eq!(c2.sum(&[1, 0], &[0, 1]).unwrap(), vec![1, 1]);
        let g2 = rs("G2");
        assert_eq!(g2.sum(&[3, 1], &[0, 1]).unwrap(), vec![3, 2]);
        assert!(g2.contains(&[3, 2]) && g2.contains(&[3, 1]) && g2.contains(&[2, 1]));
        assert!(matches!(g2.sum(&[1, 0], &[3, 2]), Err(RootError::SumNotRoot(..))));
        // long/short classes in Bourbaki numbering
        assert!(!g2.root(g2.index_of(&[1, 0]).unwrap()).is_long());
        assert!(g2.root(g2.index_of(&[0, 1]).unwrap()).is_long());
        let b3 = rs("B3");
        assert!(!b3.root(b3.index_of(&[0, 0, 1]).unwrap()).is_long());
    }

    #[test]
    fn heights_and_strings() {
        let c2 = rs("C2");
        assert_eq!(c2.height(&[-2, -1]).unwrap(), -c2.height(&[2, 1]).unwrap());
        assert_eq!(rs("A2").root_string(&[1, 0], &[0, 1]).unwrap(), (0, 1));
        assert_eq!(c2.root_string(&[1, 0], &[0, 1]).unwrap(), (0, 2));
        // orthogonal simple roots in a simply laced system
        assert_eq!(rs("A3").root_string(&[1, 0, 0], &[0, 0, 1]).unwrap(), (0, 0));
        assert!(c2.root_string(&[1, 0], &[-1, 0]).is_err());
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!("E7".parse::<RootType>().unwrap().rank, 7);
        assert!("B1".parse::<RootType>().is_err());
        assert!("E9".parse::<RootType>().is_err());
        assert!("X3".parse::<RootType>().is_err());
        assert!("D2".parse::<RootType>().is_err());
    }
}
