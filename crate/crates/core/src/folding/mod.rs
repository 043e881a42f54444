//! Diagram automorphisms, Levi subsets and relative root systems.

mod decompose;
mod relative;

pub use relative::{RelSeries, RelType, RelativeRootSystem};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rootcore::{RootError, RootSystem, RootType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldingError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("cannot parse folding spec: {0}")]
    Parse(String),
    #[error("permutation {0:?} is not a diagram automorphism")]
    NotAnAutomorphism(Vec<usize>),
    #[error("Levi subset is not invariant under the automorphism group")]
    NotInvariant,
    #[error("{0} is not a relative root")]
    NotARelativeRoot(String),
    #[error("no valid decomposition of {0}")]
    NoDecomposition(String),
    #[error("relative root lies in a rank-1 component")]
    RankOneComponent,
    #[error("no root system type matches component {0}")]
    Unclassified(usize),
}

/// A permutation of the nodes `0..l` preserving the Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAut {
    pub perm: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(l: usize) -> Self {
        DiagramAut {
            perm: (0..l).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }
}

impl fmt::Display for DiagramAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "{}", images.join(","))
    }
}

/// All permutations of the simple roots preserving the Gram matrix.
pub fn enumerate_diagram_automorphisms(t: RootType) -> Vec<DiagramAut> {
    let rs = RootSystem::new(t);
    let g = rs.gram();
    let l = t.rank;
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(l);
    let mut used = vec![false; l];
    fn go(
        g: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<DiagramAut>,
    ) {
        let i = perm.len();
        if i == g.len() {
            out.push(DiagramAut { perm: perm.clone() });
            return;
        }
        for cand in 0..g.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| g[i][j] == g[cand][perm[j]]) && g[i][i] == g[cand][cand];
            if ok {
                used[cand] = true;
                perm.push(cand);
                go(g, perm, used, out);
                perm.pop();
                used[cand] = false;
            }
        }
    }
    go(g, &mut perm, &mut used, &mut out);
    out.sort();
    out
}

/// Closure of a set of automorphisms under composition.
pub fn generate_group(l: usize, gens: &[DiagramAut]) -> Vec<DiagramAut> {
    let mut group: BTreeSet<DiagramAut> = BTreeSet::new();
    group.insert(DiagramAut::identity(l));
    let mut frontier: Vec<DiagramAut> = vec![DiagramAut::identity(l)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    group.into_iter().collect()
}

/// Every subgroup of the diagram automorphism group, smallest first.
pub fn all_subgroups(t: RootType) -> Vec<Vec<DiagramAut>> {
    let auts = enumerate_diagram_automorphisms(t);
    let mut seen: BTreeSet<Vec<DiagramAut>> = BTreeSet::new();
    for mask in 0u32..(1 << auts.len()) {
        let gens: Vec<DiagramAut> = auts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        seen.insert(generate_group(t.rank, &gens));
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A root type together with an automorphism group and an invariant Levi set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingSpec {
    pub root_type: RootType,
    /// The full group (identity included), sorted.
    pub gamma: Vec<DiagramAut>,
    /// 0-based node indices, sorted.
    pub levi: Vec<usize>,
    gamma_label: String,
}

impl FoldingSpec {
    pub fn new(
        root_type: RootType,
        gamma_gens: &[DiagramAut],
        levi: &[usize],
    ) -> Result<Self, FoldingError> {
        let l = root_type.rank;
        let auts = enumerate_diagram_automorphisms(root_type);
        for g in gamma_gens {
            if !auts.contains(g) {
                return Err(FoldingError::NotAnAutomorphism(g.perm.clone()));
            }
        }
        let gamma = generate_group(l, gamma_gens);
        let mut levi: Vec<usize> = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if levi.iter().any(|&i| i >= l) {
            return Err(FoldingError::Parse(format!("Levi index out of range for {root_type}")));
        }
        for g in &gamma {
            if levi.iter().any(|&i| levi.binary_search(&g.perm[i]).is_err()) {
                return Err(FoldingError::NotInvariant);
            }
        }
        let gamma_label = gamma_label(&gamma);
        Ok(FoldingSpec {
            root_type,
            gamma,
            levi,
            gamma_label,
        })
    }

    /// Trivial group and the given Levi set.
    pub fn split(root_type: RootType, levi: &[usize]) -> Result<Self, FoldingError> {
        Self::new(root_type, &[], levi)
    }

    pub fn is_split(&self) -> bool {
        self.gamma.len() == 1
    }

    /// Every `(Gamma, J)` pair for a type, `J` ranging over invariant subsets.
    pub fn catalog(root_type: RootType) -> Vec<FoldingSpec> {
        let l = root_type.rank;
        let mut out = Vec::new();
        for group in all_subgroups(root_type) {
            for mask in 0u32..(1 << l) {
                let levi: Vec<usize> = (0..l).filter(|i| mask & (1 << i) != 0).collect();
                if let Ok(spec) = FoldingSpec::new(root_type, &group, &levi) {
                    out.push(spec);
                }
            }
        }
        out
    }
}

fn gamma_label(gamma: &[DiagramAut]) -> String {
    if gamma.len() == 1 {
        return "trivial".to_string();
    }
    let gens: Vec<String> = gamma
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.to_string())
        .collect();
    format!("perm:{}", gens.join("/"))
}

impl fmt::Display for FoldingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levi: Vec<String> = self.levi.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "{} gamma={} levi={}",
            self.root_type,
            self.gamma_label,
            levi.join(",")
        )
    }
}

/// Parse a `gamma=` value into generators.
pub fn parse_gamma(t: RootType, text: &str) -> Result<Vec<DiagramAut>, FoldingError> {
    let auts = enumerate_diagram_automorphisms(t);
    let nontrivial: Vec<DiagramAut> = auts.iter().filter(|a| !a.is_identity()).cloned().collect();
    let order_of = |a: &DiagramAut| generate_group(t.rank, std::slice::from_ref(a)).len();
    match text.trim() {
        "trivial" | "" => Ok(Vec::new()),
        "full" => Ok(nontrivial),
        "flip" => nontrivial
            .iter()
            .find(|a| order_of(a) == 2)
            .cloned()
            .map(|a| vec![a])
            .ok_or_else(|| FoldingError::Parse(format!("{t} has no flip"))),
        "triality" => nontrivial
            .iter()
            .find(|a| order_of(a) == 3)
            .cloned()
            .map(|a| vec![a])
            .ok_or_else(|| FoldingError::Parse(format!("{t} has no triality"))),
        other => {
            let body = other
                .strip_prefix("perm:")
                .ok_or_else(|| FoldingError::Parse(other.to_string()))?;
            body.split('/')
                .map(|p| {
                    let perm = p
                        .split(',')
                        .map(|x| x.trim().parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
                        .collect::<Option<Vec<usize>>>()
                        .ok_or_else(|| FoldingError::Parse(p.to_string()))?;
                    if perm.len() != t.rank {
                        return Err(FoldingError::Parse(p.to_string()));
                    }
                    Ok(DiagramAut { perm })
                })
                .collect()
        }
    }
}

/// Parse a `levi=` value: comma separated 1-based indices, or `all`.
pub fn parse_levi(t: RootType, text: &str) -> Result<Vec<usize>, FoldingError> {
    let text = text.trim();
    if text == "all" {
        return Ok((0..t.rank).collect());
    }
    if text.is_empty() || text == "none" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1 && v <= t.rank)
                .map(|v| v - 1)
                .ok_or_else(|| FoldingError::Parse(format!("bad Levi index {x:?}")))
        })
        .collect()
}

impl FromStr for FoldingSpec {
    type Err = FoldingError;

    /// `"<TYPE> gamma=<trivial|flip|triality|full|perm:...> levi=<i,j,...|all>"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let t: RootType = parts
            .next()
            .ok_or_else(|| FoldingError::Parse(s.to_string()))?
            .parse()?;
        let mut gamma = Vec::new();
        let mut levi = None;
        for part in parts {
            if let Some(v) = part.strip_prefix("gamma=") {
                gamma = parse_gamma(t, v)?;
            } else if let Some(v) = part.strip_prefix("levi=") {
                levi = Some(parse_levi(t, v)?);
            } else {
                return Err(FoldingError::Parse(part.to_string()));
            }
        }
        let levi = levi.unwrap_or_else(|| (0..t.rank).collect());
        FoldingSpec::new(t, &gamma, &levi)
    }
}

#[cfg(test)]
mod tests;
