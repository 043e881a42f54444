use std::collections::VecDeque;

use super::{FoldingError, RelativeRootSystem};
use crate::rootcore::{add_coords, neg_coords};

impl RelativeRootSystem {
    /// Split `a = b + c` as in the decomposition lemma: `b, c` non-collinear
    /// and every other `i b + j c` that is a relative root has the sign of
    /// `a` and strictly larger absolute level.
    ///
    /// The construction follows the constructive proof (multiples of a simple
    /// relative root are moved by a chain toward the nearest other Levi node;
    /// other roots shed their trailing non-Levi simple roots and then one
    /// Levi node). The exhaustive lexicographically least split is used only
    /// if the constructed one fails the checker.
    pub fn decompose(&self, a: &[i32]) -> Result<(Vec<i32>, Vec<i32>), FoldingError> {
        if !self.contains(a) {
            return Err(FoldingError::NotARelativeRoot(format!("{a:?}")));
        }
        let comp = self.component_of(a).expect("nonzero root");
        if self.components()[comp].len() < 2 {
            return Err(FoldingError::RankOneComponent);
        }
        if !Self::is_positive(a) {
            let (b, c) = self.decompose(&neg_coords(a))?;
            return Ok((neg_coords(&b), neg_coords(&c)));
        }
        if let Some((b, c)) = self.recipe(a) {
            if self.check_decomposition(a, &b, &c).is_ok() {
                return Ok((b, c));
            }
        }
        self.search_decomposition(a)
            .ok_or_else(|| FoldingError::NoDecomposition(format!("{a:?}")))
    }

    /// Lexicographically least valid `(b, c)`, by exhaustive scan.
    pub fn search_decomposition(&self, a: &[i32]) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut best: Option<(Vec<i32>, Vec<i32>)> = None;
        for b in self.roots() {
            let c: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            if !self.contains(&c) || self.check_decomposition(a, b, &c).is_err() {
                continue;
            }
            let cand = (b.clone(), c);
            if best.as_ref().is_none_or(|cur| cand < *cur) {
                best = Some(cand);
            }
        }
        best
    }

    /// Re-verify every clause of the decomposition lemma by scanning all
    /// relative roots.
    pub fn check_decomposition(&self, a: &[i32], b: &[i32], c: &[i32]) -> Result<(), String> {
        for (name, x) in [("A", a), ("B", b), ("C", c)] {
            if !self.contains(x) {
                return Err(format!("{name} = {x:?} is not a relative root"));
            }
        }
        if add_coords(b, c) != a {
            return Err("B + C differs from A".into());
        }
        let k = a.len();
        let pivot = (0..k)
            .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
            .map(|(p, q)| (p, q, b[p] * c[q] - b[q] * c[p]))
            .find(|&(_, _, d)| d != 0);
        let Some((p, q, det)) = pivot else {
            return Err("B and C are collinear".into());
        };
        let lev_a = Self::level(a).abs();
        let sign_a = Self::is_positive(a);
        for x in self.roots() {
            let ni = x[p] * c[q] - x[q] * c[p];
            let nj = b[p] * x[q] - b[q] * x[p];
            if ni % det != 0 || nj % det != 0 {
                continue;
            }
            let (i, j) = (ni / det, nj / det);
            if i <= 0 || j <= 0 || (i, j) == (1, 1) {
                continue;
            }
            let recon: Vec<i32> = (0..k).map(|t| i * b[t] + j * c[t]).collect();
            if recon != *x {
                continue;
            }
            if Self::is_positive(x) != sign_a {
                return Err(format!("{i}B+{j}C = {x:?} has the wrong sign"));
            }
            if Self::level(x).abs() <= lev_a {
                return Err(format!("{i}B+{j}C = {x:?} does not increase the level"));
            }
        }
        Ok(())
    }

    /// The constructive split for a positive relative root.
    fn recipe(&self, a: &[i32]) -> Option<(Vec<i32>, Vec<i32>)> {
        let rs = self.root_system();
        let fiber = self.fiber_of(a)?;
        let alpha = rs.root(*fiber.first()?).coords.clone();
        let l = rs.rank();
        let levi = &self.spec().levi;
        let support: Vec<usize> = (0..a.len()).filter(|&o| a[o] != 0).collect();
        if support.len() == 1 {
            let o = support[0];
            let orbit = &self.orbits()[o];
            let s = levi
                .iter()
                .copied()
                .filter(|s| !orbit.contains(s))
                .min_by_key(|&s| {
                    let d = orbit.iter().map(|&r| self.distance(s, r)).min().unwrap_or(usize::MAX);
                    (d, s)
                })?;
            let near = (0..l)
                .filter(|&i| alpha[i] != 0)
                .min_by_key(|&i| (self.distance(s, i), i))?;
            let path = self.path(s, near)?;
            let mut beta = vec![0; l];
            for &node in &path[..path.len() - 1] {
                beta[node] += 1;
            }
            let sum = add_coords(&alpha, &beta);
            if !rs.contains(&beta) || !rs.contains(&sum) {
                return None;
            }
            Some((self.project(&sum), neg_coords(&self.project(&beta))))
        } else {
            let in_levi = |i: usize| levi.binary_search(&i).is_ok();
            let mut cur = alpha;
            loop {
                let peel = (0..l).find(|&i| {
                    !in_levi(i) && cur[i] > 0 && {
                        let mut x = cur.clone();
                        x[i] -= 1;
                        rs.contains(&x)
                    }
                });
                match peel {
                    Some(i) => cur[i] -= 1,
                    None => break,
                }
            }
            let j = (0..l).find(|&j| {
                in_levi(j) && cur[j] > 0 && {
                    let mut x = cur.clone();
                    x[j] -= 1;
                    rs.contains(&x)
                }
            })?;
            let mut rest = cur;
            rest[j] -= 1;
            Some((self.project(&rest), self.project(&rs.simple_root(j))))
        }
    }

    fn neighbours(&self, i: usize) -> Vec<usize> {
        let g = self.root_system().gram();
        (0..g.len()).filter(|&j| j != i && g[i][j] != 0).collect()
    }

    /// Nodes on the shortest Dynkin path from `from` to `to`, both included.
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let l = self.root_system().rank();
        let mut prev = vec![usize::MAX; l];
        let mut seen = vec![false; l];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut out = vec![to];
                let mut y = to;
                while y != from {
                    y = prev[y];
                    out.push(y);
                }
                out.reverse();
                return Some(out);
            }
            for n in self.neighbours(x) {
                if !seen[n] {
                    seen[n] = true;
                    prev[n] = x;
                    queue.push_back(n);
                }
            }
        }
        None
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        self.path(a, b).map_or(usize::MAX, |p| p.len() - 1)
    }
}
