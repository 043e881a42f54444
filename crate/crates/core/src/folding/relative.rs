use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{FoldingError, FoldingSpec};
use crate::rootcore::{neg_coords, scale_coords, RootSystem, RootType, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelSeries {
    A,
    B,
    C,
    BC,
    D,
    E,
    F,
    G,
}

/// Type label of an irreducible (possibly non-reduced) root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RelType {
    pub series: RelSeries,
    pub rank: usize,
}

impl fmt::Display for RelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

/// The relative root system of a [`FoldingSpec`].
///
/// Coordinates are indexed by the Gamma-orbits of `J`, ordered by their
/// minimal node. `roots()` lists positive relative roots by increasing level
/// (ties by decreasing coordinate order) followed by their negatives.
#[derive(Debug, Clone)]
pub struct RelativeRootSystem {
    spec: FoldingSpec,
    rs: RootSystem,
    orbits: Vec<Vec<usize>>,
    /// `proj[o][i] = 1` iff simple root `i` lies in orbit `o`.
    proj: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    num_positive: usize,
    index: HashMap<Vec<i32>, usize>,
    /// Root indices of each fiber, sorted by coordinates.
    fibers: Vec<Vec<usize>>,
    /// Orbit indices of each component.
    components: Vec<Vec<usize>>,
}

impl RelativeRootSystem {
    pub fn new(spec: FoldingSpec) -> Self {
        let rs = RootSystem::new(spec.root_type);
        let l = rs.rank();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for &j in &spec.levi {
            if orbits.iter().any(|o| o.contains(&j)) {
                continue;
            }
            let mut orbit: Vec<usize> = spec.gamma.iter().map(|g| g.perm[j]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbits.push(orbit);
        }
        orbits.sort();
        let proj: Vec<Vec<i32>> = orbits
            .iter()
            .map(|o| (0..l).map(|i| o.contains(&i) as i32).collect())
            .collect();

        let mut fiber_map: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
        for (i, r) in rs.roots().iter().enumerate() {
            let a = project(&proj, &r.coords);
            if a.iter().any(|&c| c != 0) {
                fiber_map.entry(a).or_default().push(i);
            }
        }
        let mut pos: Vec<Vec<i32>> = fiber_map
            .keys()
            .filter(|a| a.iter().all(|&c| c >= 0))
            .cloned()
            .collect();
        pos.sort_by(|a, b| {
            let la: i32 = a.iter().sum();
            let lb: i32 = b.iter().sum();
            la.cmp(&lb).then_with(|| b.cmp(a))
        });
        let num_positive = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|a| neg_coords(a)));
        let index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let fibers: Vec<Vec<usize>> = roots
            .iter()
            .map(|a| {
                let mut f = fiber_map[a].clone();
                f.sort_by(|&x, &y| rs.root(x).coords.cmp(&rs.root(y).coords));
                f
            })
            .collect();

        // orbits linked when some relative root involves both
        let k = orbits.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for a in &roots {
            let support: Vec<usize> = (0..k).filter(|&o| a[o] != 0).collect();
            for w in support.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[x] = y;
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for o in 0..k {
            let r = find(&mut parent, o);
            groups.entry(r).or_default().push(o);
        }
        let mut components: Vec<Vec<usize>> = groups.into_values().collect();
        components.sort();

        RelativeRootSystem {
            spec,
            rs,
            orbits,
            proj,
            roots,
            num_positive,
            index,
            fibers,
            components,
        }
    }

    pub fn spec(&self) -> &FoldingSpec {
        &self.spec
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Number of Gamma-orbits of `J`.
    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn projection_matrix(&self) -> &[Vec<i32>] {
        &self.proj
    }

    pub fn project(&self, coords: &[i32]) -> Vec<i32> {
        project(&self.proj, coords)
    }

    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.roots[..self.num_positive]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, a: &[i32]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &[i32]) -> bool {
        self.index.contains_key(a)
    }

    /// Root indices (into the absolute system) projecting to relative root `i`.
    pub fn fiber(&self, i: usize) -> &[usize] {
        &self.fibers[i]
    }

    pub fn fiber_of(&self, a: &[i32]) -> Option<&[usize]> {
        self.index_of(a).map(|i| self.fiber(i))
    }

    pub fn level(a: &[i32]) -> i32 {
        a.iter().sum()
    }

    pub fn is_positive(a: &[i32]) -> bool {
        a.iter().all(|&c| c >= 0)
    }

    /// Components as lists of orbit indices.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Component index of a relative root.
    pub fn component_of(&self, a: &[i32]) -> Option<usize> {
        let o = a.iter().position(|&c| c != 0)?;
        self.components.iter().position(|c| c.contains(&o))
    }

    /// Relative roots of a component, in `roots()` order.
    pub fn component_roots(&self, comp: usize) -> Vec<Vec<i32>> {
        self.roots
            .iter()
            .filter(|a| self.component_of(a) == Some(comp))
            .cloned()
            .collect()
    }

    /// Abstract type of a component: the first catalog system whose root set
    /// matches after a permutation of simple roots, the identity permutation
    /// tried first across all candidates.
    pub fn classify(&self, comp: usize) -> Result<RelType, FoldingError> {
        let orbits = &self.components[comp];
        let r = orbits.len();
        let local: Vec<Vec<i32>> = self
            .component_roots(comp)
            .iter()
            .map(|a| orbits.iter().map(|&o| a[o]).collect())
            .collect();
        let target: std::collections::HashSet<Vec<i32>> = local.iter().cloned().collect();
        let candidates: Vec<(RelType, Vec<Vec<i32>>)> = catalog_candidates(r)
            .into_iter()
            .filter(|(_, roots)| roots.len() == target.len())
            .collect();
        for (ty, roots) in &candidates {
            if roots.iter().all(|x| target.contains(x)) {
                return Ok(*ty);
            }
        }
        for (ty, roots) in &candidates {
            if permutation_match(r, roots, &target) {
                return Ok(*ty);
            }
        }
        Err(FoldingError::Unclassified(comp))
    }
}

fn project(proj: &[Vec<i32>], coords: &[i32]) -> Vec<i32> {
    proj.iter()
        .map(|row| row.iter().zip(coords).map(|(a, b)| a * b).sum())
        .collect()
}

/// Root sets (simple-root coordinates) of every type of rank `r`, in
/// preference order, including the non-reduced `BC_r`.
fn catalog_candidates(r: usize) -> Vec<(RelType, Vec<Vec<i32>>)> {
    let mut out = Vec::new();
    let plain = [
        (Series::A, RelSeries::A),
        (Series::B, RelSeries::B),
        (Series::C, RelSeries::C),
        (Series::D, RelSeries::D),
        (Series::E, RelSeries::E),
        (Series::F, RelSeries::F),
        (Series::G, RelSeries::G),
    ];
    for (s, rel) in plain {
        if s == Series::D && r == 3 {
            continue;
        }
        if let Ok(t) = RootType::new(s, r) {
            let rs = RootSystem::new(t);
            let roots = rs.roots().iter().map(|x| x.coords.clone()).collect();
            out.push((RelType { series: rel, rank: r }, roots));
        }
    }
    // BC_r: B_r (or A_1 when r = 1) plus twice its short roots
    let base = if r == 1 {
        RootSystem::new(RootType::new(Series::A, 1).expect("A1"))
    } else {
        RootSystem::new(RootType::new(Series::B, r).expect("B_r"))
    };
    let mut roots: Vec<Vec<i32>> = base.roots().iter().map(|x| x.coords.clone()).collect();
    for x in base.roots() {
        if r == 1 || !x.is_long() {
            roots.push(scale_coords(2, &x.coords));
        }
    }
    out.push((
        RelType {
            series: RelSeries::BC,
            rank: r,
        },
        roots,
    ));
    out
}

/// Backtracking search for a permutation of simple roots carrying `roots`
/// into `target`.
fn permutation_match(
    r: usize,
    roots: &[Vec<i32>],
    target: &std::collections::HashSet<Vec<i32>>,
) -> bool {
    fn go(
        r: usize,
        roots: &[Vec<i32>],
        target: &std::collections::HashSet<Vec<i32>>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = perm.len();
        // roots supported on the assigned prefix must map into the target
        let ok = roots
            .iter()
            .filter(|x| x[k..].iter().all(|&c| c == 0))
            .all(|x| {
                let mut y = vec![0; r];
                for i in 0..k {
                    y[perm[i]] = x[i];
                }
                target.contains(&y)
            });
        if !ok {
            return false;
        }
        if k == r {
            return true;
        }
        for c in 0..r {
            if used[c] {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if go(r, roots, target, perm, used) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    go(r, roots, target, &mut Vec::new(), &mut vec![false; r])
}
