use std::collections::HashSet;

use super::*;
use crate::rootcore::add_coords;

fn rel(s: &str) -> RelativeRootSystem {
    RelativeRootSystem::new(s.parse().unwrap())
}

fn ty(s: &str) -> RootType {
    s.parse().unwrap()
}

fn label(r: &RelativeRootSystem) -> String {
    r.classify(0).unwrap().to_string()
}

#[test]
fn automorphism_group_orders() {
    assert_eq!(enumerate_diagram_automorphisms(ty("B3")).len(), 1);
    let a3 = enumerate_diagram_automorphisms(ty("A3"));
    assert_eq!(a3.len(), 2);
    assert!(a3.contains(&DiagramAut { perm: vec![2, 1, 0] }));
    // oracle: count permutations of 4 nodes preserving the Gram matrix
    let g = RootSystem::new(ty("D4")).gram().to_vec();
    let mut count = 0;
    for p in permutations(4) {
        if (0..4).all(|i| (0..4).all(|j| g[i][j] == g[p[i]][p[j]])) {
            count += 1;
        }
    }
    assert_eq!(count, 6);
    assert_eq!(enumerate_diagram_automorphisms(ty("D4")).len(), 6);
    assert_eq!(enumerate_diagram_automorphisms(ty("E6")).len(), 2);
    assert_eq!(enumerate_diagram_automorphisms(ty("D5")).len(), 2);
    assert_eq!(enumerate_diagram_automorphisms(ty("G2")).len(), 1);
    assert_eq!(all_subgroups(ty("D4")).len(), 6);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn identity_folding_is_a_bijection() {
    let r = rel("A3 gamma=trivial levi=all");
    assert_eq!(r.len(), 12);
    for i in 0..r.len() {
        assert_eq!(r.fiber(i).len(), 1);
    }
    assert_eq!(label(&r), "A3");
}

#[test]
fn a3_flip_is_c2_shaped() {
    let r = rel("A3 gamma=flip levi=1,2,3");
    let got: HashSet<Vec<i32>> = r.roots().iter().cloned().collect();
    // oracle: project all 12 roots by hand, coordinates (orbit {1,3}, orbit {2})
    let rs = RootSystem::new(ty("A3"));
    let expected: HashSet<Vec<i32>> = rs
        .roots()
        .iter()
        .map(|x| vec![x.coords[0] + x.coords[2], x.coords[1]])
        .collect();
    assert_eq!(got, expected);
    assert_eq!(got.len(), 8);
    assert!(got.contains(&vec![2, 1]));
    assert_eq!(label(&r), "C2");
}

#[test]
fn classified_types() {
    assert_eq!(label(&rel("B3 gamma=trivial levi=1,2")), "B2");
    assert_eq!(label(&rel("C3 gamma=trivial levi=1,2")), "BC2");
    assert_eq!(label(&rel("F4 gamma=trivial levi=all")), "F4");
    assert_eq!(label(&rel("C4 gamma=trivial levi=2,4")), "C2");
    assert_eq!(label(&rel("D4 gamma=triality levi=all")), "G2");
    assert_eq!(label(&rel("A2 gamma=flip levi=all")), "BC1");
    assert_eq!(label(&rel("E6 gamma=flip levi=all")), "F4");
}

#[test]
fn non_root_system_quotients_are_unclassified() {
    // {A, 2A, 3A} is not a root system of any type
    let r = rel("G2 gamma=trivial levi=1");
    assert_eq!(r.len(), 6);
    assert_eq!(r.classify(0), Err(FoldingError::Unclassified(0)));
    assert_eq!(label(&rel("G2 gamma=trivial levi=2")), "BC1");
}

#[test]
fn structural_invariants() {
    for t in RootType::all_up_to_rank(5) {
        for spec in FoldingSpec::catalog(t) {
            let r = RelativeRootSystem::new(spec.clone());
            let rs = r.root_system();
            // Gamma-invariance of the projection
            for g in &spec.gamma {
                for x in rs.roots() {
                    let mut moved = vec![0; rs.rank()];
                    for (i, &c) in x.coords.iter().enumerate() {
                        moved[g.perm[i]] += c;
                    }
                    assert_eq!(r.project(&moved), r.project(&x.coords), "{spec}");
                }
            }
            for (i, a) in r.roots().iter().enumerate() {
                // sign coherence
                for &f in r.fiber(i) {
                    assert_eq!(rs.root(f).is_positive(), RelativeRootSystem::is_positive(a));
                }
                // negation
                let neg: Vec<usize> = r.fiber(i).iter().map(|&f| rs.negative_index(f)).collect();
                let mut neg_sorted = neg.clone();
                neg_sorted.sort();
                let mut other = r.fiber_of(&crate::rootcore::neg_coords(a)).unwrap().to_vec();
                other.sort();
                assert_eq!(neg_sorted, other);
            }
            // level additivity and lattice homomorphism
            for x in rs.roots() {
                for y in rs.roots() {
                    let s = add_coords(&x.coords, &y.coords);
                    assert_eq!(
                        r.project(&s),
                        add_coords(&r.project(&x.coords), &r.project(&y.coords))
                    );
                }
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let c2 = rel("C2 gamma=trivial levi=all");
    assert_eq!(c2.decompose(&[2, 1]).unwrap(), (vec![1, 1], vec![1, 0]));
    assert!(c2.search_decomposition(&[2, 1]).is_some());

    let d4 = rel("D4 gamma=triality levi=all");
    let (b, c) = d4.decompose(&[1, 0]).unwrap();
    assert_eq!((b.clone(), c.clone()), (vec![1, 1], vec![0, -1]));
    let mut levels: Vec<i32> = [(2, 1), (3, 1), (3, 2)]
        .iter()
        .map(|&(i, j)| {
            let x: Vec<i32> = (0..2).map(|t| i * b[t] + j * c[t]).collect();
            assert!(d4.contains(&x) && RelativeRootSystem::is_positive(&x));
            RelativeRootSystem::level(&x)
        })
        .collect();
    levels.sort();
    assert_eq!(levels, vec![3, 4, 5]);

    // the proof's construction yields (B+C, B); compare as an unordered pair
    let a3 = rel("A3 gamma=flip levi=all");
    let (b, c) = a3.decompose(&[2, 1]).unwrap();
    let got: HashSet<Vec<i32>> = [b, c].into_iter().collect();
    let want: HashSet<Vec<i32>> = [vec![1, 0], vec![1, 1]].into_iter().collect();
    assert_eq!(got, want);
}

#[test]
fn rank_one_rejected() {
    let r = rel("A2 gamma=flip levi=all");
    assert_eq!(r.decompose(&[1]), Err(FoldingError::RankOneComponent));
}

#[test]
fn checker_rejects_bad_splits() {
    let c2 = rel("C2 gamma=trivial levi=all");
    // (A1+A2) = A1 + A2 but 2A1+A2 has level 3 > 2, fine; A2 + A1 also fine.
    assert!(c2.check_decomposition(&[1, 1], &[1, 0], &[0, 1]).is_ok());
    // A1 = (A1+A2) + (-A2): B + 2C = (1,-1) is not a root, 2B + C = (2,1) positive: ok
    assert!(c2.check_decomposition(&[1, 0], &[1, 1], &[0, -1]).is_ok());
    // A2 = (2A1+A2) + (-2A1)?  -2A1 is not a root
    assert!(c2.check_decomposition(&[0, 1], &[2, 1], &[-2, 0]).is_err());
    // A1 = (2A1+A2) + (-A1-A2): B + 2C = (0,-1) negative
    assert!(c2.check_decomposition(&[1, 0], &[2, 1], &[-1, -1]).is_err());
}

#[test]
fn catalog_decompositions_rank_four() {
    for t in RootType::all_up_to_rank(4) {
        for spec in FoldingSpec::catalog(t) {
            let r = RelativeRootSystem::new(spec.clone());
            for a in r.roots() {
                let comp = r.component_of(a).unwrap();
                if r.components()[comp].len() < 2 {
                    continue;
                }
                let (b, c) = r.decompose(a).unwrap();
                assert!(r.check_decomposition(a, &b, &c).is_ok(), "{spec} {a:?}");
            }
        }
    }
}

#[test]
fn spec_parsing() {
    let s: FoldingSpec = "B3 gamma=trivial levi=1,2".parse().unwrap();
    assert_eq!(s.levi, vec![0, 1]);
    assert_eq!(s.to_string(), "B3 gamma=trivial levi=1,2");
    assert_eq!(
        "A3 gamma=flip levi=1".parse::<FoldingSpec>(),
        Err(FoldingError::NotInvariant)
    );
    assert!("B3 gamma=flip levi=1".parse::<FoldingSpec>().is_err());
    let p: FoldingSpec = "A3 gamma=perm:3,2,1 levi=1,3".parse().unwrap();
    assert_eq!(p.gamma.len(), 2);
    assert!("A3 gamma=perm:2,1,3 levi=all".parse::<FoldingSpec>().is_err());
}
