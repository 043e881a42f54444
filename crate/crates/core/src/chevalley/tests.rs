use proptest::prelude::*;

use super::*;
use crate::polyring::VarRegistry;
use crate::rootcore::{RootSystem, RootType};
use crate::QPoly;

fn cb(s: &str) -> ChevalleyBasis {
    ChevalleyBasis::new(RootSystem::new(s.parse().unwrap())).unwrap()
}

fn idx(cb: &ChevalleyBasis, c: &[i32]) -> usize {
    cb.root_index(c).unwrap()
}

/// Bracket of two arbitrary vectors through the basis table.
fn bracket_vec(cb: &ChevalleyBasis, u: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; cb.dim()];
    for (x, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (y, &b) in v.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (k, c) in cb.bracket(x, y) {
                out[k] += a * b * c;
            }
        }
    }
    out
}

fn mat_vec(m: &Matrix<i64>, v: &[i64]) -> Vec<i64> {
    (0..m.dim())
        .map(|r| m.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[test]
fn small_structure_constants() {
    let a2 = cb("A2");
    assert_eq!(a2.n_coords(&[1, 0], &[0, 1]).unwrap().abs(), 1);
    let c2 = cb("C2");
    assert_eq!(c2.n_coords(&[1, 0], &[1, 1]).unwrap().abs(), 2);
    let g2 = cb("G2");
    let len = g2.root_system().len();
    let max = (0..len)
        .flat_map(|a| (0..len).map(move |b| (a, b)))
        .map(|(a, b)| g2.n(a, b).abs())
        .max()
        .unwrap();
    assert_eq!(max, 3);
}

#[test]
fn every_type_up_to_rank_eight_builds() {
    for t in RootType::all_up_to_rank(8) {
        let c = ChevalleyBasis::new(RootSystem::new(t));
        assert!(c.is_ok(), "{t}: {:?}", c.err());
    }
}

#[test]
fn root_elements_are_automorphisms() {
    // x_a(t) preserves the bracket; an independent check of the sign table.
    for name in ["A3", "B3", "C3", "G2", "D4"] {
        let c = cb(name);
        let dim = c.dim();
        for a in 0..c.root_system().len() {
            let x = c.root_element(a, &2i64);
            for u in 0..dim {
                for v in 0..dim {
                    let mut eu = vec![0; dim];
                    eu[u] = 1;
                    let mut ev = vec![0; dim];
                    ev[v] = 1;
                    let lhs = mat_vec(&x, &bracket_vec(&c, &eu, &ev));
                    let rhs = bracket_vec(&c, &mat_vec(&x, &eu), &mat_vec(&x, &ev));
                    assert_eq!(lhs, rhs, "{name} root {a} on ({u},{v})");
                }
            }
        }
    }
}

#[test]
fn zero_parameter_is_identity() {
    let c = cb("C2");
    for a in 0..c.root_system().len() {
        assert!(c.root_element(a, &0i64).is_identity());
    }
}

#[test]
fn a1_ad_cubes_to_zero() {
    let c = cb("A1");
    assert_eq!(c.dim(), 3);
    // M and M^2/2 are nonzero, M^3 vanishes
    assert_eq!(c.ad_powers(0).len(), 2);
}

#[test]
fn one_parameter_law_symbolic() {
    let reg = VarRegistry::new(["s", "t"]).unwrap();
    let s = QPoly::var(&reg, "s").unwrap();
    let t = QPoly::var(&reg, "t").unwrap();
    for name in ["C2", "G2"] {
        let c = cb(name);
        for a in 0..c.root_system().len() {
            let lhs = c.root_element(a, &s).mul(&c.root_element(a, &t));
            assert_eq!(lhs, c.root_element(a, &(&s + &t)), "{name} {a}");
        }
    }
}

#[test]
fn a2_swap_collects() {
    let c = cb("A2");
    let (a1, a2, a12) = (idx(&c, &[1, 0]), idx(&c, &[0, 1]), idx(&c, &[1, 1]));
    let reg = VarRegistry::new(["s", "t"]).unwrap();
    let s = QPoly::var(&reg, "s").unwrap();
    let t = QPoly::var(&reg, "t").unwrap();
    let out = c
        .collect_to_normal_form(&[(a2, t.clone()), (a1, s.clone())])
        .unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!((out[0].0, &out[0].1), (a1, &s));
    assert_eq!((out[1].0, &out[1].1), (a2, &t));
    assert_eq!(out[2].0, a12);
    let st = &s * &t;
    assert!(out[2].1 == st || out[2].1 == -st);
}

#[test]
fn single_letter_and_mixed_words() {
    let c = cb("B2");
    let a = idx(&c, &[1, 1]);
    assert_eq!(c.collect_to_normal_form(&[(a, 7i64)]).unwrap(), vec![(a, 7)]);
    let na = idx(&c, &[-1, 0]);
    assert_eq!(
        c.collect_to_normal_form(&[(a, 1i64), (na, 1)]),
        Err(ChevalleyError::MixedSigns)
    );
}

#[test]
fn c2_and_g2_commutator_shapes() {
    let c2 = cb("C2");
    let row = c2
        .commutator_constants(idx(&c2, &[1, 0]), idx(&c2, &[0, 1]))
        .unwrap();
    let shape: Vec<_> = row.iter().map(|t| (t.i, t.j)).collect();
    assert_eq!(shape, vec![(1, 1), (2, 1)]);
    assert!(row.iter().all(|t| t.constant.abs() == 1));
    assert!(c2.verify_commutator_row(idx(&c2, &[1, 0]), idx(&c2, &[0, 1]), &row));

    let g2 = cb("G2");
    let (a1, a2) = (idx(&g2, &[1, 0]), idx(&g2, &[0, 1]));
    let row = g2.commutator_constants(a1, a2).unwrap();
    let shape: Vec<_> = row.iter().map(|t| (t.i, t.j)).collect();
    assert_eq!(shape, vec![(1, 1), (2, 1), (3, 1), (3, 2)]);
    assert!(g2.verify_commutator_row(a1, a2, &row));
}

#[test]
fn orthogonal_roots_commute() {
    let c = cb("A3");
    let (a, b) = (idx(&c, &[1, 0, 0]), idx(&c, &[0, 0, 1]));
    assert!(c.commutator_constants(a, b).unwrap().is_empty());
    let m = c.word_matrix(&c.commutator_word(a, &5i64, b, &-2));
    assert!(m.is_identity());
    assert_eq!(
        c.commutator_constants(a, c.root_system().negative_index(a)),
        Err(ChevalleyError::Collinear)
    );
}

#[test]
fn commutator_rows_verify_symbolically() {
    for name in ["A2", "B2", "G2", "B3", "C3"] {
        let c = cb(name);
        let len = c.root_system().len();
        for a in 0..len {
            for b in 0..len {
                if a == b || c.root_system().negative_index(a) == b {
                    continue;
                }
                let row = c.commutator_constants(a, b).unwrap();
                for term in &row {
                    assert!((1..=3).contains(&term.constant.abs()));
                }
                assert!(c.verify_commutator_row(a, b, &row), "{name} ({a},{b})");
            }
        }
    }
}

fn arb_c2_or_g2() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![
        prop::collection::vec(-9i64..10, 4).prop_map(|v| ("C2", v)),
        prop::collection::vec(-9i64..10, 6).prop_map(|v| ("G2", v)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn collection_inverts_expansion((name, coeffs) in arb_c2_or_g2()) {
        let c = cb(name);
        let word: Vec<(usize, i64)> = coeffs.iter().copied().enumerate().collect();
        let order: Vec<usize> = (0..coeffs.len()).collect();
        prop_assert_eq!(c.collect_with_order(&word, &order).unwrap(), coeffs);
    }

    #[test]
    fn root_element_inverse(a in 0usize..12, t in -20i64..20) {
        let c = cb("G2");
        let m = c.root_element(a, &t).mul(&c.root_element(a, &-t));
        prop_assert!(m.is_identity());
    }
}
