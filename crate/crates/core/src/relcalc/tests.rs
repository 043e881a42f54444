use super::*;
use crate::rootcore::add_coords;
use crate::{QPoly, Rational};

fn sr(s: &str) -> SplitRealization {
    SplitRealization::parse(s).unwrap()
}

fn show(p: &QPoly) -> String {
    p.to_string()
}

#[test]
fn nontrivial_gamma_rejected() {
    assert!(matches!(
        SplitRealization::parse("A3 gamma=flip levi=all"),
        Err(RelError::NonSplit)
    ));
}

#[test]
fn identity_folding_embeds_single_root_elements() {
    let r = sr("A2 gamma=trivial levi=all");
    let cb = r.cb();
    for a in r.rrs().roots() {
        let e = RelElement {
            root: a.clone(),
            coords: vec![Rational::from_int(3)],
        };
        let idx = cb.root_index(a).unwrap();
        assert_eq!(r.embed(&e).unwrap(), cb.root_element(idx, &Rational::from_int(3)));
        let zero = RelElement {
            root: a.clone(),
            coords: vec![Rational::from_int(0)],
        };
        assert!(r.embed(&zero).unwrap().is_identity());
    }
    let bad = RelElement {
        root: vec![1, 0],
        coords: vec![Rational::from_int(1); 2],
    };
    assert_eq!(
        r.embed(&bad),
        Err(RelError::WrongLength { expected: 1, got: 2 })
    );
}

#[test]
fn c4_fiber_product() {
    let r = sr("C4 gamma=trivial levi=2,4");
    let fiber = r.fiber(&[1, 0]).unwrap();
    // roots with alpha2-coefficient 1 and alpha4-coefficient 0
    let expected = r
        .rrs()
        .root_system()
        .roots()
        .iter()
        .filter(|x| x.coords[1] == 1 && x.coords[3] == 0)
        .count();
    assert_eq!(fiber.len(), expected);
    assert!(fiber.len() > 1);
    let coords = vec![Rational::from_int(1); fiber.len()];
    let m = r
        .embed(&RelElement {
            root: vec![1, 0],
            coords: coords.clone(),
        })
        .unwrap();
    let mut direct = Matrix::identity(r.cb().dim());
    for &f in fiber {
        direct = direct.mul(&r.cb().root_element(f, &Rational::from_int(1)));
    }
    assert_eq!(m, direct);
}

#[test]
fn c2_commutator_table() {
    let r = sr("C2 gamma=trivial levi=all");
    let t = r.nmaps(&[1, 0], &[0, 1]).unwrap();
    let ij: Vec<(u32, u32)> = t.entries.iter().map(|e| (e.i, e.j)).collect();
    assert_eq!(ij, vec![(1, 1), (2, 1)]);
    let n11 = show(&t.entries[0].coords[0]);
    let n21 = show(&t.entries[1].coords[0]);
    assert!(n11 == "u0*v0" || n11 == "-u0*v0", "{n11}");
    assert!(n21 == "u0^2*v0" || n21 == "-u0^2*v0", "{n21}");
    r.verify_recomposition(&t).unwrap();
    r.verify_homogeneity(&t).unwrap();
    r.verify_fiber_grading(&t).unwrap();
}

#[test]
fn commuting_pair_has_empty_table() {
    let r = sr("A3 gamma=trivial levi=all");
    let t = r.nmaps(&[1, 0, 0], &[0, 0, 1]).unwrap();
    assert!(t.entries.is_empty());
    r.verify_recomposition(&t).unwrap();
    assert!(matches!(
        r.nmaps(&[1, 0, 0], &[-1, 0, 0]),
        Err(RelError::OppositeCollinear(..))
    ));
}

#[test]
fn invariants_on_small_foldings() {
    for spec in [
        "A3 gamma=trivial levi=1,3",
        "B3 gamma=trivial levi=1,2",
        "C3 gamma=trivial levi=1,2",
        "G2 gamma=trivial levi=all",
    ] {
        let r = sr(spec);
        for (a, b) in r.valid_pairs() {
            let t = r.nmaps(&a, &b).unwrap();
            r.verify_recomposition(&t).unwrap();
            r.verify_homogeneity(&t).unwrap();
            r.verify_fiber_grading(&t).unwrap();
        }
    }
}

#[test]
fn simply_laced_n11_coefficients_are_units() {
    let r = sr("A3 gamma=trivial levi=1,3");
    for (a, b) in r.valid_pairs() {
        if !r.rrs().contains(&add_coords(&a, &b)) {
            continue;
        }
        let t = r.nmaps(&a, &b).unwrap();
        let e = t.entry(1, 1).unwrap();
        if r.fiber(&a).unwrap().len() == 1 && r.fiber(&b).unwrap().len() == 1 {
            let c = t.coefficient(e, 0, &[(0, 1)], &[(0, 1)]);
            assert_eq!(c.abs(), 1);
        }
        let rep = r
            .check_n11_surjectivity(&a, &b, N11Case::A { inverted_primes: vec![] })
            .unwrap();
        assert!(rep.witnesses.iter().all(|w| w.coefficient.abs() == 1));
    }
}

#[test]
fn sum_formula() {
    let id = sr("B2 gamma=trivial levi=all");
    for a in id.rrs().roots() {
        assert!(id.check_sum_formula(a).unwrap().is_additive());
    }
    let c3 = sr("C3 gamma=trivial levi=1,2");
    // the extra-short root A2 = pi(alpha3)... 2A exists for the short multiple
    let extra = c3
        .rrs()
        .roots()
        .iter()
        .find(|a| c3.rrs().contains(&a.iter().map(|x| 2 * x).collect::<Vec<_>>()))
        .unwrap()
        .clone();
    let rep = c3.check_sum_formula(&extra).unwrap();
    assert!(!rep.is_additive());
    let (i, w) = &rep.corrections[0];
    assert_eq!(*i, 2);
    assert!(w.iter().any(|p| !p.is_zero()));
}

#[test]
fn n11_cases() {
    let c2 = sr("C2 gamma=trivial levi=all");
    // target 2A1+A2 has coefficient 2
    assert!(c2.applicable_n11_cases(&[1, 0], &[1, 1], &[]).is_empty());
    assert!(matches!(
        c2.check_n11_surjectivity(&[1, 0], &[1, 1], N11Case::B),
        Err(RelError::CaseNotApplicable(_))
    ));
    let rep = c2
        .check_n11_surjectivity(&[1, 0], &[1, 1], N11Case::A { inverted_primes: vec![2] })
        .unwrap();
    assert_eq!(rep.witnesses[0].coefficient.abs(), 2);

    let b3 = sr("B3 gamma=trivial levi=1,2");
    let mut seen_d = false;
    for (a, b) in b3.valid_pairs() {
        if !b3.rrs().contains(&add_coords(&a, &b)) {
            continue;
        }
        if b3.n11_hypothesis(&a, &b, &N11Case::D).is_ok() {
            let rep = b3.check_n11_surjectivity(&a, &b, N11Case::D).unwrap();
            assert_eq!(rep.long_decomposition, Some(true));
            seen_d = true;
        }
    }
    assert!(seen_d);
}

#[test]
fn spanning_lemma2_2() {
    let a3 = sr("A3 gamma=trivial levi=all");
    assert!(a3.spanning_lemma2_2_all(0).unwrap().is_empty());
    let c3 = sr("C3 gamma=trivial levi=1,2");
    let reps = c3.spanning_lemma2_2_all(0).unwrap();
    assert!(!reps.is_empty());
    for r in &reps {
        assert!(r.is_full(), "{r:?}");
    }
}

#[test]
fn spanning_lemma3() {
    let r = check_spanning_lemma3(4, 0).unwrap();
    assert!(r.is_full(), "{r:?}");
    assert!(r.cases.iter().any(|c| c.case.starts_with("long")));
    assert!(matches!(check_spanning_lemma3(3, 0), Err(RelError::Precondition(_))));
}
