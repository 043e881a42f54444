use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::{QPoly, Rational};

fn reg() -> Arc<VarRegistry> {
    VarRegistry::new(["Z", "Y", "v", "s", "t", "u", "eps"]).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn var(r: &Arc<VarRegistry>, n: &str) -> QPoly {
    QPoly::var(r, n).unwrap()
}

#[test]
fn additive_cancellation() {
    let r = reg();
    let z = var(&r, "Z");
    let p = &(&z + &QPoly::from_int(1)) + &QPoly::from_int(-1);
    assert_eq!(p, z);
}

#[test]
fn zero_absorbs() {
    let r = reg();
    let p = &(&var(&r, "Z") * &var(&r, "v")) * &QPoly::from_int(0);
    assert!(p.is_zero());
    assert_eq!(p.num_terms(), 0);
    assert_eq!(p.denom_power(), 0);
}

#[test]
fn monomial_product_matches_exponent_addition() {
    let r = reg();
    let (s, t) = (var(&r, "s"), var(&r, "t"));
    let a = &s * &t;
    let b = &(&s * &s) * &t;
    let prod = &a * &b;
    // oracle: add exponent vectors directly
    let si = r.index("s").unwrap();
    let ti = r.index("t").unwrap();
    let mut exps = vec![0u16; r.len()];
    exps[si] = 1 + 2;
    exps[ti] = 1 + 1;
    let expected = QPoly::monomial(&r, Monomial::from_exponents(&exps), q(1));
    assert_eq!(prod, expected);
    assert_eq!(prod.to_string(), "s^3*t^2");
}

#[test]
fn registry_mismatch_is_an_error() {
    let r1 = reg();
    let r2 = VarRegistry::new(["a", "b"]).unwrap();
    let a = var(&r1, "Z");
    let b = QPoly::var(&r2, "a").unwrap();
    assert_eq!(a.checked_add(&b), Err(PolyError::RegistryMismatch));
    assert_eq!(a.checked_mul(&b), Err(PolyError::RegistryMismatch));
    // constants combine with anything
    assert!(a.checked_add(&QPoly::from_int(3)).is_ok());
}

#[test]
fn duplicate_names_rejected() {
    assert!(matches!(
        VarRegistry::new(["x", "x"]),
        Err(PolyError::DuplicateVariable(_))
    ));
}

#[test]
fn identity_substitution() {
    let r = reg();
    let p = &var(&r, "Z").pow(4) * &var(&r, "v");
    let out = p.substitute_named(&[("Z", QPoly::from_int(1))]).unwrap();
    assert_eq!(out, var(&r, "v"));
}

#[test]
fn localization_inverse_at_two() {
    let r = reg();
    let p = QPoly::eps_unit_inverse(&r).unwrap();
    let out = p.substitute_named(&[("eps", QPoly::from_int(2))]).unwrap();
    assert_eq!(out.as_constant(), Some(Rational::new(BigInt::from(1), BigInt::from(2))));
}

#[test]
fn singular_epsilon_rejected() {
    let r = reg();
    let p = QPoly::eps_unit_inverse(&r).unwrap();
    for bad in [0, 1] {
        assert!(matches!(
            p.substitute_named(&[("eps", QPoly::from_int(bad))]),
            Err(PolyError::SingularEpsilon(_))
        ));
    }
    // no denominator: any binding is fine
    let e = var(&r, "eps");
    assert!(e.substitute_named(&[("eps", QPoly::from_int(1))]).is_ok());
}

#[test]
fn substitution_into_localized_argument() {
    let r = reg();
    let (s, t, z, v, eps) = (
        var(&r, "s"),
        var(&r, "t"),
        var(&r, "Z"),
        var(&r, "v"),
        var(&r, "eps"),
    );
    let inv = QPoly::eps_unit_inverse(&r).unwrap();
    let p = &(&s * &s) * &t;
    let t_val = -(&(&(&z * &eps) * &inv) * &v);
    let out = p
        .substitute_named(&[("s", &z * &z), ("t", t_val)])
        .unwrap();
    // term-by-term: (Z^2)^2 * (-Z eps v) / (eps^2-eps) = -Z^5 eps v / (eps^2 - eps)
    let zi = r.index("Z").unwrap();
    let vi = r.index("v").unwrap();
    let ei = r.index("eps").unwrap();
    let mut exps = vec![0u16; r.len()];
    exps[zi] = 5;
    exps[vi] = 1;
    exps[ei] = 1;
    let expected = QPoly::from_terms(&r, [(Monomial::from_exponents(&exps), q(-1))], 1).unwrap();
    assert_eq!(out, expected);
    assert_eq!(out.denom_power(), 1);
}

#[test]
fn localize_divide_examples() {
    let r = reg();
    let one = QPoly::from_int(1);
    let eps = var(&r, "eps");
    let d = &(&eps * &eps) - &eps;
    // 1 -> (eps^2 - eps)^-1
    let a = QPoly::from_int(1).checked_add(&QPoly::zero()).unwrap();
    let a = QPoly::monomial(&r, Monomial::one(), q(1)).checked_mul(&a).unwrap();
    let inv = a.localize_divide().unwrap();
    assert_eq!(inv, QPoly::eps_unit_inverse(&r).unwrap());
    assert_eq!(&inv * &d, one);
    // eps^2 - eps -> 1
    assert_eq!(d.localize_divide().unwrap(), one);
    // eps^3 - eps^2 -> eps (oracle: eps^3 - eps^2 = eps * (eps^2 - eps))
    let c = &(&(&eps * &eps) * &eps) - &(&eps * &eps);
    assert_eq!(&eps * &d, c);
    assert_eq!(c.localize_divide().unwrap(), eps);
}

#[test]
fn localize_needs_eps() {
    let r = VarRegistry::new(["x"]).unwrap();
    let x = QPoly::var(&r, "x").unwrap();
    assert_eq!(x.localize_divide(), Err(PolyError::MissingEpsilon));
}

#[test]
fn display_of_fraction() {
    let r = reg();
    let p = QPoly::eps_unit_inverse(&r).unwrap();
    assert_eq!(p.to_string(), "(1)/(eps^2 - eps)");
}

fn small_reg() -> Arc<VarRegistry> {
    VarRegistry::new(["x", "y", "eps"]).unwrap()
}

prop_compose! {
    fn arb_poly()(terms in prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), -4i64..5), 0..5),
                  denom in 0u32..3) -> QPoly {
        let r = small_reg();
        let terms = terms.into_iter()
            .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), q(k)));
        QPoly::from_terms(&r, terms, denom).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn localize_then_multiply_is_identity(a in arb_poly()) {
        let r = small_reg();
        let eps = QPoly::var(&r, "eps").unwrap();
        let d = &(&eps * &eps) - &eps;
        prop_assert_eq!(&a.localize_divide().unwrap() * &d, a);
    }

    #[test]
    fn substitution_is_multiplicative(a in arb_poly(), b in arb_poly(),
                                      x in -3i64..4, e in 2i64..6) {
        let r = small_reg();
        let mut bind = HashMap::new();
        bind.insert(r.index("x").unwrap(), QPoly::from_int(x));
        bind.insert(r.index("eps").unwrap(), QPoly::from_int(e));
        let lhs = (&a * &b).substitute(&bind).unwrap();
        let rhs = &a.substitute(&bind).unwrap() * &b.substitute(&bind).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_substitution_is_multiplicative(a in arb_poly(), b in arb_poly()) {
        let r = small_reg();
        let y = QPoly::var(&r, "y").unwrap();
        let mut bind = HashMap::new();
        bind.insert(r.index("x").unwrap(), &(&y * &y) + &QPoly::from_int(1));
        let lhs = (&a * &b).substitute(&bind).unwrap();
        let rhs = &a.substitute(&bind).unwrap() * &b.substitute(&bind).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
