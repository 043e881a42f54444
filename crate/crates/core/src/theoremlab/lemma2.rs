use rayon::prelude::*;
use serde_json::{json, Value};

use super::{Status, VerificationCase};
use crate::folding::FoldingSpec;
use crate::relcalc::{check_spanning_lemma3, N11Case, RelError, SplitRealization};
use crate::rootcore::{add_coords, RootType};

/// Surjectivity of `N_{AB11}` for every pair of one folding satisfying the
/// hypothesis of `case`. Skipped when no pair does.
fn n11_case(spec: &str, case: N11Case) -> VerificationCase {
    let label = case.label();
    let base = VerificationCase::new(format!("lemma2/{label}/{spec}"), spec).param("case", label);
    let sr = match SplitRealization::parse(spec) {
        Ok(sr) => sr,
        Err(e) => return base.finish(Err(e.to_string())),
    };
    let pairs: Vec<_> = sr
        .valid_pairs()
        .into_iter()
        .filter(|(a, b)| sr.n11_hypothesis(a, b, &case).is_ok())
        .collect();
    if pairs.is_empty() {
        let mut c = base.param("pairs", 0);
        c.witness = json!("no pair satisfies the hypothesis");
        return c;
    }
    let n = pairs.len();
    let result: Result<Vec<Value>, RelError> = pairs
        .iter()
        .map(|(a, b)| {
            let r = sr.check_n11_surjectivity(a, b, case.clone())?;
            let coeffs: Vec<i64> = r.witnesses.iter().map(|w| w.coefficient).collect();
            Ok(json!([a, b, coeffs]))
        })
        .collect();
    base.param("pairs", n)
        .finish(result.map(|w| json!({ "witnesses": w })).map_err(|e| e.to_string()))
}

/// The `C2` pair `(A1, A1+A2)`: coefficient `+-2` and no case applies.
fn c2_outside() -> VerificationCase {
    const SPEC: &str = "C2 gamma=trivial levi=all";
    let (a, b) = (vec![1, 0], vec![1, 1]);
    let base = VerificationCase::new("lemma2/outside/C2", SPEC).param("pair", json!([a, b]));
    base.finish((|| {
        let sr = SplitRealization::parse(SPEC).map_err(|e| e.to_string())?;
        let cases = sr.applicable_n11_cases(&a, &b, &[]);
        if !cases.is_empty() {
            let labels: Vec<_> = cases.iter().map(N11Case::label).collect();
            return Err(format!("expected no applicable case, got {labels:?}"));
        }
        let t = sr.nmaps(&a, &b).map_err(|e| e.to_string())?;
        let e = t.entry(1, 1).ok_or("no (1,1) component")?;
        let c = t.coefficient(e, 0, &[(0, 1)], &[(0, 1)]);
        if c.abs() != 2 {
            return Err(format!("coefficient {c}, expected +-2"));
        }
        Ok(json!({ "sum": add_coords(&a, &b), "coefficient": c, "applicableCases": [] }))
    })())
}

/// Spanning of `V_{A+B}` for all pairs with `A - B`, `A + B` relative roots.
fn spanning_case(spec: &str, seed: u64) -> VerificationCase {
    let base = VerificationCase::new(format!("lemma2/span/{spec}"), spec).param("seed", seed);
    let reports = match SplitRealization::parse(spec).and_then(|sr| sr.spanning_lemma2_2_all(seed)) {
        Ok(r) => r,
        Err(e) => return base.finish(Err(e.to_string())),
    };
    if reports.is_empty() {
        let mut c = base;
        c.witness = json!("no pair satisfies the hypothesis");
        return c;
    }
    let all_full = reports.iter().all(|r| r.is_full());
    let witness = serde_json::to_value(&reports).expect("serializable");
    if all_full {
        base.finish(Ok(witness))
    } else {
        let mut c = base;
        c.status = Status::Fail;
        c.witness = witness;
        c
    }
}

fn split_specs(filter: impl Fn(RootType) -> bool, max_rank: usize) -> Vec<String> {
    RootType::all_up_to_rank(max_rank)
        .into_iter()
        .filter(|t| filter(*t))
        .flat_map(FoldingSpec::catalog)
        .filter(|s| s.is_split() && !s.levi.is_empty())
        .map(|s| s.to_string())
        .collect()
}

/// Case (a) on every split simply laced folding of rank at most `max_rank`,
/// cases (c) and (d) on the small non-simply-laced witnesses, the `C2`
/// exception and the spanning statement.
pub fn verify_lemma2(max_rank: usize, seed: u64) -> Vec<VerificationCase> {
    let mut jobs: Vec<(String, Option<N11Case>)> = split_specs(|t| t.is_simply_laced(), max_rank)
        .into_iter()
        .map(|s| (s, Some(N11Case::A { inverted_primes: vec![] })))
        .collect();
    for spec in ["B3 gamma=trivial levi=1,2", "B4 gamma=trivial levi=1,2"] {
        jobs.push((spec.to_string(), Some(N11Case::D)));
    }
    jobs.push(("C3 gamma=trivial levi=1,2".to_string(), Some(N11Case::C)));
    for spec in ["B3 gamma=trivial levi=1,2", "C3 gamma=trivial levi=1,2"] {
        jobs.push((spec.to_string(), None));
    }
    let mut out: Vec<VerificationCase> = jobs
        .par_iter()
        .map(|(spec, case)| match case {
            Some(c) => n11_case(spec, c.clone()),
            None => spanning_case(spec, seed),
        })
        .collect();
    out.push(c2_outside());
    out
}

/// The spanning lemma for `C_l`, `J = {alpha_{l/2}, alpha_l}`.
pub fn verify_lemma3(ls: &[usize], seed: u64) -> Vec<VerificationCase> {
    ls.iter()
        .map(|&l| {
            let base = VerificationCase::new(format!("lemma3/l={l}"), format!("C{l} gamma=trivial levi={},{l}", l / 2))
                .param("l", l)
                .param("seed", seed);
            match check_spanning_lemma3(l, seed) {
                Ok(r) if r.is_full() => base.finish(Ok(serde_json::to_value(&r).expect("serializable"))),
                Ok(r) => {
                    let mut c = base;
                    c.status = Status::Fail;
                    c.witness = serde_json::to_value(&r).expect("serializable");
                    c
                }
                Err(e) => base.finish(Err(e.to_string())),
            }
        })
        .collect()
}
