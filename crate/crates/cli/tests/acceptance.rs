//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;
use relroot::{Rational, Ring};
use relroot::chevalley::ChevalleyBasis;
use relroot::finitelab::{perfectness_row, DEFAULT_CAP};
use relroot::folding::FoldingSpec;
use relroot::relcalc::SplitRealization;
use relroot::rootcore::{RootSystem, RootType, Series};
use relroot::theoremlab::{
    verify_c2_identities, verify_case_schemas, verify_g2_identities, verify_lemma1_catalog,
    verify_lemma2, verify_lemma3, EpsBinding, Schema, Status, VerificationCase,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_pass(cases: &[VerificationCase]) -> Result<(), String> {
    match cases.iter().find(|c| c.status != Status::Pass) {
        Some(c) => Err(format!("{} is {:?}: {}", c.id, c.status, c.witness)),
        None => Ok(()),
    }
}

/// Largest |C_ij| over all pairs of one type.
fn max_constant(t: RootType) -> Result<i64, String> {
    let cb = ChevalleyBasis::new(RootSystem::new(t)).map_err(|e| e.to_string())?;
    let rs = cb.root_system();
    let n = rs.len();
    let mut max = 0;
    for a in 0..n {
        for b in 0..n {
            if a == b || rs.negative_index(a) == b {
                continue;
            }
            let roots = cb.commutator_roots(a, b);
            let consts: Vec<i64> = if roots.iter().all(|&(i, j, _)| (i, j) == (1, 1)) {
                roots.iter().map(|_| cb.n(a, b)).collect()
            } else {
                let row = cb.commutator_constants(a, b).map_err(|e| e.to_string())?;
                if row.len() != roots.len() {
                    return Err(format!("{t}: a commutator constant vanishes"));
                }
                row.iter().map(|term| term.constant).collect()
            };
            for c in consts {
                if !matches!(c.abs(), 1..=3) {
                    return Err(format!("{t}: constant {c} out of range"));
                }
                max = max.max(c.abs());
            }
        }
    }
    Ok(max)
}

fn criterion1() -> Outcome {
    let types = RootType::all_up_to_rank(8);
    let maxes: Vec<(RootType, i64)> = types
        .par_iter()
        .map(|&t| max_constant(t).map(|m| (t, m)))
        .collect::<Result<_, _>>()?;
    let with = |m: i64| -> Vec<RootType> { maxes.iter().filter(|x| x.1 == m).map(|x| x.0).collect() };
    let twos = with(2);
    let min_rank_two = twos.iter().map(|t| t.rank).min();
    let first_two_ok = min_rank_two == Some(2)
        && twos
            .iter()
            .filter(|t| t.rank == 2)
            .all(|t| matches!(t.series, Series::B | Series::C));
    let threes = with(3);
    let g2_only = threes.len() == 1 && threes[0].series == Series::G;
    if !first_two_ok || !g2_only {
        return Err(format!("max 2 in {twos:?}, max 3 in {threes:?}"));
    }
    Ok(format!("{} types, constants in {{+-1,+-2,+-3}}, 3 only in G2", types.len()))
}

fn criterion2() -> Outcome {
    let specs: Vec<FoldingSpec> = RootType::all_up_to_rank(5)
        .into_iter()
        .flat_map(FoldingSpec::catalog)
        .filter(|s| s.is_split() && !s.levi.is_empty())
        .collect();
    let counts: Vec<usize> = specs
        .par_iter()
        .map(|spec| {
            let sr = SplitRealization::new(spec.clone()).map_err(|e| e.to_string())?;
            let pairs = sr.valid_pairs();
            pairs
                .par_iter()
                .map(|(a, b)| {
                    let t = sr.nmaps(a, b).map_err(|e| format!("{spec} {a:?} {b:?}: {e}"))?;
                    sr.verify_recomposition(&t)
                        .map_err(|e| format!("{spec} {a:?} {b:?}: {e}"))
                })
                .collect::<Result<Vec<()>, String>>()?;
            Ok(pairs.len())
        })
        .collect::<Result<_, String>>()?;
    Ok(format!(
        "{} pairs over {} split foldings recompose exactly",
        counts.iter().sum::<usize>(),
        specs.len()
    ))
}

fn criterion3() -> Outcome {
    let cases = verify_lemma1_catalog(6);
    let fails: Vec<_> = cases.iter().filter(|c| c.status == Status::Fail).map(|c| &c.id).collect();
    if !fails.is_empty() {
        return Err(format!("{} failures, first {}", fails.len(), fails[0]));
    }
    let pass = cases.iter().filter(|c| c.status == Status::Pass).count();
    Ok(format!("{} foldings, {pass} with rank >= 2 components, 0 failures", cases.len()))
}

fn criterion4() -> Outcome {
    let cases = verify_lemma2(5, 0);
    if let Some(c) = cases.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("{}: {}", c.id, c.witness));
    }
    let needed = [
        "lemma2/d/B3 gamma=trivial levi=1,2",
        "lemma2/d/B4 gamma=trivial levi=1,2",
        "lemma2/c/C3 gamma=trivial levi=1,2",
        "lemma2/outside/C2",
    ];
    for id in needed {
        match cases.iter().find(|c| c.id == id) {
            Some(c) if c.status == Status::Pass => {}
            _ => return Err(format!("{id} did not pass")),
        }
    }
    let case_a = cases
        .iter()
        .filter(|c| c.id.starts_with("lemma2/a/") && c.status == Status::Pass)
        .count();
    Ok(format!("case a on {case_a} foldings, cases c and d, C2 pair outside all cases"))
}

fn criterion5() -> Outcome {
    let cases = verify_lemma3(&[4, 6], 0);
    all_pass(&cases)?;
    for c in &cases {
        let fields: Vec<&str> = c.witness["fields"]
            .as_array()
            .map(|a| a.iter().filter_map(|f| f["field"].as_str()).collect())
            .unwrap_or_default();
        if fields != ["Q", "F2", "F3", "F5"] {
            return Err(format!("{}: fields {fields:?}", c.id));
        }
    }
    Ok("l = 4, 6 full rank over Q, F2, F3, F5".into())
}

fn criterion6() -> Outcome {
    let mut cases = Vec::new();
    for k in [5, 6, 7] {
        for eps in [EpsBinding::Symbolic, EpsBinding::Value(Rational::from_int(2))] {
            let (l, s) = verify_c2_identities(k, &eps);
            cases.extend([l, s]);
        }
    }
    for (kl, ks) in [(2, 3), (3, 4), (4, 5)] {
        let (l, s) = verify_g2_identities(kl, ks, &EpsBinding::Symbolic);
        cases.extend([l, s]);
    }
    let f4 = verify_case_schemas(Schema::F4Long { k: 3 });
    if f4.len() != 24 {
        return Err(format!("F4 schema has {} cases", f4.len()));
    }
    cases.extend(f4);
    cases.extend(verify_case_schemas(Schema::ClBc2 { l: 3, k: 4 }));
    cases.extend(verify_case_schemas(Schema::ClC2 { l: 4, k: 3 }));
    all_pass(&cases)?;
    Ok(format!("{} identity and schema cases", cases.len()))
}

fn criterion7() -> Outcome {
    let expected = [("A2", 2, 168, 1), ("C2", 2, 720, 2), ("G2", 2, 12096, 2), ("C2", 3, 25920, 1)];
    let mut got = Vec::new();
    for (t, p, order, index) in expected {
        let row = perfectness_row(t.parse().unwrap(), p, DEFAULT_CAP).map_err(|e| e.to_string())?;
        if row.order != Some(order) || row.derived_index != Some(index) {
            return Err(format!("({t},{p}): order {:?}, index {:?}", row.order, row.derived_index));
        }
        got.push(format!("({t},{p}) {order}/{index}"));
    }
    Ok(got.join(", "))
}

fn criterion8() -> Outcome {
    let dir = std::env::temp_dir().join(format!("relroot-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_relroot"))
            .args(["verify", "--suite", "all", "--seed", "0", "--report"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("exit {:?}", status.status.code()));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let (a, b) = (run("a.json")?, run("b.json")?);
    let _ = std::fs::remove_dir_all(&dir);
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("two reports of {} bytes are identical", a.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("structure constants", criterion1),
        ("recomposition exactness", criterion2),
        ("decomposition catalog", criterion3),
        ("surjectivity cases", criterion4),
        ("spanning", criterion5),
        ("identities and schemas", criterion6),
        ("finite groups", criterion7),
        ("determinism", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} PASS {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
