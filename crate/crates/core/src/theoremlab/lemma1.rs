use rayon::prelude::*;
use serde_json::json;

use super::{Status, VerificationCase};
use crate::folding::{FoldingSpec, RelativeRootSystem};
use crate::rootcore::RootType;

/// Decompose every relative root of one folding and re-check each split.
pub fn verify_lemma1_spec(spec: &FoldingSpec) -> VerificationCase {
    let rrs = RelativeRootSystem::new(spec.clone());
    let mut splits = Vec::new();
    let mut skipped = 0usize;
    let mut failures = Vec::new();
    for a in rrs.roots() {
        let comp = rrs.component_of(a).expect("nonzero root");
        if rrs.components()[comp].len() < 2 {
            skipped += 1;
            continue;
        }
        match rrs.decompose(a) {
            Ok((b, c)) => match rrs.check_decomposition(a, &b, &c) {
                Ok(()) => splits.push(json!([a, b, c])),
                Err(e) => failures.push(format!("{a:?}: {e}")),
            },
            Err(e) => failures.push(format!("{a:?}: {e}")),
        }
    }
    let mut case = VerificationCase::new(format!("lemma1/{spec}"), spec.to_string())
        .param("roots", rrs.len())
        .param("skippedRankOne", skipped);
    if !failures.is_empty() {
        case.status = Status::Fail;
        case.witness = json!({ "failures": failures });
    } else if splits.is_empty() {
        case.status = Status::Skipped;
        case.witness = json!("every relative root lies in a rank-1 component");
    } else {
        case.status = Status::Pass;
        case.witness = json!({ "decompositions": splits });
    }
    case
}

/// Every type of rank at most `max_rank`, every automorphism group and
/// every invariant Levi set.
pub fn verify_lemma1_catalog(max_rank: usize) -> Vec<VerificationCase> {
    assert!(max_rank <= 8, "catalog is limited to rank 8");
    let specs: Vec<FoldingSpec> = RootType::all_up_to_rank(max_rank)
        .into_iter()
        .flat_map(FoldingSpec::catalog)
        .collect();
    specs.par_iter().map(verify_lemma1_spec).collect()
}
