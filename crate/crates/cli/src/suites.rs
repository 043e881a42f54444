use anyhow::bail;
use relroot::theoremlab::{
    verify_c2_identities, verify_case_schemas, verify_g2_identities, verify_lemma1_catalog,
    verify_lemma2, verify_lemma3, EpsBinding, Schema, VerificationCase,
};

pub const SUITES: [&str; 7] = ["lemma1", "lemma2", "lemma3", "c2", "g2", "cases", "all"];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max_rank: Option<usize>,
    pub k: Option<u32>,
    pub eps: EpsBinding,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_rank: None,
            k: None,
            eps: EpsBinding::Symbolic,
            seed: 0,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> anyhow::Result<Vec<VerificationCase>> {
    let cases = match name {
        "lemma1" => verify_lemma1_catalog(rank(opts, 6, 8)?),
        "lemma2" => verify_lemma2(rank(opts, 5, 6)?, opts.seed),
        "lemma3" => verify_lemma3(&[4, 6], opts.seed),
        "c2" => ks(opts, &[5, 6, 7])
            .into_iter()
            .flat_map(|k| {
                let (long, short) = verify_c2_identities(k, &opts.eps);
                [long, short]
            })
            .collect(),
        "g2" => {
            let pairs: Vec<(u32, u32)> = match opts.k {
                Some(k) => vec![(k, k)],
                None => vec![(2, 3), (3, 4), (4, 5)],
            };
            pairs
                .into_iter()
                .flat_map(|(kl, ks)| {
                    let (long, short) = verify_g2_identities(kl, ks, &opts.eps);
                    [long, short]
                })
                .collect()
        }
        "cases" => {
            let k = opts.k.unwrap_or(3);
            [
                Schema::F4Long { k },
                Schema::BlPairs { l: 3 },
                Schema::BlPairs { l: 4 },
                Schema::ClBc2 { l: 3, k: opts.k.unwrap_or(4) },
                Schema::ClC2 { l: 4, k },
                Schema::ClC2 { l: 6, k },
            ]
            .into_iter()
            .flat_map(verify_case_schemas)
            .collect()
        }
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                out.extend(run_suite(s, opts)?);
            }
            out
        }
        other => bail!("unknown suite '{other}', expected one of {}", SUITES.join(", ")),
    };
    Ok(cases)
}

fn rank(opts: &SuiteOptions, default: usize, limit: usize) -> anyhow::Result<usize> {
    let r = opts.max_rank.unwrap_or(default);
    if r > limit {
        bail!("--max-rank {r} exceeds the supported limit {limit}");
    }
    Ok(r)
}

fn ks(opts: &SuiteOptions, default: &[u32]) -> Vec<u32> {
    opts.k.map(|k| vec![k]).unwrap_or_else(|| default.to_vec())
}
