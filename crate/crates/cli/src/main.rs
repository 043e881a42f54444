mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use relroot::finitelab::{cap_from_env, perfectness_row};
use relroot::folding::{FoldingSpec, RelativeRootSystem};
use relroot::relcalc::SplitRealization;
use relroot::rootcore::{RootSystem, RootType};
use relroot::theoremlab::EpsBinding;
use relroot::Rational;
use serde_json::{json, Value};

use report::{canonical, SuiteReport};
use suites::{run_suite, SuiteOptions};

/// Root systems, relative root systems and machine checks of the
/// generalized commutator formula.
#[derive(Parser)]
#[command(name = "relroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of an irreducible type.
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
    /// Relative roots, fibers and components of a folding.
    Fold {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Table of the maps N_{ABij} of a pair of relative roots (split case).
    Nmaps {
        #[command(flatten)]
        spec: SpecArgs,
        /// Coordinates of A, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Coordinates of B, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        /// `symbolic` or a rational value with eps^2 != eps.
        #[arg(long, default_value = "symbolic")]
        eps: String,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record the elapsed time in the report (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Order and derived index of the adjoint Chevalley group over F_p.
    Perfect {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        p: u32,
    },
}

#[derive(clap::Args)]
struct SpecArgs {
    #[arg(long = "type")]
    ty: String,
    #[arg(long, default_value = "trivial")]
    gamma: String,
    /// 1-based node list or `all`.
    #[arg(long, default_value = "all")]
    levi: String,
}

impl SpecArgs {
    fn text(&self) -> String {
        format!("{} gamma={} levi={}", self.ty, self.gamma, self.levi)
    }

    fn parse(&self) -> anyhow::Result<FoldingSpec> {
        FoldingSpec::from_str(&self.text()).with_context(|| format!("invalid folding '{}'", self.text()))
    }
}

fn parse_type(s: &str) -> anyhow::Result<RootType> {
    RootType::from_str(s).with_context(|| format!("invalid type '{s}'"))
}

fn parse_coords(s: &str) -> anyhow::Result<Vec<i32>> {
    s.split(',')
        .map(|x| x.trim().parse::<i32>().with_context(|| format!("invalid coordinate list '{s}'")))
        .collect()
}

fn parse_eps(s: &str) -> anyhow::Result<EpsBinding> {
    if s == "symbolic" {
        return Ok(EpsBinding::Symbolic);
    }
    let q = Rational::from_str(s).map_err(|_| anyhow::anyhow!("invalid eps '{s}'"))?;
    Ok(EpsBinding::Value(q))
}

fn cmd_roots(ty: &str) -> anyhow::Result<Value> {
    let rs = RootSystem::new(parse_type(ty)?);
    let roots: Vec<Value> = rs
        .roots()
        .iter()
        .map(|r| json!({ "coords": r.coords, "length": r.length, "height": r.height() }))
        .collect();
    Ok(json!({
        "type": rs.root_type().to_string(),
        "rank": rs.rank(),
        "count": roots.len(),
        "cartan": rs.cartan(),
        "roots": roots,
    }))
}

fn cmd_fold(args: &SpecArgs) -> anyhow::Result<Value> {
    let rrs = RelativeRootSystem::new(args.parse()?);
    let rs = rrs.root_system();
    let roots: Vec<Value> = rrs
        .roots()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let fiber: Vec<&[i32]> = rrs.fiber(i).iter().map(|&r| rs.root(r).coords.as_slice()).collect();
            json!({
                "coords": a,
                "level": RelativeRootSystem::level(a),
                "sign": if RelativeRootSystem::is_positive(a) { "+" } else { "-" },
                "fiber": fiber,
            })
        })
        .collect();
    let components: Vec<Value> = (0..rrs.components().len())
        .map(|c| {
            json!({
                "orbits": rrs.components()[c],
                "type": rrs.classify(c).ok().map(|t| t.to_string()),
            })
        })
        .collect();
    let classified = match rrs.components().len() {
        1 => rrs.classify(0).ok().map(|t| t.to_string()),
        _ => None,
    };
    Ok(json!({
        "spec": rrs.spec().to_string(),
        "rank": rrs.rank(),
        "orbits": rrs.orbits().iter().map(|o| o.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "roots": roots,
        "components": components,
        "type": classified,
    }))
}

fn cmd_nmaps(args: &SpecArgs, a: &str, b: &str) -> anyhow::Result<Value> {
    let sr = SplitRealization::new(args.parse()?)?;
    let (a, b) = (parse_coords(a)?, parse_coords(b)?);
    let table = sr.nmaps(&a, &b)?;
    sr.verify_recomposition(&table)?;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            let coords: Vec<String> = e.coords.iter().map(|p| p.to_string()).collect();
            json!({ "i": e.i, "j": e.j, "target": e.target, "coords": coords })
        })
        .collect();
    Ok(json!({
        "spec": sr.rrs().spec().to_string(),
        "a": a,
        "b": b,
        "fiberA": sr.fiber(&a)?.len(),
        "fiberB": sr.fiber(&b)?.len(),
        "entries": entries,
        "recomposition": "verified",
    }))
}

fn cmd_verify(
    suite: &str,
    opts: &SuiteOptions,
    report_path: Option<&PathBuf>,
    timing: bool,
) -> anyhow::Result<bool> {
    let start = Instant::now();
    let cases = run_suite(suite, opts)?;
    let wall = if timing { start.elapsed().as_secs_f64() } else { 0.0 };
    let report = SuiteReport::new(suite, cases, wall);
    if let Some(path) = report_path {
        report.write(path)?;
    }
    for c in report.cases.iter().filter(|c| c.status == relroot::theoremlab::Status::Fail) {
        eprintln!("FAIL {}: {}", c.id, c.witness);
    }
    let s = report.summary;
    println!("suite {suite}: {} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
    Ok(s.fail == 0)
}

fn cmd_perfect(ty: &str, p: u32) -> anyhow::Result<Value> {
    let t = parse_type(ty)?;
    let row = perfectness_row(t, p, cap_from_env())?;
    Ok(serde_json::to_value(row)?)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let out = match cli.command {
        Command::Roots { ty } => cmd_roots(&ty)?,
        Command::Fold { spec } => cmd_fold(&spec)?,
        Command::Nmaps { spec, a, b } => cmd_nmaps(&spec, &a, &b)?,
        Command::Perfect { ty, p } => cmd_perfect(&ty, p)?,
        Command::Verify { suite, max_rank, k, eps, report, seed, timing } => {
            if !suites::SUITES.contains(&suite.as_str()) {
                bail!("unknown suite '{suite}', expected one of {}", suites::SUITES.join(", "));
            }
            let opts = SuiteOptions { max_rank, k, eps: parse_eps(&eps)?, seed };
            return cmd_verify(&suite, &opts, report.as_ref(), timing);
        }
    };
    print!("{}", canonical(&out));
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
