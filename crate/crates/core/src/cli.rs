//! Command-line driver: `pair`, `verify`, `sweep` and `random-cascade`.
//!
//! [`run`] takes the argument list and returns the exit code together with
//! the text destined for stdout and stderr, so the binary stays a one-liner
//! and the commands can be exercised in-process.
//!
//! Exit codes: `0` ok, `1` verification failure, `2` usage or validation error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::lc_space::{random_cascade, CascadeTree};
use crate::limit::{pairing_coherent, pairing_delta, pairing_indicators, sweep, PairingValue, SWEEP_HEADER};
use crate::padic::{check_prime, PAdicPoint, Word};
use crate::scalar::{format_scalar, parse_rational, Rational};
use crate::verify::{self, residue_depth, SuiteReport, LEMMA1_PAIR_CAP};

/// Largest accepted `--depth`.
pub const DEPTH_CAP: usize = 64;
/// Largest number of nodes a generated cascade tree may have.
pub const NODE_CAP: u64 = 1 << 22;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "padic-coherent", version, about = "Free coherent states and distributions on Z_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact pairing of two indicator states, a point and a disk, or a cascade and a disk.
    Pair(PairArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Convergence table of (1 − t)·value(t) at t = 1 − 2^{−k}.
    Sweep(SweepArgs),
    /// Write a seeded random cascade tree as JSON.
    RandomCascade(RandomArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    /// Prime number of letters.
    #[arg(long)]
    p: Option<u32>,
    /// Word length / tree depth / truncation depth.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// t = λ²/p as "num/den", strictly between 0 and 1.
    #[arg(long, default_value = "1/2")]
    t: String,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long = "I", allow_hyphen_values = true)]
    i: Option<String>,
    #[arg(long = "J", allow_hyphen_values = true)]
    j: Option<String>,
    /// Eventually periodic point "pre|period" paired against --J.
    #[arg(long)]
    delta: Option<String>,
    /// Cascade tree JSON paired against --I.
    #[arg(long)]
    cascade: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Theorem,
    Eigen,
    Fock,
    Padic,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Number of random trees for tree-based suites.
    #[arg(long, default_value_t = 100)]
    trees: usize,
    /// Check the theorem identities on this cascade file instead of random trees.
    #[arg(long)]
    cascade: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long = "I", allow_hyphen_values = true)]
    i: String,
    #[arg(long = "J", allow_hyphen_values = true)]
    j: String,
    #[arg(long, default_value_t = 2)]
    kmin: u32,
    #[arg(long, default_value_t = 20)]
    kmax: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct RandomArgs {
    #[command(flatten)]
    common: Common,
}

/// Validated run parameters shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p: u32,
    pub depth: usize,
    pub seed: u64,
    pub t: Rational,
    pub format: Format,
}

impl RunConfig {
    fn from_common(c: &Common, default_depth: usize, default_format: Format) -> Result<Self, Error> {
        let p = check_prime(c.p.unwrap_or(2)).map_err(|e| field("--p", e))?;
        let depth = c.depth.unwrap_or(default_depth);
        if depth > DEPTH_CAP {
            return Err(Error::parse("--depth", format!("{depth} exceeds the cap {DEPTH_CAP}")));
        }
        let t = parse_rational("--t", &c.t)?;
        crate::coherent::check_t(&t).map_err(|e| field("--t", e))?;
        Ok(RunConfig {
            p,
            depth,
            seed: c.seed,
            t,
            format: c.format.unwrap_or(default_format),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn field(name: &str, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(name, message),
        other => Error::parse(name, other.to_string()),
    }
}

fn read_tree(path: &PathBuf) -> Result<CascadeTree, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse("--cascade", format!("{}: {e}", path.display())))?;
    CascadeTree::from_json(&text).map_err(|e| match e {
        Error::CascadeViolation { .. } => e,
        other => field("--cascade", other),
    })
}

/// Sends `body` to `--out` when given, otherwise returns it for stdout.
fn emit(out: &Option<PathBuf>, body: String) -> Result<String, Error> {
    match out {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| Error::parse("--out", format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Pair(a) => cmd_pair(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::RandomCascade(a) => cmd_random_cascade(&a),
    };
    result.unwrap_or_else(|e| Outcome::usage(format!("error: {e}\n")))
}

fn render_pairing(v: &PairingValue, format: Format) -> String {
    match format {
        Format::Json | Format::Csv => v.to_json() + "\n",
        Format::Text => {
            let r = v.report();
            format!(
                "case: {}\npoly: [{}]\ntail_coeff: {}\ntail_start: {}\nlimit: {}\n",
                r.case,
                r.poly.join(", "),
                r.tail_coeff,
                r.tail_start,
                r.limit
            )
        }
    }
}

fn cmd_pair(a: &PairArgs) -> Result<Outcome, Error> {
    let tree = a.cascade.as_ref().map(read_tree).transpose()?;
    let mut common_p = a.common.p;
    if let Some(tree) = &tree {
        match common_p {
            Some(p) if p != tree.p() => {
                return Err(Error::parse("--p", format!("{p} does not match the cascade file's p = {}", tree.p())))
            }
            _ => common_p = Some(tree.p()),
        }
    }
    let cfg = RunConfig::from_common(
        &Common {
            p: common_p,
            depth: a.common.depth,
            seed: a.common.seed,
            t: a.common.t.clone(),
            out: None,
            format: a.common.format,
        },
        5,
        Format::Json,
    )?;
    let word = |name: &str, s: &Option<String>| -> Result<Word, Error> {
        let s = s
            .as_deref()
            .ok_or_else(|| Error::parse(name, "missing"))?;
        Word::parse(cfg.p, s).map_err(|e| field(name, e))
    };
    let value = match (&a.delta, &tree) {
        (Some(_), Some(_)) => {
            return Err(Error::parse("--delta", "cannot be combined with --cascade"));
        }
        (Some(x), None) => {
            let x = PAdicPoint::parse(cfg.p, x).map_err(|e| field("--delta", e))?;
            pairing_delta(&x, &word("--J", &a.j)?)?
        }
        (None, Some(tree)) => {
            pairing_coherent(tree, &word("--I", &a.i)?).map_err(|e| field("--I", e))?
        }
        (None, None) => pairing_indicators(&word("--I", &a.i)?, &word("--J", &a.j)?)?,
    };
    Ok(Outcome::ok(emit(&a.common.out, render_pairing(&value, cfg.format))?))
}

fn run_suites(suite: Suite, cfg: &RunConfig, trees: usize) -> Result<Vec<SuiteReport>, Error> {
    let p = cfg.p;
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut reports = Vec::new();
    if wants(Suite::Padic) {
        let depth = residue_depth(p, cfg.depth.max(1), 256);
        reports.push(verify::padic(p, cfg.seed, 10_000, depth)?);
    }
    if wants(Suite::Fock) {
        reports.push(verify::fock(p, cfg.seed, 100)?);
    }
    if wants(Suite::Lemma1) {
        reports.push(verify::lemma1(p, cfg.depth, LEMMA1_PAIR_CAP)?);
    }
    if wants(Suite::Lemma2) {
        let max_total = if p <= 3 { 4 } else { 2 };
        reports.push(verify::lemma2(p, max_total, cfg.depth)?);
    }
    if wants(Suite::Lemma3) {
        reports.push(verify::lemma3(p, cfg.depth.min(4), cfg.seed, trees.min(10), &cfg.t)?);
    }
    if wants(Suite::Eigen) {
        reports.push(verify::eigen(p, cfg.depth, cfg.seed, trees.min(50), &cfg.t)?);
    }
    if wants(Suite::Theorem) {
        reports.push(verify::theorem(p, cfg.depth, cfg.seed, trees)?);
        reports.push(verify::surjectivity(p, cfg.depth.min(4), cfg.seed, 10)?);
    }
    Ok(reports)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let mut common_p = a.common.p;
    let tree = a.cascade.as_ref().map(read_tree).transpose()?;
    if let Some(tree) = &tree {
        common_p = Some(common_p.unwrap_or(tree.p()));
        if common_p != Some(tree.p()) {
            return Err(Error::parse("--p", "does not match the cascade file"));
        }
    }
    let cfg = RunConfig::from_common(
        &Common {
            p: common_p,
            depth: a.common.depth,
            seed: a.common.seed,
            t: a.common.t.clone(),
            out: None,
            format: a.common.format,
        },
        5,
        Format::Text,
    )?;
    if cfg.depth > 8 && matches!(a.suite, Suite::Theorem | Suite::Eigen | Suite::Lemma1 | Suite::All) {
        return Err(Error::parse("--depth", "verification suites enumerate p^depth nodes; use depth ≤ 8"));
    }
    let reports = match tree {
        Some(tree) => {
            let mut report = SuiteReport::new("theorem", "trees");
            verify::theorem_for_tree(&tree, "cascade file", &mut report)?;
            vec![report]
        }
        None => run_suites(a.suite, &cfg, a.trees)?,
    };
    let ok = reports.iter().all(SuiteReport::ok);
    let mut body = String::new();
    match cfg.format {
        Format::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "suite": r.name,
                        "checked": r.checked,
                        "passed": r.passed,
                        "ok": r.ok(),
                        "counterexample": r.failure,
                    })
                })
                .collect();
            let _ = writeln!(body, "{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Csv => {
            let _ = writeln!(body, "suite,checked,passed,ok");
            for r in &reports {
                let _ = writeln!(body, "{},{},{},{}", r.name, r.checked, r.passed, r.ok());
            }
        }
        Format::Text => {
            for r in &reports {
                let _ = writeln!(body, "{r}");
            }
        }
    }
    let stdout = emit(&a.common.out, body)?;
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    })
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome, Error> {
    let cfg = RunConfig::from_common(&a.common, 60, Format::Csv)?;
    if a.kmin == 0 || a.kmin > a.kmax {
        return Err(Error::parse("--kmin", "need 1 ≤ kmin ≤ kmax"));
    }
    let i = Word::parse(cfg.p, &a.i).map_err(|e| field("--I", e))?;
    let j = Word::parse(cfg.p, &a.j).map_err(|e| field("--J", e))?;
    let value = pairing_indicators(&i, &j)?;
    let rows = sweep(&value, a.kmin, a.kmax, cfg.depth);
    let mut body = String::new();
    match cfg.format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "k": r.k,
                        "t": r.t.to_string(),
                        "value": format_scalar(&r.value),
                        "truncated_value": format_scalar(&r.truncated_value),
                        "scaled_value": format_scalar(&r.scaled_value),
                        "limit": format_scalar(&r.limit),
                        "abs_error": r.abs_error.to_string(),
                    })
                })
                .collect();
            let _ = writeln!(body, "{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Csv | Format::Text => {
            let _ = writeln!(body, "{SWEEP_HEADER}");
            for r in &rows {
                let _ = writeln!(body, "{}", r.csv());
            }
        }
    }
    Ok(Outcome::ok(emit(&a.common.out, body)?))
}

fn cmd_random_cascade(a: &RandomArgs) -> Result<Outcome, Error> {
    let cfg = RunConfig::from_common(&a.common, 3, Format::Json)?;
    let nodes: u64 = (0..=cfg.depth as u32)
        .map(|k| (cfg.p as u64).saturating_pow(k))
        .fold(0u64, u64::saturating_add);
    if nodes > NODE_CAP {
        return Err(Error::parse(
            "--depth",
            format!("a depth-{} tree over p = {} has more than {NODE_CAP} nodes", cfg.depth, cfg.p),
        ));
    }
    let tree = random_cascade(cfg.p, cfg.depth, cfg.seed)?;
    Ok(Outcome::ok(emit(&a.common.out, tree.to_json() + "\n")?))
}
