//! Command-line frontend: congruence verification, identity suites, and
//! p-adic Gamma queries, with deterministic JSON/CSV report emission.
//!
//! Exit codes: 0 all verified, 1 congruence violation on a proven
//! statement (or identity suite failure), 2 usage error, 3 I/O or
//! internal arithmetic error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pcl_core::exactnum::{parse_rational, PadicContext, Valuation};
use pcl_core::identities::{run_identity_suite, IdentityId, SampleConfig, SuiteReport};
use pcl_core::pgamma::{gamma_p, GammaProvider};
use pcl_core::verifier::{
    enumerate_cases, probe_valuation, verify_case, CaseReport, StatementId, Verdict,
};
use pcl_core::Error as CoreError;

/// Environment variable that overrides the default cache directory (the
/// --cache-dir flag wins over both).
const CACHE_DIR_ENV: &str = "PCL_CACHE_DIR";

/// Test-fixture knob: when set to a statement tag, that statement's table
/// entry is deliberately corrupted (its target exponent is bumped by one
/// and verdicts are re-derived from exact probed valuations), so the
/// failure exit path can be exercised against real arithmetic.
const CORRUPT_ENV: &str = "PCL_SELFTEST_CORRUPT";

#[derive(Parser)]
#[command(
    name = "pcl",
    version,
    about = "Exact verification of truncated hypergeometric congruences and p-adic Gamma values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Gamma table cache directory (default: PCL_CACHE_DIR or "cache").
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Keep real per-case wall times in reports. Off by default so that
    /// reports are byte-identical across runs and worker counts.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify congruence statements over a (p, r) grid.
    Verify(CaseArgs),
    /// Verify the auxiliary finite congruences (the L-tags).
    Lemmas(CaseArgs),
    /// Run the exact identity-check suites.
    Identities(IdentityArgs),
    /// Evaluate the p-adic Gamma function at one point.
    Gamma(GammaArgs),
}

#[derive(Args)]
struct CaseArgs {
    /// Statement tags to run (repeatable); defaults to every proven main
    /// statement for `verify` and to every L-tag for `lemmas`.
    #[arg(long = "statement")]
    statements: Vec<String>,

    /// Smallest prime to include.
    #[arg(long, default_value_t = 3)]
    p_min: u64,

    /// Largest prime to include.
    #[arg(long, default_value_t = 31)]
    p_max: u64,

    /// Smallest r to include.
    #[arg(long, default_value_t = -9, allow_negative_numbers = true)]
    r_min: i64,

    /// Largest r to include (at most 1).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    r_max: i64,

    /// Replace clamped valuations with exact probed ones (escalating
    /// Gamma precision as needed).
    #[arg(long)]
    probe: bool,
}

#[derive(Args)]
struct IdentityArgs {
    /// Identity tags to run (repeatable); defaults to all of them.
    #[arg(long = "identity")]
    identities: Vec<String>,

    /// Samples per suite (for SYM tags: how many admissible r to take).
    #[arg(long, default_value_t = 50)]
    samples: u32,

    /// Sampler seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Largest left truncation n drawn by the sampler.
    #[arg(long, default_value_t = 6)]
    max_n: u64,

    /// Largest right truncation m drawn by the sampler.
    #[arg(long, default_value_t = 6)]
    max_m: u64,
}

#[derive(Args)]
struct GammaArgs {
    /// The (odd) prime p.
    #[arg(long)]
    p: u64,

    /// Evaluation point, a p-integral rational like 1/3 or -2.
    #[arg(long, allow_negative_numbers = true)]
    x: String,

    /// Precision exponent n: the value is reported mod p^n.
    #[arg(long, default_value_t = 1)]
    precision: u32,
}

/// A failure with a chosen process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

/// Core errors from report-producing runs are internal arithmetic
/// failures, not usage errors: the inputs were already validated.
fn internal(err: CoreError) -> Failure {
    Failure { code: 3, message: err.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let jobs = match cli.jobs {
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        Some(j) => j,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::io(format!("failed to build worker pool: {e}")))?;

    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("cache"));
    let provider = GammaProvider::new(Some(cache_dir));

    match &cli.command {
        Command::Verify(args) => {
            let defaults: Vec<StatementId> = StatementId::ALL
                .into_iter()
                .filter(|s| !s.is_lemma() && !s.is_conjectural())
                .collect();
            let statements = parse_statements(&args.statements, &defaults, |_| true)?;
            pool.install(|| cmd_cases(&cli, &provider, args, &statements))
        }
        Command::Lemmas(args) => {
            let defaults: Vec<StatementId> =
                StatementId::ALL.into_iter().filter(|s| s.is_lemma()).collect();
            let statements = parse_statements(&args.statements, &defaults, |s| s.is_lemma())
                .map_err(|f| {
                    Failure::usage(format!("{} (lemmas accepts L-tags only)", f.message))
                })?;
            pool.install(|| cmd_cases(&cli, &provider, args, &statements))
        }
        Command::Identities(args) => cmd_identities(&cli, args),
        Command::Gamma(args) => cmd_gamma(&provider, args),
    }
}

fn parse_statements(
    requested: &[String],
    defaults: &[StatementId],
    allowed: impl Fn(&StatementId) -> bool,
) -> Result<Vec<StatementId>, Failure> {
    if requested.is_empty() {
        return Ok(defaults.to_vec());
    }
    let mut out = Vec::new();
    for raw in requested {
        let id = StatementId::from_str(raw)
            .map_err(|_| Failure::usage(format!("--statement {raw}: unknown tag")))?;
        if !allowed(&id) {
            return Err(Failure::usage(format!("--statement {raw}: tag not allowed here")));
        }
        if !out.contains(&id) {
            out.push(id);
        }
    }
    out.sort();
    Ok(out)
}

fn validate_case_args(args: &CaseArgs) -> Result<(), Failure> {
    if args.p_max < 3 {
        return Err(Failure::usage("--p-max must be at least 3 (no odd prime below that)"));
    }
    if args.p_min > args.p_max {
        return Err(Failure::usage("--p-min exceeds --p-max"));
    }
    if args.r_max > 1 {
        return Err(Failure::usage("--r-max must be at most 1"));
    }
    if args.r_min > args.r_max {
        return Err(Failure::usage("--r-min exceeds --r-max"));
    }
    Ok(())
}

fn cmd_cases(
    cli: &Cli,
    provider: &GammaProvider,
    args: &CaseArgs,
    statements: &[StatementId],
) -> Result<u8, Failure> {
    validate_case_args(args)?;
    let corrupt_tag = std::env::var(CORRUPT_ENV).ok();

    let mut reports: Vec<CaseReport> = Vec::new();
    for &statement in statements {
        let corrupted = corrupt_tag.as_deref() == Some(statement.tag());
        let cases: Vec<(u64, i64)> = enumerate_cases(statement, args.p_max, args.r_min)
            .into_iter()
            .filter(|&(p, r)| p >= args.p_min && r <= args.r_max)
            .collect();
        let mut batch = cases
            .par_iter()
            .map(|&(p, r)| {
                let mut report = verify_case(provider, statement, p, r)?;
                if args.probe || corrupted {
                    let (valuation, at_least) = probe_valuation(provider, statement, p, r)?;
                    report.valuation = valuation;
                    report.at_least = at_least;
                    report.verdict = if valuation >= Valuation::Finite(report.target as i64) {
                        Verdict::Holds
                    } else {
                        Verdict::Fails
                    };
                }
                Ok(report)
            })
            .collect::<Result<Vec<_>, CoreError>>()
            .map_err(internal)?;
        if corrupted {
            for report in &mut batch {
                report.target += 1;
                report.verdict = if report.valuation >= Valuation::Finite(report.target as i64) {
                    Verdict::Holds
                } else {
                    Verdict::Fails
                };
            }
        }
        reports.extend(batch);
    }

    reports.sort_by_key(|c| (c.statement, c.p, c.r));
    if !cli.timings {
        for report in &mut reports {
            report.elapsed_ms = 0;
        }
    }
    emit(cli, &case_reports_payload(&reports))?;

    let violation =
        reports.iter().any(|c| !c.statement.is_conjectural() && c.verdict == Verdict::Fails);
    Ok(if violation { 1 } else { 0 })
}

fn cmd_identities(cli: &Cli, args: &IdentityArgs) -> Result<u8, Failure> {
    if args.samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let ids: Vec<IdentityId> = if args.identities.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        let mut out = Vec::new();
        for raw in &args.identities {
            let id = IdentityId::from_str(raw)
                .map_err(|_| Failure::usage(format!("--identity {raw}: unknown tag")))?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        out
    };
    let cfg = SampleConfig {
        seed: args.seed,
        samples: args.samples,
        max_n: args.max_n,
        max_m: args.max_m,
        ..SampleConfig::default()
    };
    let mut reports = Vec::new();
    for id in IdentityId::ALL {
        if ids.contains(&id) {
            reports.push(run_identity_suite(id, &cfg).map_err(internal)?);
        }
    }
    emit(cli, &suite_reports_payload(&reports))?;
    let failed = reports.iter().any(|s| s.verdict != Verdict::Holds);
    Ok(if failed { 1 } else { 0 })
}

fn cmd_gamma(provider: &GammaProvider, args: &GammaArgs) -> Result<u8, Failure> {
    let x = parse_rational(&args.x).map_err(|e| Failure::usage(format!("--x {}: {e}", args.x)))?;
    let ctx = PadicContext::new(args.p, args.precision).map_err(|e| {
        Failure::usage(format!("--p {} --precision {}: {e}", args.p, args.precision))
    })?;
    let value = gamma_p(provider, &x, &ctx).map_err(|e| match e {
        CoreError::NotPIntegral { .. } => Failure::usage(format!("--x {}: {e}", args.x)),
        CoreError::Range(_) => Failure::usage(format!("--precision {}: {e}", args.precision)),
        other => internal(other),
    })?;
    println!("Gamma_p({}) mod {}^{} = {}", x, args.p, args.precision, value.value());
    Ok(0)
}

/// The serialized report body, already newline-terminated.
fn case_reports_payload(reports: &[CaseReport]) -> Payload<'_> {
    Payload::Cases(reports)
}

fn suite_reports_payload(reports: &[SuiteReport]) -> Payload<'_> {
    Payload::Suites(reports)
}

enum Payload<'a> {
    Cases(&'a [CaseReport]),
    Suites(&'a [SuiteReport]),
}

fn emit(cli: &Cli, payload: &Payload<'_>) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Json => {
            let json = match payload {
                Payload::Cases(reports) => serde_json::to_string_pretty(reports),
                Payload::Suites(reports) => serde_json::to_string_pretty(reports),
            }
            .map_err(|e| Failure::io(format!("serialization failed: {e}")))?;
            format!("{json}\n")
        }
        Format::Csv => match payload {
            Payload::Cases(reports) => cases_to_csv(reports),
            Payload::Suites(reports) => suites_to_csv(reports),
        },
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::io(format!("cannot write report: {e}"))),
    }
}

fn cases_to_csv(reports: &[CaseReport]) -> String {
    let mut out = String::from("statement,p,r,target,valuation,at_least,verdict,elapsed_ms\n");
    for c in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.statement, c.p, c.r, c.target, c.valuation, c.at_least, c.verdict, c.elapsed_ms
        ));
    }
    out
}

fn suites_to_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from("identity,samples,passes,failures,skipped_poles,verdict\n");
    for s in reports {
        let failures = s.failures.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.identity, s.samples, s.passes, failures, s.skipped_poles, s.verdict
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case_args(p_min: u64, p_max: u64, r_min: i64, r_max: i64) -> CaseArgs {
        CaseArgs { statements: vec![], p_min, p_max, r_min, r_max, probe: false }
    }

    #[test]
    fn case_arg_validation() {
        assert!(validate_case_args(&case_args(3, 31, -9, 1)).is_ok());
        assert!(validate_case_args(&case_args(3, 2, -9, 1)).is_err());
        assert!(validate_case_args(&case_args(11, 7, -9, 1)).is_err());
        assert!(validate_case_args(&case_args(3, 31, -9, 2)).is_err());
        assert!(validate_case_args(&case_args(3, 31, 0, -1)).is_err());
    }

    #[test]
    fn statement_parsing_applies_defaults_and_filters() {
        let defaults = vec![StatementId::T1P5];
        let got = parse_statements(&[], &defaults, |_| true).unwrap();
        assert_eq!(got, defaults);
        let got =
            parse_statements(&["L31".into(), "L31".into()], &defaults, |s| s.is_lemma()).unwrap();
        assert_eq!(got, vec![StatementId::L31]);
        assert!(parse_statements(&["NOPE".into()], &defaults, |_| true).is_err());
        assert!(parse_statements(&["T1_P5".into()], &defaults, |s| s.is_lemma()).is_err());
    }

    #[test]
    fn csv_formats_match_schema() {
        let report = CaseReport {
            statement: StatementId::GlsP4,
            p: 7,
            r: 1,
            target: 4,
            valuation: Valuation::Finite(4),
            at_least: false,
            verdict: Verdict::Holds,
            elapsed_ms: 0,
        };
        let csv = cases_to_csv(&[report]);
        assert_eq!(
            csv,
            "statement,p,r,target,valuation,at_least,verdict,elapsed_ms\n\
             GLS_P4,7,1,4,4,false,HOLDS,0\n"
        );
        let empty = cases_to_csv(&[]);
        assert_eq!(empty.lines().count(), 1);
    }

    #[test]
    fn json_payload_uses_fixed_key_order() {
        let report = CaseReport {
            statement: StatementId::T1P5,
            p: 11,
            r: 1,
            target: 5,
            valuation: Valuation::Infinite,
            at_least: false,
            verdict: Verdict::Holds,
            elapsed_ms: 0,
        };
        let json = serde_json::to_string(&[report]).unwrap();
        assert_eq!(
            json,
            "[{\"statement\":\"T1_P5\",\"p\":11,\"r\":1,\"target\":5,\
             \"valuation\":\"inf\",\"at_least\":false,\"verdict\":\"HOLDS\",\"elapsed_ms\":0}]"
        );
    }
}
