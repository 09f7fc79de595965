//! Command-line front end: argument parsing, rendering and persistence.
//!
//! Exit codes: `0` success, `1` error, `2` the `--expect-attained`
//! expectation did not hold.

pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use genhilb_core::engine::{self, JobSpec, Mode, StopReason};
use genhilb_core::linalg::DEFAULT_PRIME;
use genhilb_core::par;
use genhilb_core::series::conjectured_series;

pub use report::{Command, RunReport, TrialReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

/// Second prime used by `compare` unless `--primes` says otherwise.
pub const SECOND_PRIME: u64 = 1_000_000_007;

#[derive(Debug, Parser)]
#[command(name = "genhilb", version, about = "Hilbert series of ideals of generic forms over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the JSON report (an array for sweeps) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Leave wall-clock times out of reports.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    PurePlusGeneric,
    LinearPowers,
    DirectGeneric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PurePlusGeneric => Mode::PurePlusGeneric,
            ModeArg::LinearPowers => Mode::LinearPowers,
            ModeArg::DirectGeneric => Mode::DirectGeneric,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 'r')]
    pub r: u32,
    #[arg(short = 'd')]
    pub d: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::PurePlusGeneric)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    #[arg(long)]
    pub max_degree: Option<u32>,
}

impl RunArgs {
    pub fn spec(&self) -> JobSpec {
        JobSpec {
            n: self.n,
            r: self.r,
            d: self.d,
            mode: self.mode.into(),
            prime: self.prime,
            seed: self.seed,
            max_degree: self.max_degree,
            trials: self.trials,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Print F_{n,r,d} = [(1-t^d)^r / (1-t)^n].
    Conjecture {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'd')]
        d: u32,
        /// Required when r < n.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Compute the Hilbert series of one job.
    Compute(RunArgs),
    /// Check whether some trial attains F_{n,r,d}.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Exit with 2 unless F is attained.
        #[arg(long)]
        expect_attained: bool,
    },
    /// Compare powers of linear forms against F over several seeds and primes.
    Compare {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [DEFAULT_PRIME, SECOND_PRIME])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Verify every r in a range.
    Sweep {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long)]
        r_from: u32,
        #[arg(long)]
        r_to: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::PurePlusGeneric)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

/// Result of one invocation, before anything is printed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    /// `None` for `conjecture`, which has no run report.
    pub reports: Option<Reports>,
    pub exit_code: i32,
}

#[derive(Debug, Clone)]
pub enum Reports {
    Single(RunReport),
    Many(Vec<RunReport>),
}

impl Reports {
    pub fn to_json(&self) -> Result<String> {
        Ok(match self {
            Reports::Single(r) => serde_json::to_string_pretty(r)?,
            Reports::Many(rs) => serde_json::to_string_pretty(rs)?,
        })
    }
}

fn header(spec: &JobSpec) -> String {
    format!(
        "n={} r={} d={} mode={} prime={} seed={} trials={} max_degree={}",
        spec.n,
        spec.r,
        spec.d,
        spec.mode,
        spec.prime,
        spec.seed,
        spec.trials,
        spec.max_degree
            .map_or_else(|| "auto".to_string(), |c| c.to_string())
    )
}

fn stop_label(s: StopReason) -> &'static str {
    match s {
        StopReason::ReachedZero => "reached zero",
        StopReason::HitCap => "hit cap",
    }
}

fn render_run(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", header(&report.spec));
    for t in &report.trials {
        let _ = write!(
            out,
            "  trial {} prime {} seed {:#018x}: {} [{}]",
            t.trial,
            t.prime,
            t.trial_seed,
            t.series,
            stop_label(t.stop_reason)
        );
        if let Some(ms) = t.elapsed_ms {
            let _ = write!(out, " {ms} ms");
        }
        out.push('\n');
    }
    let label = match report.command {
        Command::Compare => "Q candidate",
        _ => "series",
    };
    let _ = writeln!(out, "{label}: {}", report.computed);
    let _ = write!(out, "conjectured: {}", report.conjectured);
    if let Some(cap) = report.compared_up_to {
        let _ = write!(out, " (compared up to degree {cap})");
    }
    out.push('\n');
    let _ = writeln!(out, "delta: {}", report.delta);
    if let Some(c) = report.consensus {
        let _ = writeln!(out, "consensus: {c} ({} runs)", report.trials.len());
    }
    if let Some(a) = report.attained {
        let _ = writeln!(out, "attained: {}", if a { "yes" } else { "no" });
    }
    let _ = writeln!(out, "status: {}", report.status);
    out
}

fn finish(mut report: RunReport, no_timing: bool, started: Instant) -> RunReport {
    report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    if no_timing {
        report.strip_timing();
    }
    report
}

/// Executes one command inside a pool of `--jobs` threads.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    par::with_threads(cli.jobs, || execute_inner(cli))?
}

/// Re-runs the job echoed by a report and returns the fresh report.
pub fn replay(report: &RunReport) -> Result<RunReport> {
    let spec = &report.spec;
    let started = Instant::now();
    let fresh = match report.command {
        Command::Compute => RunReport::from_compute(&engine::verify_conjecture(spec)?),
        Command::Verify | Command::Sweep => RunReport::from_verdict(
            report.command,
            &engine::verify_conjecture(spec)?,
            report.expect_attained,
        ),
        Command::Compare => {
            let c = engine::compare_powers(spec, &report.primes)?;
            RunReport::from_comparison(spec, &report.primes, &c)
        }
    };
    Ok(finish(fresh, false, started))
}

fn execute_inner(cli: &Cli) -> Result<Outcome> {
    let started = Instant::now();
    match &cli.command {
        Cmd::Conjecture { n, r, d, max_degree } => {
            let f = conjectured_series(*n, *r, *d, max_degree.map(|c| c as usize))
                .context("computing the expected series")?;
            let mut text = f.series.to_string();
            if f.truncated_at.is_some() {
                text.push_str(" (truncated at cap)");
            }
            if cli.format == Format::Json {
                text = serde_json::to_string(&f)?;
            }
            text.push('\n');
            Ok(Outcome {
                text,
                reports: None,
                exit_code: EXIT_OK,
            })
        }
        Cmd::Compute(run) => {
            let verdict = engine::verify_conjecture(&run.spec())?;
            let report = finish(RunReport::from_compute(&verdict), cli.no_timing, started);
            Ok(single(cli.format, report, EXIT_OK))
        }
        Cmd::Verify {
            run,
            expect_attained,
        } => {
            let verdict = engine::verify_conjecture(&run.spec())?;
            let expect = expect_attained.then_some(true);
            let code = match expect {
                Some(want) if want != verdict.attained => EXIT_MISMATCH,
                _ => EXIT_OK,
            };
            let report = finish(
                RunReport::from_verdict(Command::Verify, &verdict, expect),
                cli.no_timing,
                started,
            );
            Ok(single(cli.format, report, code))
        }
        Cmd::Compare {
            n,
            r,
            d,
            trials,
            primes,
            seed,
            max_degree,
        } => {
            if primes.is_empty() {
                bail!("--primes must list at least one prime");
            }
            let base = JobSpec {
                n: *n,
                r: *r,
                d: *d,
                mode: Mode::LinearPowers,
                prime: primes[0],
                seed: *seed,
                max_degree: *max_degree,
                trials: *trials,
            };
            let cmp = engine::compare_powers(&base, primes)?;
            let report = finish(
                RunReport::from_comparison(&base, primes, &cmp),
                cli.no_timing,
                started,
            );
            Ok(single(cli.format, report, EXIT_OK))
        }
        Cmd::Sweep {
            n,
            d,
            r_from,
            r_to,
            mode,
            prime,
            seed,
            trials,
            max_degree,
        } => {
            let base = JobSpec {
                n: *n,
                r: *r_from,
                d: *d,
                mode: (*mode).into(),
                prime: *prime,
                seed: *seed,
                max_degree: *max_degree,
                trials: *trials,
            };
            let verdicts = engine::sweep(&base, *r_from, *r_to)?;
            let reports: Vec<RunReport> = verdicts
                .iter()
                .map(|v| {
                    let mut rep = RunReport::from_verdict(Command::Sweep, v, None);
                    if cli.no_timing {
                        rep.strip_timing();
                    }
                    rep
                })
                .collect();
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                Format::Text => render_sweep(&base, &reports),
            };
            Ok(Outcome {
                text,
                reports: Some(Reports::Many(reports)),
                exit_code: EXIT_OK,
            })
        }
    }
}

fn single(format: Format, report: RunReport, exit_code: i32) -> Outcome {
    let text = match format {
        Format::Text => render_run(&report),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    Outcome {
        text,
        reports: Some(Reports::Single(report)),
        exit_code,
    }
}

fn render_sweep(base: &JobSpec, reports: &[RunReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n={} d={} mode={} prime={} seed={} trials={}",
        base.n, base.d, base.mode, base.prime, base.seed, base.trials
    );
    let _ = writeln!(out, "{:>4}  {:<13}  {}", "r", "result", "delta");
    for rep in reports {
        let attained = rep.attained == Some(true);
        let _ = writeln!(
            out,
            "{:>4}  {:<13}  {}",
            rep.spec.r,
            if attained { "attained" } else { "not attained" },
            rep.delta
        );
    }
    out
}
