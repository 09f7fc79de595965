//! Comparison of computed series against `F_{n,r,d}`.

use serde::{Deserialize, Serialize};

use super::{run_trials, HilbertResult, JobSpec, Mode, StopReason};
use crate::series::{conjectured_series, lex_geq, IntSeries};
use crate::{par, Error, Result};

/// Outcome of checking one parameter set against the expected series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub spec: JobSpec,
    /// The series of the first attaining trial, or else the coefficientwise
    /// minimum over all trials.
    pub computed: IntSeries,
    pub conjectured: IntSeries,
    /// Set when the comparison only covers degrees up to this cap.
    pub compared_up_to: Option<u32>,
    /// `computed - conjectured`.
    pub delta: IntSeries,
    pub attained: bool,
    pub attaining_trials: Vec<u32>,
    /// Every trial is lexicographically at least the expected series, as any
    /// specialisation must be. False signals a bug, not a counterexample.
    pub lex_consistent: bool,
    pub trials: Vec<HilbertResult>,
}

fn conjectured_for(spec: &JobSpec, trials: &[HilbertResult]) -> Result<(IntSeries, Option<u32>)> {
    let cap = spec.effective_max_degree()?;
    let conj = conjectured_series(spec.n, spec.r, spec.d, Some(cap as usize))?;
    let capped = trials.iter().any(|t| t.stop_reason == StopReason::HitCap)
        || conj.truncated_at.is_some();
    if capped {
        Ok((conj.series.truncated_to(cap as usize), Some(cap)))
    } else {
        Ok((conj.series, None))
    }
}

/// Builds the verdict for already computed trials of `spec`.
pub fn verdict_from_trials(spec: &JobSpec, trials: Vec<HilbertResult>) -> Result<Verdict> {
    if trials.is_empty() {
        return Err(Error::InvalidParameters("no trials to judge".into()));
    }
    let (conjectured, compared_up_to) = conjectured_for(spec, &trials)?;
    let view = |t: &HilbertResult| match compared_up_to {
        Some(cap) => t.series.truncated_to(cap as usize),
        None => t.series.clone(),
    };
    let attaining_trials: Vec<u32> = trials
        .iter()
        .filter(|t| view(t) == conjectured)
        .map(|t| t.trial)
        .collect();
    let computed = match attaining_trials.first() {
        Some(&t) => view(trials.iter().find(|x| x.trial == t).expect("listed trial")),
        None => trials
            .iter()
            .map(view)
            .reduce(|a, b| a.coeffwise_min(&b))
            .expect("nonempty"),
    };
    let horizon = trials
        .iter()
        .map(|t| t.dims.len())
        .max()
        .unwrap_or(0)
        .max(conjectured.len());
    let lex_consistent = trials
        .iter()
        .all(|t| lex_geq(&view(t), &conjectured, horizon));
    let delta = computed.checked_sub(&conjectured)?;
    Ok(Verdict {
        spec: spec.clone(),
        attained: !attaining_trials.is_empty(),
        computed,
        conjectured,
        compared_up_to,
        delta,
        attaining_trials,
        lex_consistent,
        trials,
    })
}

/// Runs every trial of `spec` and reports whether any of them attains
/// `F_{n,r,d}`. One attaining example suffices: a specialisation never has
/// smaller dimensions than the generic ideal, and the generic series is at
/// least `F_{n,r,d}`.
pub fn verify_conjecture(spec: &JobSpec) -> Result<Verdict> {
    let trials = run_trials(spec)?;
    verdict_from_trials(spec, trials)
}

/// `Q_{n,r,d}` candidate against `F_{n,r,d}` over several seeds and primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowersComparison {
    pub n: u32,
    pub r: u32,
    pub d: u32,
    /// Coefficientwise minimum over all runs; random choices can only raise
    /// dimensions.
    pub q_candidate: IntSeries,
    pub conjectured: IntSeries,
    pub delta: IntSeries,
    /// All runs produced the same series.
    pub consensus: bool,
    pub runs: Vec<HilbertResult>,
}

/// Runs [`Mode::LinearPowers`] for every `(prime, trial)` pair derived from
/// `base` (its `mode` and `prime` are overridden).
pub fn compare_powers(base: &JobSpec, primes: &[u64]) -> Result<PowersComparison> {
    if primes.is_empty() {
        return Err(Error::InvalidParameters("at least one prime is required".into()));
    }
    let specs: Vec<JobSpec> = primes
        .iter()
        .map(|&p| JobSpec {
            mode: Mode::LinearPowers,
            prime: p,
            ..base.clone()
        })
        .collect();
    for s in &specs {
        s.validate()?;
    }
    let per_prime = par::try_map(&specs, run_trials)?;
    let runs: Vec<HilbertResult> = per_prime.into_iter().flatten().collect();
    let q_candidate = runs
        .iter()
        .map(|r| r.series.clone())
        .reduce(|a, b| a.coeffwise_min(&b))
        .expect("at least one run");
    let consensus = runs.iter().all(|r| r.series == runs[0].series);
    let conjectured = conjectured_series(base.n, base.r, base.d, None)?.series;
    let delta = q_candidate.checked_sub(&conjectured)?;
    Ok(PowersComparison {
        n: base.n,
        r: base.r,
        d: base.d,
        q_candidate,
        conjectured,
        delta,
        consensus,
        runs,
    })
}

/// One [`verify_conjecture`] per `r` in `r_from..=r_to`, in order of `r`.
pub fn sweep(base: &JobSpec, r_from: u32, r_to: u32) -> Result<Vec<Verdict>> {
    if r_from > r_to {
        return Err(Error::InvalidParameters(format!(
            "empty r range {r_from}..={r_to}"
        )));
    }
    let specs: Vec<JobSpec> = (r_from..=r_to)
        .map(|r| JobSpec { r, ..base.clone() })
        .collect();
    for s in &specs {
        s.validate()?;
    }
    par::try_map(&specs, verify_conjecture)
}
