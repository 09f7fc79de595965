//! JSON run reports.

use serde::{Deserialize, Serialize};

use genhilb_core::engine::{
    DegreeStats, HilbertResult, JobSpec, PowersComparison, StopReason, Verdict,
};
use genhilb_core::series::IntSeries;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Compute,
    Verify,
    Compare,
    Sweep,
}

/// One trial as it appears in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub prime: u64,
    pub trial: u32,
    pub trial_seed: u64,
    pub dims: Vec<u64>,
    pub series: IntSeries,
    pub stop_reason: StopReason,
    pub degrees: Vec<DegreeStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl From<&HilbertResult> for TrialReport {
    fn from(h: &HilbertResult) -> Self {
        Self {
            prime: h.spec.prime,
            trial: h.trial,
            trial_seed: h.trial_seed,
            dims: h.dims.clone(),
            series: h.series.clone(),
            stop_reason: h.stop_reason,
            degrees: h.degrees.clone(),
            elapsed_ms: h.elapsed_ms,
        }
    }
}

/// Everything needed to audit and replay one run. Unknown fields are ignored
/// when reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: Command,
    pub spec: JobSpec,
    /// Every prime used; a single entry except for `compare`.
    pub primes: Vec<u64>,
    pub trials: Vec<TrialReport>,
    pub computed: IntSeries,
    pub conjectured: IntSeries,
    /// Degree cap of the comparison when the expected series is only an
    /// initial segment or a trial hit the cap.
    #[serde(default)]
    pub compared_up_to: Option<u32>,
    pub delta: IntSeries,
    #[serde(default)]
    pub attained: Option<bool>,
    #[serde(default)]
    pub expect_attained: Option<bool>,
    #[serde(default)]
    pub consensus: Option<bool>,
    /// How strongly the result is established.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn status_for(spec: &JobSpec, attained: bool) -> String {
    use genhilb_core::engine::Mode;
    match (spec.mode, attained) {
        (Mode::LinearPowers, true) => "Q = F verified over F_p".into(),
        (Mode::LinearPowers, false) => "Q != F in every run over F_p".into(),
        (_, true) => "attained: the generic series equals F".into(),
        (_, false) => "not attained in any trial".into(),
    }
}

impl RunReport {
    fn base(command: Command, spec: &JobSpec, trials: Vec<TrialReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command,
            spec: spec.clone(),
            primes: vec![spec.prime],
            trials,
            computed: IntSeries::zero(),
            conjectured: IntSeries::zero(),
            compared_up_to: None,
            delta: IntSeries::zero(),
            attained: None,
            expect_attained: None,
            consensus: None,
            status: String::new(),
            elapsed_ms: None,
        }
    }

    /// `compute`: the first trial's series against `F`.
    pub fn from_compute(v: &Verdict) -> Self {
        let first = &v.trials[0];
        let view = match v.compared_up_to {
            Some(cap) => first.series.truncated_to(cap as usize),
            None => first.series.clone(),
        };
        let delta = view
            .checked_sub(&v.conjectured)
            .expect("series of bounded size");
        let mut r = Self::base(
            Command::Compute,
            &v.spec,
            v.trials.iter().map(TrialReport::from).collect(),
        );
        r.computed = first.series.clone();
        r.conjectured = v.conjectured.clone();
        r.compared_up_to = v.compared_up_to;
        r.status = if delta.is_zero() {
            "equals F".into()
        } else {
            "differs from F".into()
        };
        r.delta = delta;
        r
    }

    pub fn from_verdict(command: Command, v: &Verdict, expect: Option<bool>) -> Self {
        let mut r = Self::base(command, &v.spec, v.trials.iter().map(TrialReport::from).collect());
        r.computed = v.computed.clone();
        r.conjectured = v.conjectured.clone();
        r.compared_up_to = v.compared_up_to;
        r.delta = v.delta.clone();
        r.attained = Some(v.attained);
        r.expect_attained = expect;
        r.status = status_for(&v.spec, v.attained);
        r
    }

    pub fn from_comparison(base: &JobSpec, primes: &[u64], c: &PowersComparison) -> Self {
        let mut spec = base.clone();
        spec.mode = genhilb_core::engine::Mode::LinearPowers;
        spec.prime = primes[0];
        let mut r = Self::base(Command::Compare, &spec, c.runs.iter().map(TrialReport::from).collect());
        r.primes = primes.to_vec();
        r.computed = c.q_candidate.clone();
        r.conjectured = c.conjectured.clone();
        r.delta = c.delta.clone();
        r.attained = Some(c.delta.is_zero());
        r.consensus = Some(c.consensus);
        r.status = match (c.delta.is_zero(), c.consensus) {
            (true, _) => "Q = F verified over F_p".into(),
            (false, true) => {
                "Q - F nonzero, identical in every run: conjecture supported over F_p, not a proof"
                    .into()
            }
            (false, false) => "Q - F nonzero, runs disagree: minimum reported".into(),
        };
        r
    }

    /// Drops every wall-clock field so that reports compare byte for byte.
    pub fn strip_timing(&mut self) {
        self.elapsed_ms = None;
        for t in &mut self.trials {
            t.elapsed_ms = None;
        }
    }

    /// Total trial time, when recorded.
    pub fn total_trial_ms(&self) -> Option<u64> {
        self.trials.iter().map(|t| t.elapsed_ms).sum()
    }
}
