//! The Hilbert series pipeline.
//!
//! For a ring `S` (either `k[x]` or `A = k[x]/(x_1^d..x_n^d)`) and extra
//! generators `g_1..g_s` of degree `d`, the ideal's degree-`D` piece in `S` is
//! spanned by the products `m * g_j` with `m` running over the basis of
//! `S_{D-d}`. Writing those products on the basis of `S_D` gives a matrix
//! `M_D`, and `dim R_D = dim S_D - rank M_D`.
//!
//! Any particular choice of coefficients yields dimensions at least those of
//! the generic choice (the rank can only drop under specialisation). When the
//! computed series equals the lower bound `F_{n,r,d}`, that single example
//! therefore determines the generic series.

mod forms;
mod verdict;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use forms::{
    form_seed, linear_power_coeffs, make_generic_form, make_linear_power_form, trial_seed, FormRep,
};
pub use verdict::{compare_powers, sweep, verify_conjecture, PowersComparison, Verdict};

use crate::basis::{GradedBasis, MAX_VARS};
use crate::linalg::{FpMatrix, PrimeField, Schedule, SplitMix64, DEFAULT_PRIME};
use crate::series::IntSeries;
use crate::{par, Error, Result};

/// Largest generator degree; exponents are stored in 8 bits and products of
/// degree-`d` forms must stay representable.
pub const MAX_GEN_DEGREE: u32 = 16;

/// How the generators are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `(x_1^d, ..., x_n^d)` plus `r - n` random forms, computed in `A`.
    PurePlusGeneric,
    /// `(x_1^d, ..., x_n^d)` plus `r - n` powers `l^d` of random linear forms.
    LinearPowers,
    /// `r` random forms in the full polynomial ring.
    DirectGeneric,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::PurePlusGeneric, Mode::LinearPowers, Mode::DirectGeneric];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::PurePlusGeneric => "pure-plus-generic",
            Mode::LinearPowers => "linear-powers",
            Mode::DirectGeneric => "direct-generic",
        }
    }

    /// Whether the first `n` generators are the pure powers `x_i^d`.
    pub fn uses_pure_powers(self) -> bool {
        !matches!(self, Mode::DirectGeneric)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown mode {s:?}")))
    }
}

/// Parameters of one experiment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JobSpec {
    /// Number of variables.
    pub n: u32,
    /// Total number of generators, pure powers included.
    pub r: u32,
    /// Degree of every generator.
    pub d: u32,
    pub mode: Mode,
    pub prime: u64,
    pub seed: u64,
    /// Last degree computed. `None` picks `n(d-1)+1` where that is known to
    /// suffice.
    pub max_degree: Option<u32>,
    pub trials: u32,
}

impl JobSpec {
    pub fn new(n: u32, r: u32, d: u32, mode: Mode) -> Self {
        Self {
            n,
            r,
            d,
            mode,
            prime: DEFAULT_PRIME,
            seed: 42,
            max_degree: None,
            trials: 1,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_prime(mut self, prime: u64) -> Self {
        self.prime = prime;
        self
    }

    pub fn with_trials(mut self, trials: u32) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_max_degree(mut self, max_degree: Option<u32>) -> Self {
        self.max_degree = max_degree;
        self
    }

    /// Checks the parameter envelope and returns the prime field.
    pub fn validate(&self) -> Result<PrimeField> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if !(1..=MAX_VARS as u32).contains(&self.n) {
            return bad(format!("n must be in 1..={MAX_VARS}, got {}", self.n));
        }
        if !(2..=MAX_GEN_DEGREE).contains(&self.d) {
            return bad(format!("d must be in 2..={MAX_GEN_DEGREE}, got {}", self.d));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.mode.uses_pure_powers() && self.r < self.n {
            return bad(format!(
                "{} needs r >= n (the pure powers are generators), got r={} n={}",
                self.mode, self.r, self.n
            ));
        }
        if self.mode == Mode::DirectGeneric && self.r < self.n && self.max_degree.is_none() {
            return Err(Error::MissingCap(format!(
                "direct-generic with r={} < n={}",
                self.r, self.n
            )));
        }
        if let Some(cap) = self.max_degree {
            if cap > u32::from(u8::MAX) {
                return bad(format!("max degree {cap} exceeds 255"));
            }
        }
        let field = PrimeField::new(self.prime)?;
        if self.prime <= u64::from(self.d) {
            return Err(Error::PrimeTooSmall {
                prime: self.prime,
                degree: self.d,
            });
        }
        Ok(field)
    }

    /// The degree cap actually used.
    pub fn effective_max_degree(&self) -> Result<u32> {
        match self.max_degree {
            Some(cap) => Ok(cap),
            None if self.mode == Mode::DirectGeneric && self.r < self.n => Err(Error::MissingCap(
                format!("direct-generic with r={} < n={}", self.r, self.n),
            )),
            // socle degree of A plus one; also bounds any quotient by >= n
            // generic forms of degree d
            None => Ok(self.n * (self.d - 1) + 1),
        }
    }

    /// Number of random generators drawn per trial.
    pub fn random_generators(&self) -> u32 {
        if self.mode.uses_pure_powers() {
            self.r - self.n
        } else {
            self.r
        }
    }

    /// The monomial ring the computation runs in, built up to the cap.
    pub fn ring(&self) -> Result<GradedBasis> {
        let cap = self.effective_max_degree()?;
        Ok(if self.mode.uses_pure_powers() {
            GradedBasis::bounded(self.n as usize, self.d, cap.min(self.n * (self.d - 1)))
        } else {
            GradedBasis::full(self.n as usize, cap)
        })
    }
}

/// Why the degree loop ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// Some `dim R_D` was zero; the series is complete.
    ReachedZero,
    /// The degree cap was reached with `dim R_cap > 0`.
    HitCap,
}

/// Matrix shape and rank at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

/// Per-degree dimensions of `R = S / I` from degree zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSeries {
    pub dims: Vec<u64>,
    pub degrees: Vec<DegreeStats>,
    pub stop_reason: StopReason,
}

/// Options for [`ideal_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesOptions {
    pub max_degree: u32,
    /// Stop at the first zero dimension. When false every degree up to the
    /// cap is computed.
    pub stop_at_zero: bool,
    pub schedule: Schedule,
}

/// The multiplication matrix `M_D`: one row per `(generator, monomial)` pair,
/// generators outermost, columns indexed by the degree-`degree` basis.
pub fn degree_matrix(ring: &GradedBasis, field: PrimeField, gens: &[FormRep], degree: u32) -> FpMatrix {
    let cols = ring.dim(degree);
    let mut rows_per_gen = Vec::with_capacity(gens.len());
    let mut total_rows = 0;
    for g in gens {
        let k = degree
            .checked_sub(g.degree())
            .map_or(0, |low| ring.dim(low));
        rows_per_gen.push(k);
        total_rows += k;
    }
    let mut m = FpMatrix::zeros(field, total_rows, cols);
    if total_rows == 0 || cols == 0 {
        return m;
    }
    // row index -> (generator, first row of that generator)
    let mut starts = Vec::with_capacity(gens.len());
    let mut acc = 0;
    for &k in &rows_per_gen {
        starts.push(acc);
        acc += k;
    }
    let terms: Vec<_> = gens.iter().map(|g| g.terms(ring)).collect();
    par::for_each_chunk_mut(m.raw_rows_mut(), cols, |row_idx, row| {
        let g = starts.partition_point(|&s| s <= row_idx) - 1;
        let low = degree - gens[g].degree();
        let mon = ring.degree(low)[row_idx - starts[g]];
        for (u, c) in &terms[g] {
            if let Some(v) = ring.product(&mon, u) {
                let (_, pos) = ring.index(&v).expect("product lies in the ring");
                let slot = &mut row[pos as usize];
                *slot = field.add(crate::linalg::Fp(*slot), *c).value();
            }
        }
    });
    m
}

/// Dimensions of `ring / (gens)` degree by degree.
pub fn ideal_series(
    ring: &GradedBasis,
    field: PrimeField,
    gens: &[FormRep],
    opts: SeriesOptions,
) -> Result<IdealSeries> {
    let mut dims = Vec::new();
    let mut degrees = Vec::new();
    for degree in 0..=opts.max_degree {
        let cols = ring.dim(degree);
        let m = degree_matrix(ring, field, gens, degree);
        let rows = m.rows();
        let rank = if rows == 0 || cols == 0 {
            0
        } else {
            m.rank_with(opts.schedule)
        };
        let dim = (cols - rank) as u64;
        dims.push(dim);
        degrees.push(DegreeStats {
            degree,
            rows,
            cols,
            rank,
        });
        if dim == 0 && opts.stop_at_zero {
            break;
        }
    }
    let stop_reason = if dims.last() == Some(&0) {
        StopReason::ReachedZero
    } else {
        StopReason::HitCap
    };
    Ok(IdealSeries {
        dims,
        degrees,
        stop_reason,
    })
}

/// Output of one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertResult {
    pub spec: JobSpec,
    pub trial: u32,
    pub trial_seed: u64,
    pub dims: Vec<u64>,
    pub series: IntSeries,
    pub stop_reason: StopReason,
    pub degrees: Vec<DegreeStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Random generators of one trial, written on `ring`.
pub fn trial_generators(spec: &JobSpec, ring: &GradedBasis, field: PrimeField, trial: u32) -> Vec<FormRep> {
    let seed = trial_seed(spec.seed, trial);
    (0..spec.random_generators())
        .map(|j| {
            let mut rng = SplitMix64::new(form_seed(seed, j));
            match spec.mode {
                Mode::PurePlusGeneric | Mode::DirectGeneric => {
                    make_generic_form(ring, spec.d, field, &mut rng)
                }
                Mode::LinearPowers => make_linear_power_form(ring, spec.d, field, &mut rng),
            }
        })
        .collect()
}

/// Runs trial `trial` of `spec` on a prebuilt ring (see [`JobSpec::ring`]).
pub fn run_trial(spec: &JobSpec, ring: &GradedBasis, trial: u32, schedule: Schedule) -> Result<HilbertResult> {
    let field = spec.validate()?;
    let cap = spec.effective_max_degree()?;
    let start = Instant::now();
    let gens = trial_generators(spec, ring, field, trial);
    let run = ideal_series(
        ring,
        field,
        &gens,
        SeriesOptions {
            max_degree: cap,
            stop_at_zero: true,
            schedule,
        },
    )?;
    Ok(HilbertResult {
        spec: spec.clone(),
        trial,
        trial_seed: trial_seed(spec.seed, trial),
        series: IntSeries::from_dims(&run.dims)?,
        dims: run.dims,
        stop_reason: run.stop_reason,
        degrees: run.degrees,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Hilbert series of the first trial of `spec`.
pub fn hilbert_series(spec: &JobSpec) -> Result<HilbertResult> {
    spec.validate()?;
    let ring = spec.ring()?;
    run_trial(spec, &ring, 0, Schedule::Parallel)
}

/// Every trial of `spec`, in trial order.
pub fn run_trials(spec: &JobSpec) -> Result<Vec<HilbertResult>> {
    spec.validate()?;
    let ring = spec.ring()?;
    let trials: Vec<u32> = (0..spec.trials).collect();
    par::try_map(&trials, |&t| run_trial(spec, &ring, t, Schedule::Parallel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::ExponentVector;
    use crate::linalg::oracle::rank_oracle;
    use crate::series::{conjectured_series, expand_quotient};

    fn s(c: &[i64]) -> IntSeries {
        IntSeries::new(c.to_vec())
    }

    #[test]
    fn monomial_complete_intersection() {
        let spec = JobSpec::new(2, 2, 2, Mode::PurePlusGeneric);
        let res = hilbert_series(&spec).unwrap();
        assert_eq!(res.series, s(&[1, 2, 1]));
        assert_eq!(res.dims, vec![1, 2, 1, 0]);
        assert_eq!(res.stop_reason, StopReason::ReachedZero);

        let spec = JobSpec::new(2, 2, 3, Mode::PurePlusGeneric);
        assert_eq!(hilbert_series(&spec).unwrap().series, s(&[1, 2, 3, 2, 1]));
    }

    #[test]
    fn four_quadrics_in_three_variables() {
        let spec = JobSpec::new(3, 4, 2, Mode::PurePlusGeneric).with_seed(1);
        let res = hilbert_series(&spec).unwrap();
        assert_eq!(res.series, s(&[1, 3, 2]));
        assert_eq!(res.series, conjectured_series(3, 4, 2, None).unwrap().series);

        // every rank cross-checked by minors
        let field = spec.validate().unwrap();
        let ring = spec.ring().unwrap();
        let gens = trial_generators(&spec, &ring, field, 0);
        for st in &res.degrees {
            let m = degree_matrix(&ring, field, &gens, st.degree);
            assert_eq!((m.rows(), m.cols()), (st.rows, st.cols));
            assert_eq!(rank_oracle(&m).unwrap(), st.rank);
        }
    }

    #[test]
    fn low_degrees_untouched() {
        for (n, d) in [(4, 2), (5, 3), (3, 4)] {
            let spec = JobSpec::new(n, n + 2, d, Mode::PurePlusGeneric);
            let res = hilbert_series(&spec).unwrap();
            assert_eq!(res.dims[0], 1);
            assert_eq!(res.dims[1], u64::from(n));
            for deg in 0..d {
                assert_eq!(res.degrees[deg as usize].rows, 0);
            }
        }
    }

    #[test]
    fn single_variable_square() {
        let spec = JobSpec::new(1, 1, 2, Mode::PurePlusGeneric);
        assert_eq!(hilbert_series(&spec).unwrap().series, s(&[1, 1]));
    }

    #[test]
    fn direct_mode_complete_intersections() {
        for n in 1..=4u32 {
            for r in 0..=n {
                for d in 2..=3u32 {
                    let cap = 7;
                    let spec = JobSpec::new(n, r, d, Mode::DirectGeneric).with_max_degree(Some(cap));
                    let res = hilbert_series(&spec).unwrap();
                    let raw = expand_quotient(n, r, d, cap as usize).unwrap();
                    assert_eq!(res.series, raw, "n={n} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn direct_mode_needs_cap_below_n() {
        let spec = JobSpec::new(3, 1, 2, Mode::DirectGeneric);
        assert!(matches!(spec.validate(), Err(Error::MissingCap(_))));
        let spec = spec.with_max_degree(Some(4));
        let res = hilbert_series(&spec).unwrap();
        assert_eq!(res.stop_reason, StopReason::HitCap);
        assert_eq!(res.dims.len(), 5);
    }

    #[test]
    fn invalid_specs() {
        let base = JobSpec::new(3, 4, 2, Mode::PurePlusGeneric);
        assert!(JobSpec { r: 2, ..base.clone() }.validate().is_err());
        assert!(JobSpec { n: 0, ..base.clone() }.validate().is_err());
        assert!(JobSpec { n: 17, ..base.clone() }.validate().is_err());
        assert!(JobSpec { d: 1, ..base.clone() }.validate().is_err());
        assert!(JobSpec { trials: 0, ..base.clone() }.validate().is_err());
        assert_eq!(base.clone().with_prime(21).validate(), Err(Error::NotPrime(21)));
        assert_eq!(
            JobSpec { d: 3, ..base.clone() }.with_prime(3).validate(),
            Err(Error::PrimeTooSmall { prime: 3, degree: 3 })
        );
        assert!(base.validate().is_ok());
    }

    #[test]
    fn zero_propagates_upward() {
        for (n, r, d) in [(3, 4, 2), (4, 6, 2), (3, 5, 3), (4, 5, 3)] {
            let spec = JobSpec::new(n, r, d, Mode::PurePlusGeneric);
            let field = spec.validate().unwrap();
            let cap = n * (d - 1) + 1;
            let ring = GradedBasis::bounded(n as usize, d, cap);
            let gens = trial_generators(&spec, &ring, field, 0);
            let full = ideal_series(
                &ring,
                field,
                &gens,
                SeriesOptions {
                    max_degree: cap,
                    stop_at_zero: false,
                    schedule: Schedule::Sequential,
                },
            )
            .unwrap();
            let first_zero = full.dims.iter().position(|&x| x == 0).unwrap();
            assert!(full.dims[first_zero..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn mode_parsing() {
        for m in Mode::ALL {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
        }
        assert!("generic".parse::<Mode>().is_err());
        assert_eq!(serde_json::to_string(&Mode::LinearPowers).unwrap(), "\"linear-powers\"");
    }

    #[test]
    fn monomial_form_helper() {
        let ring = GradedBasis::full(2, 2);
        let g = FormRep::monomial(&ring, &ExponentVector::pure_power(2, 1, 2));
        assert_eq!(g.degree(), 2);
        assert_eq!(g.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }
}
