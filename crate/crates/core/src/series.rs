//! Exact integer power series.
//!
//! An [`IntSeries`] stores the coefficients `a_0, a_1, ...` of a power series
//! that is zero beyond its last stored entry. Every arithmetic operation is
//! checked; overflow is an error, never a wraparound.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coefficient sequence of an integer power series, kept without trailing
/// zeros. The zero series has no coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSeries {
    coeffs: Vec<i64>,
}

impl IntSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_dims(dims: &[u64]) -> Result<Self> {
        let coeffs = dims
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("dimension to series")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero past the stored range.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the highest nonzero term, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncated_to(&self, max_degree: usize) -> Self {
        let end = self.coeffs.len().min(max_degree + 1);
        Self::new(self.coeffs[..end].to_vec())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let len = self.len().max(other.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_sub(other.coeff(i))
                    .ok_or(Error::Overflow("series subtraction"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let len = self.len().max(other.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .ok_or(Error::Overflow("series addition"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Full product of two polynomials.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i64; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or(Error::Overflow("series product"))?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficientwise minimum, treating absent coefficients as zero.
    pub fn coeffwise_min(&self, other: &Self) -> Self {
        let len = self.len().max(other.len());
        Self::new((0..len).map(|i| self.coeff(i).min(other.coeff(i))).collect())
    }

    /// True when the coefficients read as palindromes.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl From<Vec<i64>> for IntSeries {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<IntSeries> for Vec<i64> {
    fn from(s: IntSeries) -> Self {
        s.coeffs
    }
}

/// Renders as `1 + 12t + 64t^2 - t^7`; zero terms are omitted and the zero
/// series prints as `0`.
impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, false) => f.write_str(" + ")?,
                (false, true) => f.write_str(" - ")?,
            }
            first = false;
            if i == 0 || mag != 1 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Keeps coefficients while every coefficient so far is strictly positive;
/// everything from the first coefficient `<= 0` onward becomes zero.
pub fn truncate_positive(s: &IntSeries) -> IntSeries {
    let cut = s
        .coeffs
        .iter()
        .position(|&a| a <= 0)
        .unwrap_or(s.coeffs.len());
    IntSeries::new(s.coeffs[..cut].to_vec())
}

/// `C(n, k)` with overflow detection; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial"))?
            / u128::from(i + 1);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

/// Coefficients of `(1 - t^d)^r / (1 - t)^n` for degrees `0..=max_degree`,
/// without any truncation.
pub fn expand_quotient(n: u32, r: u32, d: u32, max_degree: usize) -> Result<IntSeries> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidParameters("d must be at least 1".into()));
    }
    let n1 = u64::from(n - 1);
    let d = d as usize;
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    for deg in 0..=max_degree {
        let mut acc: i64 = 0;
        for j in 0..=r as usize {
            let Some(rest) = deg.checked_sub(j * d) else {
                break;
            };
            let term = binomial(u64::from(r), j as u64)?
                .checked_mul(binomial(n1 + rest as u64, n1)?)
                .ok_or(Error::Overflow("expand_quotient"))?;
            acc = if j % 2 == 0 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            }
            .ok_or(Error::Overflow("expand_quotient"))?;
        }
        coeffs.push(acc);
    }
    Ok(IntSeries::new(coeffs))
}

/// `(1 + t + ... + t^{d-1})^n`, the Hilbert series of a complete intersection
/// of `n` forms of degree `d` in `n` variables.
pub fn complete_intersection(n: u32, d: u32) -> Result<IntSeries> {
    IntSeries::new(vec![1; d as usize]).checked_pow(n)
}

/// The expected series `F_{n,r,d} = [(1-t^d)^r / (1-t)^n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjectured {
    pub series: IntSeries,
    /// `Some(cap)` when the expansion never turns nonpositive (`r < n`) and
    /// the series is only an initial segment up to `cap`.
    pub truncated_at: Option<usize>,
}

impl Conjectured {
    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }
}

/// Computes `F_{n,r,d}`.
///
/// For `r > n` the expansion bound starts at `n(d-1)+1` and doubles until a
/// nonpositive coefficient shows up. `r = n` uses the closed complete
/// intersection form. `r < n` needs `cap` and yields a labelled initial
/// segment.
pub fn conjectured_series(n: u32, r: u32, d: u32, cap: Option<usize>) -> Result<Conjectured> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and d >= 2, got n={n}, d={d}"
        )));
    }
    match r.cmp(&n) {
        Ordering::Less => {
            let cap = cap.ok_or_else(|| {
                Error::MissingCap(format!("r={r} < n={n}: the series never terminates"))
            })?;
            Ok(Conjectured {
                series: truncate_positive(&expand_quotient(n, r, d, cap)?),
                truncated_at: Some(cap),
            })
        }
        Ordering::Equal => Ok(Conjectured {
            series: complete_intersection(n, d)?,
            truncated_at: None,
        }),
        Ordering::Greater => {
            let mut bound = n as usize * (d as usize - 1) + 1;
            loop {
                let raw = expand_quotient(n, r, d, bound)?;
                if (0..=bound).any(|i| raw.coeff(i) <= 0) {
                    return Ok(Conjectured {
                        series: truncate_positive(&raw),
                        truncated_at: None,
                    });
                }
                bound = bound
                    .checked_mul(2)
                    .ok_or(Error::Overflow("expansion bound"))?;
            }
        }
    }
}

/// `a - b`.
pub fn series_sub(a: &IntSeries, b: &IntSeries) -> Result<IntSeries> {
    a.checked_sub(b)
}

/// Equality of canonical forms.
pub fn series_eq(a: &IntSeries, b: &IntSeries) -> bool {
    a == b
}

/// Lexicographic `a >= b` on the coefficient sequences `a_0..a_{max_degree}`.
pub fn lex_geq(a: &IntSeries, b: &IntSeries, max_degree: usize) -> bool {
    for i in 0..=max_degree {
        match a.coeff(i).cmp(&b.coeff(i)) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    true
}
