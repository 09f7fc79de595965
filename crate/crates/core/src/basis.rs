//! Graded monomial bases.
//!
//! Two rings are covered: the full polynomial ring `k[x_1..x_n]` and the
//! pure-power quotient `A = k[x_1..x_n] / (x_1^d, ..., x_n^d)`, whose basis is
//! the set of monomials with every exponent at most `d - 1`. Within a degree,
//! monomials are listed in graded-lex order with `x_1 > x_2 > ... > x_n`, so
//! `x_1 x_2` precedes `x_1 x_3` precedes `x_2 x_3`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::series::binomial;
use crate::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

/// Exponents of a monomial in at most [`MAX_VARS`] variables, 8 bits each.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: [u8; MAX_VARS],
    n: u8,
    degree: u16,
}

impl ExponentVector {
    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            exps: [0; MAX_VARS],
            n: n as u8,
            degree: 0,
        }
    }

    pub fn new(exps: &[u8]) -> Self {
        let mut v = Self::one(exps.len());
        v.exps[..exps.len()].copy_from_slice(exps);
        v.degree = exps.iter().map(|&e| u16::from(e)).sum();
        v
    }

    /// `x_i^e`.
    pub fn pure_power(n: usize, i: usize, e: u8) -> Self {
        let mut v = Self::one(n);
        v.exps[i] = e;
        v.degree = e.into();
        v
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps[..self.n as usize]
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn degree(&self) -> u32 {
        self.degree.into()
    }

    /// Largest exponent; zero for the monomial `1`.
    pub fn max_exp(&self) -> u8 {
        self.exps().iter().copied().max().unwrap_or(0)
    }

    /// Plain product of monomials.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "monomials over different rings");
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_add(e).expect("exponent exceeds 255");
        }
        out.degree += other.degree;
        out
    }
}

impl Ord for ExponentVector {
    /// Graded-lex with `x_1` largest. `Ordering::Less` means "comes first" in
    /// a basis listing, so higher monomials sort earlier.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps().cmp(self.exps()))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// `x1^2*x3`; the monomial of degree zero is `1`.
impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Product `m * u` in `A`: `None` when some exponent reaches `d`.
pub fn multiply_reduce(m: &ExponentVector, u: &ExponentVector, d: u32) -> Option<ExponentVector> {
    assert_eq!(m.n, u.n, "monomials over different rings");
    let mut out = *m;
    for (o, &e) in out.exps[..m.n as usize].iter_mut().zip(u.exps.iter()) {
        let s = u32::from(*o) + u32::from(e);
        if s >= d {
            return None;
        }
        *o = s as u8;
    }
    out.degree += u.degree;
    Some(out)
}

fn enumerate_into(
    n: usize,
    cap: u32,
    remaining: u32,
    var: usize,
    cur: &mut [u8],
    out: &mut Vec<ExponentVector>,
) {
    if var + 1 == n {
        if remaining <= cap {
            cur[var] = remaining as u8;
            out.push(ExponentVector::new(cur));
        }
        return;
    }
    let rest_cap = cap.saturating_mul((n - var - 1) as u32);
    let lo = remaining.saturating_sub(rest_cap);
    let hi = remaining.min(cap);
    for e in (lo..=hi).rev() {
        cur[var] = e as u8;
        enumerate_into(n, cap, remaining - e, var + 1, cur, out);
    }
}

fn enumerate_capped(n: usize, cap: u32, degree: u32) -> Vec<ExponentVector> {
    assert!((1..=MAX_VARS).contains(&n), "need 1 <= n <= {MAX_VARS}");
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    enumerate_into(n, cap, degree, 0, &mut cur, &mut out);
    out
}

/// Degree-`degree` monomials with every exponent `<= d - 1`, in graded-lex
/// order. Empty once `degree > n(d-1)`.
pub fn enumerate_basis(n: usize, d: u32, degree: u32) -> Vec<ExponentVector> {
    assert!(d >= 2, "pure-power degree must be at least 2");
    enumerate_capped(n, d - 1, degree)
}

/// All degree-`degree` monomials of the polynomial ring, graded-lex.
pub fn enumerate_full(n: usize, degree: u32) -> Vec<ExponentVector> {
    assert!(degree <= u32::from(u8::MAX), "degree exceeds exponent width");
    enumerate_capped(n, degree, degree)
}

/// `dim_k A_D = sum_j (-1)^j C(n,j) C(n-1+D-jd, n-1)`.
pub fn dim_bounded(n: u32, d: u32, degree: u32) -> Result<u64> {
    let n1 = u64::from(n.checked_sub(1).ok_or_else(|| {
        Error::InvalidParameters("n must be at least 1".into())
    })?);
    let mut acc: i64 = 0;
    for j in 0..=n {
        let Some(rest) = degree.checked_sub(j * d) else {
            break;
        };
        let term = binomial(n.into(), j.into())?
            .checked_mul(binomial(n1 + u64::from(rest), n1)?)
            .ok_or(Error::Overflow("dim_bounded"))?;
        acc = if j % 2 == 0 {
            acc.checked_add(term)
        } else {
            acc.checked_sub(term)
        }
        .ok_or(Error::Overflow("dim_bounded"))?;
    }
    Ok(acc as u64)
}

/// `C(n-1+D, n-1)`.
pub fn dim_full(n: u32, degree: u32) -> Result<u64> {
    let n1 = u64::from(n.checked_sub(1).ok_or_else(|| {
        Error::InvalidParameters("n must be at least 1".into())
    })?);
    binomial(n1 + u64::from(degree), n1).map(|c| c as u64)
}

/// Which ring a [`GradedBasis`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    /// `k[x] / (x_1^d, ..., x_n^d)`.
    PurePowers { d: u32 },
    /// `k[x]`.
    Full,
}

/// Per-degree monomial lists up to a maximum degree, with a reverse index.
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    n: usize,
    ring: Ring,
    by_degree: Vec<Vec<ExponentVector>>,
    index: HashMap<ExponentVector, (u32, u32)>,
}

impl GradedBasis {
    /// Basis of `A = k[x]/(x_i^d)` in degrees `0..=max_degree`.
    pub fn bounded(n: usize, d: u32, max_degree: u32) -> Self {
        Self::build(n, Ring::PurePowers { d }, max_degree)
    }

    /// Basis of `k[x]` in degrees `0..=max_degree`.
    pub fn full(n: usize, max_degree: u32) -> Self {
        Self::build(n, Ring::Full, max_degree)
    }

    fn build(n: usize, ring: Ring, max_degree: u32) -> Self {
        let by_degree: Vec<_> = (0..=max_degree)
            .map(|deg| match ring {
                Ring::PurePowers { d } => enumerate_basis(n, d, deg),
                Ring::Full => enumerate_full(n, deg),
            })
            .collect();
        let mut index = HashMap::with_capacity(by_degree.iter().map(Vec::len).sum());
        for (deg, list) in by_degree.iter().enumerate() {
            for (pos, v) in list.iter().enumerate() {
                index.insert(*v, (deg as u32, pos as u32));
            }
        }
        Self {
            n,
            ring,
            by_degree,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> u32 {
        (self.by_degree.len() - 1) as u32
    }

    /// Monomials of one degree; empty past the built range.
    pub fn degree(&self, degree: u32) -> &[ExponentVector] {
        self.by_degree
            .get(degree as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.degree(degree).len()
    }

    /// `(degree, position)` of a basis monomial.
    pub fn index(&self, v: &ExponentVector) -> Option<(u32, u32)> {
        self.index.get(v).copied()
    }

    pub fn lookup(&self, degree: u32, pos: u32) -> Option<ExponentVector> {
        self.by_degree
            .get(degree as usize)
            .and_then(|l| l.get(pos as usize))
            .copied()
    }

    /// Product of two monomials in this ring; `None` when it vanishes.
    pub fn product(&self, m: &ExponentVector, u: &ExponentVector) -> Option<ExponentVector> {
        match self.ring {
            Ring::PurePowers { d } => multiply_reduce(m, u, d),
            Ring::Full => Some(m.mul(u)),
        }
    }
}
