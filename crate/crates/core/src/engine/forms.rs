//! Random generators: generic forms and `d`-th powers of linear forms.
//!
//! In the pure-power modes forms live on the basis of `A_d`, the degree-`d`
//! monomials with every exponent below `d`. The pure powers `x_i^d` are zero
//! in `A`, so a generic form of `k[x]` and its image in `A` generate the same
//! ideal together with `(x_1^d, ..., x_n^d)`; sampling only the surviving
//! coefficients loses nothing.

use crate::basis::{ExponentVector, GradedBasis};
use crate::linalg::{splitmix64, Fp, PrimeField, SplitMix64};

/// A form of degree `degree`, stored as coefficients on the ring's degree
/// basis in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormRep {
    degree: u32,
    coeffs: Vec<Fp>,
}

impl FormRep {
    pub fn new(ring: &GradedBasis, degree: u32, coeffs: Vec<Fp>) -> Self {
        assert_eq!(coeffs.len(), ring.dim(degree), "coefficient count must match the basis");
        Self { degree, coeffs }
    }

    /// A single monomial with coefficient one.
    pub fn monomial(ring: &GradedBasis, m: &ExponentVector) -> Self {
        let (degree, pos) = ring.index(m).expect("monomial outside the basis");
        let mut coeffs = vec![Fp::ZERO; ring.dim(degree)];
        coeffs[pos as usize] = Fp::ONE;
        Self { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero `(monomial, coefficient)` pairs.
    pub fn terms(&self, ring: &GradedBasis) -> Vec<(ExponentVector, Fp)> {
        ring.degree(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, &c)| (*m, c))
            .collect()
    }

    /// Re-expresses this form in another ring with the same variables. Every
    /// monomial must exist there.
    pub fn embed(&self, from: &GradedBasis, to: &GradedBasis) -> Self {
        let mut coeffs = vec![Fp::ZERO; to.dim(self.degree)];
        for (m, c) in self.terms(from) {
            let (_, pos) = to.index(&m).expect("monomial missing from target ring");
            coeffs[pos as usize] = c;
        }
        Self {
            degree: self.degree,
            coeffs,
        }
    }
}

/// Seed of trial `trial` for a job seeded with `job_seed`.
pub fn trial_seed(job_seed: u64, trial: u32) -> u64 {
    splitmix64(job_seed ^ (u64::from(trial) << 32))
}

/// Seed of the `index`-th random generator within a trial. It depends only on
/// the index, so adding generators never changes the earlier ones.
pub fn form_seed(trial_seed: u64, index: u32) -> u64 {
    splitmix64(trial_seed ^ u64::from(index))
}

/// Uniform random coefficients on every basis monomial of degree `degree`.
pub fn make_generic_form(ring: &GradedBasis, degree: u32, field: PrimeField, rng: &mut SplitMix64) -> FormRep {
    let coeffs = (0..ring.dim(degree)).map(|_| field.random(rng)).collect();
    FormRep { degree, coeffs }
}

/// `d!/prod(alpha_i!)` computed exactly.
fn multinomial(alpha: &[u8]) -> u64 {
    let mut acc: u64 = 1;
    let mut total: u64 = 0;
    for &a in alpha {
        for k in 1..=u64::from(a) {
            total += 1;
            // C(total, k) style accumulation keeps every step integral
            acc = acc * total / k;
        }
    }
    acc
}

/// Coefficients of `(c_1 x_1 + ... + c_n x_n)^d` on the ring's degree-`d`
/// basis: `x^alpha` gets `(d!/prod alpha_i!) * prod c_i^alpha_i`. In the
/// pure-power ring every monomial with an exponent `>= d` is dropped, which is
/// exactly the set of pure powers `x_i^d`.
pub fn linear_power_coeffs(ring: &GradedBasis, d: u32, field: PrimeField, c: &[Fp]) -> FormRep {
    assert_eq!(c.len(), ring.nvars());
    let coeffs = ring
        .degree(d)
        .iter()
        .map(|m| {
            let mut acc = field.elem(multinomial(m.exps()));
            for (&ci, &a) in c.iter().zip(m.exps()) {
                if a > 0 {
                    acc = field.mul(acc, field.pow(ci, u64::from(a)));
                }
            }
            acc
        })
        .collect();
    FormRep { degree: d, coeffs }
}

/// `l^d` for a linear form `l` with uniform random coefficients. Degenerate
/// draws are kept as they come.
pub fn make_linear_power_form(ring: &GradedBasis, d: u32, field: PrimeField, rng: &mut SplitMix64) -> FormRep {
    let c: Vec<Fp> = (0..ring.nvars()).map(|_| field.random(rng)).collect();
    linear_power_coeffs(ring, d, field, &c)
}
