use std::fmt;

use serde::{Deserialize, Serialize};

use super::SplitMix64;
use crate::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Exclusive upper bound on supported moduli. Keeping `p < 2^31` lets the
/// elimination kernel add three products `< p^2` to a reduced entry inside a
/// `u64` before reducing.
const MODULUS_LIMIT: u64 = 1 << 31;

/// Element of `F_p`, always fully reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fp(pub(crate) u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The prime field `F_p` with `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    // floor(2^64 / p)
    barrett: u64,
}

impl PrimeField {
    /// Validates `p` (range and deterministic Miller-Rabin) and precomputes
    /// the reduction constant.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MODULUS_LIMIT).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p: p as u32,
            barrett: u64::MAX / p,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_mersenne31(&self) -> bool {
        u64::from(self.p) == DEFAULT_PRIME
    }

    pub fn elem(&self, x: u64) -> Fp {
        Fp((x % u64::from(self.p)) as u32)
    }

    pub fn from_i64(&self, x: i64) -> Fp {
        Fp(x.rem_euclid(i64::from(self.p)) as u32)
    }

    /// Reduces any `x < 2^64`.
    #[inline(always)]
    pub(crate) fn reduce(&self, x: u64) -> u32 {
        let q = ((u128::from(x) * u128::from(self.barrett)) >> 64) as u64;
        let r = x - q * u64::from(self.p);
        // r < 2p here
        if r >= u64::from(self.p) {
            (r - u64::from(self.p)) as u32
        } else {
            r as u32
        }
    }

    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        Fp(if s >= p { s - p } else { s } as u32)
    }

    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a.0 >= b.0 {
            Fp(a.0 - b.0)
        } else {
            Fp(a.0 + (self.p - b.0))
        }
    }

    pub fn neg(&self, a: Fp) -> Fp {
        if a.0 == 0 {
            a
        } else {
            Fp(self.p - a.0)
        }
    }

    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(self.reduce(u64::from(a.0) * u64::from(b.0)))
    }

    pub fn pow(&self, mut base: Fp, mut exp: u64) -> Fp {
        let mut acc = Fp::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, u64::from(self.p) - 2))
    }

    /// Uniform element by rejection: draws at or above `p * floor(2^64 / p)`
    /// are discarded.
    pub fn random(&self, rng: &mut SplitMix64) -> Fp {
        let p = u128::from(self.p);
        let limit = p * ((1u128 << 64) / p);
        loop {
            let x = rng.next_u64();
            if u128::from(x) < limit {
                return Fp((x % u64::from(self.p)) as u32);
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
