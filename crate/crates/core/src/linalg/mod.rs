//! Prime-field arithmetic, the seeded random stream, and dense rank.

mod field;
mod matrix;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
mod rng;

pub use field::{is_prime_u64, Fp, PrimeField, DEFAULT_PRIME};
pub use matrix::{FpMatrix, Schedule};
pub use rng::{splitmix64, SplitMix64};
