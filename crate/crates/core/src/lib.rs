//! Hilbert series of graded quotients `k[x_1..x_n] / I` where `I` is generated
//! by random forms of a fixed degree over a prime field.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: exact integer power series, the positive-part truncation and
//!   the closed-form expected series `[(1-t^d)^r / (1-t)^n]`.
//! * [`basis`]: graded monomial bases of the full polynomial ring and of the
//!   pure-power quotient `A = k[x] / (x_1^d, ..., x_n^d)`.
//! * [`linalg`]: prime-field arithmetic, the SplitMix64 stream and dense rank.
//! * [`engine`]: generator sampling, per-degree multiplication matrices,
//!   verdicts and comparisons.
//!
//! With the default `parallel` feature, matrix elimination, row assembly,
//! trials and sweeps run on rayon; without it every entry point runs the same
//! code sequentially. Results never depend on the schedule.

pub mod basis;
pub mod engine;
mod error;
pub mod linalg;
pub mod par;
pub mod series;

pub use error::{Error, Result};
