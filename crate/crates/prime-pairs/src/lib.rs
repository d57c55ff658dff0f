//! Numerical toolkit for pair correlations of primes weighted by the von
//! Mangoldt function.
//!
//! The crate computes, at "desk" scales (N up to about 10^7):
//!
//! * linear-sieve tables of Λ(n), μ(n), φ(n) and smallest prime factors,
//!   with Ramanujan sums c_q(n) in closed form ([`arith`]);
//! * the Hardy–Littlewood singular series 𝔖(k), its truncations 𝔖_y(k),
//!   and the analytic constants they are built from ([`singular`]);
//! * pair counts ψ₂(N,k) = Σ Λ(n)Λ(n+k) by a direct oracle and by FFT
//!   autocorrelation, and the variance E(N) of ψ₂ against the
//!   Hardy–Littlewood prediction ([`pairs`]);
//! * the exponential sum S(α) = Σ_{n≤N} Λ(n) e(nα) on regular grids, its
//!   L¹/L² norms with rigorous Riemann-sum error bounds, and the major-arc
//!   quantities (a₀, W, J) that control lower bounds for E(N) ([`expsums`]);
//! * the truncated-divisor approximants Λ_R and λ_R with their moment
//!   sums and L¹/L² comparisons against S(α) ([`approx`]).
//!
//! Everything is deterministic: summations use fixed-shape pairwise
//! reduction trees, so results are bit-identical across runs and across
//! worker-thread counts.  The `prime-pairs` binary exposes the same
//! functionality as subcommands; see the crate README.

pub mod approx;
pub mod arith;
pub mod error;
pub mod expsums;
pub mod fft;
pub mod pairs;
pub mod reduction;
pub mod report;
pub mod singular;
pub mod verify;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
