//! Thin wrapper over rustfft with a process-wide plan cache and the sign
//! convention used throughout the crate: e(u) = exp(+2πiu).
//!
//! `synthesis` evaluates Σ c_n e(+nj/M) (an *unnormalized inverse* DFT), so
//! a trigonometric polynomial laid out in the usual wrap-around order comes
//! out sampled on the regular grid j/M.  `analysis` is the matching forward
//! transform with e(−nj/M); dividing by M recovers coefficients.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanKey = (usize, bool);

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = plans.lock().unwrap();
    map.entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            let dir = if inverse {
                FftDirection::Inverse
            } else {
                FftDirection::Forward
            };
            planner.plan_fft(len, dir)
        })
        .clone()
}

/// In-place Σ_n buf[n] e(+2πi·nj/len) → buf[j].  Unnormalized.
pub fn synthesis(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// In-place Σ_n buf[n] e(−2πi·nj/len) → buf[j].  Unnormalized.
pub fn analysis(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Smallest power of two ≥ `n`.
pub fn next_pow2(n: u64) -> u64 {
    n.next_power_of_two()
}
