//! Truncated-divisor approximations to the von Mangoldt function.
//!
//! Two families live here:
//!
//! * Λ_R(n) = Σ_{d|n, d≤R} μ(d)·log(R/d) — the usual short divisor sum,
//!   which agrees with Λ(n) for 1 < n ≤ R and has Λ_R(1) = log R;
//! * λ_R(n) = Σ_{q≤R} (μ(q)/φ(q))·c_q(−n) — the Ramanujan-sum expansion,
//!   whose natural size is L(R) = Σ_{q≤R} μ²(q)/φ(q).
//!
//! λ_R has a divisor-sum dual obtained by writing q = d·m with d = (q, n):
//!
//! λ_R(n) = Σ_{d|n, d≤R} (d·μ(d)/φ(d)) · Σ_{m≤R/d, (m,d)=1} μ²(m)/φ(m),
//!
//! which is what the sieve below evaluates; `dual_identity_check` proves the
//! two forms equal pair by pair in exact rational arithmetic.

use crate::arith::{self, ArithTables};
use crate::expsums::{self, GridEvaluation};
use crate::reduction::par_sum;
use crate::singular;
use crate::{fft, Error, Result};
use num::{bigint::BigInt, BigRational, Integer, Zero};
use serde::Serialize;
use std::f64::consts::PI;

fn check_r(tables: &ArithTables, r: f64) -> Result<u64> {
    if !(r.is_finite() && r >= 1.0) {
        return Err(Error::Range(format!(
            "R must be a finite value ≥ 1, got {r}"
        )));
    }
    let rf = r.floor() as u64;
    if rf > tables.limit {
        return Err(Error::Range(format!(
            "R = {r} exceeds the sieve limit {}",
            tables.limit
        )));
    }
    Ok(rf)
}

/// Tabulate Λ_R(n) for 1 ≤ n ≤ `n` by sieving over the moduli d ≤ R.
pub fn lambda_r_table(tables: &ArithTables, n: u64, r: f64) -> Result<Vec<f64>> {
    let rf = check_r(tables, r)?;
    if n < 1 {
        return Err(Error::Range("need N ≥ 1".into()));
    }
    let mut values = vec![0.0f64; n as usize + 1];
    for d in 1..=rf.min(n) as usize {
        let mu = tables.mobius[d];
        if mu == 0 {
            continue;
        }
        let w = f64::from(mu) * (r / d as f64).ln();
        for slot in values.iter_mut().step_by(d).skip(1) {
            *slot += w;
        }
    }
    Ok(values)
}

/// Tabulate λ_R(n) for 1 ≤ n ≤ `n` through the divisor-sum dual: each
/// squarefree d ≤ R contributes d·μ(d)/φ(d) times the coprime partial sum
/// G_d(R/d) to every multiple of d.
pub fn lambda_refined_table(tables: &ArithTables, n: u64, r: f64) -> Result<Vec<f64>> {
    let rf = check_r(tables, r)?;
    if n < 1 {
        return Err(Error::Range("need N ≥ 1".into()));
    }
    let mut values = vec![0.0f64; n as usize + 1];
    for d in 1..=rf.min(n) as usize {
        let mu = tables.mobius[d];
        if mu == 0 {
            continue;
        }
        let cap = (r / d as f64).floor() as usize;
        let mut g = 0.0f64;
        for m in 1..=cap.min(tables.limit as usize) {
            if tables.mobius[m] != 0 && (m as u64).gcd(&(d as u64)) == 1 {
                g += 1.0 / f64::from(tables.totient[m]);
            }
        }
        let w = d as f64 * f64::from(mu) / f64::from(tables.totient[d]) * g;
        for slot in values.iter_mut().step_by(d).skip(1) {
            *slot += w;
        }
    }
    Ok(values)
}

/// L(R) = Σ_{q≤R} μ²(q)/φ(q); delegates to the truncated-series zero lag so
/// the two callers cannot drift apart numerically.
pub fn big_l(tables: &ArithTables, r: f64) -> Result<f64> {
    singular::truncated_zero(tables, r)
}

/// Verify in exact rational arithmetic that the Ramanujan-sum form of λ_R
/// equals its divisor-sum dual for every 1 ≤ n ≤ nmax and 1 ≤ R ≤ rmax.
/// Returns the number of (n, R) pairs checked.
pub fn dual_identity_check(tables: &ArithTables, nmax: u64, rmax: u64) -> Result<u64> {
    if rmax > tables.limit || rmax < 1 || nmax < 1 {
        return Err(Error::Range(format!(
            "need 1 ≤ rmax ≤ {} and nmax ≥ 1",
            tables.limit
        )));
    }
    let rmax = rmax as usize;
    // G[d][x] = Σ_{m≤x, (m,d)=1} μ²(m)/φ(m) as exact rationals.
    let mut g = vec![vec![BigRational::zero(); rmax + 1]; rmax + 1];
    for d in 1..=rmax {
        if tables.mobius[d] == 0 {
            continue;
        }
        for x in 1..=rmax {
            let mut acc = g[d][x - 1].clone();
            if tables.mobius[x] != 0 && (x as u64).gcd(&(d as u64)) == 1 {
                acc += BigRational::new(BigInt::from(1), BigInt::from(tables.totient[x]));
            }
            g[d][x] = acc;
        }
    }
    let mut checked = 0u64;
    for n in 1..=nmax {
        let mut expansion_form = BigRational::zero();
        for q in 1..=rmax {
            let mu = i64::from(tables.mobius[q]);
            if mu != 0 {
                let c = arith::ramanujan_sum(q as u64, -(n as i64));
                expansion_form +=
                    BigRational::new(BigInt::from(mu * c), BigInt::from(tables.totient[q]));
            }
            // Dual form at R = q, summed over the divisors d ≤ R of n.
            let mut divisor_form = BigRational::zero();
            for d in 1..=q.min(n as usize) {
                if n % d as u64 != 0 || tables.mobius[d] == 0 {
                    continue;
                }
                let lead = BigRational::new(
                    BigInt::from(d as i64 * i64::from(tables.mobius[d])),
                    BigInt::from(tables.totient[d]),
                );
                divisor_form += lead * &g[d][q / d];
            }
            if expansion_form != divisor_form {
                return Err(Error::CheckFailed { failed: 1 });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The four second-moment sums of the approximants against N and Λ, with
/// their first-order predictions and O(1)-scale residuals.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentReport {
    pub n: u64,
    pub r: f64,
    pub big_l: f64,
    /// Σ Λ_R(n)² vs N·log R.
    pub lambda_sq: f64,
    pub lambda_sq_pred: f64,
    pub lambda_sq_residual_over_n: f64,
    /// Σ Λ_R(n)Λ(n) vs N·log R.
    pub cross: f64,
    pub cross_pred: f64,
    pub cross_residual_over_n: f64,
    /// Σ λ_R(n)Λ(n) vs ψ(N)·L(R).
    pub refined_cross: f64,
    pub refined_cross_pred: f64,
    pub refined_cross_residual_over_n: f64,
    /// Σ λ_R(n)² vs N·L(R).
    pub refined_sq: f64,
    pub refined_sq_pred: f64,
    pub refined_sq_residual_over_n: f64,
    /// (1/N)·Σ |λ_R(n) − Λ_R(n)|.
    pub mean_abs_gap: f64,
}

pub fn moment_suite(tables: &ArithTables, n: u64, r: f64) -> Result<MomentReport> {
    if n > tables.limit {
        return Err(Error::Range(format!("need N ≤ {}", tables.limit)));
    }
    let lam_r = lambda_r_table(tables, n, r)?;
    let lam_ref = lambda_refined_table(tables, n, r)?;
    let l = big_l(tables, r)?;
    let psi = arith::chebyshev_psi(tables, n)?.psi;
    let len = n as usize;
    let nf = n as f64;

    let lambda_sq = par_sum(len, |i| lam_r[i + 1] * lam_r[i + 1]);
    let cross = par_sum(len, |i| lam_r[i + 1] * tables.mangoldt[i + 1]);
    let refined_cross = par_sum(len, |i| lam_ref[i + 1] * tables.mangoldt[i + 1]);
    let refined_sq = par_sum(len, |i| lam_ref[i + 1] * lam_ref[i + 1]);
    let mean_abs_gap = par_sum(len, |i| (lam_ref[i + 1] - lam_r[i + 1]).abs()) / nf;

    let lambda_sq_pred = nf * r.ln();
    let cross_pred = nf * r.ln();
    let refined_cross_pred = psi * l;
    let refined_sq_pred = nf * l;
    Ok(MomentReport {
        n,
        r,
        big_l: l,
        lambda_sq,
        lambda_sq_pred,
        lambda_sq_residual_over_n: (lambda_sq - lambda_sq_pred) / nf,
        cross,
        cross_pred,
        cross_residual_over_n: (cross - cross_pred) / nf,
        refined_cross,
        refined_cross_pred,
        refined_cross_residual_over_n: (refined_cross - refined_cross_pred) / nf,
        refined_sq,
        refined_sq_pred,
        refined_sq_residual_over_n: (refined_sq - refined_sq_pred) / nf,
        mean_abs_gap,
    })
}

/// Σ (Λ−Λ_R)² computed directly and as a grid integral of |S − S_R|²
/// (exact for any grid with M ≥ 2N+1 points).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DistanceReport {
    pub n: u64,
    pub r: f64,
    pub distance_sq: f64,
    pub distance_sq_over_n: f64,
    pub grid_m: u64,
    pub grid_value: f64,
    pub bridge_gap: f64,
}

pub fn l2_distance(tables: &ArithTables, n: u64, r: f64) -> Result<DistanceReport> {
    if n > tables.limit {
        return Err(Error::Range(format!("need N ≤ {}", tables.limit)));
    }
    let lam_r = lambda_r_table(tables, n, r)?;
    let direct = par_sum(n as usize, |i| {
        let d = tables.mangoldt[i + 1] - lam_r[i + 1];
        d * d
    });
    let m = fft::next_pow2(2 * n + 2);
    let coeffs: Vec<f64> = (0..=n as usize)
        .map(|i| {
            if i == 0 {
                0.0
            } else {
                tables.mangoldt[i] - lam_r[i]
            }
        })
        .collect();
    let ev = expsums::sample_coefficients(&coeffs, m)?;
    let grid_value = par_sum(m as usize, |j| ev.values[j].norm_sqr()) / m as f64;
    Ok(DistanceReport {
        n,
        r,
        distance_sq: direct,
        distance_sq_over_n: direct / n as f64,
        grid_m: m,
        grid_value,
        bridge_gap: (grid_value - direct).abs(),
    })
}

/// Grid L¹ norms of the two approximant polynomials S_R = Σ Λ_R(n)e(nα)
/// and Σ λ_R(n)e(nα), with their Riemann-sum bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ApproxNorms {
    pub n: u64,
    pub r: f64,
    pub m: u64,
    pub l1_sr: f64,
    pub l1_sr_error_bound: f64,
    pub l1_refined: f64,
    pub l1_refined_error_bound: f64,
    pub l1_sr_over_r_logn: f64,
    pub l1_refined_over_r_logn: f64,
}

pub fn l1_approx_sums(
    tables: &ArithTables,
    n: u64,
    r: f64,
    m_override: Option<u64>,
) -> Result<ApproxNorms> {
    let m = m_override.unwrap_or_else(|| fft::next_pow2(64 * n));
    let mut lam_r = lambda_r_table(tables, n, r)?;
    let mut lam_ref = lambda_refined_table(tables, n, r)?;
    lam_r[0] = 0.0;
    lam_ref[0] = 0.0;
    let lip = |c: &[f64]| 2.0 * PI * par_sum(c.len() - 1, |i| (i + 1) as f64 * c[i + 1].abs());
    let (lip_r, lip_ref) = (lip(&lam_r), lip(&lam_ref));
    let ev_r = expsums::sample_coefficients(&lam_r, m)?;
    let n_r = expsums::l1_norm(&ev_r, lip_r);
    drop(ev_r);
    let ev_f = expsums::sample_coefficients(&lam_ref, m)?;
    let n_f = expsums::l1_norm(&ev_f, lip_ref);
    let scale = r * (n as f64).ln();
    Ok(ApproxNorms {
        n,
        r,
        m,
        l1_sr: n_r.l1,
        l1_sr_error_bound: n_r.l1_error_bound,
        l1_refined: n_f.l1,
        l1_refined_error_bound: n_f.l1_error_bound,
        l1_sr_over_r_logn: n_r.l1 / scale,
        l1_refined_over_r_logn: n_f.l1 / scale,
    })
}

/// The L¹ lower-bound assembly: with R = √N/(log N)^{3/2} and
/// h = Σ λ_R(n)e(nα), the grid means satisfy
///
///   mean|S| ≥ |⟨S, h⟩| / max|h| = Σ Λ(n)λ_R(n) / max|h|,
///
/// exactly (Cauchy–Schwarz on grid values plus exact pairing of trig
/// polynomials).  The report carries both sides and the normalized shapes.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct L1ChainReport {
    pub n: u64,
    pub r: f64,
    /// Grid used for the L¹ norm of S (policy-sized in deep runs).
    pub m_l1: u64,
    pub l1: f64,
    pub l1_error_bound: f64,
    pub l1_sq_over_nlogn: f64,
    /// Σ Λ(n)λ_R(n), the exact grid pairing ⟨S, h⟩.
    pub cross_moment: f64,
    pub sup_refined: f64,
    pub lower_bound: f64,
    pub lower_sq_over_nlogn: f64,
    /// lower_bound ≤ mean|S| verified on the pairing grid itself.
    pub chain_ok: bool,
    /// l1²/(N log N) against ½ + 3 log log N/(2 log N) + 5/log N.
    pub shape_cap: f64,
    pub shape_ok: bool,
}

pub fn l1_chain_assembly(tables: &ArithTables, n: u64, m_l1: Option<u64>) -> Result<L1ChainReport> {
    if n < 256 || n > tables.limit {
        return Err(Error::Range(format!(
            "the assembly needs 256 ≤ N ≤ {}",
            tables.limit
        )));
    }
    let nf = n as f64;
    let r = (nf.sqrt() / nf.ln().powf(1.5)).max(2.0);
    let mut lam_ref = lambda_refined_table(tables, n, r)?;
    lam_ref[0] = 0.0;
    let cross_moment = par_sum(n as usize, |i| lam_ref[i + 1] * tables.mangoldt[i + 1]);

    // Pairing grid: big enough for exact products of degree-N polynomials.
    let m_pair = fft::next_pow2(4 * n + 4);
    let ev_h = expsums::sample_coefficients(&lam_ref, m_pair)?;
    let sup_refined = ev_h.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    drop(ev_h);
    let s_pair = expsums::sample_s(tables, n, m_pair)?;
    let mean_abs_s_pair = par_sum(m_pair as usize, |j| s_pair.values[j].norm()) / m_pair as f64;
    drop(s_pair);
    let lower_bound = cross_moment.abs() / sup_refined;

    let m_l1 = m_l1.unwrap_or_else(|| fft::next_pow2(64 * n));
    let norms = expsums::s_norms(tables, n, m_l1)?;
    let loglog = nf.ln().ln();
    let shape_cap = 0.5 + 1.5 * loglog / nf.ln() + 5.0 / nf.ln();
    let l1_sq_over_nlogn = norms.l1 * norms.l1 / (nf * nf.ln());
    Ok(L1ChainReport {
        n,
        r,
        m_l1,
        l1: norms.l1,
        l1_error_bound: norms.l1_error_bound,
        l1_sq_over_nlogn,
        cross_moment,
        sup_refined,
        lower_bound,
        lower_sq_over_nlogn: lower_bound * lower_bound / (nf * nf.ln()),
        chain_ok: lower_bound <= mean_abs_s_pair * (1.0 + 1e-12),
        shape_cap,
        shape_ok: l1_sq_over_nlogn <= shape_cap,
    })
}

/// Convenience wrapper returning the grid of Σ λ_R(n)e(nα) (used by the CLI).
pub fn refined_grid(tables: &ArithTables, n: u64, r: f64, m: u64) -> Result<GridEvaluation> {
    let mut lam_ref = lambda_refined_table(tables, n, r)?;
    lam_ref[0] = 0.0;
    expsums::sample_coefficients(&lam_ref, m)
}
