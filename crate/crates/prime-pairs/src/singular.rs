//! The Hardy–Littlewood singular series 𝔖(k), its truncations 𝔖_y(k), and
//! the analytic constants behind them.
//!
//! For even k ≠ 0,  𝔖(k) = 2·C₂·∏_{p|k, p>2} (p−1)/(p−2), with
//! C₂ = ∏_{p>2} (1 − (p−1)⁻²) the twin prime constant; 𝔖(k) = 0 for odd k.
//! The truncation, which is what actually appears in major-arc work, is
//!
//! 𝔖_y(k) = Σ_{q≤y} μ(q)²/φ(q)² · c_q(−k),
//!
//! and 𝔖_y(0) = Σ_{q≤y} μ(q)²/φ(q) = log y + O(1).
//!
//! Alongside C₂ the crate needs three companion constants:
//!
//! L = ∏_p (1 + (2p−1)/(p(p−1)²)),
//! M = 3/4 − ½·log 2π + ½·Σ_p (p−2)·log p/(p(p−1)²),
//! D = γ + Σ_p log p/(p(p−1))  (the constant in Mertens' theorem for
//!     Σ log p / p, and the O(1) in 𝔖_y(0)).
//!
//! Each is evaluated as a partial product/sum over primes ≤ cutoff plus a
//! tail *estimate* ∫ term(t) d li(t), so two different cutoffs agree to
//! within the prime-counting fluctuation rather than within the (much
//! larger) raw tail.  `tail_bound` is a rigorous bound on the remaining
//! error; see `residual_bound` for the exact inequality used.

use crate::arith::{for_each_prime, ArithTables};
use crate::reduction::{pairwise_sum, KahanSum};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Euler–Mascheroni constant γ (nearest double to 0.57721566490153286...).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default prime cutoff for [`compute_constants`].
pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Constants {
    /// Twin prime constant C₂ = ∏_{p>2}(1 − (p−1)⁻²) ≈ 0.6601618.
    pub c2: f64,
    /// L = ∏_p (1 + (2p−1)/(p(p−1)²)); controls Σ_k 𝔖(k)² densities.
    pub lconst: f64,
    /// M = 3/4 − ½log 2π + ½Σ_p (p−2)log p/(p(p−1)²).
    pub mconst: f64,
    /// D = γ + Σ_p log p/(p(p−1)).
    pub dconst: f64,
    pub prime_cutoff: u64,
    /// Rigorous bound on |computed − true|, maximized over the four
    /// constants.
    pub tail_bound: f64,
}

/// Evaluate the four constants with primes up to `prime_cutoff` (≥ 10³).
pub fn compute_constants(prime_cutoff: u64) -> Result<Constants> {
    if !(1000..=2_000_000_000).contains(&prime_cutoff) {
        return Err(Error::Range(format!(
            "prime cutoff must be in 1000..=2e9, got {prime_cutoff}"
        )));
    }
    let p0 = prime_cutoff as f64;

    let mut log_c2 = KahanSum::new();
    let mut log_l = KahanSum::new();
    let mut m_sum = KahanSum::new();
    let mut d_sum = KahanSum::new();
    for_each_prime(prime_cutoff, |p| {
        let pf = p as f64;
        let lp = pf.ln();
        if p > 2 {
            log_c2.add((-1.0 / ((pf - 1.0) * (pf - 1.0))).ln_1p());
        }
        log_l.add(((2.0 * pf - 1.0) / (pf * (pf - 1.0) * (pf - 1.0))).ln_1p());
        m_sum.add((pf - 2.0) * lp / (pf * (pf - 1.0) * (pf - 1.0)));
        d_sum.add(lp / (pf * (pf - 1.0)));
    });

    // Tail estimates ∫_P^∞ term(t) dli(t).  For M and D the 1/log t in
    // dli cancels the log p in the term, leaving elementary integrals;
    // C₂ and L need quadrature.
    let t_c2 = li_tail(p0, |t| (-1.0 / ((t - 1.0) * (t - 1.0))).ln_1p());
    let t_l = li_tail(p0, |t| {
        ((2.0 * t - 1.0) / (t * (t - 1.0) * (t - 1.0))).ln_1p()
    });
    let log_ratio = (p0 / (p0 - 1.0)).ln(); // ∫_P^∞ dt/(t(t−1))
    let t_m = 2.0 * log_ratio - 1.0 / (p0 - 1.0); // ∫_P^∞ (t−2)/(t(t−1)²) dt
    let t_d = log_ratio;

    let c2 = (log_c2.value() + t_c2).exp();
    let lconst = (log_l.value() + t_l).exp();
    let mconst = 0.75 - 0.5 * (2.0 * PI).ln() + 0.5 * (m_sum.value() + t_m);
    let dconst = EULER_GAMMA + d_sum.value() + t_d;

    // Residual bounds.  Term envelopes valid for t ≥ 10³:
    //   −log(1−(t−1)⁻²)          ≤ 1.02/t²
    //   log(1+(2t−1)/(t(t−1)²))  ≤ 2.01/t²
    //   (t−2)log t/(t(t−1)²)     ≤ 1.00·log t/t²   (since t(t−2) ≤ (t−1)²)
    //   log t/(t(t−1))           ≤ 1.01·log t/t²
    // Log-scale residuals convert to value scale by ·value·(1+ε).
    let quad_slack = 1e-12; // Simpson on an analytic integrand; generous
    let r_c2 = c2 * 1.01 * (residual_bound(p0, 1.02, 0.0) + t_c2.abs() * quad_slack);
    let r_l = lconst * 1.01 * (residual_bound(p0, 2.01, 0.0) + t_l.abs() * quad_slack);
    let r_m = 0.5 * residual_bound(p0, 0.0, 1.00);
    let r_d = residual_bound(p0, 0.0, 1.01);
    let tail_bound = r_c2.max(r_l).max(r_m).max(r_d);

    Ok(Constants {
        c2,
        lconst,
        mconst,
        dconst,
        prime_cutoff,
        tail_bound,
    })
}

/// ∫_P^∞ term(t)/log t dt via t = P·e^v and composite Simpson on v ∈ [0,50]
/// (the integrands decay like e^{−v}, so the truncation error is ~1e-22
/// relative).
fn li_tail<F: Fn(f64) -> f64>(p: f64, term: F) -> f64 {
    const STEPS: usize = 8192; // even
    const VMAX: f64 = 50.0;
    let h = VMAX / STEPS as f64;
    let g = |v: f64| {
        let t = p * v.exp();
        term(t) * t / t.ln()
    };
    let mut acc = g(0.0) + g(VMAX);
    for i in 1..STEPS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * g(i as f64 * h);
    }
    acc * h / 3.0
}

/// Rigorous bound on |Σ_{p>P} f(p) − ∫_P^∞ f dli| for a decreasing
/// positive term f(t) ≤ c₁/t² + c₂·log t/t² on [P,∞), P ≥ 10³.
///
/// Partial summation gives |residual| ≤ f(P)|R(P)| + ∫_P^∞ |f′(t)||R(t)| dt
/// with R = π − li, and integrating by parts once more,
/// |residual| ≤ 2·f(P)·B(P) + ∫_P^∞ f(t)·B′(t) dt whenever |R| ≤ B and
/// B is increasing.  We take Schoenfeld's RH-quality envelope
/// B(t) = √t·log t/(8π), proved unconditionally for 2657 ≤ t ≤ 10¹⁹ by
/// Büthe's computations; beyond 10¹⁹ the trivial π(t) ≤ t bounds the
/// leftover by far less than the 1e-17·(c₁+c₂) safety term added here.
/// With B′(t) = (log t + 2)/(16π·√t) the integrals reduce to
/// I_k = ∫_P^∞ t^{−5/2} log^k t dt, k = 0,1,2, in closed form.
fn residual_bound(p: f64, c1: f64, c2: f64) -> f64 {
    let lp = p.ln();
    let b = p.sqrt() * lp / (8.0 * PI);
    let p32 = p.powf(-1.5);
    let i0 = (2.0 / 3.0) * p32;
    let i1 = (2.0 / 3.0) * p32 * (lp + 2.0 / 3.0);
    let i2 = (2.0 / 3.0) * p32 * (lp * lp + (4.0 / 3.0) * lp + 8.0 / 9.0);
    let c16pi = 16.0 * PI;
    let lin = c1 * (2.0 * b / (p * p) + (i1 + 2.0 * i0) / c16pi);
    let logf = c2 * (2.0 * lp * b / (p * p) + (i2 + 2.0 * i1) / c16pi);
    lin + logf + (c1 + c2) * 1e-17
}

/// 𝔖(k) for a single k (0 is outside the domain; odd k give 0).  Factors
/// |k| by trial division, so meant for desk-scale k; bulk consumers use
/// [`SingularTable`].
pub fn singular_series(constants: &Constants, k: i64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain(
            "singular series is not defined at k = 0".into(),
        ));
    }
    let mut k = k.unsigned_abs();
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let mut value = 2.0 * constants.c2;
    while k % 2 == 0 {
        k /= 2;
    }
    let mut p = 3u64;
    while p * p <= k {
        if k % p == 0 {
            value *= (p - 1) as f64 / (p - 2) as f64;
            while k % p == 0 {
                k /= p;
            }
        }
        p += 2;
    }
    if k > 1 {
        value *= (k - 1) as f64 / (k - 2) as f64;
    }
    Ok(value)
}

/// 𝔖(k) for every k = 1..=kmax, factored through the sieve tables.
pub struct SingularTable {
    pub kmax: u64,
    /// values[k] = 𝔖(k); index 0 is unused and set to 0.
    pub values: Vec<f64>,
}

pub fn build_singular_table(
    tables: &ArithTables,
    constants: &Constants,
    kmax: u64,
) -> Result<SingularTable> {
    if kmax < 1 || kmax > tables.limit {
        return Err(Error::Range(format!(
            "singular table needs 1 ≤ kmax ≤ {}, got {kmax}",
            tables.limit
        )));
    }
    let twin2 = 2.0 * constants.c2;
    let mut values = vec![0.0f64; kmax as usize + 1];
    values
        .par_chunks_mut(crate::reduction::CHUNK)
        .enumerate()
        .for_each(|(chunk, slice)| {
            let base = chunk * crate::reduction::CHUNK;
            for (i, v) in slice.iter_mut().enumerate() {
                let k = (base + i) as u64;
                if k == 0 || k % 2 == 1 {
                    continue;
                }
                let mut x = twin2;
                for p in tables.distinct_primes(k) {
                    if p > 2 {
                        x *= (p - 1) as f64 / (p - 2) as f64;
                    }
                }
                *v = x;
            }
        });
    Ok(SingularTable { kmax, values })
}

/// Σ_{q≤y} μ(q)²/φ(q), the k = 0 truncation 𝔖_y(0).
///
/// This is the *only* code path for that sum; `approx::big_l` calls it too,
/// so L(R) and 𝔖_R(0) are bit-identical by construction.
pub fn truncated_zero(tables: &ArithTables, y: f64) -> Result<f64> {
    let qmax = check_y(tables, y)?;
    let terms: Vec<f64> = (1..=qmax)
        .filter(|&q| tables.mobius[q as usize] != 0)
        .map(|q| 1.0 / tables.totient[q as usize] as f64)
        .collect();
    Ok(pairwise_sum(&terms))
}

/// 𝔖_y(k) for k = 0..=kmax via the closed-form Ramanujan sums.
pub struct TruncatedTable {
    pub y: f64,
    pub kmax: u64,
    /// values[k] = 𝔖_y(k) (k = 0 entry included).
    pub values: Vec<f64>,
}

pub fn build_truncated_table(tables: &ArithTables, y: f64, kmax: u64) -> Result<TruncatedTable> {
    let qmax = check_y(tables, y)?;
    // Squarefree moduli with their totients, gathered once.
    let moduli: Vec<(u64, u64)> = (1..=qmax)
        .filter(|&q| tables.mobius[q as usize] != 0)
        .map(|q| (q, tables.totient[q as usize] as u64))
        .collect();

    let mut values = vec![0.0f64; kmax as usize + 1];
    values[0] = truncated_zero(tables, y)?;
    values[1..]
        .par_chunks_mut(crate::reduction::CHUNK)
        .enumerate()
        .for_each(|(chunk, slice)| {
            let base = chunk * crate::reduction::CHUNK + 1;
            let mut terms = Vec::with_capacity(moduli.len());
            for (i, v) in slice.iter_mut().enumerate() {
                let k = (base + i) as u64;
                terms.clear();
                for &(q, phi_q) in &moduli {
                    let g = gcd(q, k);
                    let m = (q / g) as usize;
                    let mu_m = tables.mobius[m];
                    if mu_m == 0 {
                        continue;
                    }
                    // c_q(−k) = c_q(k) = μ(m)·φ(q)/φ(m), exact in integers.
                    let c = mu_m as i64 * (phi_q / tables.totient[m] as u64) as i64;
                    terms.push(c as f64 / (phi_q as f64 * phi_q as f64));
                }
                *v = pairwise_sum(&terms);
            }
        });
    Ok(TruncatedTable { y, kmax, values })
}

/// Single 𝔖_y(k) (convenience wrapper used by tests and spot checks).
pub fn truncated_singular(tables: &ArithTables, y: f64, k: u64) -> Result<f64> {
    if k == 0 {
        return truncated_zero(tables, y);
    }
    let t = build_truncated_table(tables, y, k)?;
    Ok(t.values[k as usize])
}

fn check_y(tables: &ArithTables, y: f64) -> Result<u64> {
    if !(y >= 1.0) || !y.is_finite() {
        return Err(Error::Range(format!(
            "truncation level must be ≥ 1, got {y}"
        )));
    }
    let qmax = y.floor() as u64;
    if qmax > tables.limit {
        return Err(Error::Range(format!(
            "truncation level {y} exceeds table limit {}",
            tables.limit
        )));
    }
    Ok(qmax)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// |𝔖_y(k) − 𝔖(k)| for each y in `ys` (a convergence diagnostic, reported
/// rather than asserted as a theorem).
pub fn series_convergence_check(
    tables: &ArithTables,
    constants: &Constants,
    k: i64,
    ys: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let target = singular_series(constants, k)?;
    let mut out = Vec::with_capacity(ys.len());
    for &y in ys {
        let v = truncated_singular(tables, y, k.unsigned_abs())?;
        out.push((y, (v - target).abs()));
    }
    Ok(out)
}

/// Hildebrand's asymptotic for the coprime-restricted squarefree sum:
/// Σ_{n≤x, (n,k)=1} μ(n)²/φ(n) = (φ(k)/k)(log x + D + g(k)) + O(h(k)/√x),
/// with g(k) = Σ_{p|k} log p/p and h(k) = ∏_{p|k}(1 + p^{−1/2}).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HildebrandReport {
    pub x: u64,
    pub k: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// h(k)/√x, the scale the residual is measured against.
    pub error_scale: f64,
    /// |residual| / (h(k)/√x).
    pub ratio: f64,
}

pub fn hildebrand_check(
    tables: &ArithTables,
    constants: &Constants,
    x: u64,
    k: u64,
) -> Result<HildebrandReport> {
    if x < 10 || x > tables.limit {
        return Err(Error::Range(format!(
            "hildebrand check needs 10 ≤ x ≤ {}, got {x}",
            tables.limit
        )));
    }
    if k < 1 {
        return Err(Error::Range("k must be ≥ 1".into()));
    }
    let terms: Vec<f64> = (1..=x)
        .filter(|&n| tables.mobius[n as usize] != 0 && gcd(n, k) == 1)
        .map(|n| 1.0 / tables.totient[n as usize] as f64)
        .collect();
    let lhs = pairwise_sum(&terms);

    let mut phi_over_k = 1.0;
    let mut g = 0.0;
    let mut h = 1.0;
    let mut rest = k;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            phi_over_k *= 1.0 - 1.0 / p as f64;
            g += (p as f64).ln() / p as f64;
            h *= 1.0 + 1.0 / (p as f64).sqrt();
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        let pf = rest as f64;
        phi_over_k *= 1.0 - 1.0 / pf;
        g += pf.ln() / pf;
        h *= 1.0 + 1.0 / pf.sqrt();
    }

    let rhs = phi_over_k * ((x as f64).ln() + constants.dconst + g);
    let residual = lhs - rhs;
    let error_scale = h / (x as f64).sqrt();
    Ok(HildebrandReport {
        x,
        k,
        lhs,
        rhs,
        residual,
        error_scale,
        ratio: residual.abs() / error_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tables;

    /// Twin prime constant from the literature (e.g. OEIS A005597),
    /// 0.66016181584686957392...
    const C2_REFERENCE: f64 = 0.660_161_815_846_869_6;

    #[test]
    fn c2_matches_literature_at_default_cutoff() {
        let c = compute_constants(DEFAULT_PRIME_CUTOFF).unwrap();
        assert!(
            (c.c2 - C2_REFERENCE).abs() <= 1e-9,
            "c2 = {:.15}, expected {:.15}",
            c.c2,
            C2_REFERENCE
        );
        assert!(c.c2 > 0.6 && c.c2 < 0.7);
        assert!(c.tail_bound <= 1e-9, "tail bound {}", c.tail_bound);
    }

    #[test]
    fn dconst_matches_mertens_constant() {
        // D = γ + Σ log p/(p(p−1)) = 1.33258227573322087... (OEIS A083343).
        let c = compute_constants(1_000_000).unwrap();
        assert!(
            (c.dconst - 1.332_582_275_733_220_9).abs() <= 1e-8,
            "dconst = {:.15}",
            c.dconst
        );
    }

    #[test]
    fn constants_are_stable_across_cutoffs() {
        let a = compute_constants(1_000_000).unwrap();
        let b = compute_constants(10_000_000).unwrap();
        let budget = a.tail_bound + b.tail_bound;
        for (x, y, name) in [
            (a.c2, b.c2, "c2"),
            (a.lconst, b.lconst, "L"),
            (a.mconst, b.mconst, "M"),
            (a.dconst, b.dconst, "D"),
        ] {
            assert!(
                (x - y).abs() <= budget,
                "{name}: {x:.15} vs {y:.15} differ by more than {budget:e}"
            );
            assert!((x - y).abs() <= 1e-8, "{name} two-cutoff gap too wide");
        }
        assert!(a.lconst > 0.0 && a.dconst > 0.0 && a.c2 > 0.0);
    }

    #[test]
    fn cutoff_below_minimum_is_rejected() {
        assert!(compute_constants(999).is_err());
    }

    #[test]
    fn singular_series_hand_values() {
        let c = compute_constants(100_000).unwrap();
        let two_c2 = 2.0 * c.c2;
        assert!(singular_series(&c, 0).is_err());
        assert_eq!(singular_series(&c, 1).unwrap(), 0.0);
        assert_eq!(singular_series(&c, 15).unwrap(), 0.0);
        for j in 1..=10 {
            let v = singular_series(&c, 1i64 << j).unwrap();
            assert!((v - two_c2).abs() < 1e-15, "power of two 2^{j}");
        }
        let s6 = singular_series(&c, 6).unwrap();
        assert!((s6 - 2.0 * two_c2).abs() < 1e-14); // (3−1)/(3−2) = 2
        let s30 = singular_series(&c, 30).unwrap();
        assert!((s30 - two_c2 * 2.0 * (4.0 / 3.0)).abs() < 1e-14);
        // Even in k.
        assert_eq!(
            singular_series(&c, -6).unwrap(),
            singular_series(&c, 6).unwrap()
        );
    }

    #[test]
    fn singular_table_matches_pointwise_function() {
        let t = build_tables(5000).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 5000).unwrap();
        for k in 1..=5000i64 {
            let direct = singular_series(&c, k).unwrap();
            assert!(
                (st.values[k as usize] - direct).abs() <= 1e-12 * direct.max(1.0),
                "k = {k}"
            );
        }
    }

    #[test]
    fn singular_depends_only_on_odd_radical() {
        let t = build_tables(10_000).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 10_000).unwrap();
        for k in (2..=10_000u64).step_by(2) {
            let mut rad = 1u64;
            for p in t.distinct_primes(k) {
                if p > 2 {
                    rad *= p;
                }
            }
            let v = st.values[k as usize];
            let w = st.values[(2 * rad) as usize];
            assert!((v - w).abs() <= 1e-12 * v, "k = {k}, rad2 = {}", 2 * rad);
        }
    }

    #[test]
    fn truncated_zero_hand_values() {
        let t = build_tables(100).unwrap();
        // y = 3: 1 + 1 + 1/2; y = 5 adds 1/φ(5) = 1/4 (4 is not squarefree).
        assert!((truncated_zero(&t, 3.0).unwrap() - 2.5).abs() < 1e-15);
        assert!((truncated_zero(&t, 5.0).unwrap() - 2.75).abs() < 1e-15);
        // Real-valued y floors.
        assert_eq!(
            truncated_zero(&t, 5.97).unwrap(),
            truncated_zero(&t, 5.0).unwrap()
        );
    }

    #[test]
    fn truncated_table_oracle_by_direct_double_sum() {
        // 𝔖_y(k) from scratch: Σ_{q≤y} μ(q)²/φ(q)² Σ_{(a,q)=1} cos(2πak/q).
        let t = build_tables(50).unwrap();
        let tt = build_truncated_table(&t, 12.0, 30).unwrap();
        for k in 0..=30u64 {
            let mut want = 0.0;
            for q in 1..=12u64 {
                if t.mobius[q as usize] == 0 {
                    continue;
                }
                let phi = t.totient[q as usize] as f64;
                let mut c = 0.0;
                for a in 1..=q {
                    if gcd(a, q) == 1 {
                        c += (2.0 * std::f64::consts::PI * (a * k % q) as f64 / q as f64).cos();
                    }
                }
                want += c / (phi * phi);
            }
            assert!(
                (tt.values[k as usize] - want).abs() < 1e-10,
                "k = {k}: {} vs {want}",
                tt.values[k as usize]
            );
        }
    }

    #[test]
    fn truncation_at_one_is_trivial() {
        let t = build_tables(10).unwrap();
        let c = compute_constants(100_000).unwrap();
        // 𝔖_1(k) = 1 for every k; distance to 𝔖(2) is |1 − 2C₂|.
        let v = truncated_singular(&t, 1.0, 2).unwrap();
        assert_eq!(v, 1.0);
        let dev = (v - singular_series(&c, 2).unwrap()).abs();
        assert!((dev - (2.0 * c.c2 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn truncated_zero_tracks_log() {
        let t = build_tables(100_000).unwrap();
        for y in [10.0, 100.0, 1000.0, 10_000.0, 100_000.0] {
            let v = truncated_zero(&t, y).unwrap();
            assert!(
                (v - y.ln()).abs() <= 2.0,
                "y = {y}: {v} vs log y = {}",
                y.ln()
            );
        }
    }

    #[test]
    fn truncations_converge_to_singular_series() {
        let t = build_tables(10_000).unwrap();
        let c = compute_constants(100_000).unwrap();
        for k in [2i64, 6, 12, 30, 98] {
            let devs =
                series_convergence_check(&t, &c, k, &[10.0, 100.0, 1000.0, 10_000.0]).unwrap();
            for w in devs.windows(2) {
                assert!(
                    w[1].1 < w[0].1,
                    "k = {k}: deviation did not shrink from y = {} to y = {}",
                    w[0].0,
                    w[1].0
                );
            }
            let (last_y, last_dev) = *devs.last().unwrap();
            assert!(
                last_dev < 10.0 / last_y,
                "k = {k}: {last_dev} at y = {last_y}"
            );
        }
    }

    #[test]
    fn hildebrand_residuals_at_desk_scale() {
        let t = build_tables(10_000).unwrap();
        let c = compute_constants(1_000_000).unwrap();
        for k in [1u64, 6] {
            let r = hildebrand_check(&t, &c, 10_000, k).unwrap();
            assert!(
                r.ratio <= 10.0,
                "k = {k}: residual {} vs scale {}",
                r.residual,
                r.error_scale
            );
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let t = build_tables(100).unwrap();
        assert!(truncated_zero(&t, 0.5).is_err());
        assert!(truncated_zero(&t, 101.0).is_err());
        assert!(build_truncated_table(&t, f64::NAN, 10).is_err());
        assert!(build_singular_table(&t, &compute_constants(1000).unwrap(), 0).is_err());
    }
}
