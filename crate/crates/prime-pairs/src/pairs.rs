//! Pair counts ψ₂(N,k) = Σ_{n,n+k ≤ N} Λ(n)Λ(n+k) and the variance of
//! their deviation from the Hardy–Littlewood prediction 𝔖(k)·(N−|k|).
//!
//! Two routes to ψ₂: a direct double loop over prime powers (the oracle,
//! capped at N = 10⁴), and FFT autocorrelation of the Λ sequence — since
//! |S(α)|² = Σ_{|k|≤N} ψ₂(N,k) e(kα) for S(α) = Σ_{n≤N} Λ(n) e(nα), the
//! lag-k Fourier coefficient of |S|² on a long enough grid *is* ψ₂(N,k).

use crate::arith::{ArithTables, PsiSummary};
use crate::fft;
use crate::reduction::{pairwise_sum, par_sum, KahanSum};
use crate::singular::SingularTable;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Direct pair counting is quadratic in the number of prime powers; keep it
/// at oracle scale.
pub const DIRECT_CAP: u64 = 10_000;

/// Largest FFT length the autocorrelation path will allocate (1 GiB of
/// complex doubles).
pub const FFT_LEN_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairMethod {
    Direct,
    Fft,
}

/// ψ₂(N,k) for 0 ≤ k ≤ N.  ψ₂ is even in k, so only k ≥ 0 is stored;
/// counts[0] = Σ Λ(n)².
pub struct PairCountTable {
    pub n: u64,
    pub method: PairMethod,
    pub counts: Vec<f64>,
}

/// Direct oracle: double loop over the prime powers up to N.
pub fn psi2_direct(tables: &ArithTables, n: u64) -> Result<PairCountTable> {
    if n < 1 || n > tables.limit {
        return Err(Error::Range(format!(
            "pair counts need 1 ≤ N ≤ {}, got {n}",
            tables.limit
        )));
    }
    if n > DIRECT_CAP {
        return Err(Error::Range(format!(
            "direct pair counting is capped at N = {DIRECT_CAP} (got {n}); use the fft method"
        )));
    }
    let supp: Vec<(usize, f64)> = (2..=n as usize)
        .filter(|&i| tables.mangoldt[i] != 0.0)
        .map(|i| (i, tables.mangoldt[i]))
        .collect();
    let mut counts = vec![0.0f64; n as usize + 1];
    let sq: Vec<f64> = supp.iter().map(|&(_, l)| l * l).collect();
    counts[0] = pairwise_sum(&sq);
    for (j, &(nj, lj)) in supp.iter().enumerate() {
        for &(ni, li) in &supp[..j] {
            counts[nj - ni] += li * lj;
        }
    }
    Ok(PairCountTable {
        n,
        method: PairMethod::Direct,
        counts,
    })
}

/// FFT autocorrelation: zero-pad Λ(1..N) to a power of two M ≥ 2N+1,
/// transform, square the modulus, transform back; the lag-k coefficient is
/// ψ₂(N,k) (no wrap-around because M ≥ 2N+1).
pub fn psi2_fft(tables: &ArithTables, n: u64) -> Result<PairCountTable> {
    if n < 1 || n > tables.limit {
        return Err(Error::Range(format!(
            "pair counts need 1 ≤ N ≤ {}, got {n}",
            tables.limit
        )));
    }
    let m = fft::next_pow2(2 * n + 1);
    if m > FFT_LEN_CAP {
        return Err(Error::Capacity {
            needed: m * 16,
            budget: FFT_LEN_CAP * 16,
        });
    }
    let m = m as usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for i in 1..=n as usize {
        buf[i].re = tables.mangoldt[i];
    }
    fft::analysis(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    fft::synthesis(&mut buf);
    let scale = 1.0 / m as f64;
    let counts: Vec<f64> = buf[..=n as usize].iter().map(|v| v.re * scale).collect();
    Ok(PairCountTable {
        n,
        method: PairMethod::Fft,
        counts,
    })
}

/// Σ_{|k|≤N} ψ₂(N,k) = ψ(N)² and the Hardy–Littlewood first moment
/// Σ_{1≤|k|≤N} (N−|k|)𝔖(k) = N² + O(N log N).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FirstMomentReport {
    pub n: u64,
    pub sum_counts: f64,
    pub psi_squared: f64,
    /// Σψ₂ − ψ², relative to ψ².
    pub identity_residual_rel: f64,
    pub hl_sum: f64,
    /// (Σ(N−|k|)𝔖(k) − N²)/(N log N).
    pub hl_residual_over_nlogn: f64,
}

pub fn first_moment_checks(
    pc: &PairCountTable,
    st: &SingularTable,
    psi: &PsiSummary,
) -> Result<FirstMomentReport> {
    if psi.n != pc.n || st.kmax < pc.n {
        return Err(Error::Range(
            "first-moment check needs matching N and a singular table covering it".into(),
        ));
    }
    let n = pc.n;
    let nf = n as f64;
    let sum_counts = pc.counts[0] + 2.0 * par_sum(n as usize, |i| pc.counts[i + 1]);
    let psi_squared = psi.psi * psi.psi;
    let hl_sum = 2.0
        * par_sum(n as usize, |i| {
            let k = (i + 1) as f64;
            (nf - k) * st.values[i + 1]
        });
    Ok(FirstMomentReport {
        n,
        sum_counts,
        psi_squared,
        identity_residual_rel: (sum_counts - psi_squared) / psi_squared,
        hl_sum,
        hl_residual_over_nlogn: (hl_sum - nf * nf) / (nf * nf.ln()),
    })
}

/// Published reference values of E(N)/(N² log² N), truncated to five
/// decimal places, used by the verification suites and `error --table1`.
pub const VARIANCE_TABLE_REFERENCE: &[(u64, &str)] = &[
    (1_000, "0.09464"),
    (10_000, "0.12327"),
    (20_000, "0.13061"),
    (30_000, "0.14507"),
    (40_000, "0.15081"),
    (50_000, "0.15480"),
    (60_000, "0.16124"),
    (70_000, "0.17745"),
    (80_000, "0.15953"),
    (90_000, "0.16192"),
    (100_000, "0.16857"),
];

/// E(N) = Σ_{1≤|k|≤N} (ψ₂(N,k) − 𝔖(k)(N−|k|))², with its normalization
/// E(N)/(N² log² N) and the odd-k share of the sum.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ErrorSummary {
    pub n: u64,
    pub e_value: f64,
    /// E(N)/(N² log² N).
    pub normalized: f64,
    /// Contribution of odd |k| (where 𝔖 vanishes and ψ₂ is prime-power
    /// noise).
    pub odd_contrib: f64,
}

pub fn error_term(pc: &PairCountTable, st: &SingularTable) -> Result<ErrorSummary> {
    if st.kmax < pc.n {
        return Err(Error::Range(format!(
            "singular table covers k ≤ {}, need {}",
            st.kmax, pc.n
        )));
    }
    let n = pc.n;
    let nf = n as f64;
    let dev = |i: usize| {
        let k = i + 1;
        let d = pc.counts[k] - st.values[k] * (nf - k as f64);
        d * d
    };
    let e_value = 2.0 * par_sum(n as usize, dev);
    let odd = 2.0 * par_sum(n as usize, |i| if i % 2 == 0 { dev(i) } else { 0.0 });
    let log_n = nf.ln();
    let normalized = if n > 1 {
        e_value / (nf * nf * log_n * log_n)
    } else {
        0.0
    };
    Ok(ErrorSummary {
        n,
        e_value,
        normalized,
        odd_contrib: odd,
    })
}

/// Sequential compensated-summation evaluation of E(N), used to cross-check
/// the pairwise-parallel one.
pub fn error_term_compensated(pc: &PairCountTable, st: &SingularTable) -> Result<f64> {
    if st.kmax < pc.n {
        return Err(Error::Range("singular table too short".into()));
    }
    let nf = pc.n as f64;
    let mut acc = KahanSum::new();
    for k in 1..=pc.n as usize {
        let d = pc.counts[k] - st.values[k] * (nf - k as f64);
        acc.add(2.0 * d * d);
    }
    Ok(acc.value())
}

/// One row of the pair-count figures: ψ₂(N,k) against 𝔖(k)(N−k).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FigureRow {
    pub k: u64,
    pub psi2: f64,
    pub hl_prediction: f64,
}

pub fn figure_data(
    pc: &PairCountTable,
    st: &SingularTable,
    k_lo: u64,
    k_hi: u64,
) -> Result<Vec<FigureRow>> {
    if k_lo < 1 || k_lo > k_hi || k_hi > pc.n || st.kmax < k_hi {
        return Err(Error::Range(format!(
            "figure range 1 ≤ {k_lo} ≤ {k_hi} ≤ N = {} violated",
            pc.n
        )));
    }
    Ok((k_lo..=k_hi)
        .map(|k| FigureRow {
            k,
            psi2: pc.counts[k as usize],
            hl_prediction: st.values[k as usize] * (pc.n - k) as f64,
        })
        .collect())
}

/// (n, E(n), E(n)/(n² log² n)) for every n up to `n_max` — the data behind
/// the running-variance plot.
pub fn normalized_error_curve(
    tables: &ArithTables,
    st: &SingularTable,
    n_max: u64,
) -> Result<Vec<(u64, f64, f64)>> {
    if n_max < 1 || n_max > tables.limit || st.kmax < n_max {
        return Err(Error::Range(format!(
            "curve needs 1 ≤ n_max ≤ {}",
            tables.limit
        )));
    }
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let pc = psi2_fft(tables, n)?;
        let e = error_term(&pc, st)?;
        out.push((n, e.e_value, e.normalized));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_tables, chebyshev_psi};
    use crate::singular::{build_singular_table, compute_constants, singular_series};

    #[test]
    fn direct_counts_at_ten_match_hand_enumeration() {
        let t = build_tables(10).unwrap();
        let pc = psi2_direct(&t, 10).unwrap();
        let (l2, l3, l5, l7) = (2f64.ln(), 3f64.ln(), 5f64.ln(), 7f64.ln());
        // Prime powers ≤ 10: 2,3,4,5,7,8,9 with weights l2,l3,l2,l5,l7,l2,l3.
        let want0 = 3.0 * l2 * l2 + 2.0 * l3 * l3 + l5 * l5 + l7 * l7;
        let want1 = l2 * l3 + l3 * l2 + l2 * l5 + l7 * l2 + l2 * l3; // (2,3)(3,4)(4,5)(7,8)(8,9)
        let want2 = l2 * l2 + l3 * l5 + l5 * l7 + l7 * l3; // (2,4)(3,5)(5,7)(7,9)
        assert!((pc.counts[0] - want0).abs() < 1e-12);
        assert!((pc.counts[1] - want1).abs() < 1e-12);
        assert!((pc.counts[2] - want2).abs() < 1e-12);
        // k = N pair (impossible: needs n = 0): zero.
        assert_eq!(pc.counts[10], 0.0);
    }

    #[test]
    fn fft_matches_direct_closely_at_ten() {
        let t = build_tables(10).unwrap();
        let a = psi2_direct(&t, 10).unwrap();
        let b = psi2_fft(&t, 10).unwrap();
        for k in 0..=10usize {
            assert!((a.counts[k] - b.counts[k]).abs() < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn fft_matches_direct_at_moderate_sizes() {
        let t = build_tables(2000).unwrap();
        for n in [137u64, 500, 1000, 2000] {
            let a = psi2_direct(&t, n).unwrap();
            let b = psi2_fft(&t, n).unwrap();
            for k in 0..=n as usize {
                assert!(
                    (a.counts[k] - b.counts[k]).abs() < 1e-6,
                    "N = {n}, k = {k}: {} vs {}",
                    a.counts[k],
                    b.counts[k]
                );
            }
        }
    }

    #[test]
    fn direct_cap_is_enforced() {
        let t = build_tables(10_001).unwrap();
        assert!(psi2_direct(&t, 10_001).is_err());
        assert!(psi2_fft(&t, 10_001).is_ok());
    }

    #[test]
    fn first_moment_identity_and_hl_residual() {
        let t = build_tables(1000).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 1000).unwrap();
        let psi = chebyshev_psi(&t, 1000).unwrap();
        let pc = psi2_direct(&t, 1000).unwrap();
        let fm = first_moment_checks(&pc, &st, &psi).unwrap();
        assert!(
            fm.identity_residual_rel.abs() < 1e-9,
            "identity residual {}",
            fm.identity_residual_rel
        );
        assert!(
            fm.hl_residual_over_nlogn.abs() <= 5.0,
            "hl residual {}",
            fm.hl_residual_over_nlogn
        );
    }

    #[test]
    fn variance_matches_naive_loop_at_small_n() {
        let t = build_tables(100).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 100).unwrap();
        let pc = psi2_direct(&t, 100).unwrap();
        let e = error_term(&pc, &st).unwrap();
        let mut want = 0.0;
        for k in 1..=100i64 {
            let s = singular_series(&c, k).unwrap();
            let d = pc.counts[k as usize] - s * (100 - k) as f64;
            want += 2.0 * d * d;
        }
        assert!((e.e_value - want).abs() < 1e-9 * want);
        assert!(e.odd_contrib <= e.e_value);
    }

    #[test]
    fn compensated_sum_agrees_with_pairwise() {
        let t = build_tables(2000).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 2000).unwrap();
        let pc = psi2_direct(&t, 2000).unwrap();
        let e = error_term(&pc, &st).unwrap();
        let k = error_term_compensated(&pc, &st).unwrap();
        assert!((e.e_value - k).abs() <= 1e-9 * k, "{} vs {k}", e.e_value);
    }

    #[test]
    fn odd_lags_are_prime_power_noise() {
        let t = build_tables(2000).unwrap();
        let pc = psi2_direct(&t, 2000).unwrap();
        let cap = 2000f64.ln().powi(2) * 2.0 * 2000f64.log2();
        for k in (1..=1999usize).step_by(2) {
            assert!(pc.counts[k] <= cap, "k = {k}: {}", pc.counts[k]);
        }
    }

    #[test]
    fn twin_lag_tracks_prediction_at_n_1000() {
        let t = build_tables(1000).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 1000).unwrap();
        let pc = psi2_direct(&t, 1000).unwrap();
        let rows = figure_data(&pc, &st, 1, 100).unwrap();
        assert_eq!(rows.len(), 100);
        let r2 = rows[1];
        assert_eq!(r2.k, 2);
        assert!(
            (r2.psi2 / r2.hl_prediction - 1.0).abs() <= 0.35,
            "psi2 = {}, prediction = {}",
            r2.psi2,
            r2.hl_prediction
        );
    }

    #[test]
    fn error_curve_starts_at_zero_and_grows() {
        let t = build_tables(300).unwrap();
        let c = compute_constants(100_000).unwrap();
        let st = build_singular_table(&t, &c, 300).unwrap();
        let curve = normalized_error_curve(&t, &st, 300).unwrap();
        assert_eq!(curve.len(), 300);
        assert_eq!(curve[0], (1, 0.0, 0.0));
        assert!(curve.last().unwrap().1 > 0.0);
    }
}
