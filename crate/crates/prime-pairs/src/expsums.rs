//! The exponential sum S(α) = Σ_{n≤N} Λ(n) e(nα), its grid norms, and the
//! major-arc quantities built from the truncated singular series.
//!
//! Grids are always the regular points j/M.  Because S is a trigonometric
//! polynomial of degree N, any M ≥ 2N+1 makes the grid mean of |S|² *equal*
//! Σ Λ(n)² (exact quadrature); the L¹ mean carries instead a rigorous
//! Riemann-sum error bound lipschitz/(2M).  For the very long grids the L¹
//! policy demands, S is evaluated segment by segment — the points
//! j ≡ s (mod K) form a coarser grid of the modulated polynomial
//! Σ Λ(n) e(ns/M) e(nt/M′) — so memory stays flat while the reduction tree
//! stays fixed and deterministic.

use crate::arith::{self, ArithTables};
use crate::pairs::PairCountTable;
use crate::reduction::{pairwise_sum, par_sum, par_sum2};
use crate::singular::{
    build_singular_table, build_truncated_table, Constants, SingularTable, TruncatedTable,
};
use crate::{fft, Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest grid that is materialized in memory (2^24 complex doubles,
/// 256 MiB); longer grids go through the segmented path.
pub const MATERIALIZE_CAP: u64 = 1 << 24;

/// Segment length for the streamed L¹/L² evaluation.
pub const SEGMENT_LEN: u64 = 1 << 20;

/// A trigonometric polynomial of degree `n` sampled on the grid j/m.
pub struct GridEvaluation {
    pub n: u64,
    pub m: u64,
    pub values: Vec<Complex64>,
}

/// Sample S(α) = Σ_{n≤N} Λ(n) e(nα) on the grid j/m (needs m ≥ 2N+2 so
/// downstream power sums are exact).
pub fn sample_s(tables: &ArithTables, n: u64, m: u64) -> Result<GridEvaluation> {
    let mut buf = grid_buffer(n, m)?;
    for i in 1..=n as usize {
        buf[i].re = tables.mangoldt[i];
    }
    fft::synthesis(&mut buf);
    Ok(GridEvaluation { n, m, values: buf })
}

/// Sample the Dirichlet-style kernel I(α) = Σ_{n≤N} e(nα).
pub fn sample_i(n: u64, m: u64) -> Result<GridEvaluation> {
    let mut buf = grid_buffer(n, m)?;
    for v in buf.iter_mut().take(n as usize + 1).skip(1) {
        v.re = 1.0;
    }
    fft::synthesis(&mut buf);
    Ok(GridEvaluation { n, m, values: buf })
}

/// Sample Σ_n coeffs[n]·e(nα) for arbitrary real coefficients
/// (coeffs[0] included; degree = coeffs.len() − 1).
pub fn sample_coefficients(coeffs: &[f64], m: u64) -> Result<GridEvaluation> {
    let n = coeffs.len().saturating_sub(1) as u64;
    let mut buf = grid_buffer(n, m)?;
    for (i, &c) in coeffs.iter().enumerate() {
        buf[i].re = c;
    }
    fft::synthesis(&mut buf);
    Ok(GridEvaluation { n, m, values: buf })
}

/// Sample V_y(α) = Σ_{|k|≤N} (N−|k|)·𝔖_y(k)·e(kα) from its Fourier
/// coefficients.  V_y is a sum of squared kernels, so it is real and
/// nonnegative up to roundoff.
pub fn v_y_grid(tt: &TruncatedTable, n: u64, m: u64) -> Result<GridEvaluation> {
    if tt.kmax < n {
        return Err(Error::Range(format!(
            "truncated table covers k ≤ {}, need {n}",
            tt.kmax
        )));
    }
    let mut buf = grid_buffer(n, m)?;
    buf[0].re = n as f64 * tt.values[0];
    for k in 1..=n as usize {
        let c = (n as f64 - k as f64) * tt.values[k];
        buf[k].re = c;
        buf[m as usize - k].re = c; // even in k
    }
    fft::synthesis(&mut buf);
    Ok(GridEvaluation { n, m, values: buf })
}

fn grid_buffer(n: u64, m: u64) -> Result<Vec<Complex64>> {
    if n < 1 {
        return Err(Error::Range("degree must be ≥ 1".into()));
    }
    if m < 2 * n + 2 {
        return Err(Error::Range(format!(
            "grid must have m ≥ 2N+2 = {} points, got {m}",
            2 * n + 2
        )));
    }
    if m > MATERIALIZE_CAP {
        return Err(Error::Capacity {
            needed: m * 16,
            budget: MATERIALIZE_CAP * 16,
        });
    }
    Ok(vec![Complex64::new(0.0, 0.0); m as usize])
}

/// Grid L¹ and L² statistics with the rigorous left-endpoint error bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormEstimates {
    pub n: u64,
    pub m: u64,
    /// (1/M) Σ_j |f(j/M)|.
    pub l1: f64,
    /// lipschitz/(2M): |∫|f| − grid mean| never exceeds this.
    pub l1_error_bound: f64,
    /// (1/M) Σ_j |f(j/M)|² (exact ∫|f|² when M ≥ 2·degree+1).
    pub l2_sq: f64,
}

/// Norms of an in-memory grid.  `lipschitz` must bound sup |f′| / 2π…
/// i.e. pass 2π·Σ n|c_n| or better.
pub fn l1_norm(ev: &GridEvaluation, lipschitz: f64) -> NormEstimates {
    let vals = &ev.values;
    let (abs, sq) = par_sum2(vals.len(), |j| {
        let x = vals[j].norm();
        (x, x * x)
    });
    let mf = ev.m as f64;
    NormEstimates {
        n: ev.n,
        m: ev.m,
        l1: abs / mf,
        l1_error_bound: lipschitz / (2.0 * mf),
        l2_sq: sq / mf,
    }
}

/// 2π·Σ n·Λ(n), a Lipschitz constant for S(α) (it bounds sup |dS/dα|).
pub fn lipschitz_s(tables: &ArithTables, n: u64) -> f64 {
    2.0 * PI * arith::weighted_mangoldt_sum(tables, n)
}

/// Default grid length for L¹ work on S: the smallest power of two ≥
/// max(64N, 2πNψ(N)/(0.01·√(N log N))), so the rigorous error bound sits
/// near 1% of the expected norm √(N log N).
pub fn l1_policy_m(n: u64, psi: f64) -> u64 {
    let nf = n as f64;
    let demand = 2.0 * PI * nf * psi / (0.01 * (nf * nf.ln()).sqrt());
    fft::next_pow2((64 * n).max(demand.ceil() as u64))
}

/// L¹/L² norms of S on a grid of m points, materialized or streamed as
/// appropriate.  m must be a power of two on the streamed path.
pub fn s_norms(tables: &ArithTables, n: u64, m: u64) -> Result<NormEstimates> {
    let lip = lipschitz_s(tables, n);
    if m <= MATERIALIZE_CAP {
        let ev = sample_s(tables, n, m)?;
        return Ok(l1_norm(&ev, lip));
    }
    s_norms_segmented(tables, n, m, SEGMENT_LEN, lip)
}

/// Streamed evaluation over m/seg segments: segment s holds the points
/// j = s + K·t, where S(j/m) is the length-`seg` synthesis of the
/// coefficients Λ(n)·e(ns/m).  Exposed with an explicit segment length so
/// tests can exercise the seam; use [`s_norms`] otherwise.
pub fn s_norms_segmented(
    tables: &ArithTables,
    n: u64,
    m: u64,
    seg: u64,
    lipschitz: f64,
) -> Result<NormEstimates> {
    if !m.is_power_of_two() || !seg.is_power_of_two() || seg > m {
        return Err(Error::Range(format!(
            "streamed grid needs power-of-two sizes with segment ≤ m (m = {m}, segment = {seg})"
        )));
    }
    if seg < 2 * n + 2 {
        return Err(Error::Range(format!(
            "segment length {seg} is shorter than 2N+2 = {}",
            2 * n + 2
        )));
    }
    let k = m / seg;
    let supp: Vec<(u64, f64)> = (2..=n as usize)
        .filter(|&i| tables.mangoldt[i] != 0.0)
        .map(|i| (i as u64, tables.mangoldt[i]))
        .collect();

    let mut seg_abs: Vec<f64> = Vec::with_capacity(k as usize);
    let mut seg_sq: Vec<f64> = Vec::with_capacity(k as usize);
    let mut buf = vec![Complex64::new(0.0, 0.0); seg as usize];
    for s in 0..k {
        buf.fill(Complex64::new(0.0, 0.0));
        for &(i, lam) in &supp {
            // i·s < 2^63: i ≤ N ≤ 2^20, s < m/seg ≤ 2^43 here.
            let angle = 2.0 * PI * ((i * s) % m) as f64 / m as f64;
            let (sin, cos) = angle.sin_cos();
            buf[i as usize] = Complex64::new(lam * cos, lam * sin);
        }
        fft::synthesis(&mut buf);
        let vals = &buf;
        let (a, q) = par_sum2(seg as usize, |t| {
            let x = vals[t].norm();
            (x, x * x)
        });
        seg_abs.push(a);
        seg_sq.push(q);
    }
    let mf = m as f64;
    Ok(NormEstimates {
        n,
        m,
        l1: pairwise_sum(&seg_abs) / mf,
        l1_error_bound: lipschitz / (2.0 * mf),
        l2_sq: pairwise_sum(&seg_sq) / mf,
    })
}

// ---------------------------------------------------------------------------
// Major-arc quantities.
// ---------------------------------------------------------------------------

/// a₀(N,y) = Σ_{n≤N} Λ(n)² − N·𝔖_y(0), the mean of |S|² − V_y.
pub fn a0(tables: &ArithTables, tt: &TruncatedTable, n: u64) -> Result<f64> {
    if n > tables.limit {
        return Err(Error::Range(format!("a0 needs N ≤ {}", tables.limit)));
    }
    Ok(arith::mangoldt_sq_sum(tables, n) - n as f64 * tt.values[0])
}

/// W(N,y) = Σ_{1≤|k|≤N} (N−|k|)²·(𝔖(k) − 𝔖_y(k))².
pub fn w_direct(st: &SingularTable, tt: &TruncatedTable, n: u64) -> Result<f64> {
    if st.kmax < n || tt.kmax < n {
        return Err(Error::Range("W needs both series tables up to N".into()));
    }
    let nf = n as f64;
    Ok(2.0
        * par_sum(n as usize, |i| {
            let k = i + 1;
            let d = st.values[k] - tt.values[k];
            let w = nf - k as f64;
            w * w * d * d
        }))
}

/// The three-term expansion of W: (N³/3)·L/y² − (N²/4)·log²(N/y²)
/// + M·N²·log(N/y²), with L and M from [`Constants`].
pub fn w_asymptotic(constants: &Constants, n: u64, y: f64) -> f64 {
    let nf = n as f64;
    let h = constants.lconst / (y * y);
    let log_ratio = (nf / (y * y)).ln();
    nf * nf * nf / 3.0 * h - 0.25 * nf * nf * log_ratio * log_ratio
        + constants.mconst * nf * nf * log_ratio
}

/// J(N,y) = ∫ ||S|² − V_y − a₀|² dα, by Parseval:
/// Σ_{1≤|k|≤N} (ψ₂(N,k) − 𝔖_y(k)(N−|k|))².
pub fn j_parseval(pc: &PairCountTable, tt: &TruncatedTable) -> Result<f64> {
    if tt.kmax < pc.n {
        return Err(Error::Range("J needs the truncated table up to N".into()));
    }
    let nf = pc.n as f64;
    Ok(2.0
        * par_sum(pc.n as usize, |i| {
            let k = i + 1;
            let d = pc.counts[k] - tt.values[k] * (nf - k as f64);
            d * d
        }))
}

/// The Cauchy–Schwarz lower bound E ≥ (√J − √W)² and its slack.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TriangleBoundReport {
    pub e_value: f64,
    pub j: f64,
    pub w: f64,
    pub lower_bound: f64,
    /// e_value − lower_bound (must be ≥ −1e-6·e_value).
    pub slack: f64,
    pub holds: bool,
    pub j_ge_w: bool,
}

pub fn triangle_bound_check(e_value: f64, j: f64, w: f64) -> TriangleBoundReport {
    let d = j.sqrt() - w.sqrt();
    let lower_bound = d * d;
    let slack = e_value - lower_bound;
    TriangleBoundReport {
        e_value,
        j,
        w,
        lower_bound,
        slack,
        holds: slack >= -1e-6 * e_value,
        j_ge_w: j >= w,
    }
}

/// T(N,y) = ∫ ||S|² − V_y − a₀| dα on a grid of m points.
pub fn t_quantity(tables: &ArithTables, tt: &TruncatedTable, n: u64, m: u64) -> Result<f64> {
    let a0v = a0(tables, tt, n)?;
    let s = sample_s(tables, n, m)?;
    let v = v_y_grid(tt, n, m)?;
    let sv = &s.values;
    let vv = &v.values;
    let total = par_sum(m as usize, |j| (sv[j].norm_sqr() - vv[j].re - a0v).abs());
    Ok(total / m as f64)
}

/// Everything the `majorarc` subcommand reports about one (N, y) pair.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MajorArcReport {
    pub n: u64,
    pub y: f64,
    pub a0: f64,
    /// a₀/(½·N·log N): tends to 1 from below, slowly (about 0.49 at 10⁴).
    pub a0_ratio: f64,
    pub w_direct: f64,
    pub w_asymptotic: f64,
    pub w_ratio: f64,
    pub j: f64,
    pub e_value: f64,
    pub triangle_lower_bound: f64,
    pub triangle_slack: f64,
    pub triangle_holds: bool,
    pub j_ge_w: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

pub fn major_arc(
    tables: &ArithTables,
    constants: &Constants,
    n: u64,
    y: f64,
    with_t: bool,
    m_override: Option<u64>,
) -> Result<MajorArcReport> {
    let st = build_singular_table(tables, constants, n)?;
    let tt = build_truncated_table(tables, y, n)?;
    let pc = crate::pairs::psi2_fft(tables, n)?;
    let a0v = a0(tables, &tt, n)?;
    let w = w_direct(&st, &tt, n)?;
    let wa = w_asymptotic(constants, n, y);
    let j = j_parseval(&pc, &tt)?;
    let e = crate::pairs::error_term(&pc, &st)?.e_value;
    let tri = triangle_bound_check(e, j, w);
    let nf = n as f64;
    let t = if with_t {
        let m = m_override.unwrap_or_else(|| fft::next_pow2(64 * n));
        Some(t_quantity(tables, &tt, n, m)?)
    } else {
        None
    };
    Ok(MajorArcReport {
        n,
        y,
        a0: a0v,
        a0_ratio: a0v / (0.5 * nf * nf.ln()),
        w_direct: w,
        w_asymptotic: wa,
        w_ratio: w / wa,
        j,
        e_value: e,
        triangle_lower_bound: tri.lower_bound,
        triangle_slack: tri.slack,
        triangle_holds: tri.holds,
        j_ge_w: tri.j_ge_w,
        t,
    })
}

/// The Hölder-split diagnostics for h = |S|² − V_y at y = √N, with the
/// secondary split of V into moduli below and above y₀ = √N/log N.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HolderReport {
    pub n: u64,
    pub m: u64,
    pub y: f64,
    pub y0: f64,
    pub a0: f64,
    /// Grid means of |h|, |h|^{1/2}, h².
    pub mean_abs_h: f64,
    pub mean_sqrt_h: f64,
    pub mean_sq_h: f64,
    /// (∫|h|)³ ≤ (∫|h|^{1/2})²·∫h² — exact on any finite grid.
    pub holder_ok: bool,
    /// ∫|h| ≥ ∫(|S|²−V_y) = a₀ (up to float slop).
    pub abs_ge_a0_ok: bool,
    /// I₁ = ∫ V_{y₀}^{1/2}, I₂ = ∫ (V_y−V_{y₀})^{1/2}, ∫ V_y^{1/2}.
    pub i1: f64,
    pub i2: f64,
    pub i_vy_sqrt: f64,
    pub i1_over_y0_logn: f64,
    pub i2_over_sqrt_nloglogn: f64,
    /// ∫V_y^{1/2} / (√N·√log log N) — stays O(1) at desk scale.
    pub vy_sqrt_ratio: f64,
    /// min_j V_y(j/M): roundoff-negative at worst.
    pub vy_min: f64,
}

pub fn holder_split_check(
    tables: &ArithTables,
    n: u64,
    m_override: Option<u64>,
) -> Result<HolderReport> {
    if n < 16 || n > tables.limit {
        return Err(Error::Range(format!(
            "holder split needs 16 ≤ N ≤ {}",
            tables.limit
        )));
    }
    let nf = n as f64;
    let y = nf.sqrt();
    let y0 = (nf.sqrt() / nf.ln()).max(1.0);
    let m = m_override.unwrap_or_else(|| fft::next_pow2(64 * n));
    let tt_y = build_truncated_table(tables, y, n)?;
    let tt_y0 = build_truncated_table(tables, y0, n)?;
    let a0v = a0(tables, &tt_y, n)?;

    let s = sample_s(tables, n, m)?;
    let vy = v_y_grid(&tt_y, n, m)?;
    let vy0 = v_y_grid(&tt_y0, n, m)?;
    let sv = &s.values;
    let vyv = &vy.values;
    let vy0v = &vy0.values;
    let mf = m as f64;
    let ml = m as usize;

    let (sum_abs, sum_sq) = par_sum2(ml, |j| {
        let h = sv[j].norm_sqr() - vyv[j].re;
        (h.abs(), h * h)
    });
    let sum_sqrt = par_sum(ml, |j| (sv[j].norm_sqr() - vyv[j].re).abs().sqrt());
    let (sum_vy0_sqrt, sum_gap_sqrt) = par_sum2(ml, |j| {
        (
            vy0v[j].re.max(0.0).sqrt(),
            (vyv[j].re - vy0v[j].re).max(0.0).sqrt(),
        )
    });
    let sum_vy_sqrt = par_sum(ml, |j| vyv[j].re.max(0.0).sqrt());
    let vy_min = vyv.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);

    let mean_abs_h = sum_abs / mf;
    let mean_sqrt_h = sum_sqrt / mf;
    let mean_sq_h = sum_sq / mf;
    let i1 = sum_vy0_sqrt / mf;
    let i2 = sum_gap_sqrt / mf;
    let i_vy_sqrt = sum_vy_sqrt / mf;
    let loglog = nf.ln().ln();

    Ok(HolderReport {
        n,
        m,
        y,
        y0,
        a0: a0v,
        mean_abs_h,
        mean_sqrt_h,
        mean_sq_h,
        holder_ok: mean_abs_h.powi(3) <= mean_sqrt_h * mean_sqrt_h * mean_sq_h * (1.0 + 1e-12),
        abs_ge_a0_ok: mean_abs_h >= a0v - 1e-6 * a0v.abs(),
        i1,
        i2,
        i_vy_sqrt,
        i1_over_y0_logn: i1 / (y0 * nf.ln()),
        i2_over_sqrt_nloglogn: i2 / (nf * loglog).sqrt(),
        vy_sqrt_ratio: i_vy_sqrt / (nf.sqrt() * loglog.sqrt()),
        vy_min,
    })
}
