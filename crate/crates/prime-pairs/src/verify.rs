//! The built-in verification suite: one self-contained run that exercises
//! every module against its invariants and reports pass/fail per check.
//!
//! Every numeric tolerance lives in the envelope registry below, so a CI job
//! (or a skeptic) can tighten or loosen any single bound from the command
//! line without recompiling.  Checks marked `info` record trends that are
//! expected but not guaranteed at desk scale; they never fail the run.

use crate::arith::{self, ArithTables};
use crate::pairs::{self, VARIANCE_TABLE_REFERENCE};
use crate::reduction::par_sum;
use crate::report::{self, truncate_5dp};
use crate::singular;
use crate::{approx, expsums, Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Default tolerance registry.  Names are stable CLI-facing identifiers.
pub fn default_envelopes() -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: f64| m.insert(k.to_string(), v);
    put("identity_rel", 1e-9); // exact algebraic identities, relative
    put("quadrature_rel", 1e-12); // trig-polynomial grid quadrature, relative
    put("fft_abs_tol", 1e-6); // FFT vs direct pair counts, absolute
    put("hl_residual", 5.0); // (Σ(N−|k|)𝔖(k) − N²)/(N log N)
    put("constants_abs_tol", 1e-8); // two-cutoff drift of C₂, L, M, D
    put("tail_bound_cap", 1e-9); // reported rigorous tail bound at 10⁷
    put("zero_lag_log_gap", 2.0); // |𝔖_y(0) − log y|
    put("series_gap_scale", 10.0); // |𝔖_y(k) − 𝔖(k)| ≤ scale/y at the last rung
    put("hildebrand_ratio", 10.0); // residual over h(k)/√x
    put("moment_residual", 5.0); // approximant moment residuals over N
    put("gap_mean_cap", 2.0); // Σ|λ_R − Λ_R|/N
    put("l1_ratio_cap", 20.0); // ∫|S_R| over R·log N
    put("l1_band_lo", 0.3); // ∫|S| / √(N log N) at N = 512
    put("l1_band_hi", 0.75);
    put("l1_error_frac", 0.01); // Riemann bound as a fraction of ∫|S|
    put("w_ratio_lo", 0.5); // W_direct/W_asymptotic at y = N^{1/4}
    put("w_ratio_hi", 2.0);
    put("a0_ratio_lo", 0.35); // a₀/(½N log N) at N = 10⁴, y = √N
    put("a0_ratio_hi", 0.65);
    put("holder_vy_cap", 10.0); // ∫V_y^{1/2}/(√N √log log N)
    put("grid_floor_scale", 1e-6); // V_y grid minimum ≥ −scale·N
    put("triangle_slack_rel", 1e-6); // allowed negative slack, relative to E
    m
}

/// Apply `name=value` overrides; unknown names are usage errors.
pub fn apply_envelope_overrides(
    envelopes: &mut BTreeMap<String, f64>,
    overrides: &[String],
) -> Result<()> {
    for entry in overrides {
        let (name, value) = entry.split_once('=').ok_or_else(|| {
            Error::Range(format!("envelope override '{entry}' is not name=value"))
        })?;
        if !envelopes.contains_key(name) {
            return Err(Error::Range(format!(
                "unknown envelope '{name}'; known: {}",
                envelopes.keys().cloned().collect::<Vec<_>>().join(", ")
            )));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| Error::Range(format!("envelope value '{value}' is not a number")))?;
        envelopes.insert(name.to_string(), v);
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// "pass", "fail", or "info" (recorded, never fatal).
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub fast: bool,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
    pub seconds: f64,
    pub checks: Vec<CheckResult>,
}

struct Runner {
    env: BTreeMap<String, f64>,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn env(&self, key: &str) -> f64 {
        *self
            .env
            .get(key)
            .unwrap_or_else(|| panic!("envelope '{key}' missing from registry"))
    }

    fn record(&mut self, name: &str, ok: bool, measured: f64, limit: f64, detail: &str) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
            measured: Some(measured),
            limit: Some(limit),
            detail: detail.to_string(),
        });
    }

    fn record_flag(&mut self, name: &str, ok: bool, detail: &str) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
            measured: None,
            limit: None,
            detail: detail.to_string(),
        });
    }

    fn record_info(&mut self, name: &str, measured: f64, detail: &str) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: "info".to_string(),
            measured: Some(measured),
            limit: None,
            detail: detail.to_string(),
        });
    }

    fn record_err(&mut self, name: &str, err: &Error) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: "fail".to_string(),
            measured: None,
            limit: None,
            detail: format!("check aborted: {err}"),
        });
    }
}

/// Run the whole suite.  `fast` trims the heavy desk-scale items so the run
/// finishes in seconds; the full run stays within a couple of minutes.
pub fn run_verify(fast: bool, envelopes: BTreeMap<String, f64>) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut r = Runner {
        env: envelopes,
        checks: Vec::new(),
    };

    let tables = arith::build_tables(10_000)?;
    let cutoff = if fast { 1_000_000 } else { 10_000_000 };
    let constants = singular::compute_constants(cutoff)?;

    check_arith(&mut r, &tables);
    check_singular(&mut r, &tables, &constants, fast);
    check_pairs(&mut r, &tables, &constants, fast);
    check_expsums(&mut r, &tables, &constants, fast);
    check_approx(&mut r, &tables, fast);
    check_io(&mut r);

    let failed = r.checks.iter().filter(|c| c.status == "fail").count();
    let passed = r.checks.iter().filter(|c| c.status == "pass").count();
    let info = r.checks.iter().filter(|c| c.status == "info").count();
    Ok(VerifyReport {
        fast,
        passed,
        failed,
        info,
        seconds: start.elapsed().as_secs_f64(),
        checks: r.checks,
    })
}

fn check_arith(r: &mut Runner, tables: &ArithTables) {
    // 1: Σ_{d|n} Λ(d) = log n, the defining divisor identity.
    let mut worst = 0.0f64;
    for n in 2..=tables.limit.min(10_000) {
        let mut s = 0.0;
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                s += tables.mangoldt[d as usize];
                if d != n / d {
                    s += tables.mangoldt[(n / d) as usize];
                }
            }
            d += 1;
        }
        worst = worst.max((s - (n as f64).ln()).abs() / (n as f64).ln());
    }
    r.record(
        "arith.divisor_identity",
        worst <= r.env("identity_rel") * 10.0,
        worst,
        r.env("identity_rel") * 10.0,
        "Σ_{d|n} Λ(d) = log n for every n ≤ 10⁴ (relative)",
    );

    // 2: ψ at a hand value and at scale.
    let hand = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
    let psi10 = arith::chebyshev_psi(tables, 10).map(|p| p.psi);
    let psi1e4 = arith::chebyshev_psi(tables, 10_000).map(|p| p.psi);
    match (psi10, psi1e4) {
        (Ok(a), Ok(b)) => {
            let gap10 = (a - hand).abs();
            let drift = (b / 10_000.0 - 1.0).abs();
            r.record(
                "arith.psi_values",
                gap10 < 1e-12 && drift < 0.01,
                drift,
                0.01,
                "ψ(10) equals its prime-power sum; ψ(10⁴)/10⁴ within 1%",
            );
        }
        (Err(e), _) | (_, Err(e)) => r.record_err("arith.psi_values", &e),
    }

    // 3: Ramanujan sums: closed form vs the literal exponential sum.
    let mut worst = 0.0f64;
    for q in 1..=60u64 {
        for n in -60i64..=60 {
            let closed = arith::ramanujan_sum(q, n) as f64;
            let mut re = 0.0;
            let mut im = 0.0;
            for b in 1..=q {
                if num::Integer::gcd(&b, &q) == 1 {
                    let ang = 2.0 * std::f64::consts::PI * (b as f64) * (n as f64) / (q as f64);
                    re += ang.cos();
                    im += ang.sin();
                }
            }
            worst = worst.max((re - closed).abs().max(im.abs()));
        }
    }
    r.record(
        "arith.ramanujan_closed_form",
        worst < 1e-7,
        worst,
        1e-7,
        "c_q(n) closed form vs direct e(bn/q) sum, q ≤ 60, |n| ≤ 60",
    );

    // 4: sieve cache round trip is bit-exact.
    let res = (|| -> Result<bool> {
        let small = arith::build_tables(700)?;
        let path =
            std::env::temp_dir().join(format!("prime-pairs-verify-{}.tables", std::process::id()));
        arith::write_cache(&small, &path)?;
        let back = arith::read_cache(&path)?;
        let _ = std::fs::remove_file(&path);
        Ok(back.limit == small.limit
            && back
                .mangoldt
                .iter()
                .map(|v| v.to_bits())
                .eq(small.mangoldt.iter().map(|v| v.to_bits()))
            && back.mobius == small.mobius
            && back.totient == small.totient
            && back.spf == small.spf)
    })();
    match res {
        Ok(ok) => r.record_flag(
            "arith.cache_roundtrip",
            ok,
            "write_cache → read_cache reproduces every table bit for bit",
        ),
        Err(e) => r.record_err("arith.cache_roundtrip", &e),
    }
}

fn check_singular(
    r: &mut Runner,
    tables: &ArithTables,
    constants: &singular::Constants,
    fast: bool,
) {
    // 5: the four prime constants against their independently published
    // decimal expansions (twin-prime constant and the Mertens-style sum).
    let c2_ref = 0.660_161_815_846_869_6;
    let d_ref = 1.332_582_275_733_220_9;
    let tol = if fast {
        r.env("constants_abs_tol") * 10.0
    } else {
        r.env("constants_abs_tol")
    };
    let gap = (constants.c2 - c2_ref)
        .abs()
        .max((constants.dconst - d_ref).abs());
    let ok = gap <= tol
        && constants.tail_bound <= r.env("tail_bound_cap") * if fast { 100.0 } else { 1.0 }
        && constants.lconst.is_finite()
        && constants.mconst.is_finite();
    r.record(
        "singular.constants",
        ok,
        gap,
        tol,
        "C₂ and D match reference decimals; rigorous tail bound is tiny",
    );

    // 6: 𝔖_y(0) = Σ_{q≤y} μ²/φ grows like log y.
    let mut worst = 0.0f64;
    for y in [100.0, 1000.0, 10_000.0] {
        match singular::truncated_zero(tables, y) {
            Ok(v) => worst = worst.max((v - y.ln()).abs()),
            Err(e) => {
                r.record_err("singular.zero_lag_growth", &e);
                return;
            }
        }
    }
    r.record(
        "singular.zero_lag_growth",
        worst <= r.env("zero_lag_log_gap"),
        worst,
        r.env("zero_lag_log_gap"),
        "|𝔖_y(0) − log y| stays O(1) for y ∈ {10², 10³, 10⁴}",
    );

    // 7: 𝔖_y(k) → 𝔖(k) monotonically in the sampled ladder, with the last
    // gap within scale/y.
    let ys = [10.0, 100.0, 1000.0, 10_000.0];
    let mut ok = true;
    let mut last_scaled = 0.0f64;
    for k in [2i64, 30] {
        match singular::series_convergence_check(tables, constants, k, &ys) {
            Ok(gaps) => {
                for w in gaps.windows(2) {
                    if w[1].1 > w[0].1 {
                        ok = false;
                    }
                }
                let (y_last, gap_last) = gaps[gaps.len() - 1];
                last_scaled = last_scaled.max(gap_last * y_last);
                if gap_last * y_last > r.env("series_gap_scale") {
                    ok = false;
                }
            }
            Err(e) => {
                r.record_err("singular.series_convergence", &e);
                return;
            }
        }
    }
    r.record(
        "singular.series_convergence",
        ok,
        last_scaled,
        r.env("series_gap_scale"),
        "truncated series converges monotonically to 𝔖(k) for k ∈ {2, 30}",
    );

    // 8: Hildebrand's coprime-restricted asymptotic at desk scale.
    match singular::hildebrand_check(tables, constants, 10_000, 3) {
        Ok(h) => r.record(
            "singular.hildebrand",
            h.ratio <= r.env("hildebrand_ratio"),
            h.ratio,
            r.env("hildebrand_ratio"),
            "Σ_{n≤x,(n,k)=1} μ²/φ vs (φ(k)/k)(log x + D + g(k)) at x = 10⁴",
        ),
        Err(e) => r.record_err("singular.hildebrand", &e),
    }
}

fn check_pairs(r: &mut Runner, tables: &ArithTables, constants: &singular::Constants, fast: bool) {
    let ns: &[u64] = if fast { &[1000] } else { &[1000, 10_000] };

    // 9: the first-moment identity Σ_{|k|≤N} ψ₂ = ψ(N)² and the
    // Hardy–Littlewood first moment Σ(N−|k|)𝔖(k) = N² + O(N log N).
    let mut worst_rel = 0.0f64;
    let mut worst_hl = 0.0f64;
    for &n in ns {
        let res = (|| -> Result<(f64, f64)> {
            let pc = pairs::psi2_fft(tables, n)?;
            let st = singular::build_singular_table(tables, constants, n)?;
            let psi = arith::chebyshev_psi(tables, n)?;
            let fm = pairs::first_moment_checks(&pc, &st, &psi)?;
            Ok((
                fm.identity_residual_rel.abs(),
                fm.hl_residual_over_nlogn.abs(),
            ))
        })();
        match res {
            Ok((a, b)) => {
                worst_rel = worst_rel.max(a);
                worst_hl = worst_hl.max(b);
            }
            Err(e) => {
                r.record_err("pairs.first_moment", &e);
                return;
            }
        }
    }
    r.record(
        "pairs.first_moment",
        worst_rel <= r.env("identity_rel") && worst_hl <= r.env("hl_residual"),
        worst_rel.max(worst_hl),
        r.env("hl_residual"),
        "Σψ₂ = ψ² to 1e-9 and the 𝔖 first moment is N² + O(N log N)",
    );

    // 10: transform and direct pair counts agree entrywise.
    let res = (|| -> Result<f64> {
        let a = pairs::psi2_direct(tables, 1000)?;
        let b = pairs::psi2_fft(tables, 1000)?;
        let mut worst = 0.0f64;
        for k in 0..=1000usize {
            worst = worst.max((a.counts[k] - b.counts[k]).abs());
        }
        Ok(worst)
    })();
    match res {
        Ok(worst) => r.record(
            "pairs.fft_vs_direct",
            worst <= r.env("fft_abs_tol"),
            worst,
            r.env("fft_abs_tol"),
            "ψ₂(1000, k) via autocorrelation vs the double loop, all k",
        ),
        Err(e) => r.record_err("pairs.fft_vs_direct", &e),
    }

    // 11: the published variance table rows, truncated to five decimals.
    let mut all_ok = true;
    let mut detail = String::new();
    for &n in ns {
        let reference = VARIANCE_TABLE_REFERENCE
            .iter()
            .find(|(rn, _)| *rn == n)
            .map(|(_, s)| *s)
            .expect("verify rows are drawn from the reference table");
        let res = (|| -> Result<(String, bool)> {
            let pc = pairs::psi2_fft(tables, n)?;
            let st = singular::build_singular_table(tables, constants, n)?;
            let e = pairs::error_term(&pc, &st)?;
            let t = truncate_5dp(e.normalized);
            Ok((t.text, t.boundary))
        })();
        match res {
            Ok((text, boundary)) => {
                if text != reference {
                    all_ok = false;
                }
                detail.push_str(&format!(
                    "N={n}: {text} vs {reference}{}; ",
                    if boundary {
                        " (truncation boundary)"
                    } else {
                        ""
                    }
                ));
            }
            Err(e) => {
                r.record_err("pairs.variance_rows", &e);
                return;
            }
        }
    }
    r.record_flag("pairs.variance_rows", all_ok, detail.trim_end_matches("; "));

    // 12 (info): the normalized variance trend over the decades covered here.
    let res = (|| -> Result<f64> {
        let pc1 = pairs::psi2_fft(tables, 1000)?;
        let st1 = singular::build_singular_table(tables, constants, 1000)?;
        let e1 = pairs::error_term(&pc1, &st1)?.normalized;
        let pc2 = pairs::psi2_fft(tables, 10_000)?;
        let st2 = singular::build_singular_table(tables, constants, 10_000)?;
        let e2 = pairs::error_term(&pc2, &st2)?.normalized;
        Ok(e2 - e1)
    })();
    match res {
        Ok(delta) => r.record_info(
            "pairs.variance_trend",
            delta,
            "normalized E(N) rises from N = 10³ to 10⁴ (expected trend)",
        ),
        Err(e) => r.record_err("pairs.variance_trend", &e),
    }
}

fn check_expsums(
    r: &mut Runner,
    tables: &ArithTables,
    constants: &singular::Constants,
    fast: bool,
) {
    // 13: exact quadrature of |S|² on a 2N+2-point grid.
    let res = (|| -> Result<f64> {
        let ev = expsums::sample_s(tables, 500, 1024)?;
        let norms = expsums::l1_norm(&ev, expsums::lipschitz_s(tables, 500));
        let want = arith::mangoldt_sq_sum(tables, 500);
        Ok((norms.l2_sq - want).abs() / want)
    })();
    match res {
        Ok(gap) => r.record(
            "expsums.quadrature",
            gap <= r.env("quadrature_rel"),
            gap,
            r.env("quadrature_rel"),
            "grid mean of |S|² equals ΣΛ(n)² exactly (N = 500, M = 1024)",
        ),
        Err(e) => r.record_err("expsums.quadrature", &e),
    }

    // 14: the L¹ band at N = 512 and the policy grid meeting its 1% target.
    let res = (|| -> Result<(f64, f64)> {
        let n512 = expsums::s_norms(tables, 512, 1 << 16)?;
        let band = n512.l1 / (512.0 * 512f64.ln()).sqrt();
        let psi = arith::chebyshev_psi(tables, 1024)?.psi;
        let m = expsums::l1_policy_m(1024, psi);
        let n1024 = expsums::s_norms(tables, 1024, m)?;
        Ok((band, n1024.l1_error_bound / n1024.l1))
    })();
    match res {
        Ok((band, frac)) => r.record(
            "expsums.l1_policy",
            band >= r.env("l1_band_lo")
                && band <= r.env("l1_band_hi")
                && frac <= r.env("l1_error_frac"),
            band,
            r.env("l1_band_hi"),
            "∫|S|/√(N log N) in band at N = 512; policy grid bound ≤ 1% of ∫|S|",
        ),
        Err(e) => r.record_err("expsums.l1_policy", &e),
    }

    // 15: V_y grids are nonnegative with exact mean N·𝔖_y(0).
    let res = (|| -> Result<(f64, f64)> {
        let tt = singular::build_truncated_table(tables, 22.0, 500)?;
        let ev = expsums::v_y_grid(&tt, 500, 2048)?;
        let min = ev.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        let mean = par_sum(2048, |j| ev.values[j].re) / 2048.0;
        let want = 500.0 * tt.values[0];
        Ok((min, (mean - want).abs() / want))
    })();
    match res {
        Ok((min, mean_gap)) => r.record(
            "expsums.v_grid",
            min >= -r.env("grid_floor_scale") * 500.0 && mean_gap <= r.env("identity_rel"),
            min,
            -r.env("grid_floor_scale") * 500.0,
            "V_y ≥ 0 on the grid and its mean equals N·𝔖_y(0) (N = 500, y = 22)",
        ),
        Err(e) => r.record_err("expsums.v_grid", &e),
    }

    // 16: the major-arc suite — a₀ sign and scale, W against its expansion,
    // and the variance lower bound E ≥ (√J − √W)².
    let n: u64 = if fast { 2000 } else { 10_000 };
    let res = (|| -> Result<(expsums::MajorArcReport, f64)> {
        let quarter = (n as f64).powf(0.25);
        let rep_quarter = expsums::major_arc(tables, constants, n, quarter, false, None)?;
        let rep_sqrt = expsums::major_arc(tables, constants, n, (n as f64).sqrt(), false, None)?;
        Ok((rep_sqrt, rep_quarter.w_ratio))
    })();
    match res {
        Ok((rep, w_ratio)) => {
            let mut ok = rep.a0 > 0.0
                && w_ratio >= r.env("w_ratio_lo")
                && w_ratio <= r.env("w_ratio_hi")
                && rep.triangle_slack >= -r.env("triangle_slack_rel") * rep.e_value;
            if !fast {
                ok = ok
                    && rep.a0_ratio >= r.env("a0_ratio_lo")
                    && rep.a0_ratio <= r.env("a0_ratio_hi");
            }
            r.record(
                "expsums.major_arc",
                ok,
                w_ratio,
                r.env("w_ratio_hi"),
                &format!(
                    "a₀ > 0 (ratio {:.3}), W/W_asym in band at y = N^¼, E ≥ (√J−√W)² at y = √N, N = {n}",
                    rep.a0_ratio
                ),
            );
        }
        Err(e) => r.record_err("expsums.major_arc", &e),
    }

    // 17: the Hölder split of h = |S|² − V_y.
    let res = expsums::holder_split_check(tables, n, if fast { Some(1 << 17) } else { None });
    match res {
        Ok(h) => r.record(
            "expsums.holder",
            h.holder_ok && h.abs_ge_a0_ok && h.vy_sqrt_ratio <= r.env("holder_vy_cap"),
            h.vy_sqrt_ratio,
            r.env("holder_vy_cap"),
            "(∫|h|)³ ≤ (∫√|h|)²∫h², ∫|h| ≥ a₀, and ∫V_y^½ stays O(√N log log N)",
        ),
        Err(e) => r.record_err("expsums.holder", &e),
    }
}

fn check_approx(r: &mut Runner, tables: &ArithTables, fast: bool) {
    // 18: the two closed forms of λ_R agree in exact rational arithmetic.
    let (nmax, rmax) = if fast { (60, 20) } else { (200, 30) };
    match approx::dual_identity_check(tables, nmax, rmax) {
        Ok(count) => r.record(
            "approx.dual_identity",
            count == nmax * rmax,
            count as f64,
            (nmax * rmax) as f64,
            "Ramanujan-sum form ≡ divisor-sum dual, exact rationals, all pairs",
        ),
        Err(e) => r.record_err("approx.dual_identity", &e),
    }

    // 19: the tables honor their definitions at the edges.
    let res = (|| -> Result<bool> {
        let lam = approx::lambda_r_table(tables, 200, 30.0)?;
        let mut ok = (lam[1] - 30f64.ln()).abs() < 1e-12;
        for n in 2..=30usize {
            ok = ok && (lam[n] - tables.mangoldt[n]).abs() < 1e-12;
        }
        let refined = approx::lambda_refined_table(tables, 100, 1.0)?;
        for v in refined.iter().skip(1) {
            ok = ok && (v - 1.0).abs() < 1e-15;
        }
        let a = approx::big_l(tables, 100.0)?;
        let b = singular::truncated_zero(tables, 100.0)?;
        ok = ok && a.to_bits() == b.to_bits();
        Ok(ok)
    })();
    match res {
        Ok(ok) => r.record_flag(
            "approx.table_definitions",
            ok,
            "Λ_R(1) = log R, Λ_R = Λ below R, λ₁ ≡ 1, L(R) ≡ 𝔖_y(0) path",
        ),
        Err(e) => r.record_err("approx.table_definitions", &e),
    }

    // 20: moment sums near their first-order predictions.
    let (n, rr) = if fast {
        (2000u64, 40.0)
    } else {
        (10_000u64, 100.0)
    };
    match approx::moment_suite(tables, n, rr) {
        Ok(m) => {
            let worst = m
                .lambda_sq_residual_over_n
                .abs()
                .max(m.cross_residual_over_n.abs())
                .max(m.refined_cross_residual_over_n.abs())
                .max(m.refined_sq_residual_over_n.abs());
            r.record(
                "approx.moments",
                worst <= r.env("moment_residual") && m.mean_abs_gap <= r.env("gap_mean_cap"),
                worst,
                r.env("moment_residual"),
                &format!("four moment residuals over N at (N, R) = ({n}, {rr})"),
            );
        }
        Err(e) => r.record_err("approx.moments", &e),
    }

    // 21: the L² distance matches its grid integral and the R = N identity.
    let res = (|| -> Result<(f64, f64)> {
        let d = approx::l2_distance(tables, 500, 20.0)?;
        let rel = d.bridge_gap / d.distance_sq;
        let full = approx::l2_distance(tables, 300, 300.0)?;
        let want = 300f64.ln() * 300f64.ln();
        Ok((rel, (full.distance_sq - want).abs() / want))
    })();
    match res {
        Ok((rel, edge)) => r.record(
            "approx.parseval_bridge",
            rel <= r.env("identity_rel") && edge <= r.env("identity_rel"),
            rel.max(edge),
            r.env("identity_rel"),
            "Σ(Λ−Λ_R)² = grid ∫|S−S_R|²; at R = N the distance is log²N",
        ),
        Err(e) => r.record_err("approx.parseval_bridge", &e),
    }

    // 22: the L¹ lower-bound chain and the approximant norm ratios.
    let res = (|| -> Result<(approx::L1ChainReport, approx::ApproxNorms)> {
        let (tn, tm) = if fast {
            (1024, 1 << 17)
        } else {
            (4096, 1 << 20)
        };
        let chain = approx::l1_chain_assembly(tables, tn, Some(tm))?;
        let norms = approx::l1_approx_sums(tables, 2000, 30.0, Some(1 << 17))?;
        Ok((chain, norms))
    })();
    match res {
        Ok((chain, norms)) => {
            let ratio = norms.l1_sr_over_r_logn.max(norms.l1_refined_over_r_logn);
            r.record(
                "approx.l1_chain",
                chain.chain_ok && chain.shape_ok && ratio <= r.env("l1_ratio_cap"),
                chain.l1_sq_over_nlogn,
                chain.shape_cap,
                "pairing lower bound ≤ ∫|S|, shape cap honored, norm ratios small",
            );
        }
        Err(e) => r.record_err("approx.l1_chain", &e),
    }
}

fn check_io(r: &mut Runner) {
    // 23: JSON emission is deterministic with sorted keys.
    let sample = serde_json::json!({
        "zeta": 2, "alpha": 0.5, "mid": {"b": [1.25, 3], "a": "x"}
    });
    let s1 = report::emit_json(&sample);
    let s2 = report::emit_json(&sample);
    match (s1, s2) {
        (Ok(a), Ok(b)) => {
            let sorted =
                a.find("alpha").unwrap_or(usize::MAX) < a.find("zeta").unwrap_or(usize::MAX);
            r.record_flag(
                "io.json_determinism",
                a == b && sorted && a.ends_with('\n'),
                "two emissions byte-identical, keys sorted, newline-terminated",
            );
        }
        _ => r.record_flag("io.json_determinism", false, "emission failed"),
    }

    // 24: CSV quoting per RFC 4180.
    let doc = report::csv_document(
        &["k", "note"],
        &[
            vec!["1".into(), "a,b".into()],
            vec!["2".into(), "q\"q".into()],
        ],
    );
    r.record_flag(
        "io.csv_format",
        doc == "k,note\r\n1,\"a,b\"\r\n2,\"q\"\"q\"\r\n",
        "comma and quote fields quoted, CRLF line endings",
    );

    // 25: the exit-code contract.
    let ok = Error::Range(String::new()).exit_code() == 2
        && Error::Domain(String::new()).exit_code() == 2
        && Error::Capacity {
            needed: 1,
            budget: 0,
        }
        .exit_code()
            == 3
        && Error::Format(String::new()).exit_code() == 3
        && Error::CheckFailed { failed: 1 }.exit_code() == 1;
    r.record_flag(
        "io.exit_codes",
        ok,
        "range/domain → 2, capacity/io/format → 3, failed checks → 1",
    );
}
