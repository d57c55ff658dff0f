//! Command-line front end for the prime-pairs library.  Every subcommand
//! prints a JSON report to stdout; tabular data goes to CSV files.  Exit
//! codes: 0 success, 1 failed verification checks, 2 usage, 3 capacity/IO.

use clap::{Parser, Subcommand, ValueEnum};
use prime_pairs::pairs::VARIANCE_TABLE_REFERENCE;
use prime_pairs::{approx, arith, expsums, pairs, report, singular, verify, Error, Result};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "prime-pairs",
    version,
    about = "Prime-pair counts, singular series, exponential-sum norms, and their checks"
)]
struct Cli {
    /// Worker threads for parallel reductions (the PPL_THREADS environment
    /// variable takes precedence).  Results are identical for any count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Direct,
    Fft,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    /// The divisor-sum approximant Λ_R.
    Lr,
    /// The Ramanujan-expansion approximant λ_R.
    Refined,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sieve tables (Λ, μ, φ, smallest prime factor) and print a
    /// summary; --cache reads the tables from disk when present, writes
    /// them otherwise.
    Tables {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Pair counts ψ₂(N,k) for all lags 0 ≤ k ≤ N.
    Pairs {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Fft)]
        method: MethodArg,
        /// Write the full (k, ψ₂, prediction-free) table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The variance E(N) of pair counts against the singular series.
    Error {
        #[arg(long)]
        n: u64,
        /// Also print the 5-decimal truncated row and compare it with the
        /// published value when N is one of the reference sizes.
        #[arg(long)]
        table1: bool,
        /// Prime cutoff for the series constants.
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// Figure data as CSV: 1 = ψ₂ vs prediction for k ≤ 100; 2 = the same
    /// near the right edge k ∈ [N−100, N]; 3 = the running normalized
    /// variance up to N.
    Figure {
        #[arg(long)]
        which: u8,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// The grid L¹ norm of S(α) = Σ Λ(n)e(nα) with its rigorous
    /// Riemann-sum error bound.
    L1 {
        #[arg(long)]
        n: u64,
        /// Grid size; defaults to the policy value that pins the error
        /// bound near 1% of the expected norm.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Major-arc quantities at (N, y): a₀, W and its expansion, J, and the
    /// variance lower bound E ≥ (√J − √W)².
    Majorarc {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        y: f64,
        /// Also integrate T = ∫||S|²−V_y−a₀| on a grid.
        #[arg(long)]
        with_t: bool,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// Approximant diagnostics at (N, R): moments, norms, sample values.
    Approx {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Lr)]
        kind: KindArg,
        /// Include the moment suite (default when no section is selected).
        #[arg(long)]
        moments: bool,
        /// Include grid L¹ norms of the approximant polynomials.
        #[arg(long)]
        l1: bool,
    },
    /// The analytic constants (twin-prime C₂ and friends) with rigorous
    /// tail bounds.
    Constants {
        #[arg(long, default_value_t = singular::DEFAULT_PRIME_CUTOFF)]
        cutoff: u64,
    },
    /// Run the built-in verification suite and print its report.
    Verify {
        /// Trim the desk-scale items; finishes in seconds.
        #[arg(long)]
        fast: bool,
        /// Override a named tolerance, e.g. --envelope hl_residual=2.5.
        /// Repeatable.
        #[arg(long = "envelope", value_name = "NAME=VALUE")]
        envelopes: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn init_threads(flag: Option<usize>) -> Result<()> {
    let from_env = std::env::var("PPL_THREADS")
        .ok()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Range(format!("PPL_THREADS value '{s}' is not a number")))
        })
        .transpose()?;
    if let Some(t) = from_env.or(flag) {
        if t == 0 {
            return Err(Error::Range("thread count must be ≥ 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Range(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    print!("{}", report::emit_json(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Tables { n, cache } => cmd_tables(n, cache),
        Command::Pairs { n, method, csv } => cmd_pairs(n, method, csv),
        Command::Error { n, table1, cutoff } => cmd_error(n, table1, cutoff),
        Command::Figure {
            which,
            csv,
            n,
            cutoff,
        } => cmd_figure(which, csv, n, cutoff),
        Command::L1 { n, m } => cmd_l1(n, m),
        Command::Majorarc {
            n,
            y,
            with_t,
            m,
            cutoff,
        } => cmd_majorarc(n, y, with_t, m, cutoff),
        Command::Approx {
            n,
            r,
            kind,
            moments,
            l1,
        } => cmd_approx(n, r, kind, moments, l1),
        Command::Constants { cutoff } => print_json(&singular::compute_constants(cutoff)?),
        Command::Verify { fast, envelopes } => cmd_verify(fast, &envelopes),
    }
}

fn cmd_tables(n: u64, cache: Option<PathBuf>) -> Result<()> {
    let (tables, cache_state) = match &cache {
        Some(path) if path.exists() => {
            let t = arith::read_cache(path)?;
            if t.limit < n {
                return Err(Error::Format(format!(
                    "cache covers n ≤ {}, need {n}",
                    t.limit
                )));
            }
            (t, "read")
        }
        Some(path) => {
            let t = arith::build_tables(n)?;
            arith::write_cache(&t, path)?;
            (t, "written")
        }
        None => (arith::build_tables(n)?, "none"),
    };
    let psi = arith::chebyshev_psi(&tables, n)?;
    print_json(&json!({
        "limit": tables.limit,
        "n": n,
        "psi": psi.psi,
        "remainder": psi.remainder,
        "cache": cache_state,
    }))
}

fn cmd_pairs(n: u64, method: MethodArg, csv: Option<PathBuf>) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let pc = match method {
        MethodArg::Direct => pairs::psi2_direct(&tables, n)?,
        MethodArg::Fft => pairs::psi2_fft(&tables, n)?,
    };
    if let Some(path) = csv {
        let rows: Vec<Vec<String>> = (0..=n as usize)
            .map(|k| vec![k.to_string(), report::format_sig(pc.counts[k], 12)])
            .collect();
        std::fs::write(&path, report::csv_document(&["k", "psi2"], &rows))?;
    }
    let psi = arith::chebyshev_psi(&tables, n)?;
    let sum_all =
        pc.counts[0] + 2.0 * prime_pairs::reduction::pairwise_sum(&pc.counts[1..=n as usize]);
    print_json(&json!({
        "n": n,
        "method": match method { MethodArg::Direct => "direct", MethodArg::Fft => "fft" },
        "zero_lag": pc.counts[0],
        "lag_two": pc.counts.get(2).copied().unwrap_or(0.0),
        "first_moment_sum": sum_all,
        "psi_squared": psi.psi * psi.psi,
    }))
}

fn cmd_error(n: u64, table1: bool, cutoff: u64) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let constants = singular::compute_constants(cutoff)?;
    let st = singular::build_singular_table(&tables, &constants, n)?;
    let pc = pairs::psi2_fft(&tables, n)?;
    let e = pairs::error_term(&pc, &st)?;
    if !table1 {
        return print_json(&e);
    }
    let t = report::truncate_5dp(e.normalized);
    let reference = VARIANCE_TABLE_REFERENCE
        .iter()
        .find(|(rn, _)| *rn == n)
        .map(|(_, s)| *s);
    print_json(&json!({
        "n": n,
        "e_value": e.e_value,
        "normalized": e.normalized,
        "odd_contrib": e.odd_contrib,
        "truncated": t.text,
        "truncation_boundary": t.boundary,
        "reference": reference,
        "matches_reference": reference.map(|r| r == t.text),
    }))
}

fn cmd_figure(which: u8, csv: PathBuf, n: u64, cutoff: u64) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let constants = singular::compute_constants(cutoff)?;
    let st = singular::build_singular_table(&tables, &constants, n)?;
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match which {
        1 | 2 => {
            let pc = pairs::psi2_fft(&tables, n)?;
            let (lo, hi) = if which == 1 {
                (1, 100.min(n))
            } else {
                (n.saturating_sub(100).max(1), n)
            };
            let rows = pairs::figure_data(&pc, &st, lo, hi)?
                .into_iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        report::format_sig(r.psi2, 12),
                        report::format_sig(r.hl_prediction, 12),
                    ]
                })
                .collect();
            (vec!["k", "psi2", "hl_prediction"], rows)
        }
        3 => {
            let curve = pairs::normalized_error_curve(&tables, &st, n)?;
            let rows = curve
                .into_iter()
                .map(|(m, e, norm)| {
                    vec![
                        m.to_string(),
                        report::format_sig(e, 12),
                        report::format_sig(norm, 12),
                    ]
                })
                .collect();
            (vec!["n", "e_value", "normalized"], rows)
        }
        w => {
            return Err(Error::Range(format!(
                "figure selector must be 1, 2, or 3, got {w}"
            )))
        }
    };
    let row_count = rows.len();
    std::fs::write(&csv, report::csv_document(&header, &rows))?;
    print_json(&json!({
        "which": which,
        "n": n,
        "rows": row_count,
        "csv": csv.display().to_string(),
    }))
}

fn cmd_l1(n: u64, m: Option<u64>) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let psi = arith::chebyshev_psi(&tables, n)?;
    let m = m.unwrap_or_else(|| expsums::l1_policy_m(n, psi.psi));
    let norms = expsums::s_norms(&tables, n, m)?;
    let nf = n as f64;
    print_json(&json!({
        "n": n,
        "m": norms.m,
        "l1": norms.l1,
        "l1_error_bound": norms.l1_error_bound,
        "l2_sq": norms.l2_sq,
        "l1_over_sqrt_nlogn": norms.l1 / (nf * nf.ln()).sqrt(),
    }))
}

fn cmd_majorarc(n: u64, y: f64, with_t: bool, m: Option<u64>, cutoff: u64) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let constants = singular::compute_constants(cutoff)?;
    print_json(&expsums::major_arc(&tables, &constants, n, y, with_t, m)?)
}

fn cmd_approx(n: u64, r: f64, kind: KindArg, moments: bool, l1: bool) -> Result<()> {
    let tables = arith::build_tables(n)?;
    let sample_len = 12usize.min(n as usize);
    let table = match kind {
        KindArg::Lr => approx::lambda_r_table(&tables, n, r)?,
        KindArg::Refined => approx::lambda_refined_table(&tables, n, r)?,
    };
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(n));
    out.insert("r".into(), json!(r));
    out.insert("big_l".into(), json!(approx::big_l(&tables, r)?));
    out.insert(
        "kind".into(),
        json!(match kind {
            KindArg::Lr => "lr",
            KindArg::Refined => "refined",
        }),
    );
    out.insert("sample".into(), json!(&table[1..=sample_len]));
    if moments || !l1 {
        out.insert(
            "moments".into(),
            serde_json::to_value(approx::moment_suite(&tables, n, r)?)
                .map_err(|e| Error::Format(e.to_string()))?,
        );
    }
    if l1 {
        out.insert(
            "norms".into(),
            serde_json::to_value(approx::l1_approx_sums(&tables, n, r, None)?)
                .map_err(|e| Error::Format(e.to_string()))?,
        );
    }
    print_json(&serde_json::Value::Object(out))
}

fn cmd_verify(fast: bool, overrides: &[String]) -> Result<()> {
    let mut envelopes = verify::default_envelopes();
    verify::apply_envelope_overrides(&mut envelopes, overrides)?;
    let rep = verify::run_verify(fast, envelopes)?;
    print_json(&rep)?;
    if rep.failed > 0 {
        return Err(Error::CheckFailed { failed: rep.failed });
    }
    Ok(())
}
