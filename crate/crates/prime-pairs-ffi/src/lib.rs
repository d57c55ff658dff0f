//! C ABI for the prime-pairs library.
//!
//! Handles (`PpTables`, `PpConstants`) are opaque: build them, pass them
//! back in, and free them with the matching `_free` call. Every fallible
//! entry point returns a [`PpStatus`] and writes its result through out
//! pointers, which must be valid for writes. All functions tolerate NULL
//! handles and NULL out pointers by returning `NullPointer` rather than
//! crashing, and panics are fenced off at the boundary.
//!
//! The generated header lives at `include/prime_pairs.h`.

use prime_pairs::error::Error;
use prime_pairs::{arith, pairs, singular};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Opaque handle over the sieve tables (von Mangoldt, Möbius, totient).
pub struct PpTables(arith::ArithTables);

/// Opaque handle over the analytic constants for a given prime cutoff.
pub struct PpConstants(singular::Constants);

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PpStatus {
    /// Success.
    Ok = 0,
    /// A parameter is outside the supported range.
    Range = 1,
    /// A mathematically undefined request (e.g. singular series at k = 0).
    Domain = 2,
    /// The request would exceed the configured memory budget.
    Capacity = 3,
    /// An I/O error.
    Io = 4,
    /// A cache or input file is malformed.
    Format = 5,
    /// A verification check failed.
    CheckFailed = 6,
    /// A required pointer argument was NULL.
    NullPointer = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// Analytic constants in one plain struct; see `pp_constants_get`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PpConstantValues {
    /// Twin-prime constant C₂.
    pub c2: f64,
    /// Second-moment constant for the truncated singular series.
    pub lconst: f64,
    /// First-moment constant for the truncated singular series.
    pub mconst: f64,
    /// Zero-lag series constant (γ + Σ ln p / (p(p−1)) shifted form).
    pub dconst: f64,
    /// Rigorous bound on the truncation tail of the constant integrals.
    pub tail_bound: f64,
}

fn status_of(err: &Error) -> PpStatus {
    match err {
        Error::Range(_) => PpStatus::Range,
        Error::Domain(_) => PpStatus::Domain,
        Error::Capacity { .. } => PpStatus::Capacity,
        Error::Io(_) => PpStatus::Io,
        Error::Format(_) => PpStatus::Format,
        Error::CheckFailed { .. } => PpStatus::CheckFailed,
    }
}

fn fenced(f: impl FnOnce() -> PpStatus) -> PpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PpStatus::Panic)
}

/// ABI version of this header; bumped on any breaking change.
#[no_mangle]
pub extern "C" fn pp_abi_version() -> u32 {
    1
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn pp_status_message(status: PpStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        PpStatus::Ok => b"ok\0",
        PpStatus::Range => b"parameter out of range\0",
        PpStatus::Domain => b"domain error\0",
        PpStatus::Capacity => b"capacity exceeded\0",
        PpStatus::Io => b"i/o error\0",
        PpStatus::Format => b"format error\0",
        PpStatus::CheckFailed => b"verification check failed\0",
        PpStatus::NullPointer => b"null pointer argument\0",
        PpStatus::Panic => b"internal panic\0",
    };
    text.as_ptr() as *const c_char
}

/// Build sieve tables covering 1..=limit and hand back an owned handle.
///
/// # Safety
/// `out` must be valid for writing one pointer. On success it receives a
/// handle that must be released with `pp_tables_free`.
#[no_mangle]
pub unsafe extern "C" fn pp_tables_build(limit: u64, out: *mut *mut PpTables) -> PpStatus {
    if out.is_null() {
        return PpStatus::NullPointer;
    }
    fenced(|| match arith::build_tables(limit) {
        Ok(t) => {
            unsafe { *out = Box::into_raw(Box::new(PpTables(t))) };
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Release a handle from `pp_tables_build`. NULL is a no-op.
///
/// # Safety
/// `tables` must be NULL or a pointer previously returned by
/// `pp_tables_build` that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pp_tables_free(tables: *mut PpTables) {
    if !tables.is_null() {
        drop(unsafe { Box::from_raw(tables) });
    }
}

/// Upper limit the tables were built for, or 0 for a NULL handle.
///
/// # Safety
/// `tables` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_tables_limit(tables: *const PpTables) -> u64 {
    match unsafe { tables.as_ref() } {
        Some(t) => t.0.limit,
        None => 0,
    }
}

/// von Mangoldt Λ(n): ln p when n is a prime power p^k, else 0.
///
/// # Safety
/// `tables` must be a live handle; `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_mangoldt(tables: *const PpTables, n: u64, out: *mut f64) -> PpStatus {
    let (Some(t), false) = (unsafe { tables.as_ref() }, out.is_null()) else {
        return PpStatus::NullPointer;
    };
    if n == 0 || n > t.0.limit {
        return PpStatus::Range;
    }
    unsafe { *out = t.0.mangoldt[n as usize] };
    PpStatus::Ok
}

/// Chebyshev ψ(N) = Σ_{n≤N} Λ(n) with a deterministic summation order.
///
/// `out_remainder` may be NULL; when given it receives ψ(N) − N.
///
/// # Safety
/// `tables` must be a live handle; `out_psi` must be valid for one f64
/// write; `out_remainder` must be NULL or valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_psi(
    tables: *const PpTables,
    n: u64,
    out_psi: *mut f64,
    out_remainder: *mut f64,
) -> PpStatus {
    let (Some(t), false) = (unsafe { tables.as_ref() }, out_psi.is_null()) else {
        return PpStatus::NullPointer;
    };
    fenced(|| match arith::chebyshev_psi(&t.0, n) {
        Ok(summary) => {
            unsafe { *out_psi = summary.psi };
            if !out_remainder.is_null() {
                unsafe { *out_remainder = summary.remainder };
            }
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Ramanujan sum c_q(n) via the Hölder closed form. Requires q ≥ 1.
///
/// # Safety
/// `out` must be valid for one i64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_ramanujan_sum(q: u64, n: i64, out: *mut i64) -> PpStatus {
    if out.is_null() {
        return PpStatus::NullPointer;
    }
    if q == 0 {
        return PpStatus::Range;
    }
    fenced(|| {
        unsafe { *out = arith::ramanujan_sum(q, n) };
        PpStatus::Ok
    })
}

/// Compute the analytic constants with primes up to `prime_cutoff`.
///
/// # Safety
/// `out` must be valid for writing one pointer. On success it receives a
/// handle that must be released with `pp_constants_free`.
#[no_mangle]
pub unsafe extern "C" fn pp_constants_compute(
    prime_cutoff: u64,
    out: *mut *mut PpConstants,
) -> PpStatus {
    if out.is_null() {
        return PpStatus::NullPointer;
    }
    fenced(|| match singular::compute_constants(prime_cutoff) {
        Ok(c) => {
            unsafe { *out = Box::into_raw(Box::new(PpConstants(c))) };
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Release a handle from `pp_constants_compute`. NULL is a no-op.
///
/// # Safety
/// `constants` must be NULL or a pointer previously returned by
/// `pp_constants_compute` that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pp_constants_free(constants: *mut PpConstants) {
    if !constants.is_null() {
        drop(unsafe { Box::from_raw(constants) });
    }
}

/// Copy the constant values out of a handle.
///
/// # Safety
/// `constants` must be a live handle; `out` must be valid for one
/// `PpConstantValues` write.
#[no_mangle]
pub unsafe extern "C" fn pp_constants_get(
    constants: *const PpConstants,
    out: *mut PpConstantValues,
) -> PpStatus {
    let (Some(c), false) = (unsafe { constants.as_ref() }, out.is_null()) else {
        return PpStatus::NullPointer;
    };
    unsafe {
        *out = PpConstantValues {
            c2: c.0.c2,
            lconst: c.0.lconst,
            mconst: c.0.mconst,
            dconst: c.0.dconst,
            tail_bound: c.0.tail_bound,
        };
    }
    PpStatus::Ok
}

/// Hardy–Littlewood singular series 𝔖(k): 2C₂ ∏_{p|k, p>2} (p−1)/(p−2)
/// for even k ≠ 0, and 0 for odd k. k = 0 is a domain error.
///
/// # Safety
/// `constants` must be a live handle; `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_singular_series(
    constants: *const PpConstants,
    k: i64,
    out: *mut f64,
) -> PpStatus {
    let (Some(c), false) = (unsafe { constants.as_ref() }, out.is_null()) else {
        return PpStatus::NullPointer;
    };
    fenced(|| match singular::singular_series(&c.0, k) {
        Ok(v) => {
            unsafe { *out = v };
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Zero-lag truncated series 𝔖_y(0) = Σ_{q≤y} μ²(q)/φ(q) (≈ ln y).
///
/// # Safety
/// `tables` must be a live handle; `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_truncated_zero(
    tables: *const PpTables,
    y: f64,
    out: *mut f64,
) -> PpStatus {
    let (Some(t), false) = (unsafe { tables.as_ref() }, out.is_null()) else {
        return PpStatus::NullPointer;
    };
    fenced(|| match singular::truncated_zero(&t.0, y) {
        Ok(v) => {
            unsafe { *out = v };
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Truncated singular series 𝔖_y(k) = Σ_{q≤y} μ²(q)/φ(q)² · c_q(−k).
///
/// # Safety
/// `tables` must be a live handle; `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_truncated_singular(
    tables: *const PpTables,
    y: f64,
    k: u64,
    out: *mut f64,
) -> PpStatus {
    let (Some(t), false) = (unsafe { tables.as_ref() }, out.is_null()) else {
        return PpStatus::NullPointer;
    };
    fenced(|| match singular::truncated_singular(&t.0, y, k) {
        Ok(v) => {
            unsafe { *out = v };
            PpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Prime-pair counts ψ₂(N, k) = Σ_{n≤N−k} Λ(n)Λ(n+k) for k = 0..=N.
///
/// Writes N+1 values into `out_counts`; `len` must equal N+1. With
/// `use_fft` the autocorrelation is computed by a length-2^m transform,
/// otherwise by the quadratic direct sum (capped at N = 10000).
///
/// # Safety
/// `tables` must be a live handle; `out_counts` must be valid for `len`
/// f64 writes.
#[no_mangle]
pub unsafe extern "C" fn pp_psi2(
    tables: *const PpTables,
    n: u64,
    use_fft: bool,
    out_counts: *mut f64,
    len: usize,
) -> PpStatus {
    let (Some(t), false) = (unsafe { tables.as_ref() }, out_counts.is_null()) else {
        return PpStatus::NullPointer;
    };
    if (n as usize).checked_add(1) != Some(len) {
        return PpStatus::Range;
    }
    fenced(|| {
        let result = if use_fft {
            pairs::psi2_fft(&t.0, n)
        } else {
            pairs::psi2_direct(&t.0, n)
        };
        match result {
            Ok(pc) => {
                let dst = unsafe { std::slice::from_raw_parts_mut(out_counts, len) };
                dst.copy_from_slice(&pc.counts);
                PpStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Variance of the pair counts against the Hardy–Littlewood prediction:
/// E(N) = Σ_{1≤|k|≤N} (ψ₂(N,k) − 𝔖(k)(N−|k|))², and E(N)/(N ln N)².
///
/// # Safety
/// `tables` and `constants` must be live handles; `out_e_value` and
/// `out_normalized` must each be NULL or valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pp_error_summary(
    tables: *const PpTables,
    constants: *const PpConstants,
    n: u64,
    out_e_value: *mut f64,
    out_normalized: *mut f64,
) -> PpStatus {
    let (Some(t), Some(c)) = (unsafe { tables.as_ref() }, unsafe { constants.as_ref() }) else {
        return PpStatus::NullPointer;
    };
    fenced(|| {
        let run = || -> Result<pairs::ErrorSummary, Error> {
            let pc = pairs::psi2_fft(&t.0, n)?;
            let st = singular::build_singular_table(&t.0, &c.0, n)?;
            pairs::error_term(&pc, &st)
        };
        match run() {
            Ok(summary) => {
                if !out_e_value.is_null() {
                    unsafe { *out_e_value = summary.e_value };
                }
                if !out_normalized.is_null() {
                    unsafe { *out_normalized = summary.normalized };
                }
                PpStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
