//! Exercises the C ABI end to end: handle lifecycles, the null-pointer
//! contract, status codes, and agreement with the underlying library.

use prime_pairs::{arith, pairs, singular};
use prime_pairs_ffi::*;
use std::ffi::CStr;
use std::ptr;

fn build_tables(limit: u64) -> *mut PpTables {
    let mut handle: *mut PpTables = ptr::null_mut();
    let status = unsafe { pp_tables_build(limit, &mut handle) };
    assert_eq!(status, PpStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn build_constants(cutoff: u64) -> *mut PpConstants {
    let mut handle: *mut PpConstants = ptr::null_mut();
    let status = unsafe { pp_constants_compute(cutoff, &mut handle) };
    assert_eq!(status, PpStatus::Ok);
    handle
}

#[test]
fn tables_lifecycle_and_accessors() {
    let t = build_tables(1000);
    unsafe {
        assert_eq!(pp_tables_limit(t), 1000);

        let mut v = f64::NAN;
        assert_eq!(pp_mangoldt(t, 8, &mut v), PpStatus::Ok);
        assert!((v - 2f64.ln()).abs() < 1e-15);
        assert_eq!(pp_mangoldt(t, 6, &mut v), PpStatus::Ok);
        assert_eq!(v, 0.0);
        assert_eq!(pp_mangoldt(t, 0, &mut v), PpStatus::Range);
        assert_eq!(pp_mangoldt(t, 1001, &mut v), PpStatus::Range);

        let mut psi = 0.0;
        let mut rem = 0.0;
        assert_eq!(pp_psi(t, 1000, &mut psi, &mut rem), PpStatus::Ok);
        let tables = arith::build_tables(1000).unwrap();
        let oracle = arith::chebyshev_psi(&tables, 1000).unwrap();
        assert_eq!(psi, oracle.psi);
        assert_eq!(rem, oracle.remainder);
        // The remainder pointer is optional.
        assert_eq!(pp_psi(t, 1000, &mut psi, ptr::null_mut()), PpStatus::Ok);

        pp_tables_free(t);
    }
}

#[test]
fn null_pointer_contract() {
    unsafe {
        assert_eq!(pp_tables_build(10, ptr::null_mut()), PpStatus::NullPointer);
        assert_eq!(pp_tables_limit(ptr::null()), 0);
        pp_tables_free(ptr::null_mut()); // must not crash

        let mut v = 0.0;
        assert_eq!(pp_mangoldt(ptr::null(), 5, &mut v), PpStatus::NullPointer);
        let t = build_tables(100);
        assert_eq!(pp_mangoldt(t, 5, ptr::null_mut()), PpStatus::NullPointer);
        assert_eq!(
            pp_psi2(t, 50, true, ptr::null_mut(), 51),
            PpStatus::NullPointer
        );
        pp_tables_free(t);

        pp_constants_free(ptr::null_mut());
        assert_eq!(
            pp_constants_compute(1000, ptr::null_mut()),
            PpStatus::NullPointer
        );
        assert_eq!(
            pp_singular_series(ptr::null(), 2, &mut v),
            PpStatus::NullPointer
        );
    }
}

#[test]
fn ramanujan_sums_match_library() {
    unsafe {
        let mut c = 0i64;
        assert_eq!(pp_ramanujan_sum(0, 3, &mut c), PpStatus::Range);
        assert_eq!(
            pp_ramanujan_sum(1, 3, ptr::null_mut()),
            PpStatus::NullPointer
        );
        for q in 1..=60u64 {
            for n in -30..=30i64 {
                assert_eq!(pp_ramanujan_sum(q, n, &mut c), PpStatus::Ok);
                assert_eq!(c, arith::ramanujan_sum(q, n), "q={q} n={n}");
            }
        }
    }
}

#[test]
fn constants_and_series() {
    let c = build_constants(100_000);
    let t = build_tables(2000);
    unsafe {
        let mut values = PpConstantValues {
            c2: 0.0,
            lconst: 0.0,
            mconst: 0.0,
            dconst: 0.0,
            tail_bound: 0.0,
        };
        assert_eq!(pp_constants_get(c, &mut values), PpStatus::Ok);
        assert!((values.c2 - 0.6601618158468696).abs() < 1e-7);
        assert!(values.tail_bound > 0.0 && values.tail_bound < 1e-4);

        let mut s = 0.0;
        assert_eq!(pp_singular_series(c, 2, &mut s), PpStatus::Ok);
        assert!((s - 2.0 * values.c2).abs() < 1e-15);
        assert_eq!(pp_singular_series(c, 3, &mut s), PpStatus::Ok);
        assert_eq!(s, 0.0);
        assert_eq!(pp_singular_series(c, 0, &mut s), PpStatus::Domain);

        let tables = arith::build_tables(2000).unwrap();
        let mut z = 0.0;
        assert_eq!(pp_truncated_zero(t, 150.0, &mut z), PpStatus::Ok);
        assert_eq!(z, singular::truncated_zero(&tables, 150.0).unwrap());
        let mut ts = 0.0;
        assert_eq!(pp_truncated_singular(t, 150.0, 12, &mut ts), PpStatus::Ok);
        assert_eq!(
            ts,
            singular::truncated_singular(&tables, 150.0, 12).unwrap()
        );

        pp_tables_free(t);
        pp_constants_free(c);
    }
}

#[test]
fn pair_counts_and_error_summary() {
    let t = build_tables(1000);
    let c = build_constants(100_000);
    unsafe {
        let tables = arith::build_tables(1000).unwrap();
        let oracle = pairs::psi2_fft(&tables, 500).unwrap();
        let mut counts = vec![0.0f64; 501];
        assert_eq!(
            pp_psi2(t, 500, true, counts.as_mut_ptr(), counts.len()),
            PpStatus::Ok
        );
        assert_eq!(counts, oracle.counts);
        assert_eq!(
            pp_psi2(t, 500, false, counts.as_mut_ptr(), counts.len()),
            PpStatus::Ok
        );
        for (a, b) in counts.iter().zip(&oracle.counts) {
            assert!((a - b).abs() < 1e-9);
        }
        // Length must be exactly N + 1.
        assert_eq!(
            pp_psi2(t, 500, true, counts.as_mut_ptr(), 500),
            PpStatus::Range
        );

        let constants = singular::compute_constants(100_000).unwrap();
        let pc = pairs::psi2_fft(&tables, 1000).unwrap();
        let st = singular::build_singular_table(&tables, &constants, 1000).unwrap();
        let want = pairs::error_term(&pc, &st).unwrap();
        let mut e = 0.0;
        let mut norm = 0.0;
        assert_eq!(
            pp_error_summary(t, c, 1000, &mut e, &mut norm),
            PpStatus::Ok
        );
        assert_eq!(e, want.e_value);
        assert_eq!(norm, want.normalized);

        pp_tables_free(t);
        pp_constants_free(c);
    }
}

#[test]
fn status_strings_and_abi_version() {
    assert_eq!(pp_abi_version(), 1);
    for status in [
        PpStatus::Ok,
        PpStatus::Range,
        PpStatus::Domain,
        PpStatus::Capacity,
        PpStatus::Io,
        PpStatus::Format,
        PpStatus::CheckFailed,
        PpStatus::NullPointer,
        PpStatus::Panic,
    ] {
        let ptr = pp_status_message(status);
        assert!(!ptr.is_null());
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap();
        assert!(!text.is_empty());
    }
}
