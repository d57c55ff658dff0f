//! Sieve tables for the basic arithmetic functions and the closed-form
//! Ramanujan sum.
//!
//! A single linear (Euler) sieve pass produces, for every n up to a limit:
//! the von Mangoldt function Λ(n) as a double, the Möbius function μ(n),
//! Euler's totient φ(n), and the smallest prime factor.  Everything else in
//! the crate factors integers through these tables instead of re-sieving.

use crate::reduction::{pairwise_sum, par_sum};
use crate::{Error, Result};
use serde::Serialize;
use std::io::{Read, Write};
use std::path::Path;

/// Hard cap on the sieve limit.  Above this the flat tables stop making
/// sense (and a segmented design would be needed anyway).
pub const MAX_LIMIT: u64 = 1 << 31;

/// Default memory budget for table construction: 3 GiB, comfortably inside
/// the containers this is expected to run in.
pub const DEFAULT_MEMORY_BUDGET: u64 = 3 << 30;

/// Bytes per sieve index: Λ as f64, μ as i8, φ and spf as u32, plus one
/// scratch byte used during construction.
const BYTES_PER_INDEX: u64 = 8 + 1 + 4 + 4 + 1;

/// Flat tables of Λ, μ, φ and smallest prime factor for 1..=limit.
/// Index 0 is present but unused so that `mangoldt[n]` is Λ(n).
pub struct ArithTables {
    pub limit: u64,
    pub mangoldt: Vec<f64>,
    pub mobius: Vec<i8>,
    pub totient: Vec<u32>,
    pub spf: Vec<u32>,
}

/// ψ(N) together with the remainder against the PNT main term.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PsiSummary {
    pub n: u64,
    /// ψ(N) = Σ_{n≤N} Λ(n)
    pub psi: f64,
    /// ψ(N) − N
    pub remainder: f64,
}

/// Build the tables up to `n` under the default memory budget.
pub fn build_tables(n: u64) -> Result<ArithTables> {
    build_tables_with_budget(n, DEFAULT_MEMORY_BUDGET)
}

/// Build the tables up to `n`, refusing politely if the flat arrays would
/// exceed `budget` bytes.
pub fn build_tables_with_budget(n: u64, budget: u64) -> Result<ArithTables> {
    if n < 1 || n > MAX_LIMIT {
        return Err(Error::Range(format!(
            "table limit must be in 1..={MAX_LIMIT}, got {n}"
        )));
    }
    let needed = (n + 1) * BYTES_PER_INDEX;
    if needed > budget {
        return Err(Error::Capacity { needed, budget });
    }

    let len = (n + 1) as usize;
    let mut spf = vec![0u32; len];
    let mut mobius = vec![0i8; len];
    let mut totient = vec![0u32; len];
    // is_pp[m] marks prime powers, so Λ can be filled without refactoring.
    let mut is_pp = vec![false; len];
    let mut primes: Vec<u32> = Vec::new();

    if n >= 1 {
        mobius[1] = 1;
        totient[1] = 1;
        spf[1] = 1;
    }
    // Euler sieve: every composite is crossed off exactly once, by its
    // smallest prime factor, which lets μ and φ be filled recursively.
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mobius[i] = -1;
            totient[i] = (i - 1) as u32;
            is_pp[i] = true;
            primes.push(i as u32);
        }
        let spf_i = spf[i];
        for &p in &primes {
            if p > spf_i || (p as usize) * i >= len {
                break;
            }
            let ip = (p as usize) * i;
            spf[ip] = p;
            if p == spf_i {
                mobius[ip] = 0;
                totient[ip] = totient[i] * p;
                // p·i is a power of p exactly when i already was.
                is_pp[ip] = is_pp[i];
            } else {
                mobius[ip] = -mobius[i];
                totient[ip] = totient[i] * (p - 1);
            }
        }
    }

    let mut mangoldt = vec![0.0f64; len];
    for i in 2..len {
        if is_pp[i] {
            mangoldt[i] = (spf[i] as f64).ln();
        }
    }

    Ok(ArithTables {
        limit: n,
        mangoldt,
        mobius,
        totient,
        spf,
    })
}

impl ArithTables {
    /// Distinct prime factors of `k` (which must be ≤ limit), via repeated
    /// division by the smallest prime factor.
    pub fn distinct_primes(&self, mut k: u64) -> impl Iterator<Item = u64> + '_ {
        std::iter::from_fn(move || {
            if k <= 1 {
                return None;
            }
            let p = self.spf[k as usize] as u64;
            while k % p == 0 {
                k /= p;
            }
            Some(p)
        })
    }

    /// Is n squarefree?  (μ(n) ≠ 0.)
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mobius[n as usize] != 0
    }
}

/// ψ(N) = Σ_{n≤N} Λ(n), summed pairwise.
pub fn chebyshev_psi(tables: &ArithTables, n: u64) -> Result<PsiSummary> {
    if n < 1 || n > tables.limit {
        return Err(Error::Range(format!(
            "psi argument must be in 1..={}, got {n}",
            tables.limit
        )));
    }
    let psi = pairwise_sum(&tables.mangoldt[1..=n as usize]);
    Ok(PsiSummary {
        n,
        psi,
        remainder: psi - n as f64,
    })
}

/// Σ_{n≤N} Λ(n)², the k = 0 pair count.
pub fn mangoldt_sq_sum(tables: &ArithTables, n: u64) -> f64 {
    let m = &tables.mangoldt;
    par_sum(n as usize, |i| m[i + 1] * m[i + 1])
}

/// Σ_{n≤N} n·Λ(n); 2π times this is a Lipschitz constant for S(α).
pub fn weighted_mangoldt_sum(tables: &ArithTables, n: u64) -> f64 {
    let m = &tables.mangoldt;
    par_sum(n as usize, |i| (i + 1) as f64 * m[i + 1])
}

/// Ramanujan sum c_q(n) = Σ_{a≤q, (a,q)=1} e(an/q) in closed form:
/// with g = gcd(q, n) and m = q/g, c_q(n) = μ(m)·φ(q)/φ(m).
///
/// Total for every q ≥ 1 and every integer n; factors q by trial division,
/// so it is meant for desk-scale q (callers that already hold sieve tables
/// use those to get μ and φ instead).
pub fn ramanujan_sum(q: u64, n: i64) -> i64 {
    assert!(q >= 1, "modulus must be positive");
    let r = (n.unsigned_abs()) % q; // c_q is even in n
    let g = gcd(q, r);
    let m = q / g;
    let (mu_m, phi_m) = mu_phi(m);
    if mu_m == 0 {
        return 0;
    }
    let (_, phi_q) = mu_phi(q);
    // m | q forces φ(m) | φ(q), so the division is exact.
    mu_m as i64 * (phi_q / phi_m) as i64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (μ(n), φ(n)) by trial division.
fn mu_phi(mut n: u64) -> (i32, u64) {
    let mut mu = 1i32;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            phi *= p - 1;
            mu = -mu;
            if n % p == 0 {
                mu = 0;
                while n % p == 0 {
                    n /= p;
                    phi *= p;
                }
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
        mu = -mu;
    }
    (mu, phi)
}

/// Call `f` on every prime ≤ limit, in increasing order, using a segmented
/// Eratosthenes sieve (1 MiB segments) so the memory cost stays flat.
pub fn for_each_prime<F: FnMut(u64)>(limit: u64, mut f: F) {
    if limit < 2 {
        return;
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base = vec![true; (root + 1) as usize];
    let mut base_primes: Vec<u64> = Vec::new();
    for p in 2..=root {
        if base[p as usize] {
            base_primes.push(p);
            let mut q = p * p;
            while q <= root {
                base[q as usize] = false;
                q += p;
            }
        }
    }
    for &p in &base_primes {
        if p <= limit {
            f(p);
        }
    }

    const SEG: u64 = 1 << 20;
    let mut lo = root + 1;
    let mut segment = vec![true; SEG as usize];
    while lo <= limit {
        let hi = (lo + SEG - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        segment[..len].fill(true);
        for &p in &base_primes {
            if p * p > hi {
                break;
            }
            let mut q = lo.div_ceil(p) * p;
            while q <= hi {
                segment[(q - lo) as usize] = false;
                q += p;
            }
        }
        for (i, &alive) in segment[..len].iter().enumerate() {
            if alive {
                f(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
}

// ---------------------------------------------------------------------------
// Binary cache.
//
// Layout (all little-endian): magic "PPL1", version u32 = 1, limit u64,
// then the four arrays for indices 1..=limit in declaration order:
// Λ as f64 bits, μ as i8, φ as u32, spf as u32.  The roundtrip is bit-exact.
// ---------------------------------------------------------------------------

const CACHE_MAGIC: &[u8; 4] = b"PPL1";
const CACHE_VERSION: u32 = 1;

pub fn write_cache(tables: &ArithTables, path: &Path) -> Result<()> {
    let n = tables.limit as usize;
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    w.write_all(&tables.limit.to_le_bytes())?;
    for &x in &tables.mangoldt[1..=n] {
        w.write_all(&x.to_bits().to_le_bytes())?;
    }
    for &x in &tables.mobius[1..=n] {
        w.write_all(&(x as u8).to_le_bytes())?;
    }
    for &x in &tables.totient[1..=n] {
        w.write_all(&x.to_le_bytes())?;
    }
    for &x in &tables.spf[1..=n] {
        w.write_all(&x.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cache(path: &Path) -> Result<ArithTables> {
    let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Format(format!(
            "bad cache magic {:?} in {}",
            magic,
            path.display()
        )));
    }
    let mut buf4 = [0u8; 4];
    r.read_exact(&mut buf4)?;
    let version = u32::from_le_bytes(buf4);
    if version != CACHE_VERSION {
        return Err(Error::Format(format!(
            "unsupported cache version {version} (expected {CACHE_VERSION})"
        )));
    }
    let mut buf8 = [0u8; 8];
    r.read_exact(&mut buf8)?;
    let limit = u64::from_le_bytes(buf8);
    if limit < 1 || limit > MAX_LIMIT {
        return Err(Error::Format(format!("cache claims absurd limit {limit}")));
    }
    let n = limit as usize;

    let mut mangoldt = vec![0.0f64; n + 1];
    for x in &mut mangoldt[1..=n] {
        r.read_exact(&mut buf8)?;
        *x = f64::from_bits(u64::from_le_bytes(buf8));
    }
    let mut mobius = vec![0i8; n + 1];
    let mut byte = [0u8; 1];
    for x in &mut mobius[1..=n] {
        r.read_exact(&mut byte)?;
        *x = byte[0] as i8;
    }
    let mut totient = vec![0u32; n + 1];
    for x in &mut totient[1..=n] {
        r.read_exact(&mut buf4)?;
        *x = u32::from_le_bytes(buf4);
    }
    let mut spf = vec![0u32; n + 1];
    for x in &mut spf[1..=n] {
        r.read_exact(&mut buf4)?;
        *x = u32::from_le_bytes(buf4);
    }
    Ok(ArithTables {
        limit,
        mangoldt,
        mobius,
        totient,
        spf,
    })
}
