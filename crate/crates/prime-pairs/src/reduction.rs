//! Deterministic summation helpers.
//!
//! All statistics in this crate are produced by fixed-shape pairwise
//! reduction trees: an input of a given length is always split the same
//! way, chunks are combined in index order, and worker threads only ever
//! compute disjoint chunks.  Results are therefore bit-identical across
//! runs and across thread counts, while keeping the O(√n · ε) error decay
//! of pairwise summation.

use rayon::prelude::*;

/// Chunk size for parallel reductions.  Fixing it (rather than letting the
/// scheduler choose) is what makes parallel sums reproducible.
pub const CHUNK: usize = 4096;

/// Pairwise (cascade) summation with a small sequential base case.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Kahan–Neumaier compensated accumulator, used to cross-check the pairwise
/// sums in tests and in the verification suite.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sum `f(i)` for `i` in `0..len` with a deterministic parallel reduction:
/// fixed chunks of [`CHUNK`] indices are pairwise-summed independently and
/// the per-chunk partials are combined in index order by a pairwise tree.
pub fn par_sum<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let n_chunks = len.div_ceil(CHUNK).max(1);
    let partials: Vec<f64> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = ((c + 1) * CHUNK).min(len);
            let buf: Vec<f64> = (lo..hi).map(&f).collect();
            pairwise_sum(&buf)
        })
        .collect();
    pairwise_sum(&partials)
}

/// Same as [`par_sum`] for a pair of statistics over the same index range
/// (e.g. Σ|v| and Σ|v|² in one pass).
pub fn par_sum2<F>(len: usize, f: F) -> (f64, f64)
where
    F: Fn(usize) -> (f64, f64) + Sync,
{
    let n_chunks = len.div_ceil(CHUNK).max(1);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = ((c + 1) * CHUNK).min(len);
            let mut a: Vec<f64> = Vec::with_capacity(hi - lo);
            let mut b: Vec<f64> = Vec::with_capacity(hi - lo);
            for i in lo..hi {
                let (x, y) = f(i);
                a.push(x);
                b.push(y);
            }
            (pairwise_sum(&a), pairwise_sum(&b))
        })
        .collect();
    let a: Vec<f64> = partials.iter().map(|p| p.0).collect();
    let b: Vec<f64> = partials.iter().map(|p| p.1).collect();
    (pairwise_sum(&a), pairwise_sum(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_smooth_data() {
        let xs: Vec<f64> = (0..10_000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-6 * naive.abs());
    }

    #[test]
    fn par_sum_is_exactly_pairwise_over_chunks() {
        // par_sum must give the same bits regardless of how rayon schedules
        // the chunks; compare against the explicitly sequential evaluation.
        let len = 3 * CHUNK + 123;
        let f = |i: usize| (i as f64).sqrt() - (i as f64) / 3.0;
        let seq: Vec<f64> = (0..len.div_ceil(CHUNK))
            .map(|c| {
                let lo = c * CHUNK;
                let hi = ((c + 1) * CHUNK).min(len);
                let buf: Vec<f64> = (lo..hi).map(f).collect();
                pairwise_sum(&buf)
            })
            .collect();
        assert_eq!(par_sum(len, f).to_bits(), pairwise_sum(&seq).to_bits());
    }

    #[test]
    fn kahan_recovers_cancellation() {
        let mut k = KahanSum::new();
        k.add(1e16);
        k.add(1.0);
        k.add(-1e16);
        assert_eq!(k.value(), 1.0);
    }
}
