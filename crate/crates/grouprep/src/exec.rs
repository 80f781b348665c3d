//! Data-parallel kernels with a sequential fallback.
//!
//! The library's hot loops (grid evaluation, quadrature node sweeps, Gram
//! assembly) all funnel through the helpers here. With the `parallel`
//! feature (default) the work is spread over a rayon pool; without it the
//! same closures run in plain loops. Both code paths stay compilable so the
//! bench suite can compare them directly.
//!
//! Reductions use a fixed chunking scheme so the floating-point summation
//! order is identical in both modes; reports produced from the same inputs
//! are byte-for-byte reproducible.

const SUM_CHUNK: usize = 1024;

/// Evaluates `f(0..n)` and collects the results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        parallel::map_indexed(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sequential::map_indexed(n, f)
    }
}

/// Sums `f(i)` over `0..n` with an order independent of thread scheduling.
pub fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        parallel::sum_indexed(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sequential::sum_indexed(n, f)
    }
}

fn chunk_bounds(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n.div_ceil(SUM_CHUNK)).map(move |c| (c * SUM_CHUNK, ((c + 1) * SUM_CHUNK).min(n)))
}

pub mod sequential {
    pub fn map_indexed<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
        (0..n).map(f).collect()
    }

    pub fn sum_indexed<F: Fn(usize) -> f64>(n: usize, f: F) -> f64 {
        super::chunk_bounds(n)
            .map(|(lo, hi)| (lo..hi).map(&f).sum::<f64>())
            .collect::<Vec<_>>()
            .iter()
            .sum()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use rayon::prelude::*;

    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn sum_indexed<F>(n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let partials: Vec<f64> = super::chunk_bounds(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(lo, hi)| (lo..hi).map(&f).sum::<f64>())
            .collect();
        partials.iter().sum()
    }
}
