//! Deterministic work splitting.
//!
//! Inputs are cut into fixed-size chunks and partial results are combined in
//! chunk order, so a computation produces bit-identical output whether the
//! chunks run on one thread (`parallel` feature off) or on a rayon pool
//! (feature on, the default). Nothing here may depend on thread count or
//! scheduling order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used by every chunked computation in the crate. Large enough
/// to amortize scheduling, small enough to keep 10^5-element workloads
/// parallel.
pub(crate) const CHUNK_LEN: usize = 8192;

/// Maps `f` over fixed-size chunks of `values`, preserving chunk order.
pub(crate) fn map_chunks<T, F>(values: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[f64]) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        values.par_chunks(CHUNK_LEN).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        values.chunks(CHUNK_LEN).map(f).collect()
    }
}

/// Maps `f` over 0..n, preserving index order. Used to give each chunk its
/// own RNG stream.
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
