//! Rayon-backed versions of the exhaustive searches. Results are identical to
//! the sequential ones for every thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use turanlab_core::certify::Certificate;
use turanlab_core::counting::count_copies;
use turanlab_core::enumeration::enumerate_kfree;
use turanlab_core::extremal::search_space;
use turanlab_core::{ExtremalReport, Result, SmallGraph};

/// Environment variable capping the worker count.
pub const THREADS_VAR: &str = "TURANLAB_THREADS";

/// Worker count requested through [`THREADS_VAR`], if any.
pub fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0)
}

/// Run `f` inside a pool sized by [`THREADS_VAR`] (all cores when unset).
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(thread_limit().unwrap_or(0)).build().expect("thread pool builds");
    pool.install(f)
}

/// Parallel counterpart of [`turanlab_core::brute_force_ex`].
pub fn brute_force_ex_par(n: usize, h: &SmallGraph, k: usize, maximal_only: bool) -> Result<ExtremalReport> {
    let space = search_space(n, k, maximal_only)?;
    let counts = space
        .into_par_iter()
        .map(|g| {
            let c = count_copies(h, &g);
            (g, c)
        })
        .collect();
    ExtremalReport::from_counts(n, k, h, maximal_only, counts)
}

/// First `K_k`-free class on `n` vertices, in stream order, where the
/// pointwise bound `N(h, g) <= sum_j c_j N(B_j, g)` fails.
pub fn pointwise_violation(c: &Certificate, n: usize) -> Result<Option<SmallGraph>> {
    let graphs = enumerate_kfree(n, Some(c.k))?.into_vec();
    let to_q = |x| BigRational::from_integer(BigInt::from(x));
    Ok(graphs.into_par_iter().find_first(|g| {
        let lhs = to_q(count_copies(&c.h, g));
        let rhs = c
            .gadgets
            .iter()
            .zip(&c.coefficients)
            .fold(BigRational::from_integer(0.into()), |acc, (b, coef)| acc + coef * to_q(count_copies(b, g)));
        lhs > rhs
    }))
}
