//! Thread pools and order-preserving parallel drivers.

use rayon::prelude::*;
use rayon::ThreadPool;
use steerbound_core::bases::BasisSet;
use steerbound_core::steering::{lhs_max_over, strategy_count};

use crate::CliError;

/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "STEERBOUND_WORKERS";

/// A pool with `workers` threads, or one per available core.
pub fn build_pool(workers: Option<usize>) -> Result<ThreadPool, CliError> {
    if workers == Some(0) {
        return Err(CliError::Input("worker count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))
}

/// `f` over `items` on `pool`, results in input order.
pub fn ordered_map<T, R, F>(pool: &ThreadPool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool.install(|| items.par_iter().map(f).collect())
}

/// Exact LHS value with the strategy space split into contiguous blocks.
/// Each strategy is evaluated exactly as in the sequential enumeration and
/// the maximum does not depend on block order, so the result is bit-identical
/// for any worker count.
pub fn lhs_exact_parallel(pool: &ThreadPool, b: &BasisSet, limit: u64) -> Result<f64, CliError> {
    let total = strategy_count(b, limit)?;
    let blocks = (pool.current_num_threads() as u64 * 8).max(1);
    let size = total.div_ceil(blocks).max(1);
    let ranges: Vec<std::ops::Range<u64>> = (0..total)
        .step_by(size as usize)
        .map(|start| start..(start + size).min(total))
        .collect();
    let best = ordered_map(pool, &ranges, |r| lhs_max_over(b, r.clone()));
    Ok(best.into_iter().fold(f64::NEG_INFINITY, f64::max))
}
