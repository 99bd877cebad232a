//! Replica execution on independent substreams.

use rayon::prelude::*;

use crate::rng::{derive_substream, RandomState};
use crate::CliError;

/// Runs `f` on substreams `start..start + count` of `seed` and returns the
/// results in index order, so the output does not depend on `jobs`.
pub fn run_replicas<T, F>(seed: u64, start: u32, count: usize, jobs: Option<usize>, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(&mut RandomState) -> Result<T, CliError> + Sync,
{
    let end = u64::from(start) + count as u64;
    if end > u64::from(u32::MAX) {
        return Err(CliError::Usage(format!("replica indices up to {end} exceed the 2^32 stream limit")));
    }
    let one = |i: usize| f(&mut derive_substream(seed, start + i as u32));
    match jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            pool.install(|| (0..count).into_par_iter().map(one).collect())
        }
        _ => (0..count).map(one).collect(),
    }
}
