//! Deterministic parallel helpers. Work is split into chunks whose
//! boundaries do not depend on the number of threads, and every reduction
//! keeps input order, so output is the same for any `--jobs`.

use groupeq_core::equations::EquationSystem;
use groupeq_core::verify::{brute_force_solve_range, search_space, BruteForce};
use groupeq_core::Caps;
use rayon::prelude::*;

const CHUNK: u128 = 1 << 12;

pub fn pool(jobs: usize) -> anyhow::Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?)
}

/// Lexicographically least solution, searched in parallel chunks.
pub fn brute_force(system: &EquationSystem, caps: &Caps) -> groupeq_core::Result<BruteForce> {
    let total = search_space(system, caps)?;
    let chunks = total.div_ceil(CHUNK) as u64;
    let solution = (0..chunks).into_par_iter().find_map_first(|c| {
        let lo = c as u128 * CHUNK;
        brute_force_solve_range(system, lo..(lo + CHUNK).min(total))
    });
    Ok(BruteForce {
        solution,
        candidates: total,
    })
}
