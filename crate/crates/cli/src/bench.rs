//! Ablation benchmark: every variant at every k on one database.

use rayon::prelude::*;
use topk_hui::dataset::UtilityDatabase;
use topk_hui::{mine, MinerConfig, Variant};

use crate::report::BenchRow;

/// Runs the variant × k grid on a pool of `threads` workers (0 lets rayon
/// decide). Rows follow the order of `ks`, then [`Variant::ALL`].
pub fn run_grid(
    db: &UtilityDatabase,
    ks: &[usize],
    threads: usize,
) -> Result<Vec<BenchRow>, rayon::ThreadPoolBuildError> {
    let jobs: Vec<(usize, Variant)> = ks
        .iter()
        .flat_map(|&k| Variant::ALL.into_iter().map(move |v| (k, v)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|&(k, v)| {
                let r = mine(db, &MinerConfig::for_variant(k, v)).expect("k is positive");
                log::info!(
                    "{v} k={k}: {} candidates in {:.1} ms",
                    r.stats.candidates,
                    r.stats.runtime_ms
                );
                BenchRow {
                    variant: v,
                    k,
                    itemsets: r.top_k.len(),
                    final_min_util: r.final_min_util,
                    candidates: r.stats.candidates,
                    projections: r.stats.projections,
                    merges: r.stats.merges,
                    peak_entries: r.stats.peak_entries,
                    peak_merged_cells: r.stats.peak_merged_cells,
                    runtime_ms: r.stats.runtime_ms,
                }
            })
            .collect()
    }))
}

/// Candidate-count invariants over a grid: full = subtree-only and
/// merge-only = none at each k, full ≤ none, and each variant's count is
/// non-decreasing in k. Returns one message per violation.
pub fn check_invariants(rows: &[BenchRow]) -> Vec<String> {
    let count = |k: usize, v: Variant| rows.iter().find(|r| r.k == k && r.variant == v).map(|r| r.candidates);
    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut out = Vec::new();
    for &k in &ks {
        let c = |v| count(k, v).unwrap_or(0);
        if c(Variant::Full) != c(Variant::SubtreeOnly) {
            out.push(format!(
                "k={k}: full {} != subtree-only {}",
                c(Variant::Full),
                c(Variant::SubtreeOnly)
            ));
        }
        if c(Variant::MergeOnly) != c(Variant::None) {
            out.push(format!(
                "k={k}: merge-only {} != none {}",
                c(Variant::MergeOnly),
                c(Variant::None)
            ));
        }
        if c(Variant::Full) > c(Variant::None) {
            out.push(format!("k={k}: full {} > none {}", c(Variant::Full), c(Variant::None)));
        }
    }
    for v in Variant::ALL {
        for w in ks.windows(2) {
            let (a, b) = (count(w[0], v).unwrap_or(0), count(w[1], v).unwrap_or(0));
            if a > b {
                out.push(format!(
                    "{v}: candidates drop from {a} at k={} to {b} at k={}",
                    w[0], w[1]
                ));
            }
        }
    }
    out
}

/// Worker count from `TOPIC_THREADS`; 0 when unset.
pub fn threads_from_env() -> Result<usize, String> {
    match std::env::var("TOPIC_THREADS") {
        Err(_) => Ok(0),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("TOPIC_THREADS must be a positive integer, got {s:?}")),
        },
    }
}
