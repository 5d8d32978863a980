//! Oracle comparison for all four variants.

use std::collections::BTreeSet;
use std::fmt;

use topk_hui::dataset::{Label, Utility, UtilityDatabase};
use topk_hui::{
    enumerate_topk, generate_synthetic, MineError, MineResult, MinerConfig, OracleError, SyntheticParams, Variant,
};

use crate::report::{labelled, LabelledItemset};

/// A miner under test. [`topk_hui::mine`] in production; tests inject
/// broken ones.
pub trait Miner: Sync {
    fn run(&self, db: &UtilityDatabase, config: &MinerConfig) -> Result<MineResult, MineError>;
}

impl<F> Miner for F
where
    F: Fn(&UtilityDatabase, &MinerConfig) -> Result<MineResult, MineError> + Sync,
{
    fn run(&self, db: &UtilityDatabase, config: &MinerConfig) -> Result<MineResult, MineError> {
        self(db, config)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub source: String,
    pub variant: Variant,
    pub k: usize,
    /// In the oracle's answer only.
    pub missing: Vec<LabelledItemset>,
    /// In the miner's answer only.
    pub unexpected: Vec<LabelledItemset>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MISMATCH {} variant={} k={}", self.source, self.variant, self.k)?;
        for e in &self.missing {
            writeln!(f, "  - {:?} {}", e.items, e.utility)?;
        }
        for e in &self.unexpected {
            writeln!(f, "  + {:?} {}", e.items, e.utility)?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct VerifySummary {
    pub databases: usize,
    pub runs: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn as_set(v: Vec<LabelledItemset>) -> BTreeSet<(Vec<Label>, Utility)> {
    v.into_iter().map(|e| (e.items, e.utility)).collect()
}

fn unpack(s: impl Iterator<Item = (Vec<Label>, Utility)>) -> Vec<LabelledItemset> {
    s.map(|(items, utility)| LabelledItemset { items, utility }).collect()
}

/// Runs every variant at every `k` on `db` and records each disagreement
/// with the oracle's (itemset, utility) set.
pub fn verify_database(
    db: &UtilityDatabase,
    source: &str,
    ks: &[usize],
    miner: &dyn Miner,
    summary: &mut VerifySummary,
) -> Result<(), OracleError> {
    summary.databases += 1;
    for &k in ks {
        let expected = as_set(labelled(db, &enumerate_topk(db, k)?.top_k));
        for v in Variant::ALL {
            summary.runs += 1;
            let got = match miner.run(db, &MinerConfig::for_variant(k, v)) {
                Ok(r) => as_set(labelled(db, &r.top_k)),
                Err(_) => BTreeSet::new(),
            };
            if got != expected {
                summary.mismatches.push(Mismatch {
                    source: source.to_string(),
                    variant: v,
                    k,
                    missing: unpack(expected.difference(&got).cloned()),
                    unexpected: unpack(got.difference(&expected).cloned()),
                });
            }
        }
    }
    Ok(())
}

/// Random database of the verification campaign: at most 10 items, at most
/// 25 transactions, utilities in [-9, 9] without 0, negative fraction
/// cycling through 0, 0.3 and 0.6.
pub fn campaign_database(seed: u64) -> UtilityDatabase {
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    let n_items = 1 + (mix % 10) as usize;
    generate_synthetic(&SyntheticParams {
        n_transactions: 1 + ((mix >> 8) % 25) as usize,
        n_items,
        avg_len: 1 + ((mix >> 16) as usize % n_items.min(4)),
        utility_range: (1, 9),
        negative_fraction: [0.0, 0.3, 0.6][(seed % 3) as usize],
        seed,
    })
    .expect("campaign parameters are valid")
}
