//! Seeded synthetic database generator.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DatasetError, Label, Utility, UtilityDatabase};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticParams {
    pub n_transactions: usize,
    pub n_items: usize,
    /// Mean transaction length. Lengths are uniform on
    /// `1..=2*avg_len-1`, clamped to `n_items`.
    pub avg_len: usize,
    /// Inclusive range of utility magnitudes; the sign comes from the item.
    pub utility_range: (Utility, Utility),
    /// Fraction of items whose utilities are negative.
    pub negative_fraction: f64,
    pub seed: u64,
}

impl SyntheticParams {
    fn validate(&self) -> Result<(), DatasetError> {
        let bad = |m: &str| Err(DatasetError::InvalidParams(m.to_string()));
        let (lo, hi) = self.utility_range;
        if lo < 1 || hi < lo {
            return bad("utility_range must be 1 <= min <= max (magnitudes, zero excluded)");
        }
        if !(0.0..1.0).contains(&self.negative_fraction) {
            return bad("negative_fraction must be in [0, 1)");
        }
        if self.n_transactions > 0 {
            if self.n_items == 0 {
                return bad("n_items must be positive");
            }
            if self.avg_len == 0 || self.avg_len > self.n_items {
                return bad("avg_len must be in 1..=n_items");
            }
        }
        Ok(())
    }
}

/// Generates a database deterministically from `params.seed`. Item labels
/// are `1..=n_items`; each item's sign is drawn once before any transaction.
pub fn generate_synthetic(params: &SyntheticParams) -> Result<UtilityDatabase, DatasetError> {
    params.validate()?;
    if params.n_transactions == 0 {
        return Ok(UtilityDatabase::empty());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_items;

    let n_negative = ((params.negative_fraction * n as f64).round() as usize).min(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut negative = vec![false; n];
    for &i in &order[..n_negative] {
        negative[i] = true;
    }

    let max_len = (2 * params.avg_len - 1).min(n);
    let (lo, hi) = params.utility_range;
    let mut rows = Vec::with_capacity(params.n_transactions);
    for _ in 0..params.n_transactions {
        let len = rng.random_range(1..=max_len);
        let mut row: Vec<(Label, Utility)> = index::sample(&mut rng, n, len)
            .into_iter()
            .map(|i| {
                let magnitude = rng.random_range(lo..=hi);
                let u = if negative[i] { -magnitude } else { magnitude };
                (i as Label + 1, u)
            })
            .collect();
        row.sort_unstable_by_key(|&(l, _)| l);
        rows.push(row);
    }
    UtilityDatabase::from_labelled(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_spmf, write_spmf, Sign, TuCheck};

    fn params(n_transactions: usize, n_items: usize, avg_len: usize, nf: f64, seed: u64) -> SyntheticParams {
        SyntheticParams {
            n_transactions,
            n_items,
            avg_len,
            utility_range: (1, 9),
            negative_fraction: nf,
            seed,
        }
    }

    #[test]
    fn zero_transactions_is_empty() {
        let p = SyntheticParams {
            utility_range: (1, 10),
            ..params(0, 10, 5, 0.2, 3)
        };
        let db = generate_synthetic(&p).unwrap();
        assert!(db.is_empty());
        assert_eq!(db.item_count(), 0);
    }

    #[test]
    fn deterministic_for_seed() {
        let p = params(100, 20, 5, 0.25, 42);
        assert_eq!(generate_synthetic(&p).unwrap(), generate_synthetic(&p).unwrap());
        let q = SyntheticParams { seed: 43, ..p.clone() };
        assert_ne!(generate_synthetic(&p).unwrap(), generate_synthetic(&q).unwrap());
    }

    #[test]
    fn round_trip_and_negative_share() {
        let db = generate_synthetic(&params(1000, 50, 8, 0.3, 7)).unwrap();
        let back = parse_spmf(&write_spmf(&db), TuCheck::Strict).unwrap().db;
        assert_eq!(back.labelled_transactions(), db.labelled_transactions());
        assert_eq!(db.item_count(), 50);
        let neg = db.items().filter(|&i| db.sign(i) == Sign::Negative).count();
        assert_eq!(neg, 15);
        let mean = db.transactions().iter().map(|t| t.len()).sum::<usize>() as f64 / 1000.0;
        assert!((mean - 8.0).abs() < 0.5, "mean length {mean}");
    }

    #[test]
    fn invalid_params() {
        for p in [
            SyntheticParams {
                utility_range: (0, 9),
                ..params(10, 5, 2, 0.1, 1)
            },
            SyntheticParams {
                utility_range: (5, 2),
                ..params(10, 5, 2, 0.1, 1)
            },
            params(10, 5, 6, 0.1, 1),
            params(10, 5, 0, 0.1, 1),
            params(10, 5, 2, 1.0, 1),
            params(10, 0, 1, 0.0, 1),
        ] {
            assert!(
                matches!(generate_synthetic(&p), Err(DatasetError::InvalidParams(_))),
                "{p:?}"
            );
        }
    }
}
