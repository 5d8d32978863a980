mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use topk_hui::dataset::{compute_item_summaries, ItemId, Label, Sign, Utility, UtilityDatabase};
use topk_hui::order::build_total_order;
use topk_hui::{
    enumerate_topk, mine, mine_observed, parse_spmf, utility_of, write_spmf, MinerConfig, SearchObserver, TuCheck,
    Variant,
};

fn database() -> impl Strategy<Value = UtilityDatabase> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let signs = proptest::collection::vec(any::<bool>(), n);
            let rows = proptest::collection::vec(proptest::collection::vec((any::<bool>(), 1i64..=9), n), 0..=15);
            (signs, rows)
        })
        .prop_map(|(negative, rows)| {
            let rows: Vec<Vec<(Label, Utility)>> = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .enumerate()
                        .filter(|(_, (present, _))| *present)
                        .map(|(i, (_, m))| (i as Label + 1, if negative[i] { -m } else { m }))
                        .collect::<Vec<_>>()
                })
                .filter(|row: &Vec<(Label, Utility)>| !row.is_empty())
                .collect();
            UtilityDatabase::from_labelled(rows).unwrap()
        })
}

#[derive(Default)]
struct Recorder {
    seen: HashSet<Vec<ItemId>>,
    candidates: Vec<(Vec<ItemId>, Utility)>,
    thresholds: Vec<Utility>,
}

impl SearchObserver for Recorder {
    fn wants_itemsets(&self) -> bool {
        true
    }

    fn candidate(&mut self, itemset: &[ItemId], utility: Utility) {
        assert!(self.seen.insert(itemset.to_vec()), "{itemset:?} evaluated twice");
        self.candidates.push((itemset.to_vec(), utility));
    }

    fn threshold(&mut self, min_util: Utility) {
        self.thresholds.push(min_util);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn all_variants_match_oracle(db in database(), k in 1usize..=12) {
        let expected = enumerate_topk(&db, k).unwrap().top_k;
        for v in Variant::ALL {
            let got = mine(&db, &MinerConfig::for_variant(k, v)).unwrap();
            prop_assert_eq!(&got.top_k, &expected, "variant {}", v);
            if got.top_k.len() == k {
                prop_assert_eq!(got.final_min_util, got.top_k[k - 1].utility);
            }
            prop_assert!(got.stats.candidates >= got.top_k.len() as u64);
        }
    }

    #[test]
    fn candidates_are_exact_unique_and_ordered(db in database(), k in 1usize..=12) {
        let order = build_total_order(&compute_item_summaries(&db));
        for v in Variant::ALL {
            let mut rec = Recorder::default();
            let r = mine_observed(&db, &MinerConfig::for_variant(k, v), &mut rec).unwrap();
            prop_assert_eq!(rec.candidates.len() as u64, r.stats.candidates);
            for (items, u) in &rec.candidates {
                prop_assert_eq!(utility_of(&db, items), *u);
                let mut ranks: Vec<u32> = items.iter().map(|&i| order.rank(i)).collect();
                ranks.sort_unstable();
                let first_negative = ranks.iter().position(|&r| r >= order.positive_cutoff());
                if let Some(p) = first_negative {
                    prop_assert!(ranks[p..].iter().all(|&r| db.sign(order.item_at(r)) == Sign::Negative));
                    // Negative extensions only hang off positive itemsets.
                    prop_assert!(p > 0);
                }
            }
            prop_assert!(rec.thresholds.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(*rec.thresholds.last().unwrap(), r.final_min_util);
        }
    }

    #[test]
    fn ablation_candidate_pattern(db in database(), k in 1usize..=12) {
        let c = |v| mine(&db, &MinerConfig::for_variant(k, v)).unwrap().stats.candidates;
        let (full, merge, subtree, none) = (c(Variant::Full), c(Variant::MergeOnly), c(Variant::SubtreeOnly), c(Variant::None));
        prop_assert_eq!(full, subtree);
        prop_assert_eq!(merge, none);
        prop_assert!(full <= none);
    }

    #[test]
    fn spmf_round_trip(db in database()) {
        let back = parse_spmf(&write_spmf(&db), TuCheck::Strict).unwrap().db;
        prop_assert_eq!(back, db);
    }

    #[test]
    fn summary_invariants(db in database()) {
        let has_negative = db.items().any(|i| db.sign(i) == Sign::Negative);
        for s in compute_item_summaries(&db) {
            prop_assert!(s.rtwu >= s.twu);
            prop_assert!(s.rtwu >= 0);
            if !has_negative {
                prop_assert_eq!(s.rtwu, s.twu);
            }
        }
    }
}

#[test]
fn larger_k_never_prunes_more() {
    for seed in 0..40 {
        let db = common::small_db(seed);
        for v in Variant::ALL {
            let counts: Vec<u64> = common::KS
                .iter()
                .map(|&k| mine(&db, &MinerConfig::for_variant(k, v)).unwrap().stats.candidates)
                .collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "seed {seed} {v}: {counts:?}");
        }
    }
}
