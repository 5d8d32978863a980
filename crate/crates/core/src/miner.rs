//! Depth-first top-k search over positive extensions, with negative
//! extensions explored from every sufficiently good positive itemset.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{compute_riu, fill_negative_bounds, fill_positive_bounds, UtilityArray};
use crate::dataset::{compute_item_summaries, ItemId, Sign, Utility, UtilityDatabase};
use crate::order::{build_total_order, remap_database, TotalOrder};
use crate::projection::{merge_identical, project, ProjectedDatabase, TransactionArena};
use crate::topk::{TopKStore, FLOOR};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MineError {
    #[error("k must be at least 1")]
    InvalidK,
}

/// The four ablation variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Full,
    MergeOnly,
    SubtreeOnly,
    None,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Full, Variant::MergeOnly, Variant::SubtreeOnly, Variant::None];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::MergeOnly => "merge-only",
            Variant::SubtreeOnly => "subtree-only",
            Variant::None => "none",
        }
    }

    pub fn merging(self) -> bool {
        matches!(self, Variant::Full | Variant::MergeOnly)
    }

    pub fn subtree_pruning(self) -> bool {
        matches!(self, Variant::Full | Variant::SubtreeOnly)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown variant {s:?} (expected full, merge-only, subtree-only or none)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinerConfig {
    pub k: usize,
    pub enable_merging: bool,
    pub enable_subtree_pruning: bool,
}

impl MinerConfig {
    pub fn new(k: usize) -> Self {
        Self::for_variant(k, Variant::Full)
    }

    pub fn for_variant(k: usize, variant: Variant) -> Self {
        Self {
            k,
            enable_merging: variant.merging(),
            enable_subtree_pruning: variant.subtree_pruning(),
        }
    }

    pub fn variant(&self) -> Variant {
        match (self.enable_merging, self.enable_subtree_pruning) {
            (true, true) => Variant::Full,
            (true, false) => Variant::MergeOnly,
            (false, true) => Variant::SubtreeOnly,
            (false, false) => Variant::None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MineStats {
    /// Itemsets whose exact utility was computed.
    pub candidates: u64,
    pub projections: u64,
    /// Coalesced view pairs.
    pub merges: u64,
    /// Coalesced records allocated.
    pub merged_records: u64,
    pub runtime_ms: f64,
    /// Largest number of projected views alive at once.
    pub peak_entries: u64,
    /// Largest number of arena cells held by coalesced records at once.
    pub peak_merged_cells: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankedItemset {
    /// Item ids of the input database, ascending.
    pub items: Vec<ItemId>,
    pub utility: Utility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MineResult {
    /// Best itemsets by descending utility; ties by ascending processing
    /// rank sequence.
    pub top_k: Vec<RankedItemset>,
    pub final_min_util: Utility,
    pub stats: MineStats,
}

/// Hooks into a mining run, for instrumentation and tests.
pub trait SearchObserver {
    /// Whether [`SearchObserver::candidate`] needs the itemset; converting
    /// it back to input ids costs an allocation per candidate.
    fn wants_itemsets(&self) -> bool {
        false
    }

    /// Called once per candidate. `itemset` holds input item ids in
    /// ascending order when [`SearchObserver::wants_itemsets`] is true and is
    /// empty otherwise.
    fn candidate(&mut self, _itemset: &[ItemId], _utility: Utility) {}

    /// Called with the initial threshold and after every change.
    fn threshold(&mut self, _min_util: Utility) {}
}

struct NoObserver;

impl SearchObserver for NoObserver {}

/// Mines the exact top-k itemsets of `db` (ranked by utility, only
/// utilities ≥ 1).
pub fn mine(db: &UtilityDatabase, config: &MinerConfig) -> Result<MineResult, MineError> {
    mine_observed(db, config, &mut NoObserver)
}

pub fn mine_observed<O: SearchObserver>(
    db: &UtilityDatabase,
    config: &MinerConfig,
    observer: &mut O,
) -> Result<MineResult, MineError> {
    if config.k == 0 {
        return Err(MineError::InvalidK);
    }
    let started = Instant::now();
    let mut store = TopKStore::new(config.k);
    observer.threshold(store.min_util());
    if db.is_empty() {
        return Ok(MineResult {
            top_k: Vec::new(),
            final_min_util: FLOOR,
            stats: MineStats::default(),
        });
    }

    store.raise_with_riu(&compute_riu(db));
    if store.min_util() != FLOOR {
        observer.threshold(store.min_util());
    }

    // At the root U(∅,T) = 0 and RU(∅,T) = RTU(T), so RLU(∅, z) = RTWU(z).
    let summaries = compute_item_summaries(db);
    let min_util = store.min_util();
    let keep = |sign: Sign| {
        summaries
            .iter()
            .filter(move |s| s.sign == sign && s.rtwu >= min_util)
            .map(|s| s.item)
            .collect::<Vec<_>>()
    };
    let secondary = keep(Sign::Positive);
    let negatives = keep(Sign::Negative);

    let order = build_total_order(&summaries);
    let remapped = remap_database(db, &order, &secondary, &negatives);
    let (arena, root) = TransactionArena::from_database(&remapped);

    let n = remapped.item_count();
    let mut search = Search {
        arena,
        store,
        config,
        order: &order,
        observer,
        prefix: Vec::new(),
        rlu: UtilityArray::new(n),
        rsu: UtilityArray::new(n),
        negative_rsu: UtilityArray::new(n),
        stats: MineStats::default(),
        live_views: 0,
        last_threshold: min_util,
    };

    let root = if config.enable_merging {
        let (merged, merges) = merge_identical(&mut search.arena, &root);
        search.stats.merges += merges;
        merged
    } else {
        root
    };
    search.enter(root.len());

    let mut secondary: Vec<ItemId> = secondary.iter().map(|&i| ItemId(order.rank(i))).collect();
    secondary.sort_unstable();
    let primary = search.select_positive(&root, &secondary);
    if !primary.is_empty() {
        search.search_positive(&root, &primary, &secondary);
    }

    let Search { store, mut stats, .. } = search;
    stats.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    let top_k = store
        .results()
        .into_iter()
        .map(|(ranks, utility)| {
            let mut items: Vec<ItemId> = ranks.iter().map(|r| order.item_at(r.0)).collect();
            items.sort_unstable();
            RankedItemset { items, utility }
        })
        .collect();
    Ok(MineResult {
        top_k,
        final_min_util: store.min_util(),
        stats,
    })
}

struct Search<'a, O> {
    arena: TransactionArena,
    store: TopKStore,
    config: &'a MinerConfig,
    order: &'a TotalOrder,
    observer: &'a mut O,
    /// Current itemset as ranks, strictly increasing.
    prefix: Vec<ItemId>,
    rlu: UtilityArray,
    rsu: UtilityArray,
    negative_rsu: UtilityArray,
    stats: MineStats,
    live_views: u64,
    last_threshold: Utility,
}

impl<O: SearchObserver> Search<'_, O> {
    fn enter(&mut self, views: usize) {
        self.live_views += views as u64;
        self.stats.peak_entries = self.stats.peak_entries.max(self.live_views);
        self.stats.peak_merged_cells = self.stats.peak_merged_cells.max(self.arena.merged_cells() as u64);
    }

    fn leave(&mut self, views: usize) {
        self.live_views -= views as u64;
    }

    /// Records the exact utility of the current prefix and offers it.
    fn evaluate(&mut self, utility: Utility) {
        self.stats.candidates += 1;
        if self.observer.wants_itemsets() {
            let mut items: Vec<ItemId> = self.prefix.iter().map(|r| self.order.item_at(r.0)).collect();
            items.sort_unstable();
            self.observer.candidate(&items, utility);
        } else {
            self.observer.candidate(&[], utility);
        }
        if utility >= self.store.min_util() {
            let m = self.store.offer(&self.prefix, utility);
            if m != self.last_threshold {
                self.last_threshold = m;
                self.observer.threshold(m);
            }
        }
    }

    /// Primary items of the root among the secondary `candidates`.
    fn select_positive(&mut self, pdb: &ProjectedDatabase, candidates: &[ItemId]) -> Vec<ItemId> {
        fill_positive_bounds(&self.arena, pdb, &mut self.rlu, &mut self.rsu);
        let min_util = self.store.min_util();
        let primary = if self.config.enable_subtree_pruning {
            candidates
                .iter()
                .copied()
                .filter(|&y| self.rsu.contains(y) && self.rsu.get(y) >= min_util)
                .collect()
        } else {
            candidates.to_vec()
        };
        self.rlu.reset();
        self.rsu.reset();
        primary
    }

    fn search_positive(&mut self, pdb: &ProjectedDatabase, primary: &[ItemId], secondary: &[ItemId]) {
        let merging = self.config.enable_merging;
        for &z in primary {
            let mark = self.arena.mark();
            let proj = project(&mut self.arena, pdb, z, merging);
            self.stats.projections += 1;
            self.stats.merges += proj.merges;
            self.stats.merged_records += proj.merged_records;
            if proj.support == 0 {
                self.arena.release(mark);
                continue;
            }
            self.prefix.push(z);
            self.enter(proj.pdb.len());
            self.evaluate(proj.utility);

            // Negative extensions strictly lower the utility of an
            // all-positive itemset, so equality cannot lead anywhere.
            if proj.utility > self.store.min_util() && !proj.pdb.is_empty() {
                self.search_negative(&proj.pdb);
            }

            let later = &secondary[secondary.partition_point(|&y| y <= z)..];
            if !later.is_empty() && !proj.pdb.is_empty() {
                fill_positive_bounds(&self.arena, &proj.pdb, &mut self.rlu, &mut self.rsu);
                let min_util = self.store.min_util();
                let passes = |ua: &UtilityArray, y: ItemId| ua.contains(y) && ua.get(y) >= min_util;
                let next_secondary: Vec<ItemId> = later.iter().copied().filter(|&y| passes(&self.rlu, y)).collect();
                let next_primary: Vec<ItemId> = if self.config.enable_subtree_pruning {
                    later.iter().copied().filter(|&y| passes(&self.rsu, y)).collect()
                } else {
                    next_secondary.clone()
                };
                self.rlu.reset();
                self.rsu.reset();
                if !next_primary.is_empty() {
                    self.search_positive(&proj.pdb, &next_primary, &next_secondary);
                }
            }

            self.leave(proj.pdb.len());
            self.prefix.pop();
            self.arena.release(mark);
        }
    }

    /// Entry from an all-positive itemset: candidates are the negative
    /// items occurring in its projection.
    fn search_negative(&mut self, pdb: &ProjectedDatabase) {
        let candidates = self.select_negative(pdb, |_| true);
        if !candidates.is_empty() {
            self.extend_negative(pdb, &candidates);
        }
    }

    fn select_negative(&mut self, pdb: &ProjectedDatabase, allowed: impl Fn(ItemId) -> bool) -> Vec<ItemId> {
        fill_negative_bounds(&self.arena, pdb, &mut self.negative_rsu);
        let min_util = self.store.min_util();
        let prune = self.config.enable_subtree_pruning;
        let ua = &self.negative_rsu;
        let mut out: Vec<ItemId> = ua
            .touched()
            .iter()
            .copied()
            .filter(|&y| allowed(y) && (!prune || ua.get(y) >= min_util))
            .collect();
        self.negative_rsu.reset();
        out.sort_unstable();
        out
    }

    fn extend_negative(&mut self, pdb: &ProjectedDatabase, candidates: &[ItemId]) {
        let merging = self.config.enable_merging;
        for (idx, &z) in candidates.iter().enumerate() {
            let mark = self.arena.mark();
            let proj = project(&mut self.arena, pdb, z, merging);
            self.stats.projections += 1;
            self.stats.merges += proj.merges;
            self.stats.merged_records += proj.merged_records;
            if proj.support == 0 {
                self.arena.release(mark);
                continue;
            }
            self.prefix.push(z);
            self.enter(proj.pdb.len());
            self.evaluate(proj.utility);

            let rest = &candidates[idx + 1..];
            if !rest.is_empty() && !proj.pdb.is_empty() {
                let next = self.select_negative(&proj.pdb, |y| rest.binary_search(&y).is_ok());
                if !next.is_empty() {
                    self.extend_negative(&proj.pdb, &next);
                }
            }

            self.leave(proj.pdb.len());
            self.prefix.pop();
            self.arena.release(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{running_example, Label};

    fn labelled(db: &UtilityDatabase, r: &MineResult) -> Vec<(Vec<Label>, Utility)> {
        r.top_k
            .iter()
            .map(|e| (e.items.iter().map(|&i| db.label(i)).collect(), e.utility))
            .collect()
    }

    #[test]
    fn running_example_top5_all_variants() {
        let db = running_example();
        for v in Variant::ALL {
            let r = mine(&db, &MinerConfig::for_variant(5, v)).unwrap();
            assert_eq!(
                labelled(&db, &r),
                vec![
                    (vec![4], 114),
                    (vec![2, 4], 66),
                    (vec![3, 4], 64),
                    (vec![1, 4], 62),
                    (vec![2, 3, 4], 58),
                ],
                "variant {v}"
            );
            assert_eq!(r.final_min_util, 58);
            assert!(r.stats.candidates >= 5);
        }
    }

    #[test]
    fn running_example_top1() {
        let db = running_example();
        let r = mine(&db, &MinerConfig::new(1)).unwrap();
        assert_eq!(labelled(&db, &r), vec![(vec![4], 114)]);
        assert_eq!(r.final_min_util, 114);
    }

    #[test]
    fn empty_database() {
        let r = mine(&UtilityDatabase::empty(), &MinerConfig::new(5)).unwrap();
        assert!(r.top_k.is_empty());
        assert_eq!(r.final_min_util, 1);
        assert_eq!(r.stats.candidates, 0);
    }

    #[test]
    fn zero_k_rejected() {
        assert_eq!(mine(&running_example(), &MinerConfig::new(0)), Err(MineError::InvalidK));
    }

    #[test]
    fn variant_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.as_str().parse::<Variant>().unwrap(), v);
            assert_eq!(MinerConfig::for_variant(3, v).variant(), v);
        }
        assert!("fast".parse::<Variant>().is_err());
    }

    #[derive(Default)]
    struct Trace {
        candidates: Vec<(Vec<ItemId>, Utility)>,
    }

    impl SearchObserver for Trace {
        fn wants_itemsets(&self) -> bool {
            true
        }
        fn candidate(&mut self, itemset: &[ItemId], utility: Utility) {
            self.candidates.push((itemset.to_vec(), utility));
        }
    }

    #[test]
    fn negative_extensions_of_d() {
        let db = running_example();
        let mut trace = Trace::default();
        mine_observed(&db, &MinerConfig::new(5), &mut trace).unwrap();
        let ids = |ls: &[Label]| {
            let mut v: Vec<ItemId> = ls.iter().map(|&l| db.item_of_label(l).unwrap()).collect();
            v.sort();
            v
        };
        for (set, u) in [(&[4, 2][..], 66), (&[4, 3][..], 64), (&[4, 2, 3][..], 58)] {
            assert!(trace.candidates.contains(&(ids(set), u)), "missing {set:?}");
        }
    }

    #[test]
    fn only_negative_items_yield_nothing() {
        let db = UtilityDatabase::from_labelled([vec![(1, -3)], vec![(1, -2), (2, -1)]]).unwrap();
        let r = mine(&db, &MinerConfig::new(3)).unwrap();
        assert!(r.top_k.is_empty());
        assert_eq!(r.final_min_util, 1);
    }
}
