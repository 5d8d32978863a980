//! Processing order of items and transactions.
//!
//! Items are ranked positives first, then negatives; within each class by
//! ascending RTWU with ties broken by ascending raw label. After
//! [`remap_database`] an item's id *is* its rank, so "sorted by id" and
//! "sorted by the processing order" coincide.

use std::cmp::Ordering;

use crate::dataset::{ItemId, ItemSummary, Sign, TransactionRecord, UtilityDatabase};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalOrder {
    rank: Vec<u32>,
    by_rank: Vec<ItemId>,
    positive_cutoff: u32,
}

impl TotalOrder {
    /// Rank of an original item id.
    pub fn rank(&self, item: ItemId) -> u32 {
        self.rank[item.index()]
    }

    /// Original item id holding `rank`.
    pub fn item_at(&self, rank: u32) -> ItemId {
        self.by_rank[rank as usize]
    }

    /// Original ids in processing order.
    pub fn items(&self) -> &[ItemId] {
        &self.by_rank
    }

    /// First rank that belongs to a negative item.
    pub fn positive_cutoff(&self) -> u32 {
        self.positive_cutoff
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }
}

pub fn build_total_order(summaries: &[ItemSummary]) -> TotalOrder {
    let mut sorted: Vec<&ItemSummary> = summaries.iter().collect();
    sorted.sort_by(|a, b| {
        let class = |s: &ItemSummary| (s.sign == Sign::Negative) as u8;
        class(a)
            .cmp(&class(b))
            .then(a.rtwu.cmp(&b.rtwu))
            .then(a.label.cmp(&b.label))
    });
    let n = summaries.len();
    let mut rank = vec![0u32; n];
    let by_rank: Vec<ItemId> = sorted.iter().map(|s| s.item).collect();
    for (r, item) in by_rank.iter().enumerate() {
        rank[item.index()] = r as u32;
    }
    let positive_cutoff = sorted.iter().filter(|s| s.sign == Sign::Positive).count() as u32;
    TotalOrder {
        rank,
        by_rank,
        positive_cutoff,
    }
}

/// Backward-lexicographic transaction order: compare item ranks from the
/// last item towards the first; a transaction that is a proper suffix of
/// the other sorts first.
pub fn cmp_transactions(a: &[ItemId], b: &[ItemId]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Rewrites `db` into rank space.
///
/// Items outside `secondary ∪ negatives_kept` are deleted, emptied
/// transactions are dropped, items are re-sorted by rank and transactions
/// are sorted by [`cmp_transactions`]. Tids are preserved. The result keeps
/// all `|I|` ids so rank-indexed arrays stay valid.
pub fn remap_database(
    db: &UtilityDatabase,
    order: &TotalOrder,
    secondary: &[ItemId],
    negatives_kept: &[ItemId],
) -> UtilityDatabase {
    let mut keep = vec![false; db.item_count()];
    for &i in secondary.iter().chain(negatives_kept) {
        keep[i.index()] = true;
    }
    let mut transactions: Vec<TransactionRecord> = db
        .transactions()
        .iter()
        .filter_map(|t| {
            let mut items: Vec<(ItemId, i64)> = t
                .items
                .iter()
                .filter(|(i, _)| keep[i.index()])
                .map(|&(i, u)| (ItemId(order.rank(i)), u))
                .collect();
            if items.is_empty() {
                return None;
            }
            items.sort_unstable_by_key(|&(i, _)| i);
            let tu = items.iter().map(|&(_, u)| u).sum();
            Some(TransactionRecord { tid: t.tid, items, tu })
        })
        .collect();
    transactions.sort_by(|a, b| {
        a.items
            .iter()
            .map(|&(i, _)| i)
            .rev()
            .cmp(b.items.iter().map(|&(i, _)| i).rev())
    });
    let labels = order.items().iter().map(|&i| db.label(i)).collect();
    let signs = order.items().iter().map(|&i| db.sign(i)).collect();
    UtilityDatabase::from_parts(transactions, labels, signs)
}
