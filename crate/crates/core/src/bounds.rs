//! Upper bounds used to prune the search.
//!
//! For a prefix `α` made of positive items and a positive item `z ∈ E(α)`:
//!
//! * `RLU(α, z) = Σ_{T ⊇ α∪{z}} [U(α,T) + RU(α,T)]`, where `RU` sums the
//!   positive utilities after `α` in `T`. Bounds every extension of `α`
//!   that contains `z`.
//! * `RSU(α, z) = Σ_{T ⊇ α∪{z}} [U(α,T) + U(z,T) + Σ positive utilities
//!   after z]`. Bounds every itemset in the subtree rooted at `α ∪ {z}`.
//!
//! For a negative item `z`, only positive-free negative extensions follow,
//! so the subtree bound is `Σ_{T ⊇ α∪{z}} pUtil(α, T)`: the positive part of
//! the prefix utility. The tighter-looking `Σ [U(α,T) + U(z,T)]` is not a
//! bound there, because a transaction term may be negative and a deeper
//! itemset is supported by fewer transactions.
//!
//! Both scans are linear in the size of the projected database and write
//! into [`UtilityArray`]s whose reset cost is proportional to the number of
//! items touched.

use std::collections::BTreeMap;

use crate::dataset::{ItemId, Utility, UtilityDatabase};
use crate::projection::{ProjectedDatabase, TransactionArena};

/// Item-indexed accumulator of length `|I|`.
#[derive(Debug, Clone)]
pub struct UtilityArray {
    values: Vec<Utility>,
    seen: Vec<bool>,
    touched: Vec<ItemId>,
}

impl UtilityArray {
    pub fn new(item_count: usize) -> Self {
        Self {
            values: vec![0; item_count],
            seen: vec![false; item_count],
            touched: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn add(&mut self, item: ItemId, value: Utility) {
        let i = item.index();
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(item);
        }
        self.values[i] += value;
    }

    #[inline]
    pub fn get(&self, item: ItemId) -> Utility {
        self.values[item.index()]
    }

    /// Whether `item` received any contribution since the last reset.
    #[inline]
    pub fn contains(&self, item: ItemId) -> bool {
        self.seen[item.index()]
    }

    pub fn touched(&self) -> &[ItemId] {
        &self.touched
    }

    pub fn reset(&mut self) {
        for item in self.touched.drain(..) {
            self.values[item.index()] = 0;
            self.seen[item.index()] = false;
        }
    }

    /// Full scan; for tests.
    pub fn is_clear(&self) -> bool {
        self.touched.is_empty() && self.values.iter().all(|&v| v == 0) && self.seen.iter().all(|&s| !s)
    }

    fn drain_to_map(&mut self) -> BTreeMap<ItemId, Utility> {
        let map = self.touched.iter().map(|&i| (i, self.get(i))).collect();
        self.reset();
        map
    }
}

/// Accumulates RLU and RSU of every positive item present in `pdb`.
pub fn fill_positive_bounds(
    arena: &TransactionArena,
    pdb: &ProjectedDatabase,
    rlu: &mut UtilityArray,
    rsu: &mut UtilityArray,
) {
    for view in &pdb.views {
        let items = arena.suffix_items(view);
        let utils = arena.suffix_utils(view);
        let n_pos = items.partition_point(|&i| arena.is_positive(i));
        if n_pos == 0 {
            continue;
        }
        let remaining: Utility = utils[..n_pos].iter().sum();
        let local = view.prefix_utility + remaining;
        let mut after = 0;
        for k in (0..n_pos).rev() {
            let (item, u) = (items[k], utils[k]);
            rlu.add(item, local);
            rsu.add(item, view.prefix_utility + u + after);
            after += u;
        }
    }
}

/// Accumulates the subtree bound of every negative item present in `pdb`.
pub fn fill_negative_bounds(arena: &TransactionArena, pdb: &ProjectedDatabase, rsu: &mut UtilityArray) {
    for view in &pdb.views {
        let items = arena.suffix_items(view);
        let first_neg = items.partition_point(|&i| arena.is_positive(i));
        for &item in &items[first_neg..] {
            rsu.add(item, view.prefix_positive);
        }
    }
}

/// RLU of every positive item of `E(α)` occurring in `pdb`. `ua` must be
/// reset and is left reset.
pub fn compute_rlu(
    arena: &TransactionArena,
    pdb: &ProjectedDatabase,
    ua: &mut UtilityArray,
) -> BTreeMap<ItemId, Utility> {
    let mut scratch = UtilityArray::new(ua.len());
    fill_positive_bounds(arena, pdb, ua, &mut scratch);
    ua.drain_to_map()
}

/// RSU of every item (positive or negative) of `E(α)` occurring in `pdb`.
/// `ua` must be reset and is left reset.
pub fn compute_rsu(
    arena: &TransactionArena,
    pdb: &ProjectedDatabase,
    ua: &mut UtilityArray,
) -> BTreeMap<ItemId, Utility> {
    let mut scratch = UtilityArray::new(ua.len());
    fill_positive_bounds(arena, pdb, &mut scratch, ua);
    fill_negative_bounds(arena, pdb, ua);
    ua.drain_to_map()
}

/// Real utilities of all items, sorted descending.
pub fn compute_riu(db: &UtilityDatabase) -> Vec<Utility> {
    let mut totals = vec![0; db.item_count()];
    for t in db.transactions() {
        for &(item, u) in &t.items {
            totals[item.index()] += u;
        }
    }
    totals.sort_unstable_by(|a, b| b.cmp(a));
    totals
}
