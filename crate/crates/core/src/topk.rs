//! The bounded result set and the rising `minUtil` threshold.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
#[cfg(debug_assertions)]
use std::collections::HashSet;

use crate::dataset::{ItemId, Utility};

/// Hard lower bound on the threshold: itemsets with utility below 1 are
/// never reported.
pub const FLOOR: Utility = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    utility: Utility,
    itemset: Vec<ItemId>,
}

// Heap order: the greatest entry is the worst one (lowest utility, then the
// lexicographically greatest itemset).
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        Reverse(self.utility)
            .cmp(&Reverse(other.utility))
            .then_with(|| self.itemset.cmp(&other.itemset))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Best `k` itemsets seen so far.
///
/// Itemsets are rank sequences sorted ascending, so slice comparison is the
/// lexicographic order used for tie-breaking.
#[derive(Debug, Clone)]
pub struct TopKStore {
    k: usize,
    heap: BinaryHeap<Entry>,
    raised: Utility,
    min_util: Utility,
    #[cfg(debug_assertions)]
    offered: HashSet<Vec<ItemId>>,
}

impl TopKStore {
    /// # Panics
    /// If `k` is zero.
    pub fn new(k: usize) -> Self {
        assert!(k > 0, "k must be positive");
        Self {
            k,
            heap: BinaryHeap::with_capacity(k + 1),
            raised: FLOOR,
            min_util: FLOOR,
            #[cfg(debug_assertions)]
            offered: HashSet::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn min_util(&self) -> Utility {
        self.min_util
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.heap.len() == self.k
    }

    fn refresh(&mut self) {
        let mut m = self.raised;
        if self.is_full() {
            m = m.max(self.heap.peek().map_or(FLOOR, |e| e.utility));
        }
        debug_assert!(m >= self.min_util, "threshold decreased");
        self.min_util = m;
    }

    /// Raises the threshold to the `k`-th value of `riu` (real item
    /// utilities, sorted descending) when there are at least `k` of them.
    pub fn raise_with_riu(&mut self, riu: &[Utility]) {
        debug_assert!(riu.windows(2).all(|w| w[0] >= w[1]));
        if let Some(&kth) = riu.get(self.k - 1) {
            self.raised = self.raised.max(kth);
            self.refresh();
        }
    }

    /// Offers an itemset with its exact utility and returns the threshold
    /// afterwards. On a tie at the `k`-th position the lexicographically
    /// greater itemset is evicted.
    pub fn offer(&mut self, itemset: &[ItemId], utility: Utility) -> Utility {
        #[cfg(debug_assertions)]
        assert!(
            self.offered.insert(itemset.to_vec()),
            "itemset {itemset:?} offered twice"
        );
        if utility < self.min_util {
            return self.min_util;
        }
        self.heap.push(Entry {
            utility,
            itemset: itemset.to_vec(),
        });
        if self.heap.len() > self.k {
            self.heap.pop();
        }
        self.refresh();
        self.min_util
    }

    /// Entries by descending utility, ties by ascending itemset.
    pub fn results(&self) -> Vec<(Vec<ItemId>, Utility)> {
        let mut v: Vec<&Entry> = self.heap.iter().collect();
        v.sort();
        v.into_iter().map(|e| (e.itemset.clone(), e.utility)).collect()
    }
}
