//! Offset-based pseudo-projection and projected transaction merging.
//!
//! All transaction data of a mining run lives in one [`TransactionArena`].
//! A projected transaction is a window `offset..end` into the arena plus the
//! utility of the current prefix in that transaction. Projection only
//! creates new windows; merging two views with identical item suffixes is
//! the only operation that writes to the arena (it appends a coalesced
//! record). Records appended after a [`TransactionArena::mark`] are freed
//! with [`TransactionArena::release`] when the search backtracks.

use crate::dataset::{ItemId, Sign, TransactionRecord, Utility, UtilityDatabase};

#[derive(Debug, Clone)]
pub struct TransactionArena {
    items: Vec<ItemId>,
    utils: Vec<Utility>,
    base_len: usize,
    item_count: usize,
    positive_cutoff: u32,
}

impl TransactionArena {
    /// Lays out a remapped database (ids are ranks, negatives last) and
    /// returns the arena together with the root projection, one view per
    /// transaction in stored order.
    pub fn from_database(db: &UtilityDatabase) -> (Self, ProjectedDatabase) {
        let positive_cutoff = db.items().take_while(|&i| db.sign(i) == Sign::Positive).count();
        debug_assert!(
            db.items().skip(positive_cutoff).all(|i| db.sign(i) == Sign::Negative),
            "database is not in rank space"
        );
        let total: usize = db.transactions().iter().map(|t| t.len()).sum();
        let mut items = Vec::with_capacity(total);
        let mut utils = Vec::with_capacity(total);
        let mut views = Vec::with_capacity(db.len());
        for t in db.transactions() {
            let offset = items.len() as u32;
            items.extend(t.items.iter().map(|&(i, _)| i));
            utils.extend(t.items.iter().map(|&(_, u)| u));
            views.push(ProjectedTransaction {
                offset,
                end: items.len() as u32,
                prefix_utility: 0,
                prefix_positive: 0,
                weight: 1,
            });
        }
        let arena = Self {
            base_len: items.len(),
            items,
            utils,
            item_count: db.item_count(),
            positive_cutoff: positive_cutoff as u32,
        };
        (arena, ProjectedDatabase { views })
    }

    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn positive_cutoff(&self) -> u32 {
        self.positive_cutoff
    }

    #[inline]
    pub fn is_positive(&self, item: ItemId) -> bool {
        item.0 < self.positive_cutoff
    }

    #[inline]
    pub fn suffix_items(&self, view: &ProjectedTransaction) -> &[ItemId] {
        &self.items[view.offset as usize..view.end as usize]
    }

    #[inline]
    pub fn suffix_utils(&self, view: &ProjectedTransaction) -> &[Utility] {
        &self.utils[view.offset as usize..view.end as usize]
    }

    pub fn mark(&self) -> usize {
        self.items.len()
    }

    pub fn release(&mut self, mark: usize) {
        debug_assert!(mark >= self.base_len);
        self.items.truncate(mark);
        self.utils.truncate(mark);
    }

    /// Cells held by coalesced records.
    pub fn merged_cells(&self) -> usize {
        self.items.len() - self.base_len
    }
}

/// A window on a stored record: items `offset..end` of the arena are the
/// items of `E(α)` in this transaction, `prefix_utility` is `U(α, T)` and
/// `prefix_positive` the positive part of it. `weight` counts how many
/// original transactions were merged into this view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectedTransaction {
    pub offset: u32,
    pub end: u32,
    pub prefix_utility: Utility,
    pub prefix_positive: Utility,
    pub weight: u32,
}

impl ProjectedTransaction {
    pub fn is_empty(&self) -> bool {
        self.offset == self.end
    }

    pub fn len(&self) -> usize {
        (self.end - self.offset) as usize
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProjectedDatabase {
    pub views: Vec<ProjectedTransaction>,
}

impl ProjectedDatabase {
    pub fn len(&self) -> usize {
        self.views.len()
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty()
    }

    pub fn support(&self) -> u64 {
        self.views.iter().map(|v| v.weight as u64).sum()
    }

    /// Copies the views' suffixes into a standalone database in the same
    /// rank space as `parent`. Prefix utilities are not represented, so this
    /// is only a faithful copy of the data for a root-level projection.
    pub fn to_database(&self, arena: &TransactionArena, parent: &UtilityDatabase) -> UtilityDatabase {
        let transactions = self
            .views
            .iter()
            .filter(|v| !v.is_empty())
            .enumerate()
            .map(|(idx, v)| {
                let items: Vec<(ItemId, Utility)> = arena
                    .suffix_items(v)
                    .iter()
                    .copied()
                    .zip(arena.suffix_utils(v).iter().copied())
                    .collect();
                let tu = items.iter().map(|&(_, u)| u).sum();
                TransactionRecord {
                    tid: idx as u32 + 1,
                    items,
                    tu,
                }
            })
            .collect();
        UtilityDatabase::from_parts(
            transactions,
            parent.labels().to_vec(),
            parent.items().map(|i| parent.sign(i)).collect(),
        )
    }
}

/// Outcome of projecting a database on one item.
#[derive(Debug, Clone)]
pub struct Projection {
    /// `U(α ∪ {x})`.
    pub utility: Utility,
    /// Number of original transactions containing `α ∪ {x}`.
    pub support: u64,
    /// Views with a non-empty suffix after `x`.
    pub pdb: ProjectedDatabase,
    /// View pairs coalesced while building `pdb`.
    pub merges: u64,
    /// Coalesced records allocated in the arena.
    pub merged_records: u64,
}

/// Appends views to `out`, coalescing a view into its predecessor when both
/// windows hold the same item sequence.
struct Coalescer {
    enabled: bool,
    local_mark: usize,
    merges: u64,
    merged_records: u64,
}

impl Coalescer {
    fn new(arena: &TransactionArena, enabled: bool) -> Self {
        Self {
            enabled,
            local_mark: arena.mark(),
            merges: 0,
            merged_records: 0,
        }
    }

    fn push(&mut self, arena: &mut TransactionArena, out: &mut Vec<ProjectedTransaction>, view: ProjectedTransaction) {
        if self.enabled {
            if let Some(last) = out.last_mut() {
                if arena.suffix_items(last) == arena.suffix_items(&view) {
                    if !last.is_empty() {
                        if (last.offset as usize) < self.local_mark {
                            // Shared with an ancestor: copy before writing.
                            let (start, end) = (last.offset as usize, last.end as usize);
                            let new_start = arena.items.len();
                            arena.items.extend_from_within(start..end);
                            arena.utils.extend_from_within(start..end);
                            last.offset = new_start as u32;
                            last.end = arena.items.len() as u32;
                            self.merged_records += 1;
                        }
                        let dst = last.offset as usize;
                        let src = view.offset as usize;
                        for k in 0..view.len() {
                            arena.utils[dst + k] += arena.utils[src + k];
                        }
                    }
                    last.prefix_utility += view.prefix_utility;
                    last.prefix_positive += view.prefix_positive;
                    last.weight += view.weight;
                    self.merges += 1;
                    return;
                }
            }
        }
        out.push(view);
    }
}

/// Projects `pdb` (representing prefix `α`) on `x ∈ E(α)`.
///
/// One scan computes `U(α ∪ {x})` and builds the child views, each starting
/// just past `x`. Views whose suffix becomes empty contribute to the utility
/// and are then dropped. With `merge`, adjacent views with identical
/// suffixes are coalesced, which requires the base records to be sorted in
/// backward-lexicographic transaction order.
pub fn project(arena: &mut TransactionArena, pdb: &ProjectedDatabase, x: ItemId, merge: bool) -> Projection {
    let mut utility = 0;
    let mut support = 0;
    let mut out = Vec::new();
    let mut coalescer = Coalescer::new(arena, merge);
    for view in &pdb.views {
        let Ok(pos) = arena.suffix_items(view).binary_search(&x) else {
            continue;
        };
        let at = view.offset as usize + pos;
        let u = arena.utils[at];
        let child = ProjectedTransaction {
            offset: at as u32 + 1,
            end: view.end,
            prefix_utility: view.prefix_utility + u,
            prefix_positive: view.prefix_positive + u.max(0),
            weight: view.weight,
        };
        utility += child.prefix_utility;
        support += view.weight as u64;
        if !child.is_empty() {
            coalescer.push(arena, &mut out, child);
        }
    }
    Projection {
        utility,
        support,
        pdb: ProjectedDatabase { views: out },
        merges: coalescer.merges,
        merged_records: coalescer.merged_records,
    }
}

/// Coalesces consecutive views with identical item suffixes (including
/// empty ones) in a single pass. Returns the merged database and the number
/// of coalesced pairs.
pub fn merge_identical(arena: &mut TransactionArena, pdb: &ProjectedDatabase) -> (ProjectedDatabase, u64) {
    let mut out = Vec::with_capacity(pdb.len());
    let mut coalescer = Coalescer::new(arena, true);
    for &view in &pdb.views {
        coalescer.push(arena, &mut out, view);
    }
    (ProjectedDatabase { views: out }, coalescer.merges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{compute_item_summaries, running_example, Label};
    use crate::order::{build_total_order, remap_database};

    fn remapped_example() -> UtilityDatabase {
        let db = running_example();
        let order = build_total_order(&compute_item_summaries(&db));
        remap_database(&db, &order, &db.positive_items(), &db.negative_items())
    }

    fn rank(db: &UtilityDatabase, label: Label) -> ItemId {
        db.item_of_label(label).unwrap()
    }

    fn view_labels(arena: &TransactionArena, db: &UtilityDatabase, v: &ProjectedTransaction) -> Vec<(Label, Utility)> {
        arena
            .suffix_items(v)
            .iter()
            .zip(arena.suffix_utils(v))
            .map(|(&i, &u)| (db.label(i), u))
            .collect()
    }

    #[test]
    fn project_root_on_a() {
        let db = remapped_example();
        let (mut arena, root) = TransactionArena::from_database(&db);
        let a = rank(&db, 1);
        let p = project(&mut arena, &root, a, false);
        assert_eq!(p.support, 3);
        assert_eq!(p.utility, 25);
        // T4 = {E, A} has nothing after A and is dropped.
        assert_eq!(p.pdb.len(), 2);
        let mut suffixes: Vec<_> = p
            .pdb
            .views
            .iter()
            .map(|v| (v.prefix_utility, view_labels(&arena, &db, v)))
            .collect();
        suffixes.sort();
        assert_eq!(suffixes, vec![(5, vec![(4, 12)]), (15, vec![(4, 30)])]);

        let ad = project(&mut arena, &p.pdb, rank(&db, 4), false);
        assert_eq!(ad.utility, 62);
        assert!(ad.pdb.is_empty());
    }

    #[test]
    fn absent_item_gives_empty_projection() {
        let db = remapped_example();
        let (mut arena, root) = TransactionArena::from_database(&db);
        let a = project(&mut arena, &root, rank(&db, 1), true);
        let p = project(&mut arena, &a.pdb, rank(&db, 5), true);
        assert_eq!(p.support, 0);
        assert_eq!(p.utility, 0);
        assert!(p.pdb.is_empty());
    }

    #[test]
    fn merging_root_coalesces_t2_t5() {
        let db = remapped_example();
        let (mut arena, root) = TransactionArena::from_database(&db);
        let (merged, merges) = merge_identical(&mut arena, &root);
        assert_eq!(merges, 1);
        assert_eq!(merged.len(), 5);
        let m = merged.views.iter().find(|v| v.weight == 2).unwrap();
        let mut got = view_labels(&arena, &db, m);
        got.sort();
        assert_eq!(got, vec![(2, -6), (3, -8), (4, 72)]);
        // The base records are untouched.
        let originals: Vec<_> = root
            .views
            .iter()
            .filter(|v| arena.suffix_items(v) == arena.suffix_items(m))
            .map(|v| view_labels(&arena, &db, v))
            .collect();
        assert_eq!(originals.len(), 2);
        assert!(originals.iter().all(|o| o.contains(&(4, 36))));
    }

    #[test]
    fn empty_views_merge_into_one() {
        // Views of T2, T5, T6 relative to {A}: nothing left in any of them.
        let db = remapped_example();
        let (mut arena, root) = TransactionArena::from_database(&db);
        let empties: Vec<ProjectedTransaction> = root
            .views
            .iter()
            .filter(|v| !arena.suffix_items(v).contains(&rank(&db, 1)))
            .map(|v| ProjectedTransaction { offset: v.end, ..*v })
            .collect();
        assert_eq!(empties.len(), 3);
        let (merged, merges) = merge_identical(&mut arena, &ProjectedDatabase { views: empties });
        assert_eq!(merges, 2);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.views[0].weight, 3);
        assert!(merged.views[0].is_empty());
    }

    #[test]
    fn no_identical_suffixes_is_identity() {
        let db = UtilityDatabase::from_labelled([vec![(1, 2), (2, 3)], vec![(1, 1)], vec![(2, 5)]]).unwrap();
        let order = build_total_order(&compute_item_summaries(&db));
        let r = remap_database(&db, &order, &db.positive_items(), &[]);
        let (mut arena, root) = TransactionArena::from_database(&r);
        let mark = arena.mark();
        let (merged, merges) = merge_identical(&mut arena, &root);
        assert_eq!(merges, 0);
        assert_eq!(merged, root);
        assert_eq!(arena.mark(), mark);
    }

    #[test]
    fn merged_projection_matches_unmerged_utility() {
        let db = remapped_example();
        let (mut arena, root) = TransactionArena::from_database(&db);
        let d = rank(&db, 4);
        let plain = project(&mut arena, &root, d, false);
        let merged = project(&mut arena, &root, d, true);
        assert_eq!(plain.utility, 114);
        assert_eq!(merged.utility, 114);
        assert_eq!(merged.merges, 1);
        assert_eq!(merged.pdb.len(), 1);
        assert_eq!(merged.pdb.support(), 2);
        for b in [rank(&db, 2), rank(&db, 3)] {
            let x = project(&mut arena, &plain.pdb, b, false).utility;
            let y = project(&mut arena, &merged.pdb, b, false).utility;
            assert_eq!(x, y);
        }
        let mark = arena.mark();
        arena.release(mark);
    }
}
