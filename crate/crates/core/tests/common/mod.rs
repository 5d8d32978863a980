#![allow(dead_code)]

use std::collections::HashMap;

use topk_hui::dataset::{ItemId, Utility, UtilityDatabase};
use topk_hui::miner::RankedItemset;
use topk_hui::{generate_synthetic, SyntheticParams};

pub const NEGATIVE_FRACTIONS: [f64; 3] = [0.0, 0.3, 0.6];
pub const KS: [usize; 5] = [1, 3, 5, 10, 20];

/// Small random database: at most 10 items, at most 25 transactions,
/// utilities in [-9, 9] \ {0}.
pub fn small_db(seed: u64) -> UtilityDatabase {
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    let n_items = 1 + (mix % 10) as usize;
    let n_transactions = 1 + ((mix >> 8) % 25) as usize;
    let avg_len = 1 + ((mix >> 16) as usize % n_items.min(4));
    let negative_fraction = NEGATIVE_FRACTIONS[(seed % 3) as usize];
    generate_synthetic(&SyntheticParams {
        n_transactions,
        n_items,
        avg_len,
        utility_range: (1, 9),
        negative_fraction,
        seed,
    })
    .unwrap()
}

pub fn as_pairs(v: &[RankedItemset]) -> Vec<(Vec<ItemId>, Utility)> {
    v.iter().map(|e| (e.items.clone(), e.utility)).collect()
}

pub fn as_set(v: &[RankedItemset]) -> HashMap<Vec<ItemId>, Utility> {
    v.iter().map(|e| (e.items.clone(), e.utility)).collect()
}

use topk_hui::bounds::{compute_rlu, compute_rsu, UtilityArray};
use topk_hui::dataset::compute_item_summaries;
use topk_hui::oracle::enumerate_all;
use topk_hui::order::{build_total_order, remap_database};
use topk_hui::projection::{merge_identical, project, ProjectedDatabase, TransactionArena};

#[derive(Debug)]
pub struct BoundViolation {
    pub prefix: Vec<ItemId>,
    pub item: ItemId,
    pub bound: &'static str,
    pub value: Utility,
    pub witness: Vec<ItemId>,
    pub utility: Utility,
}

/// Bitmask over rank ids (at most 24 items).
fn mask(items: &[ItemId]) -> u32 {
    items.iter().fold(0, |m, i| m | 1 << i.0)
}

/// Checks RLU/RSU at every supported prefix of `db` against the utilities
/// of all itemsets they must dominate. Works in rank space: `db` is
/// remapped with every item kept, so "after z" is "greater id than z".
pub fn bound_violations(db: &UtilityDatabase, merged: bool) -> (Vec<BoundViolation>, usize) {
    let order = build_total_order(&compute_item_summaries(db));
    let db = remap_database(db, &order, &db.positive_items(), &db.negative_items());
    let all: Vec<(u32, Vec<ItemId>, Utility)> = enumerate_all(&db)
        .unwrap()
        .into_iter()
        .map(|(items, u)| (mask(&items), items, u))
        .collect();
    let (mut arena, root) = TransactionArena::from_database(&db);
    let root = if merged {
        merge_identical(&mut arena, &root).0
    } else {
        root
    };
    let mut ua = UtilityArray::new(db.item_count());
    let mut out = Vec::new();
    let mut checks = 0;
    let mut prefix = Vec::new();
    visit(
        &db,
        &all,
        &mut arena,
        &root,
        &mut prefix,
        &mut ua,
        merged,
        &mut out,
        &mut checks,
    );
    (out, checks)
}

#[allow(clippy::too_many_arguments)]
fn visit(
    db: &UtilityDatabase,
    all: &[(u32, Vec<ItemId>, Utility)],
    arena: &mut TransactionArena,
    pdb: &ProjectedDatabase,
    prefix: &mut Vec<ItemId>,
    ua: &mut UtilityArray,
    merged: bool,
    out: &mut Vec<BoundViolation>,
    checks: &mut usize,
) {
    let alpha = mask(prefix);
    let last = prefix.last().map_or(-1, |l| l.0 as i64);
    let after = |z: i64| -> u32 {
        let lo = (z + 1) as u32;
        if lo >= 32 {
            0
        } else {
            !((1u32 << lo) - 1)
        }
    };
    let rlu = compute_rlu(arena, pdb, ua);
    let rsu = compute_rsu(arena, pdb, ua);
    for (&z, &value) in &rlu {
        let need = alpha | 1 << z.0;
        for (m, items, u) in all {
            // Extensions of α by items of E(α) that contain z.
            if m & need == need && (m & !alpha) & !after(last) == 0 {
                *checks += 1;
                if value < *u {
                    out.push(BoundViolation {
                        prefix: prefix.clone(),
                        item: z,
                        bound: "RLU",
                        value,
                        witness: items.clone(),
                        utility: *u,
                    });
                }
            }
        }
        if let Some(&s) = rsu.get(&z) {
            assert!(value >= s, "RLU < RSU at {prefix:?}/{z:?}");
        }
    }
    for (&z, &value) in &rsu {
        let need = alpha | 1 << z.0;
        for (m, items, u) in all {
            // The subtree rooted at α ∪ {z}: further items all come after z.
            if m & need == need && (m & !need) & !after(z.0 as i64) == 0 {
                *checks += 1;
                if value < *u {
                    out.push(BoundViolation {
                        prefix: prefix.clone(),
                        item: z,
                        bound: "RSU",
                        value,
                        witness: items.clone(),
                        utility: *u,
                    });
                }
            }
        }
    }
    let _ = db;
    let present: Vec<ItemId> = rsu.keys().copied().collect();
    for z in present {
        let mark = arena.mark();
        let p = project(arena, pdb, z, merged);
        prefix.push(z);
        visit(db, all, arena, &p.pdb, prefix, ua, merged, out, checks);
        prefix.pop();
        arena.release(mark);
    }
}

pub fn remapped(db: &UtilityDatabase) -> UtilityDatabase {
    let order = build_total_order(&compute_item_summaries(db));
    remap_database(db, &order, &db.positive_items(), &db.negative_items())
}

/// Brute-force merging check: the merged root, read back as a database,
/// has the same utility for every supported itemset, and so does every
/// merged projection along the way. Returns the number of itemsets walked.
pub fn check_merging(db: &UtilityDatabase) -> usize {
    let db = remapped(db);
    let oracle = enumerate_all(&db).unwrap();
    let (mut arena, root) = TransactionArena::from_database(&db);
    let (merged_root, _) = merge_identical(&mut arena, &root);
    let as_db = merged_root.to_database(&arena, &db);
    assert_eq!(enumerate_all(&as_db).unwrap(), oracle, "merged root differs");
    let mut prefix = Vec::new();
    walk(
        &mut arena,
        &root,
        &merged_root,
        &mut prefix,
        db.item_count() as u32,
        &oracle,
    )
}

fn walk(
    arena: &mut TransactionArena,
    plain: &ProjectedDatabase,
    merged: &ProjectedDatabase,
    prefix: &mut Vec<ItemId>,
    item_count: u32,
    oracle: &HashMap<Vec<ItemId>, Utility>,
) -> usize {
    let start = prefix.last().map_or(0, |l| l.0 + 1);
    let mut walked = 0;
    for z in (start..item_count).map(ItemId) {
        let mark = arena.mark();
        let a = project(arena, plain, z, false);
        let b = project(arena, merged, z, true);
        assert_eq!(a.support, b.support);
        assert_eq!(a.utility, b.utility);
        assert!(b.pdb.len() <= a.pdb.len());
        assert!(a.pdb.len() <= plain.len());
        if a.support > 0 {
            prefix.push(z);
            assert_eq!(oracle.get(prefix.as_slice()).copied(), Some(a.utility), "{prefix:?}");
            walked += 1 + walk(arena, &a.pdb, &b.pdb, prefix, item_count, oracle);
            prefix.pop();
        }
        arena.release(mark);
    }
    walked
}
