//! Exhaustive reference miner.
//!
//! Shares nothing with the search except the database model: it computes
//! its own item ranking for tie-breaks and evaluates every supported
//! itemset directly from the transactions.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::dataset::{ItemId, Sign, Utility, UtilityDatabase};
use crate::miner::RankedItemset;

pub const MAX_ORACLE_ITEMS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("database has {0} items; the oracle handles at most {MAX_ORACLE_ITEMS}")]
    TooManyItems(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub top_k: Vec<RankedItemset>,
    /// Utility of every itemset with non-empty support, keyed by ascending
    /// item ids.
    pub all_utilities: Option<HashMap<Vec<ItemId>, Utility>>,
}

/// `U(X)`: the sum over transactions containing every item of `X` of the
/// utilities of `X`'s items.
pub fn utility_of(db: &UtilityDatabase, itemset: &[ItemId]) -> Utility {
    debug_assert!(!itemset.is_empty());
    db.transactions()
        .iter()
        .filter_map(|t| itemset.iter().map(|&i| t.utility_of(i)).sum::<Option<Utility>>())
        .sum()
}

/// Utility of every supported itemset.
pub fn enumerate_all(db: &UtilityDatabase) -> Result<HashMap<Vec<ItemId>, Utility>, OracleError> {
    let n = db.item_count();
    if n > MAX_ORACLE_ITEMS {
        return Err(OracleError::TooManyItems(n));
    }
    // Dense utility matrix; a zero cell means "absent" since stored
    // utilities are never zero.
    let rows: Vec<Vec<Utility>> = db
        .transactions()
        .iter()
        .map(|t| {
            let mut row = vec![0; n];
            for &(i, u) in &t.items {
                row[i.index()] = u;
            }
            row
        })
        .collect();
    let mut out = HashMap::new();
    let all: Vec<(usize, Utility)> = (0..rows.len()).map(|t| (t, 0)).collect();
    let mut current = Vec::new();
    extend(&rows, n, 0, &all, &mut current, &mut out);
    Ok(out)
}

fn extend(
    rows: &[Vec<Utility>],
    n: usize,
    from: usize,
    support: &[(usize, Utility)],
    current: &mut Vec<ItemId>,
    out: &mut HashMap<Vec<ItemId>, Utility>,
) {
    for item in from..n {
        let next: Vec<(usize, Utility)> = support
            .iter()
            .filter(|&&(t, _)| rows[t][item] != 0)
            .map(|&(t, acc)| (t, acc + rows[t][item]))
            .collect();
        if next.is_empty() {
            continue;
        }
        current.push(ItemId(item as u32));
        out.insert(current.clone(), next.iter().map(|&(_, u)| u).sum());
        extend(rows, n, item + 1, &next, current, out);
        current.pop();
    }
}

/// Item ranks: positives before negatives, then ascending RTWU, then
/// ascending label.
fn item_ranks(db: &UtilityDatabase) -> Vec<usize> {
    let mut rtwu = vec![0; db.item_count()];
    for t in db.transactions() {
        let rtu: Utility = t.items.iter().filter(|x| x.1 > 0).map(|x| x.1).sum();
        for &(i, _) in &t.items {
            rtwu[i.index()] += rtu;
        }
    }
    let mut ids: Vec<ItemId> = db.items().collect();
    ids.sort_by_key(|&i| (db.sign(i) == Sign::Negative, rtwu[i.index()], db.label(i)));
    let mut rank = vec![0; ids.len()];
    for (r, i) in ids.iter().enumerate() {
        rank[i.index()] = r;
    }
    rank
}

fn rank_and_truncate(db: &UtilityDatabase, all: &HashMap<Vec<ItemId>, Utility>, k: usize) -> Vec<RankedItemset> {
    let rank = item_ranks(db);
    let key = |items: &[ItemId]| {
        let mut r: Vec<usize> = items.iter().map(|i| rank[i.index()]).collect();
        r.sort_unstable();
        r
    };
    let mut qualifying: Vec<(Vec<usize>, RankedItemset)> = all
        .iter()
        .filter(|(_, &u)| u >= 1)
        .map(|(items, &utility)| {
            (
                key(items),
                RankedItemset {
                    items: items.clone(),
                    utility,
                },
            )
        })
        .collect();
    qualifying.sort_by(|a, b| match b.1.utility.cmp(&a.1.utility) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    qualifying.truncate(k);
    qualifying.into_iter().map(|(_, r)| r).collect()
}

/// Top-k itemsets with utility ≥ 1, by descending utility with ties broken
/// by the processing-rank sequence.
pub fn enumerate_topk(db: &UtilityDatabase, k: usize) -> Result<OracleResult, OracleError> {
    let all = enumerate_all(db)?;
    Ok(OracleResult {
        top_k: rank_and_truncate(db, &all, k),
        all_utilities: None,
    })
}

/// As [`enumerate_topk`], also returning every supported itemset's utility.
pub fn enumerate_topk_full(db: &UtilityDatabase, k: usize) -> Result<OracleResult, OracleError> {
    let all = enumerate_all(db)?;
    Ok(OracleResult {
        top_k: rank_and_truncate(db, &all, k),
        all_utilities: Some(all),
    })
}
