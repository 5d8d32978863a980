//! Utility transaction databases.
//!
//! A [`UtilityDatabase`] stores, for every transaction, the utility `U(x, T)`
//! of each item it contains. Items are identified by dense [`ItemId`]s; the raw
//! labels read from the input are kept so results can be reported in the
//! caller's vocabulary.

mod spmf;
mod synthetic;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use spmf::{parse_spmf, read_spmf, write_spmf, ParseWarning, ParsedDatabase, TuCheck};
pub use synthetic::{generate_synthetic, SyntheticParams};

/// Raw item label as it appears in an input file.
pub type Label = u64;

/// Utility in integer currency units.
pub type Utility = i64;

/// Dense item identifier, `0..item_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DatasetError {
    #[error("line {line}: malformed transaction: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: declared transaction utility {declared} but items sum to {actual}")]
    TuMismatch {
        line: usize,
        declared: Utility,
        actual: Utility,
    },
    #[error("item {label} occurs with both positive and negative utilities")]
    MixedSignItem { label: Label },
    #[error("line {line}: item {label} has zero utility")]
    ZeroUtility { line: usize, label: Label },
    #[error("line {line}: item {label} appears more than once")]
    DuplicateItem { line: usize, label: Label },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is not `PartialEq`; keep the message only.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("i/o error: {0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for DatasetError {
    fn from(e: std::io::Error) -> Self {
        DatasetError::Io(IoError(e.to_string()))
    }
}

/// One transaction. `items` is sorted by the owning database's item order
/// (ascending [`ItemId`]) and `tu` is the exact sum of the stored utilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionRecord {
    pub tid: u32,
    pub items: Vec<(ItemId, Utility)>,
    pub tu: Utility,
}

impl TransactionRecord {
    /// Redefined transaction utility: the sum of positive utilities only.
    pub fn rtu(&self) -> Utility {
        self.items.iter().map(|&(_, u)| u.max(0)).sum()
    }

    pub fn utility_of(&self, item: ItemId) -> Option<Utility> {
        self.items
            .binary_search_by_key(&item, |&(i, _)| i)
            .ok()
            .map(|pos| self.items[pos].1)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Immutable utility database.
///
/// Every item has a single global sign: all its occurrences are strictly
/// positive or all are strictly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityDatabase {
    transactions: Vec<TransactionRecord>,
    labels: Vec<Label>,
    signs: Vec<Sign>,
    by_label: HashMap<Label, ItemId>,
}

impl UtilityDatabase {
    pub fn empty() -> Self {
        Self {
            transactions: Vec::new(),
            labels: Vec::new(),
            signs: Vec::new(),
            by_label: HashMap::new(),
        }
    }

    /// Builds a database from labelled transactions, assigning dense ids in
    /// ascending label order and tids `1..` in input order.
    ///
    /// Validates duplicates, zero utilities and sign consistency.
    pub fn from_labelled<I, T>(transactions: I) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[(Label, Utility)]>,
    {
        let rows: Vec<Vec<(Label, Utility)>> = transactions.into_iter().map(|t| t.as_ref().to_vec()).collect();
        let lines: Vec<usize> = (1..=rows.len()).collect();
        Self::build(rows, &lines)
    }

    /// `lines[i]` is the source line of `rows[i]`, used in error messages.
    pub(crate) fn build(rows: Vec<Vec<(Label, Utility)>>, lines: &[usize]) -> Result<Self, DatasetError> {
        let mut signs_by_label: HashMap<Label, Sign> = HashMap::new();
        for (row, &line) in rows.iter().zip(lines) {
            for &(label, utility) in row {
                let sign = match utility {
                    0 => return Err(DatasetError::ZeroUtility { line, label }),
                    u if u > 0 => Sign::Positive,
                    _ => Sign::Negative,
                };
                match signs_by_label.insert(label, sign) {
                    Some(prev) if prev != sign => return Err(DatasetError::MixedSignItem { label }),
                    _ => {}
                }
            }
        }

        let mut labels: Vec<Label> = signs_by_label.keys().copied().collect();
        labels.sort_unstable();
        let by_label: HashMap<Label, ItemId> = labels.iter().enumerate().map(|(i, &l)| (l, ItemId(i as u32))).collect();
        let signs = labels.iter().map(|l| signs_by_label[l]).collect();

        let mut transactions = Vec::with_capacity(rows.len());
        for (idx, (row, &line)) in rows.into_iter().zip(lines).enumerate() {
            let mut items: Vec<(ItemId, Utility)> = row.iter().map(|&(l, u)| (by_label[&l], u)).collect();
            items.sort_unstable_by_key(|&(i, _)| i);
            if let Some(w) = items.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(DatasetError::DuplicateItem {
                    line,
                    label: labels[w[0].0.index()],
                });
            }
            let tu = items.iter().map(|&(_, u)| u).sum();
            transactions.push(TransactionRecord {
                tid: idx as u32 + 1,
                items,
                tu,
            });
        }

        Ok(Self {
            transactions,
            labels,
            signs,
            by_label,
        })
    }

    /// Assembles a database whose ids are already dense. Records must be
    /// sorted by id and free of zero utilities; used by remapping.
    pub(crate) fn from_parts(transactions: Vec<TransactionRecord>, labels: Vec<Label>, signs: Vec<Sign>) -> Self {
        let by_label = labels.iter().enumerate().map(|(i, &l)| (l, ItemId(i as u32))).collect();
        Self {
            transactions,
            labels,
            signs,
            by_label,
        }
    }

    pub fn transactions(&self) -> &[TransactionRecord] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// `|I|`, the number of item ids (including ids that no longer occur
    /// after a remap removed them).
    pub fn item_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, item: ItemId) -> Label {
        self.labels[item.index()]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn item_of_label(&self, label: Label) -> Option<ItemId> {
        self.by_label.get(&label).copied()
    }

    pub fn sign(&self, item: ItemId) -> Sign {
        self.signs[item.index()]
    }

    pub fn items(&self) -> impl Iterator<Item = ItemId> + '_ {
        (0..self.labels.len() as u32).map(ItemId)
    }

    /// The positive item set ρ.
    pub fn positive_items(&self) -> Vec<ItemId> {
        self.items().filter(|&i| self.sign(i) == Sign::Positive).collect()
    }

    /// The negative item set η.
    pub fn negative_items(&self) -> Vec<ItemId> {
        self.items().filter(|&i| self.sign(i) == Sign::Negative).collect()
    }

    /// Transactions as label/utility lists, items in ascending label order.
    /// Two databases with equal labelled transactions hold the same data
    /// regardless of how their ids were assigned.
    pub fn labelled_transactions(&self) -> Vec<Vec<(Label, Utility)>> {
        self.transactions
            .iter()
            .map(|t| {
                let mut row: Vec<(Label, Utility)> = t.items.iter().map(|&(i, u)| (self.label(i), u)).collect();
                row.sort_unstable_by_key(|&(l, _)| l);
                row
            })
            .collect()
    }
}

/// Per-item aggregates over the whole database.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemSummary {
    pub item: ItemId,
    pub label: Label,
    /// Real utility `Σ_T U(x, T)`.
    pub utility: Utility,
    pub twu: Utility,
    pub rtwu: Utility,
    pub support: u32,
    pub sign: Sign,
}

/// One summary per item id, in id order.
pub fn compute_item_summaries(db: &UtilityDatabase) -> Vec<ItemSummary> {
    let mut out: Vec<ItemSummary> = db
        .items()
        .map(|item| ItemSummary {
            item,
            label: db.label(item),
            utility: 0,
            twu: 0,
            rtwu: 0,
            support: 0,
            sign: db.sign(item),
        })
        .collect();
    for t in db.transactions() {
        let rtu = t.rtu();
        for &(item, u) in &t.items {
            let s = &mut out[item.index()];
            s.utility += u;
            s.twu += t.tu;
            s.rtwu += rtu;
            s.support += 1;
        }
    }
    out
}

/// The six-transaction database used throughout the documentation and
/// tests. Items A..E carry labels 1..5; utilities are quantity times unit
/// profit with profits A=5, B=-3, C=-2, D=6, E=10.
pub fn running_example() -> UtilityDatabase {
    const A: Label = 1;
    const B: Label = 2;
    const C: Label = 3;
    const D: Label = 4;
    const E: Label = 5;
    UtilityDatabase::from_labelled([
        vec![(A, 5), (D, 12), (E, 10)],
        vec![(B, -3), (C, -4), (D, 36)],
        vec![(A, 15), (D, 30)],
        vec![(A, 5), (E, 10)],
        vec![(B, -3), (C, -4), (D, 36)],
        vec![(B, -3), (C, -2), (E, 20)],
    ])
    .expect("running example is valid")
}
