//! Machine-readable output.
//!
//! Itemsets carry raw input labels sorted ascending, so reports from
//! different variants diff cleanly.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use topk_hui::dataset::{Label, Utility, UtilityDatabase};
use topk_hui::{MineStats, RankedItemset, SyntheticParams, Variant};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    /// Input path, or null for generated data.
    pub path: Option<String>,
    /// SHA-256 of the input bytes (of the SPMF rendering for generated data).
    pub sha256: String,
    pub transactions: usize,
    pub items: usize,
    pub generator: Option<SyntheticParams>,
}

impl DatasetInfo {
    pub fn new(path: Option<String>, bytes: &[u8], db: &UtilityDatabase) -> Self {
        Self {
            path,
            sha256: sha256_hex(bytes),
            transactions: db.len(),
            items: db.item_count(),
            generator: None,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    /// `search` or `oracle`.
    pub miner: String,
    pub k: usize,
    pub variant: Option<Variant>,
    pub lenient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledItemset {
    pub items: Vec<Label>,
    pub utility: Utility,
}

pub fn labelled(db: &UtilityDatabase, top_k: &[RankedItemset]) -> Vec<LabelledItemset> {
    top_k
        .iter()
        .map(|e| {
            let mut items: Vec<Label> = e.items.iter().map(|&i| db.label(i)).collect();
            items.sort_unstable();
            LabelledItemset {
                items,
                utility: e.utility,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub dataset: DatasetInfo,
    pub config: ConfigEcho,
    pub itemsets: Vec<LabelledItemset>,
    /// Absent for the oracle.
    pub final_min_util: Option<Utility>,
    pub stats: Option<MineStats>,
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.itemsets {
            out += &format!("{} #UTIL: {}\n", join(&e.items), e.utility);
        }
        if let Some(m) = self.final_min_util {
            out += &format!("# final_min_util: {m}\n");
        }
        if let Some(s) = &self.stats {
            out += &format!(
                "# candidates: {} projections: {} merges: {} peak_entries: {} runtime_ms: {:.3}\n",
                s.candidates, s.projections, s.merges, s.peak_entries, s.runtime_ms
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,items,utility\n");
        for (r, e) in self.itemsets.iter().enumerate() {
            out += &format!("{},{},{}\n", r + 1, join(&e.items), e.utility);
        }
        out
    }
}

fn join(items: &[Label]) -> String {
    items.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// One bench row: a variant at one k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub variant: Variant,
    pub k: usize,
    pub itemsets: usize,
    pub final_min_util: Utility,
    pub candidates: u64,
    pub projections: u64,
    pub merges: u64,
    pub peak_entries: u64,
    pub peak_merged_cells: u64,
    pub runtime_ms: f64,
}

pub const BENCH_CSV_HEADER: &str =
    "variant,k,itemsets,final_min_util,candidates,projections,merges,peak_entries,peak_merged_cells,runtime_ms";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3}",
            self.variant,
            self.k,
            self.itemsets,
            self.final_min_util,
            self.candidates,
            self.projections,
            self.merges,
            self.peak_entries,
            self.peak_merged_cells,
            self.runtime_ms
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub dataset: DatasetInfo,
    pub threads: usize,
    pub rows: Vec<BenchRow>,
}
