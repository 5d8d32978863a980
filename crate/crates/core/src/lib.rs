//! Exact top-k high-utility itemset mining over databases whose items may
//! carry positive or negative utilities.
//!
//! The search is a depth-first enumeration over a fixed item order
//! (positive items first, each class by ascending RTWU). It works on
//! offset-based projections of the database, merges identical projected
//! transactions, prunes with the RLU/RSU upper bounds and raises the
//! `minUtil` threshold from real item utilities and from the result queue.
//!
//! ```
//! use topk_hui::{mine, running_example, MinerConfig};
//!
//! let db = running_example();
//! let result = mine(&db, &MinerConfig::new(5)).unwrap();
//! assert_eq!(result.top_k[0].utility, 114);
//! assert_eq!(result.final_min_util, 58);
//! ```

pub mod bounds;
pub mod dataset;
pub mod miner;
pub mod oracle;
pub mod order;
pub mod projection;
pub mod topk;

pub use dataset::{
    compute_item_summaries, generate_synthetic, parse_spmf, read_spmf, running_example, write_spmf, DatasetError,
    ItemId, ItemSummary, Label, Sign, SyntheticParams, TransactionRecord, TuCheck, Utility, UtilityDatabase,
};
pub use miner::{
    mine, mine_observed, MineError, MineResult, MineStats, MinerConfig, RankedItemset, SearchObserver, Variant,
};
pub use oracle::{enumerate_topk, utility_of, OracleError, OracleResult};
pub use topk::TopKStore;
