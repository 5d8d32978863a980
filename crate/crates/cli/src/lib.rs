//! Command-line front end: mine, oracle, verify, bench and gen.
//!
//! Exit codes: 0 success, 1 data error, 2 usage error, 3 verification
//! failure.

pub mod args;
pub mod bench;
pub mod report;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;
use topk_hui::dataset::UtilityDatabase;
use topk_hui::{
    enumerate_topk, generate_synthetic, mine, parse_spmf, write_spmf, MinerConfig, SyntheticParams, TuCheck,
};

use args::{
    BenchArgs, Cli, Command, Format, GenArgs, InputArgs, MineArgs, OracleArgs, SyntheticArgs, TableFormat, VerifyArgs,
};
use report::{BenchReport, ConfigEcho, DatasetInfo, RunReport, SCHEMA_VERSION};
use verify::{Miner, VerifySummary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

pub struct Loaded {
    pub db: UtilityDatabase,
    pub info: DatasetInfo,
}

pub fn load(path: &Path, lenient: bool) -> Result<Loaded, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let check = if lenient { TuCheck::Lenient } else { TuCheck::Strict };
    let parsed = parse_spmf(text, check).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        log::warn!(
            "line {}: declared TU {} but utilities sum to {}",
            w.line,
            w.declared,
            w.actual
        );
    }
    let info = DatasetInfo::new(Some(path.display().to_string()), &bytes, &parsed.db);
    Ok(Loaded { db: parsed.db, info })
}

fn synthetic_params(a: &SyntheticArgs) -> SyntheticParams {
    SyntheticParams {
        n_transactions: a.transactions,
        n_items: a.items,
        avg_len: a.avg_len,
        utility_range: (a.min_utility, a.max_utility),
        negative_fraction: a.negative_fraction,
        seed: a.seed,
    }
}

/// Runs a parsed command, writing its output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    run_with_miner(cli, out, &mine)
}

/// As [`run`], with the miner used by `verify` replaced.
pub fn run_with_miner(cli: Cli, out: &mut dyn Write, miner: &dyn Miner) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Mine(a) => cmd_mine(a)?,
        Command::Oracle(a) => cmd_oracle(a)?,
        Command::Verify(a) => cmd_verify(a, miner)?,
        Command::Bench(a) => cmd_bench(a)?,
        Command::Gen(a) => cmd_gen(a)?,
    };
    out.write_all(text.as_bytes()).map_err(data)
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
    }
}

fn echo(miner: &str, k: usize, variant: Option<topk_hui::Variant>, input: &InputArgs) -> ConfigEcho {
    ConfigEcho {
        miner: miner.into(),
        k,
        variant,
        lenient: input.lenient,
    }
}

fn cmd_mine(a: MineArgs) -> Result<String, CliError> {
    let loaded = load(&a.input.input, a.input.lenient)?;
    let k = a.k as usize;
    let variant = a.variant.into();
    let r = mine(&loaded.db, &MinerConfig::for_variant(k, variant)).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        config: echo("search", k, Some(variant), &a.input),
        itemsets: report::labelled(&loaded.db, &r.top_k),
        final_min_util: Some(r.final_min_util),
        stats: Some(r.stats),
        dataset: loaded.info,
    };
    Ok(render(&report, a.format))
}

fn cmd_oracle(a: OracleArgs) -> Result<String, CliError> {
    let loaded = load(&a.input.input, a.input.lenient)?;
    let k = a.k as usize;
    let r = enumerate_topk(&loaded.db, k).map_err(data)?;
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        config: echo("oracle", k, None, &a.input),
        itemsets: report::labelled(&loaded.db, &r.top_k),
        final_min_util: None,
        stats: None,
        dataset: loaded.info,
    };
    Ok(render(&report, a.format))
}

fn cmd_verify(a: VerifyArgs, miner: &dyn Miner) -> Result<String, CliError> {
    let ks: Vec<usize> = a.k.iter().map(|&k| k as usize).collect();
    let seeds = a.seeds.unwrap_or(if a.input.is_some() { 0 } else { 200 });
    let mut summary = VerifySummary::default();
    if let Some(path) = &a.input {
        let loaded = load(path, a.lenient)?;
        verify::verify_database(&loaded.db, &path.display().to_string(), &ks, miner, &mut summary).map_err(data)?;
    }
    for seed in a.seed_start..a.seed_start + seeds {
        let db = verify::campaign_database(seed);
        verify::verify_database(&db, &format!("seed {seed}"), &ks, miner, &mut summary).map_err(data)?;
    }
    let line = format!(
        "{} databases, {} runs, {} mismatches",
        summary.databases,
        summary.runs,
        summary.mismatches.len()
    );
    if summary.passed() {
        return Ok(format!("PASS {line}\n"));
    }
    let mut text = String::new();
    for m in &summary.mismatches {
        text += &m.to_string();
    }
    Err(CliError::Verification(format!("{text}FAIL {line}")))
}

fn cmd_bench(a: BenchArgs) -> Result<String, CliError> {
    let (db, info) = match &a.input {
        Some(path) => {
            let l = load(path, a.lenient)?;
            (l.db, l.info)
        }
        None => {
            let params = synthetic_params(&a.synthetic);
            let db = generate_synthetic(&params).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut info = DatasetInfo::new(None, write_spmf(&db).as_bytes(), &db);
            info.generator = Some(params);
            (db, info)
        }
    };
    let threads = bench::threads_from_env().map_err(CliError::Usage)?;
    let ks: Vec<usize> = a.k.iter().map(|&k| k as usize).collect();
    let rows = bench::run_grid(&db, &ks, threads).map_err(data)?;
    let violations = bench::check_invariants(&rows);
    let text = match a.format {
        TableFormat::Csv => {
            let mut s = format!("{}\n", report::BENCH_CSV_HEADER);
            for r in &rows {
                s += &r.to_csv();
                s.push('\n');
            }
            s
        }
        TableFormat::Json => {
            let r = BenchReport {
                schema_version: SCHEMA_VERSION,
                dataset: info,
                threads,
                rows,
            };
            serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
        }
    };
    if violations.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Verification(format!(
            "{text}candidate invariants violated:\n{}",
            violations.join("\n")
        )))
    }
}

fn cmd_gen(a: GenArgs) -> Result<String, CliError> {
    let db = generate_synthetic(&synthetic_params(&a.synthetic)).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = write_spmf(&db);
    match &a.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
