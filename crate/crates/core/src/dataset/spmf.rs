//! SPMF utility format: one transaction per line, `i1 i2 … im:TU:u1 u2 … um`.
//! Lines starting with `#` or `@` are comments/metadata.

use std::fmt::Write as _;
use std::io::BufRead;

use super::{DatasetError, Label, Utility, UtilityDatabase};

/// How a declared TU field that disagrees with the item utilities is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TuCheck {
    /// Reject the file.
    #[default]
    Strict,
    /// Recompute the TU from the items and record a warning.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub declared: Utility,
    pub actual: Utility,
}

#[derive(Debug)]
pub struct ParsedDatabase {
    pub db: UtilityDatabase,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_spmf(text: &str, check: TuCheck) -> Result<ParsedDatabase, DatasetError> {
    read_spmf(text.as_bytes(), check)
}

pub fn read_spmf<R: BufRead>(reader: R, check: TuCheck) -> Result<ParsedDatabase, DatasetError> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut warnings = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('@') {
            continue;
        }
        let (row, declared) = parse_line(trimmed, lineno)?;
        let actual: Utility = row.iter().map(|&(_, u)| u).sum();
        if declared != actual {
            match check {
                TuCheck::Strict => {
                    return Err(DatasetError::TuMismatch {
                        line: lineno,
                        declared,
                        actual,
                    })
                }
                TuCheck::Lenient => {
                    log::warn!("line {lineno}: declared TU {declared} differs from item sum {actual}; using {actual}");
                    warnings.push(ParseWarning {
                        line: lineno,
                        declared,
                        actual,
                    });
                }
            }
        }
        rows.push(row);
        lines.push(lineno);
    }
    let db = UtilityDatabase::build(rows, &lines)?;
    Ok(ParsedDatabase { db, warnings })
}

fn parse_line(line: &str, lineno: usize) -> Result<(Vec<(Label, Utility)>, Utility), DatasetError> {
    let malformed = |reason: String| DatasetError::MalformedLine { line: lineno, reason };
    let fields: Vec<&str> = line.split(':').collect();
    if fields.len() != 3 {
        return Err(malformed(format!(
            "expected 3 ':'-separated fields, found {}",
            fields.len()
        )));
    }
    let labels = fields[0]
        .split_whitespace()
        .map(|s| {
            s.parse::<Label>()
                .map_err(|_| malformed(format!("bad item label {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let declared = fields[1]
        .trim()
        .parse::<Utility>()
        .map_err(|_| malformed(format!("bad transaction utility {:?}", fields[1].trim())))?;
    let utils = fields[2]
        .split_whitespace()
        .map(|s| {
            s.parse::<Utility>()
                .map_err(|_| malformed(format!("bad utility {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if labels.len() != utils.len() {
        return Err(malformed(format!(
            "{} items but {} utilities",
            labels.len(),
            utils.len()
        )));
    }
    if labels.is_empty() {
        return Err(malformed("transaction has no items".into()));
    }
    Ok((labels.into_iter().zip(utils).collect(), declared))
}

/// Serializes `db` in SPMF utility format, one line per transaction with
/// items in the database's item order.
pub fn write_spmf(db: &UtilityDatabase) -> String {
    let mut out = String::new();
    for t in db.transactions() {
        let labels: Vec<String> = t.items.iter().map(|&(i, _)| db.label(i).to_string()).collect();
        let utils: Vec<String> = t.items.iter().map(|&(_, u)| u.to_string()).collect();
        let _ = writeln!(out, "{}:{}:{}", labels.join(" "), t.tu, utils.join(" "));
    }
    out
}
