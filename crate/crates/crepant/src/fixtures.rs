//! Reference-table fixture records and their file format.
//!
//! Each reference table ships as a plain-text file of pipe-separated records:
//!
//! ```text
//! model | table | dim | cy | expr [| expr]
//! ```
//!
//! Blank lines and `#` comments are skipped. The polynomial fields stay
//! unparsed here (parsing needs a ring); the record parser itself is total
//! and never panics on malformed input. The default set is compiled into the
//! binary; setting the environment variable named by [`FIXTURE_DIR_ENV`]
//! points the loader at a directory with replacement `.records` files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Environment variable overriding the fixture directory.
pub const FIXTURE_DIR_ENV: &str = "CREPANT_FIXTURE_DIR";

/// File names the loader looks for, embedded counterparts included.
const FILES: [(&str, &str); 5] = [
    ("table11.records", include_str!("../data/table11.records")),
    ("table12.records", include_str!("../data/table12.records")),
    ("table13.records", include_str!("../data/table13.records")),
    ("table14.records", include_str!("../data/table14.records")),
    ("table15.records", include_str!("../data/table15.records")),
];

/// Identifier of one reference table (or one component of the Hodge table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Table11,
    Table12,
    Table13,
    Table14,
    Table15H11,
    Table15H21,
    Table15Chi,
}

impl TableId {
    pub fn as_str(self) -> &'static str {
        match self {
            TableId::Table11 => "Table11",
            TableId::Table12 => "Table12",
            TableId::Table13 => "Table13",
            TableId::Table14 => "Table14",
            TableId::Table15H11 => "Table15.h11",
            TableId::Table15H21 => "Table15.h21",
            TableId::Table15Chi => "Table15.chi",
        }
    }

    /// Number of polynomial fields a record of this table carries.
    fn arity(self) -> usize {
        match self {
            TableId::Table11 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "Table11" => Ok(TableId::Table11),
            "Table12" => Ok(TableId::Table12),
            "Table13" => Ok(TableId::Table13),
            "Table14" => Ok(TableId::Table14),
            "Table15.h11" => Ok(TableId::Table15H11),
            "Table15.h21" => Ok(TableId::Table15H21),
            "Table15.chi" => Ok(TableId::Table15Chi),
            _ => Err(()),
        }
    }
}

/// One transcribed table row. `exprs` holds the polynomial texts: a single
/// polynomial for most tables, numerator and denominator for the generating
/// functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRecord {
    pub model: String,
    pub table: TableId,
    pub base_dim: u32,
    pub cy: bool,
    pub exprs: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{file}:{line}: {reason}")]
    Malformed {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("cannot read fixture file {file}: {source}")]
    Io {
        file: String,
        source: std::io::Error,
    },
}

fn malformed(file: &str, line: usize, reason: impl Into<String>) -> FixtureError {
    FixtureError::Malformed {
        file: file.to_string(),
        line,
        reason: reason.into(),
    }
}

/// Parses the records of one fixture file. `file` only labels errors.
pub fn parse_records(text: &str, file: &str) -> Result<Vec<FixtureRecord>, FixtureError> {
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split('|').map(str::trim).collect();
        if fields.len() < 5 {
            return Err(malformed(
                file,
                line,
                format!("expected at least 5 fields, got {}", fields.len()),
            ));
        }
        let model = fields[0];
        if model.is_empty() || !model.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(malformed(file, line, "model key must be alphanumeric"));
        }
        let table: TableId = fields[1]
            .parse()
            .map_err(|()| malformed(file, line, format!("unknown table id `{}`", fields[1])))?;
        let base_dim: u32 = fields[2]
            .parse()
            .map_err(|_| malformed(file, line, format!("bad dimension `{}`", fields[2])))?;
        let cy = match fields[3] {
            "true" => true,
            "false" => false,
            other => {
                return Err(malformed(
                    file,
                    line,
                    format!("cy flag must be true or false, got `{other}`"),
                ))
            }
        };
        let exprs: Vec<String> = fields[4..].iter().map(|s| s.to_string()).collect();
        if exprs.len() != table.arity() {
            return Err(malformed(
                file,
                line,
                format!(
                    "{} expects {} polynomial field(s), got {}",
                    table,
                    table.arity(),
                    exprs.len()
                ),
            ));
        }
        if exprs.iter().any(|e| e.is_empty()) {
            return Err(malformed(file, line, "empty polynomial field"));
        }
        records.push(FixtureRecord {
            model: model.to_string(),
            table,
            base_dim,
            cy,
            exprs,
        });
    }
    Ok(records)
}

/// The full collection of reference records.
#[derive(Debug, Clone)]
pub struct FixtureSet {
    records: Vec<FixtureRecord>,
}

impl FixtureSet {
    /// The records compiled into the binary.
    pub fn embedded() -> Result<Self, FixtureError> {
        let mut records = Vec::new();
        for (name, text) in FILES {
            records.extend(parse_records(text, name)?);
        }
        Ok(FixtureSet { records })
    }

    /// Reads every known `.records` file from a directory.
    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        let mut records = Vec::new();
        for (name, _) in FILES {
            let path = dir.join(name);
            let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io {
                file: path.display().to_string(),
                source,
            })?;
            records.extend(parse_records(&text, name)?);
        }
        Ok(FixtureSet { records })
    }

    /// Honors the directory override from the environment, falling back to
    /// the embedded data.
    pub fn load() -> Result<Self, FixtureError> {
        match std::env::var_os(FIXTURE_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::embedded(),
        }
    }

    pub fn records(&self) -> &[FixtureRecord] {
        &self.records
    }

    /// The unique record for a (model, table) pair, if present.
    pub fn lookup(&self, model: &str, table: TableId) -> Option<&FixtureRecord> {
        self.records
            .iter()
            .find(|r| r.model == model && r.table == table)
    }

    /// Overwrites one record's first expression, for failure-detection tests.
    #[cfg(test)]
    pub(crate) fn corrupt_for_test(&mut self, model: &str, table: TableId, text: &str) {
        let record = self
            .records
            .iter_mut()
            .find(|r| r.model == model && r.table == table)
            .expect("record to corrupt exists");
        record.exprs[0] = text.to_string();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_set_is_complete() {
        let set = FixtureSet::embedded().unwrap();
        // 17 models in each of tables 11-14, three components each in table 15
        assert_eq!(set.records().len(), 17 * 4 + 17 * 3);
        for table in [
            TableId::Table11,
            TableId::Table12,
            TableId::Table13,
            TableId::Table14,
            TableId::Table15H11,
            TableId::Table15H21,
            TableId::Table15Chi,
        ] {
            let count = set.records().iter().filter(|r| r.table == table).count();
            assert_eq!(count, 17, "{table} should cover every model");
        }
        let su2 = set.lookup("SU2", TableId::Table12).unwrap();
        assert_eq!(su2.base_dim, 2);
        assert!(!su2.cy);
        assert_eq!(su2.exprs.len(), 1);
        let genfun = set.lookup("E8", TableId::Table11).unwrap();
        assert_eq!(genfun.exprs.len(), 2);
    }

    #[test]
    fn parses_minimal_record() {
        let records =
            parse_records("# comment\n\nSU2 | Table12 | 2 | false | 12*L\n", "test").unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].model, "SU2");
        assert_eq!(records[0].table, TableId::Table12);
        assert_eq!(records[0].exprs, vec!["12*L".to_string()]);
    }

    #[test]
    fn rejects_malformed_records() {
        let cases = [
            "SU2 | Table12 | 2 | false",              // too few fields
            "SU2 | Table99 | 2 | false | 12*L",       // unknown table
            "SU2 | Table12 | x | false | 12*L",       // bad dimension
            "SU2 | Table12 | 2 | maybe | 12*L",       // bad flag
            "SU-2 | Table12 | 2 | false | 12*L",      // bad key
            "SU2 | Table12 | 2 | false | 12*L | 1",   // wrong arity
            "SU2 | Table11 | 0 | false | 12*L",       // genfun needs two fields
            "SU2 | Table12 | 2 | false | ",           // empty polynomial
        ];
        for case in cases {
            assert!(
                parse_records(case, "test").is_err(),
                "should reject: {case}"
            );
        }
    }

    #[test]
    fn lookup_misses_cleanly() {
        let set = FixtureSet::embedded().unwrap();
        assert!(set.lookup("Nope", TableId::Table12).is_none());
    }
}
