//! Named knots with braid words, checked against their determinants on load.

use crate::braid::{parse_braid, BraidError, BraidWord};
use crate::invariants::{determinant, InvariantError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUILTIN: &str = include_str!("../data/knots.csv");

/// Khovanov ranks shipped with the crate for the table's knots.
pub const BUILTIN_KHOVANOV_RANKS: &str = include_str!("../data/khovanov_ranks.csv");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("knot table row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("knot table entry {name}: {source}")]
    Braid { name: String, source: BraidError },
    #[error("knot table entry {name}: {source}")]
    Invariant { name: String, source: InvariantError },
    #[error("knot table entry {name}: determinant {found}, table says {expected}")]
    DeterminantMismatch { name: String, found: u64, expected: u64 },
    #[error("unknown knot name {0:?}")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotEntry {
    pub name: String,
    pub word: BraidWord,
    pub determinant: u64,
}

#[derive(Debug, Clone)]
pub struct KnotTable {
    pub entries: Vec<KnotEntry>,
}

impl KnotTable {
    /// Parses "name,strands,word,determinant" rows and validates each entry:
    /// the closure must be a knot and its determinant must match.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let row = i + 1;
            let rec = rec.map_err(|e| TableError::Row { row, msg: e.to_string() })?;
            if rec.len() != 4 {
                return Err(TableError::Row {
                    row,
                    msg: format!("expected 4 fields, got {}", rec.len()),
                });
            }
            let name = rec[0].to_string();
            let word = parse_braid(&format!("{}: {}", &rec[1], &rec[2]))
                .map_err(|source| TableError::Braid { name: name.clone(), source })?;
            let expected: u64 = rec[3].parse().map_err(|_| TableError::Row {
                row,
                msg: format!("bad determinant {:?}", &rec[3]),
            })?;
            let found = determinant(&word)
                .map_err(|source| TableError::Invariant { name: name.clone(), source })?;
            if found != expected {
                return Err(TableError::DeterminantMismatch { name, found, expected });
            }
            entries.push(KnotEntry { name, word, determinant: expected });
        }
        Ok(Self { entries })
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in knot table is valid")
    }

    pub fn get(&self, name: &str) -> Result<&KnotEntry, TableError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| TableError::Unknown(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::alexander;
    use crate::laurent::LaurentPoly;

    #[test]
    fn builtin_table_validates() {
        let t = KnotTable::builtin();
        assert_eq!(t.entries.len(), 8);
        for e in &t.entries {
            assert_eq!(e.word.closure_components(), 1, "{}", e.name);
            assert_eq!(e.determinant % 2, 1);
        }
        assert_eq!(t.get("6_1").unwrap().determinant, 9);
        assert!(t.get("8_19").is_err());
    }

    #[test]
    fn nine_forty_two_alexander() {
        let t = KnotTable::builtin();
        let a = alexander(&t.get("9_42").unwrap().word).unwrap();
        assert_eq!(a, LaurentPoly::new(0, vec![-1, 2, -1, 2, -1]));
    }

    #[test]
    fn bad_rows_rejected() {
        assert!(matches!(
            KnotTable::parse("x,2,1 1 1,5\n"),
            Err(TableError::DeterminantMismatch { found: 3, .. })
        ));
        assert!(matches!(KnotTable::parse("x,2,1 1,1\n"), Err(TableError::Invariant { .. })));
        assert!(matches!(KnotTable::parse("x,2,1 3,1\n"), Err(TableError::Braid { .. })));
        assert!(matches!(KnotTable::parse("x,2\n"), Err(TableError::Row { .. })));
    }
}
