//! Joint outcome counts:
//! `{"dim": d, "bases": [label, ...], "counts": {label: d x d integer matrix}}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use swcert_core::MeasuredCounts;

use crate::output::read_json;
use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsFile {
    pub dim: usize,
    pub bases: Vec<String>,
    /// Row `a` holds the counts of outcome pairs `(a, b)`.
    pub counts: BTreeMap<String, Vec<Vec<i64>>>,
}

impl CountsFile {
    pub fn from_counts(c: &MeasuredCounts) -> Self {
        let d = c.dim();
        let counts = c
            .labels()
            .iter()
            .enumerate()
            .map(|(z, l)| {
                let rows = c
                    .table(z)
                    .chunks(d)
                    .map(|r| r.iter().map(|&n| n as i64).collect())
                    .collect();
                (l.clone(), rows)
            })
            .collect();
        CountsFile {
            dim: d,
            bases: c.labels().to_vec(),
            counts,
        }
    }

    pub fn validate(&self) -> CliResult<MeasuredCounts> {
        let d = self.dim;
        if d < 2 {
            return Err(CliError::SchemaViolation(format!("dim {d} < 2")));
        }
        if let Some(extra) = self.counts.keys().find(|k| !self.bases.contains(k)) {
            return Err(CliError::SchemaViolation(format!(
                "counts for unlisted basis '{extra}'"
            )));
        }
        let mut tables = Vec::with_capacity(self.bases.len());
        for label in &self.bases {
            let rows = self.counts.get(label).ok_or_else(|| {
                CliError::SchemaViolation(format!("no counts for basis '{label}'"))
            })?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
                return Err(CliError::SchemaViolation(format!(
                    "table '{label}' is {}x{cols}, expected {d}x{d}",
                    rows.len()
                )));
            }
            let mut table = Vec::with_capacity(d * d);
            for &n in rows.iter().flatten() {
                if n < 0 {
                    return Err(CliError::NegativeCount {
                        label: label.clone(),
                        value: n,
                    });
                }
                table.push(n as u64);
            }
            tables.push(table);
        }
        MeasuredCounts::new(d, self.bases.clone(), tables)
            .map_err(|e| CliError::SchemaViolation(e.to_string()))
    }
}

pub fn load_counts(path: &Path) -> CliResult<MeasuredCounts> {
    read_json::<CountsFile>(path)?.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(rows: Vec<Vec<i64>>) -> CountsFile {
        CountsFile {
            dim: 3,
            bases: vec!["x".into()],
            counts: [("x".to_string(), rows)].into(),
        }
    }

    #[test]
    fn valid_and_round_trip() {
        let f = file(vec![vec![5, 0, 1], vec![0, 4, 0], vec![1, 0, 6]]);
        let c = f.validate().unwrap();
        assert_eq!(c.count(0, 2, 2), 6);
        assert_eq!(CountsFile::from_counts(&c), f);
    }

    #[test]
    fn schema_errors() {
        let tall = file(vec![vec![1, 0, 0]; 4]);
        assert!(matches!(tall.validate(), Err(CliError::SchemaViolation(_))));
        let neg = file(vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]);
        assert!(matches!(
            neg.validate(),
            Err(CliError::NegativeCount { value: -1, .. })
        ));
        let mut missing = file(vec![vec![1, 0, 0]; 3]);
        missing.bases.push("y".into());
        assert!(matches!(
            missing.validate(),
            Err(CliError::SchemaViolation(_))
        ));
        let mut extra = file(vec![vec![1, 0, 0]; 3]);
        extra.counts.insert("z".into(), vec![vec![0; 3]; 3]);
        assert!(matches!(
            extra.validate(),
            Err(CliError::SchemaViolation(_))
        ));
    }
}
