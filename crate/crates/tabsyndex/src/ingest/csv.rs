//! CSV parsing with schema inference. Columns whose cells all parse as
//! numbers become continuous unless their distinct-value count is at or
//! below the categorical threshold; everything else is categorical. Rows
//! with empty cells, and non-finite cells in numeric columns, are rejected.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::{CategoricalColumn, Column, ColumnKind, ColumnSpec, Schema, Table};

/// Distinct-value bound at or below which a numeric column is treated as
/// categorical.
pub const DEFAULT_CATEGORICAL_THRESHOLD: usize = 20;

/// Per-column kind override.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnOverride {
    pub kind: ColumnKind,
}

/// Parsing configuration: explicit column kinds, the target column, and the
/// categorical inference threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaConfig {
    #[serde(default)]
    pub columns: std::collections::BTreeMap<String, ColumnOverride>,
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default = "default_threshold")]
    pub categorical_threshold: usize,
}

fn default_threshold() -> usize {
    DEFAULT_CATEGORICAL_THRESHOLD
}

impl Default for SchemaConfig {
    fn default() -> Self {
        SchemaConfig {
            columns: Default::default(),
            target: None,
            categorical_threshold: DEFAULT_CATEGORICAL_THRESHOLD,
        }
    }
}

/// Schema overrides pinning every column to `table`'s resolved kind.
/// Parsing another file under this config cannot flip a column's kind,
/// whatever its values look like; a low-cardinality synthetic dump must
/// still compare against the real table column for column.
pub fn pin_schema<F: Scalar>(table: &Table<F>) -> SchemaConfig {
    let mut config = SchemaConfig::default();
    for spec in &table.schema().columns {
        config
            .columns
            .insert(spec.name.clone(), ColumnOverride { kind: spec.kind });
    }
    config
}

impl SchemaConfig {
    /// Sets the target column, consuming self for builder-style use.
    pub fn with_target(mut self, target: impl Into<String>) -> Self {
        self.target = Some(target.into());
        self
    }

    /// Parses a config from TOML or JSON; content starting with `{` is
    /// treated as JSON.
    pub fn from_str_detect(text: &str) -> Result<Self> {
        let config: SchemaConfig = if text.trim_start().starts_with('{') {
            serde_json::from_str(text)
                .map_err(|e| Error::Config(format!("schema config JSON: {e}")))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(format!("schema config TOML: {e}")))?
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_str_detect(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.categorical_threshold < 2 {
            return Err(Error::Config(format!(
                "categorical_threshold must be at least 2, got {}",
                self.categorical_threshold
            )));
        }
        Ok(())
    }
}

/// Reads a headered CSV into a typed [`Table`]. Row numbers in errors count
/// data rows from 1; `line` in parse errors counts physical file lines.
pub fn parse_csv<F: Scalar, R: Read>(reader: R, config: &SchemaConfig) -> Result<Table<F>> {
    config.validate()?;
    let mut csv_reader = ::csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers: Vec<String> = csv_reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() {
        return Err(Error::CsvParse {
            line: 1,
            message: "empty header row".to_string(),
        });
    }
    for name in config.columns.keys() {
        if !headers.iter().any(|h| h == name) {
            return Err(Error::Config(format!(
                "schema override names unknown column '{name}'"
            )));
        }
    }
    if let Some(target) = &config.target {
        if !headers.iter().any(|h| h == target) {
            return Err(Error::Config(format!(
                "target column '{target}' not present in header"
            )));
        }
    }

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
    for (row_idx, record) in csv_reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        if record.len() != headers.len() {
            return Err(Error::CsvParse {
                line: row_idx + 2,
                message: format!(
                    "expected {} fields, found {}",
                    headers.len(),
                    record.len()
                ),
            });
        }
        for (col, cell) in record.iter().enumerate() {
            let cell = cell.trim();
            if cell.is_empty() {
                return Err(Error::MissingValue {
                    row: row_idx + 1,
                    column: headers[col].clone(),
                });
            }
            cells[col].push(cell.to_string());
        }
    }

    let mut specs = Vec::with_capacity(headers.len());
    let mut columns = Vec::with_capacity(headers.len());
    for (name, raw) in headers.iter().zip(cells) {
        let kind = resolve_kind(name, &raw, config)?;
        match kind {
            ColumnKind::Continuous => {
                let mut values = Vec::with_capacity(raw.len());
                for (i, cell) in raw.iter().enumerate() {
                    let value: f64 = cell.parse().map_err(|_| Error::CsvParse {
                        line: i + 2,
                        message: format!("column '{name}': cannot parse '{cell}' as a number"),
                    })?;
                    if !value.is_finite() {
                        return Err(Error::NonFinite {
                            row: i + 1,
                            column: name.clone(),
                        });
                    }
                    values.push(F::c(value));
                }
                specs.push(ColumnSpec::continuous(name));
                columns.push(Column::Continuous(values));
            }
            ColumnKind::Categorical => {
                specs.push(ColumnSpec::categorical(name));
                columns.push(Column::Categorical(CategoricalColumn::from_labels(&raw)));
            }
        }
    }
    if let Some(target) = &config.target {
        for spec in specs.iter_mut() {
            spec.is_target = spec.name == *target;
        }
    }
    Table::from_columns(Schema::new(specs), columns)
}

/// Convenience wrapper over [`parse_csv`] for a file path.
pub fn read_csv_path<F: Scalar>(path: &Path, config: &SchemaConfig) -> Result<Table<F>> {
    let file = fs::File::open(path)?;
    parse_csv(file, config)
}

fn resolve_kind(name: &str, raw: &[String], config: &SchemaConfig) -> Result<ColumnKind> {
    if let Some(over) = config.columns.get(name) {
        return Ok(over.kind);
    }
    let mut parsed = Vec::with_capacity(raw.len());
    for cell in raw {
        match cell.parse::<f64>() {
            Ok(v) => parsed.push(v),
            Err(_) => return Ok(ColumnKind::Categorical),
        }
    }
    for (i, v) in parsed.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                row: i + 1,
                column: name.to_string(),
            });
        }
    }
    // Distinct count uses parsed values, so "1" and "1.0" coincide.
    let distinct: BTreeSet<u64> = parsed.iter().map(|v| v.to_bits()).collect();
    if distinct.len() <= config.categorical_threshold {
        Ok(ColumnKind::Categorical)
    } else {
        Ok(ColumnKind::Continuous)
    }
}

fn csv_error(err: ::csv::Error) -> Error {
    let line = match err.position() {
        Some(pos) => pos.line() as usize,
        None => 0,
    };
    Error::CsvParse {
        line,
        message: err.to_string(),
    }
}
