//! Column-major typed tables and their schemas.
//!
//! A [`Table`] owns its data as per-column arrays: continuous columns are
//! plain scalar vectors, categorical columns are dictionary-encoded (codes
//! into a per-column category list). Tables are immutable once built, so
//! sharing them across threads is safe.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The two column types the scores distinguish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Continuous,
    Categorical,
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnKind::Continuous => write!(f, "continuous"),
            ColumnKind::Categorical => write!(f, "categorical"),
        }
    }
}

/// Name, kind, and target designation of one column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub name: String,
    pub kind: ColumnKind,
    #[serde(default)]
    pub is_target: bool,
}

impl ColumnSpec {
    pub fn continuous(name: impl Into<String>) -> Self {
        ColumnSpec {
            name: name.into(),
            kind: ColumnKind::Continuous,
            is_target: false,
        }
    }

    pub fn categorical(name: impl Into<String>) -> Self {
        ColumnSpec {
            name: name.into(),
            kind: ColumnKind::Categorical,
            is_target: false,
        }
    }

    pub fn target(mut self) -> Self {
        self.is_target = true;
        self
    }
}

/// Ordered list of column specs; at most one target, names unique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schema {
    pub columns: Vec<ColumnSpec>,
}

impl Schema {
    pub fn new(columns: Vec<ColumnSpec>) -> Self {
        Schema { columns }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Index of the designated target column, if any.
    pub fn target_index(&self) -> Option<usize> {
        self.columns.iter().position(|c| c.is_target)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|c| c.name.as_str())
    }
}

/// Dictionary-encoded categorical column: `codes[i]` indexes `categories`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoricalColumn {
    pub codes: Vec<u32>,
    pub categories: Vec<String>,
}

impl CategoricalColumn {
    /// Build from raw labels, assigning codes in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        let mut categories: Vec<String> = Vec::new();
        let mut codes = Vec::with_capacity(labels.len());
        for label in labels {
            let label = label.as_ref();
            let code = match categories.iter().position(|c| c == label) {
                Some(idx) => idx as u32,
                None => {
                    categories.push(label.to_string());
                    (categories.len() - 1) as u32
                }
            };
            codes.push(code);
        }
        CategoricalColumn { codes, categories }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn label(&self, code: u32) -> &str {
        &self.categories[code as usize]
    }

    /// Occurrences of each category, indexed by code.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.categories.len()];
        for &code in &self.codes {
            counts[code as usize] += 1;
        }
        counts
    }
}

/// One column of data.
#[derive(Debug, Clone, PartialEq)]
pub enum Column<F = f64> {
    Continuous(Vec<F>),
    Categorical(CategoricalColumn),
}

impl<F: Scalar> Column<F> {
    pub fn len(&self) -> usize {
        match self {
            Column::Continuous(v) => v.len(),
            Column::Categorical(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ColumnKind {
        match self {
            Column::Continuous(_) => ColumnKind::Continuous,
            Column::Categorical(_) => ColumnKind::Categorical,
        }
    }
}

/// A broken table invariant, naming the offending column and rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub column: Option<String>,
    pub rule: String,
}

impl Violation {
    fn new(column: Option<&str>, rule: impl Into<String>) -> Self {
        Violation {
            column: column.map(str::to_string),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.column {
            Some(c) => write!(f, "column '{}': {}", c, self.rule),
            None => write!(f, "{}", self.rule),
        }
    }
}

/// Column-major typed dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<F = f64> {
    schema: Schema,
    columns: Vec<Column<F>>,
    row_count: usize,
}

impl<F: Scalar> Table<F> {
    /// Build a table, rejecting any invariant violation.
    pub fn new(schema: Schema, columns: Vec<Column<F>>, row_count: usize) -> Result<Self> {
        let table = Self::new_unchecked(schema, columns, row_count);
        let violations = table.validate();
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(Error::InvalidTable(violations))
        }
    }

    /// Build a validated table whose row count is taken from the first
    /// column (zero if there are none).
    pub fn from_columns(schema: Schema, columns: Vec<Column<F>>) -> Result<Self> {
        let row_count = columns.first().map_or(0, Column::len);
        Self::new(schema, columns, row_count)
    }

    /// Build without validation. Intended for diagnostics and tests;
    /// downstream scores assume [`Table::validate`] would return empty.
    pub fn new_unchecked(schema: Schema, columns: Vec<Column<F>>, row_count: usize) -> Self {
        Table {
            schema,
            columns,
            row_count,
        }
    }

    /// Check every table invariant; empty result means the table is sound.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();

        let mut seen = BTreeSet::new();
        for spec in &self.schema.columns {
            if !seen.insert(spec.name.as_str()) {
                violations.push(Violation::new(
                    Some(&spec.name),
                    "duplicate column name in schema",
                ));
            }
        }
        let target_count = self.schema.columns.iter().filter(|c| c.is_target).count();
        if target_count > 1 {
            violations.push(Violation::new(
                None,
                format!("{target_count} columns marked as target; at most one allowed"),
            ));
        }
        if self.columns.len() != self.schema.len() {
            violations.push(Violation::new(
                None,
                format!(
                    "schema lists {} columns but table stores {}",
                    self.schema.len(),
                    self.columns.len()
                ),
            ));
        }

        for (spec, column) in self.schema.columns.iter().zip(&self.columns) {
            if column.len() != self.row_count {
                violations.push(Violation::new(
                    Some(&spec.name),
                    format!(
                        "column length {} does not match row count {}",
                        column.len(),
                        self.row_count
                    ),
                ));
            }
            if column.kind() != spec.kind {
                violations.push(Violation::new(
                    Some(&spec.name),
                    format!("schema kind {} but data is {}", spec.kind, column.kind()),
                ));
            }
            match column {
                Column::Continuous(values) => {
                    if values.iter().any(|v| !v.is_finite()) {
                        violations.push(Violation::new(
                            Some(&spec.name),
                            "continuous column contains a non-finite value",
                        ));
                    }
                }
                Column::Categorical(cat) => {
                    let n_categories = cat.categories.len() as u32;
                    if cat.codes.iter().any(|&code| code >= n_categories) {
                        violations.push(Violation::new(
                            Some(&spec.name),
                            "categorical code outside the category dictionary",
                        ));
                    }
                }
            }
        }

        violations
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, index: usize) -> &Column<F> {
        &self.columns[index]
    }

    pub fn columns(&self) -> &[Column<F>] {
        &self.columns
    }

    pub fn continuous(&self, index: usize) -> Option<&[F]> {
        match &self.columns[index] {
            Column::Continuous(v) => Some(v),
            Column::Categorical(_) => None,
        }
    }

    pub fn categorical(&self, index: usize) -> Option<&CategoricalColumn> {
        match &self.columns[index] {
            Column::Categorical(c) => Some(c),
            Column::Continuous(_) => None,
        }
    }

    /// Extract the given rows (in order, duplicates allowed) into a new table.
    pub fn take_rows(&self, rows: &[usize]) -> Table<F> {
        let columns = self
            .columns
            .iter()
            .map(|column| match column {
                Column::Continuous(values) => {
                    Column::Continuous(rows.iter().map(|&r| values[r]).collect())
                }
                Column::Categorical(cat) => Column::Categorical(CategoricalColumn {
                    codes: rows.iter().map(|&r| cat.codes[r]).collect(),
                    categories: cat.categories.clone(),
                }),
            })
            .collect();
        Table {
            schema: self.schema.clone(),
            columns,
            row_count: rows.len(),
        }
    }

    /// Stack another table with an identical schema below this one.
    pub fn concat(&self, other: &Table<F>) -> Result<Table<F>> {
        ensure_schemas_match(self, other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| match (a, b) {
                (Column::Continuous(x), Column::Continuous(y)) => {
                    let mut merged = x.clone();
                    merged.extend_from_slice(y);
                    Column::Continuous(merged)
                }
                (Column::Categorical(x), Column::Categorical(y)) => {
                    // Remap the second table's codes into a merged dictionary.
                    let mut categories = x.categories.clone();
                    let mut codes = x.codes.clone();
                    let remap: Vec<u32> = y
                        .categories
                        .iter()
                        .map(|label| match categories.iter().position(|c| c == label) {
                            Some(idx) => idx as u32,
                            None => {
                                categories.push(label.clone());
                                (categories.len() - 1) as u32
                            }
                        })
                        .collect();
                    codes.extend(y.codes.iter().map(|&code| remap[code as usize]));
                    Column::Categorical(CategoricalColumn { codes, categories })
                }
                _ => unreachable!("schema match guarantees aligned kinds"),
            })
            .collect();
        Ok(Table {
            schema: self.schema.clone(),
            columns,
            row_count: self.row_count + other.row_count,
        })
    }
}

/// Error unless both tables share column names, kinds, and order.
pub fn ensure_schemas_match<F: Scalar>(a: &Table<F>, b: &Table<F>) -> Result<()> {
    if a.schema.len() != b.schema.len() {
        return Err(Error::SchemaMismatch(format!(
            "column counts differ: {} vs {}",
            a.schema.len(),
            b.schema.len()
        )));
    }
    for (sa, sb) in a.schema.columns.iter().zip(&b.schema.columns) {
        if sa.name != sb.name {
            return Err(Error::SchemaMismatch(format!(
                "column name '{}' vs '{}'",
                sa.name, sb.name
            )));
        }
        if sa.kind != sb.kind {
            return Err(Error::SchemaMismatch(format!(
                "column '{}' kind {} vs {}",
                sa.name, sa.kind, sb.kind
            )));
        }
    }
    Ok(())
}
