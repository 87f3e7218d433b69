//! Score reports: component scores, per-column breakdowns, diagnostics,
//! and structured warnings. Reports round-trip losslessly through JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::learn::{ModelKind, Task};
use crate::scalar::Scalar;

/// The five component scores and their unified value. `None` marks a
/// component that could not be computed for this table pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentScores<F = f64> {
    pub s_basic: Option<F>,
    pub s_corr: Option<F>,
    pub s_pmse: Option<F>,
    pub s_cr: Option<F>,
    pub s_ml: Option<F>,
    pub tabsyndex: F,
}

impl<F: Scalar> ComponentScores<F> {
    /// Components in fixed order: basic, corr, pmse, coverage, ml.
    pub fn as_array(&self) -> [Option<F>; 5] {
        [self.s_basic, self.s_corr, self.s_pmse, self.s_cr, self.s_ml]
    }

    pub fn computed_count(&self) -> usize {
        self.as_array().iter().filter(|c| c.is_some()).count()
    }
}

/// Machine-readable warning category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningCode {
    ConstantColumn,
    SkippedCategory,
    TargetFallback,
    DegenerateTraining,
    ComponentSkipped,
    UnbalancedSizes,
    CollapseSignature,
    EpochGap,
}

/// One structured notice attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub code: WarningCode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub column: Option<String>,
    pub detail: String,
}

impl Warning {
    pub fn new(code: WarningCode, detail: impl Into<String>) -> Self {
        Warning {
            code,
            column: None,
            detail: detail.into(),
        }
    }

    pub fn for_column(code: WarningCode, column: impl Into<String>, detail: impl Into<String>) -> Self {
        Warning {
            code,
            column: Some(column.into()),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.column {
            Some(c) => write!(f, "[{:?}] column '{}': {}", self.code, c, self.detail),
            None => write!(f, "[{:?}] {}", self.code, self.detail),
        }
    }
}

/// Mean, median, and standard deviation of one continuous column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasicStatTriple<F = f64> {
    pub mean: F,
    pub median: F,
    pub std_dev: F,
}

/// Clipped relative errors of one column, per statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasicColumnErrors<F = f64> {
    pub mean: F,
    pub median: F,
    pub std_dev: F,
}

/// Per-statistic scores plus per-column error detail behind `s_basic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasicBreakdown<F = f64> {
    pub s_mean: F,
    pub s_median: F,
    pub s_std: F,
    pub per_column: BTreeMap<String, BasicColumnErrors<F>>,
}

/// Real and synthetic association matrices, row/column order matching
/// `columns`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationDiagnostics<F = f64> {
    pub columns: Vec<String>,
    pub real: Vec<Vec<F>>,
    pub synth: Vec<Vec<F>>,
}

/// Propensity score internals behind `s_pmse`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmseResult<F = f64> {
    pub pmse: F,
    pub expected_pmse0: F,
    pub ratio: F,
    pub s_pmse: F,
    pub c: F,
    pub k: usize,
    pub n: usize,
}

/// Ratio of one category's representation, after the beta clip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryRatio<F = f64> {
    pub category: String,
    pub real_count: usize,
    pub fake_count: usize,
    pub clipped_ratio: F,
}

/// Per-column coverage scores and per-category diagnostics behind `s_cr`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageBreakdown<F = f64> {
    pub per_column: BTreeMap<String, F>,
    pub per_category: BTreeMap<String, Vec<CategoryRatio<F>>>,
}

/// Real-trained vs synthetic-trained metric pair for one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficacyRow<F = f64> {
    pub model: ModelKind,
    pub metric_real: F,
    pub metric_synth: F,
    pub relative_error: F,
}

/// The learner comparison behind `s_ml`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficacyBreakdown<F = f64> {
    pub task: Task,
    pub target: String,
    /// `macro_f1` for classification, `rmse` for regression.
    pub metric: String,
    pub rows: Vec<EfficacyRow<F>>,
}

/// Echo of the evaluation configuration that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho<F = f64> {
    pub alpha: F,
    pub beta: F,
    pub bins: usize,
    /// Weight order: basic, corr, pmse, coverage, ml.
    pub weights: [F; 5],
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<String>,
    pub ml_train_fraction: F,
}

/// Full evaluation result for one real/synthetic table pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport<F = f64> {
    pub components: ComponentScores<F>,
    pub basic: Option<BasicBreakdown<F>>,
    pub association: Option<AssociationDiagnostics<F>>,
    pub pmse: Option<PmseResult<F>>,
    pub coverage: Option<CoverageBreakdown<F>>,
    pub efficacy: Option<EfficacyBreakdown<F>>,
    pub config: ConfigEcho<F>,
    pub warnings: Vec<Warning>,
}
