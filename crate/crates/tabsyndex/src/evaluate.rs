//! End-to-end evaluation of one real/synthetic table pair: runs the five
//! component scores, folds their warnings into one list, and aggregates
//! the unified TabSynDex value into a [`ScoreReport`].

use serde::{Deserialize, Serialize};

use crate::aggregate::{aggregate, WeightConfig};
use crate::error::{Error, Result};
use crate::ingest::{split, SplitSpec};
use crate::report::{ComponentScores, ConfigEcho, ScoreReport, Warning, WarningCode};
use crate::scalar::Scalar;
use crate::score::{
    basic_score, correlation_score, coverage_score, ml_efficacy, s_pmse_index, BinSpec,
};
use crate::table::{ensure_schemas_match, Schema, Table};

/// S_corr below this, together with [`COLLAPSE_COVERAGE_THRESHOLD`], marks
/// a collapse-like pair: associations gone and support concentrated.
pub const COLLAPSE_CORR_THRESHOLD: f64 = 0.05;

/// S_cr threshold paired with [`COLLAPSE_CORR_THRESHOLD`].
pub const COLLAPSE_COVERAGE_THRESHOLD: f64 = 0.2;

/// Everything one evaluation needs beyond the two tables. Defaults give
/// the vanilla study: alpha 1.2, beta 2, 20 bins, equal weights, seed 42.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Base of the pMSE exponential; must exceed 1.
    pub alpha: f64,
    /// Per-category coverage ratio clip; must be at least 1.
    pub beta: f64,
    /// Histogram bins for continuous coverage.
    pub bins: usize,
    pub weights: WeightConfig,
    pub seed: u64,
    /// Target column for ML efficacy; falls back to the schema's flagged
    /// target, then to the last column.
    pub target: Option<String>,
    /// Fraction of each table used to train efficacy models.
    pub ml_train_fraction: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            alpha: 1.2,
            beta: 2.0,
            bins: 20,
            weights: WeightConfig::default(),
            seed: 42,
            target: None,
            ml_train_fraction: 0.75,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 1.0) {
            return Err(Error::InvalidArgument {
                name: "alpha".to_string(),
                message: format!("must be greater than 1, got {}", self.alpha),
            });
        }
        if !(self.beta.is_finite() && self.beta >= 1.0) {
            return Err(Error::InvalidArgument {
                name: "beta".to_string(),
                message: format!("must be at least 1, got {}", self.beta),
            });
        }
        BinSpec::new(self.bins)?;
        if !(self.ml_train_fraction > 0.0 && self.ml_train_fraction < 1.0) {
            return Err(Error::InvalidArgument {
                name: "ml_train_fraction".to_string(),
                message: format!("must lie in (0, 1), got {}", self.ml_train_fraction),
            });
        }
        self.weights.validate()
    }

    pub(crate) fn echo<F: Scalar>(&self, target: Option<String>) -> ConfigEcho<F> {
        ConfigEcho {
            alpha: F::c(self.alpha),
            beta: F::c(self.beta),
            bins: self.bins,
            weights: self.weights.weights.map(F::c),
            seed: self.seed,
            target,
            ml_train_fraction: F::c(self.ml_train_fraction),
        }
    }
}

/// Picks the efficacy target: the explicit request, else the schema's
/// flagged target, else the last column (with a warning).
fn resolve_target(
    schema: &Schema,
    requested: Option<&str>,
    warnings: &mut Vec<Warning>,
) -> Result<String> {
    if let Some(name) = requested {
        if schema.index_of(name).is_none() {
            return Err(Error::InvalidArgument {
                name: "target".to_string(),
                message: format!("column '{name}' not found"),
            });
        }
        return Ok(name.to_string());
    }
    if let Some(index) = schema.target_index() {
        return Ok(schema.columns[index].name.clone());
    }
    let last = schema
        .columns
        .last()
        .ok_or_else(|| Error::InsufficientData("table has no columns".to_string()))?;
    warnings.push(Warning::for_column(
        WarningCode::TargetFallback,
        last.name.clone(),
        "no target configured; using the last column",
    ));
    Ok(last.name.clone())
}

fn skip(component: &str, err: &Error, warnings: &mut Vec<Warning>) {
    warnings.push(Warning::new(
        WarningCode::ComponentSkipped,
        format!("{component} not computed: {err}"),
    ));
}

/// Computes all five component scores of `synth` against `real` and their
/// weighted aggregate. A component whose preconditions fail is reported as
/// not computed (with a warning) rather than aborting the evaluation; the
/// whole call errors only when no positively weighted component survives.
pub fn evaluate<F: Scalar>(
    real: &Table<F>,
    synth: &Table<F>,
    config: &EvalConfig,
) -> Result<ScoreReport<F>> {
    config.validate()?;
    ensure_schemas_match(real, synth)?;
    if real.row_count() == 0 || synth.row_count() == 0 {
        return Err(Error::InsufficientData(
            "evaluation needs nonempty real and synthetic tables".to_string(),
        ));
    }

    let mut warnings = Vec::new();
    if real.row_count() != synth.row_count() {
        warnings.push(Warning::new(
            WarningCode::UnbalancedSizes,
            format!(
                "real table has {} rows, synthetic has {}",
                real.row_count(),
                synth.row_count()
            ),
        ));
    }

    let (s_basic, basic) = match basic_score(real, synth) {
        Ok((score, breakdown)) => (Some(score), Some(breakdown)),
        Err(err) => {
            skip("basic statistics", &err, &mut warnings);
            (None, None)
        }
    };

    let (s_corr, association) = match correlation_score(real, synth) {
        Ok((score, diagnostics, mut component_warnings)) => {
            warnings.append(&mut component_warnings);
            (Some(score), Some(diagnostics))
        }
        Err(err) => {
            skip("association", &err, &mut warnings);
            (None, None)
        }
    };

    let (s_pmse, pmse) = match s_pmse_index(real, synth, F::c(config.alpha)) {
        Ok(result) => (Some(result.s_pmse), Some(result)),
        Err(err) => {
            skip("pMSE", &err, &mut warnings);
            (None, None)
        }
    };

    let bins = BinSpec::new(config.bins)?;
    let (s_cr, coverage) = match coverage_score(real, synth, bins, F::c(config.beta)) {
        Ok((score, breakdown, mut component_warnings)) => {
            warnings.append(&mut component_warnings);
            (Some(score), Some(breakdown))
        }
        Err(err) => {
            skip("coverage", &err, &mut warnings);
            (None, None)
        }
    };

    // Both tables are split with the same seed and fraction; an exact copy
    // of the real table then yields the identical training subset, making
    // the identity case score 1 exactly.
    let target = resolve_target(real.schema(), config.target.as_deref(), &mut warnings);
    let efficacy_run = target.and_then(|name| {
        let spec = SplitSpec::new(config.ml_train_fraction, config.seed);
        let (real_train, real_test) = split(real, &spec)?;
        let (synth_train, _) = split(synth, &spec)?;
        ml_efficacy(&real_train, &synth_train, &real_test, &name, config.seed)
    });
    let (s_ml, efficacy) = match efficacy_run {
        Ok((score, breakdown, mut component_warnings)) => {
            warnings.append(&mut component_warnings);
            (Some(score), Some(breakdown))
        }
        Err(err) => {
            skip("ML efficacy", &err, &mut warnings);
            (None, None)
        }
    };

    if let (Some(corr), Some(cr)) = (s_corr, s_cr) {
        if corr < F::c(COLLAPSE_CORR_THRESHOLD) && cr < F::c(COLLAPSE_COVERAGE_THRESHOLD) {
            warnings.push(Warning::new(
                WarningCode::CollapseSignature,
                format!(
                    "associations and coverage both collapsed (s_corr {corr}, s_cr {cr})"
                ),
            ));
        }
    }

    let raw = [s_basic, s_corr, s_pmse, s_cr, s_ml];
    let tabsyndex = aggregate(&raw, &config.weights)?;
    let echoed_target = efficacy
        .as_ref()
        .map(|e| e.target.clone())
        .or_else(|| config.target.clone());

    Ok(ScoreReport {
        components: ComponentScores {
            s_basic,
            s_corr,
            s_pmse,
            s_cr,
            s_ml,
            tabsyndex,
        },
        basic,
        association,
        pmse,
        coverage,
        efficacy,
        config: config.echo(echoed_target),
        warnings,
    })
}
