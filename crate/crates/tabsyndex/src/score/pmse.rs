//! Propensity-score distinguishability: a logistic model tries to separate
//! real from synthetic rows, and its mean squared propensity error is
//! compared to the null expectation for an uninformative model.

use crate::error::{Error, Result};
use crate::learn::{FeatureEncoder, LogisticRegression};
use crate::report::PmseResult;
use crate::scalar::Scalar;
use crate::table::{ensure_schemas_match, Table};

/// Mean of (p̂ − c)² over the propensity estimates.
pub fn pmse<F: Scalar>(probabilities: &[F], c: F) -> Result<F> {
    if probabilities.is_empty() {
        return Err(Error::InsufficientData(
            "pmse needs at least one propensity estimate".to_string(),
        ));
    }
    let n = F::from_count(probabilities.len());
    Ok(probabilities
        .iter()
        .map(|&p| (p - c) * (p - c))
        .sum::<F>()
        / n)
}

/// Null expectation (k − 1)(1 − c)²c / N for an uninformative propensity
/// model with k parameters (bias included).
pub fn expected_pmse0<F: Scalar>(k: usize, c: F, n: usize) -> Result<F> {
    if k < 2 {
        return Err(Error::InvalidArgument {
            name: "k".to_string(),
            message: format!("parameter count must be at least 2, got {k}"),
        });
    }
    if !(c > F::zero() && c < F::one()) {
        return Err(Error::InvalidArgument {
            name: "c".to_string(),
            message: "synthetic proportion must lie in (0, 1)".to_string(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n".to_string(),
            message: "sample count must be positive".to_string(),
        });
    }
    let one_minus_c = F::one() - c;
    Ok(F::from_count(k - 1) * one_minus_c * one_minus_c * c / F::from_count(n))
}

/// S_pMSE: labels real rows 0 and synthetic rows 1, fits a logistic model
/// on all columns of the combined table, and maps the pMSE ratio through
/// α^(−|1 − ratio|).
pub fn s_pmse_index<F: Scalar>(
    real: &Table<F>,
    synth: &Table<F>,
    alpha: F,
) -> Result<PmseResult<F>> {
    ensure_schemas_match(real, synth)?;
    if real.row_count() < 2 || synth.row_count() < 2 {
        return Err(Error::InsufficientData(format!(
            "propensity fit needs at least 2 rows per table, got {} real and {} synthetic",
            real.row_count(),
            synth.row_count()
        )));
    }
    if !(alpha > F::one()) {
        return Err(Error::InvalidArgument {
            name: "alpha".to_string(),
            message: format!("alpha must exceed 1, got {alpha}"),
        });
    }
    let combined = real.concat(synth)?;
    let n = combined.row_count();
    let n_synth = synth.row_count();
    let c = F::from_count(n_synth) / F::from_count(n);

    let all_columns: Vec<usize> = (0..combined.column_count()).collect();
    let encoder = FeatureEncoder::fit(&combined, &all_columns)?;
    let features = encoder.transform(&combined)?;
    let labels: Vec<F> = (0..n)
        .map(|i| if i < real.row_count() { F::zero() } else { F::one() })
        .collect();

    let mut model = LogisticRegression::new(features.cols);
    model.fit(&features, &labels);
    let propensities = model.predict_proba(&features);

    let pmse_value = pmse(&propensities, c)?;
    let k = features.cols + 1;
    let expected = expected_pmse0(k, c, n)?;
    let ratio = pmse_value / expected;
    let s_pmse = alpha.powf(-(F::one() - ratio).abs());
    Ok(PmseResult {
        pmse: pmse_value,
        expected_pmse0: expected,
        ratio,
        s_pmse,
        c,
        k,
        n,
    })
}
