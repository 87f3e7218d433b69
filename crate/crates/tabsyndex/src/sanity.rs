//! Subset-vs-subset sanity check: splits one real table 50/50, treats
//! samples of the second half as "synthetic", and scores them against the
//! first half. Scores should rise toward 1 as the sampled proportion
//! grows, and sit near 1 at proportion 1.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{evaluate, EvalConfig};
use crate::ingest::{sample, split, SplitSpec};
use crate::report::{ComponentScores, Warning};
use crate::scalar::Scalar;
use crate::table::Table;

/// Fewer rows than this cannot support a meaningful half-vs-half check.
pub const MIN_SANITY_ROWS: usize = 100;

/// Scores for one sampled proportion of the held-out half.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProportionEntry<F = f64> {
    pub proportion: f64,
    pub components: ComponentScores<F>,
    pub warnings: Vec<Warning>,
}

/// Outcome of the full protocol on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SanityResult<F = f64> {
    pub dataset: String,
    pub seed: u64,
    pub entries: Vec<ProportionEntry<F>>,
}

/// Runs the protocol: a 50/50 split seeded by `seed`, then one evaluation
/// per proportion against the fixed first half. Samples share one seed, so
/// smaller proportions are nested subsets of larger ones.
pub fn sanity_check<F: Scalar>(
    data: &Table<F>,
    proportions: &[f64],
    seed: u64,
    config: &EvalConfig,
    dataset: impl Into<String>,
) -> Result<SanityResult<F>> {
    if data.row_count() < MIN_SANITY_ROWS {
        return Err(Error::InsufficientData(format!(
            "sanity check needs at least {MIN_SANITY_ROWS} rows, got {}",
            data.row_count()
        )));
    }
    if proportions.is_empty() {
        return Err(Error::InvalidArgument {
            name: "proportions".to_string(),
            message: "at least one proportion is required".to_string(),
        });
    }
    for &p in proportions {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidArgument {
                name: "proportions".to_string(),
                message: format!("each proportion must lie in (0, 1], got {p}"),
            });
        }
    }
    let eval_config = EvalConfig {
        seed,
        ..config.clone()
    };
    eval_config.validate()?;

    let (reference, pool) = split(data, &SplitSpec::new(0.5, seed))?;
    let entries: Vec<Result<ProportionEntry<F>>> = proportions
        .par_iter()
        .map(|&proportion| {
            let synthetic = sample(&pool, proportion, seed.wrapping_add(1))?;
            let report = evaluate(&reference, &synthetic, &eval_config)?;
            Ok(ProportionEntry {
                proportion,
                components: report.components,
                warnings: report.warnings,
            })
        })
        .collect();

    Ok(SanityResult {
        dataset: dataset.into(),
        seed,
        entries: entries.into_iter().collect::<Result<Vec<_>>>()?,
    })
}
