//! Support coverage score: per-category representation ratios, scaled for
//! table size, clipped at β per category and at 1 per column. Continuous
//! columns are histogrammed over the real data's range first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{CategoryRatio, CoverageBreakdown, Warning, WarningCode};
use crate::scalar::Scalar;
use crate::table::{ensure_schemas_match, CategoricalColumn, Column, Table};

/// Histogram granularity for continuous columns; edges derive from the
/// real column's min/max split into equal-range bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinSpec {
    pub bin_count: usize,
}

impl Default for BinSpec {
    fn default() -> Self {
        BinSpec { bin_count: 20 }
    }
}

impl BinSpec {
    pub fn new(bin_count: usize) -> Result<Self> {
        if bin_count == 0 {
            return Err(Error::InvalidArgument {
                name: "bins".to_string(),
                message: "bin count must be positive".to_string(),
            });
        }
        Ok(BinSpec { bin_count })
    }
}

/// Per-category clipped ratios for one column; `None` marks a category
/// skipped because the real table never exhibits it. The column score is
/// the mean of the defined ratios, clipped to 1.
pub fn column_coverage<F: Scalar>(
    real_counts: &[usize],
    fake_counts: &[usize],
    n_real: usize,
    n_fake: usize,
    beta: F,
) -> Result<(F, Vec<Option<F>>)> {
    if real_counts.is_empty() || real_counts.len() != fake_counts.len() {
        return Err(Error::InvalidArgument {
            name: "categories".to_string(),
            message: format!(
                "aligned nonempty category counts required, got {} real and {} fake",
                real_counts.len(),
                fake_counts.len()
            ),
        });
    }
    if n_real == 0 || n_fake == 0 {
        return Err(Error::InsufficientData(
            "coverage needs nonempty real and synthetic tables".to_string(),
        ));
    }
    let scale = F::from_count(n_real) / F::from_count(n_fake);
    let mut ratios = Vec::with_capacity(real_counts.len());
    let mut total = F::zero();
    let mut scored = 0usize;
    for (&r, &f) in real_counts.iter().zip(fake_counts) {
        if r == 0 {
            ratios.push(None);
            continue;
        }
        let ratio = (F::from_count(f) / F::from_count(r) * scale).min(beta);
        total = total + ratio;
        scored += 1;
        ratios.push(Some(ratio));
    }
    if scored == 0 {
        return Err(Error::InsufficientData(
            "no category with real support to score".to_string(),
        ));
    }
    let score = (total / F::from_count(scored)).min(F::one());
    Ok((score, ratios))
}

fn bin_index<F: Scalar>(value: F, min: F, width: F, bins: usize) -> usize {
    if width == F::zero() {
        // Degenerate range: everything at the single support point lands in
        // bin 0, anything above it in the top bin.
        return if value > min { bins - 1 } else { 0 };
    }
    let raw = ((value - min) / width).floor();
    if raw < F::zero() {
        0
    } else {
        (raw.as_f64() as usize).min(bins - 1)
    }
}

fn continuous_counts<F: Scalar>(
    real: &[F],
    synth: &[F],
    bins: usize,
) -> (Vec<usize>, Vec<usize>, Vec<String>) {
    let mut min = real[0];
    let mut max = real[0];
    for &v in real {
        min = min.min(v);
        max = max.max(v);
    }
    let width = (max - min) / F::from_count(bins);
    let mut real_counts = vec![0usize; bins];
    let mut fake_counts = vec![0usize; bins];
    for &v in real {
        real_counts[bin_index(v, min, width, bins)] += 1;
    }
    for &v in synth {
        fake_counts[bin_index(v, min, width, bins)] += 1;
    }
    let labels = (0..bins).map(|b| format!("bin_{b:02}")).collect();
    (real_counts, fake_counts, labels)
}

fn categorical_counts(
    real: &CategoricalColumn,
    synth: &CategoricalColumn,
) -> (Vec<usize>, Vec<usize>, Vec<String>) {
    let mut labels: Vec<String> = real.categories.clone();
    for label in &synth.categories {
        if !labels.contains(label) {
            labels.push(label.clone());
        }
    }
    let count_for = |cat: &CategoricalColumn| -> Vec<usize> {
        let mut counts = vec![0usize; labels.len()];
        for &code in &cat.codes {
            let label = cat.label(code);
            let slot = labels.iter().position(|l| l == label).expect("label in union");
            counts[slot] += 1;
        }
        counts
    };
    (count_for(real), count_for(synth), labels)
}

/// S_cr: mean per-column coverage across every column of the pair.
pub fn coverage_score<F: Scalar>(
    real: &Table<F>,
    synth: &Table<F>,
    bins: BinSpec,
    beta: F,
) -> Result<(F, CoverageBreakdown<F>, Vec<Warning>)> {
    ensure_schemas_match(real, synth)?;
    if real.row_count() == 0 || synth.row_count() == 0 {
        return Err(Error::InsufficientData(
            "coverage needs nonempty real and synthetic tables".to_string(),
        ));
    }
    let mut per_column = BTreeMap::new();
    let mut per_category = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut total = F::zero();
    for (i, spec) in real.schema().columns.iter().enumerate() {
        let (real_counts, fake_counts, labels) = match (real.column(i), synth.column(i)) {
            (Column::Continuous(r), Column::Continuous(s)) => {
                continuous_counts(r, s, bins.bin_count)
            }
            (Column::Categorical(r), Column::Categorical(s)) => categorical_counts(r, s),
            _ => unreachable!("schemas already matched"),
        };
        let (score, ratios) = column_coverage(
            &real_counts,
            &fake_counts,
            real.row_count(),
            synth.row_count(),
            beta,
        )?;
        let mut diagnostics = Vec::with_capacity(labels.len());
        for (slot, ratio) in ratios.iter().enumerate() {
            match ratio {
                Some(clipped) => diagnostics.push(CategoryRatio {
                    category: labels[slot].clone(),
                    real_count: real_counts[slot],
                    fake_count: fake_counts[slot],
                    clipped_ratio: *clipped,
                }),
                None => {
                    if fake_counts[slot] > 0 {
                        warnings.push(Warning::for_column(
                            WarningCode::SkippedCategory,
                            &spec.name,
                            format!(
                                "category '{}' has no real support; skipped",
                                labels[slot]
                            ),
                        ));
                    }
                }
            }
        }
        total = total + score;
        per_column.insert(spec.name.clone(), score);
        per_category.insert(spec.name.clone(), diagnostics);
    }
    let score = total / F::from_count(real.column_count());
    Ok((
        score,
        CoverageBreakdown {
            per_column,
            per_category,
        },
        warnings,
    ))
}
