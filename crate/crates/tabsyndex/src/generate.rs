//! Seeded baseline generators. Each produces synthetic data with a known
//! failure mode, giving the metric graded-quality inputs to discriminate:
//! bootstraps should score high, marginal shufflers should lose the
//! association score, and a repeated row should trip the collapse
//! signature.

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::score::basic::std_dev;
use crate::table::{CategoricalColumn, Column, Table};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    /// With-replacement row bootstrap.
    Resample,
    /// Bootstrap plus Gaussian noise of `sigma` times the column standard
    /// deviation on every continuous column.
    Jitter { sigma: f64 },
    /// Each column sampled independently from its own empirical marginal;
    /// destroys cross-column association, preserves marginals.
    IndependentMarginals,
    /// One sampled row repeated; a maximal mode collapse.
    ConstantRow,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resample" => Ok(GeneratorKind::Resample),
            "jitter" => Ok(GeneratorKind::Jitter { sigma: 0.0 }),
            "independent-marginals" => Ok(GeneratorKind::IndependentMarginals),
            "constant-row" => Ok(GeneratorKind::ConstantRow),
            other => Err(Error::InvalidArgument {
                name: "kind".to_string(),
                message: format!(
                    "expected resample, jitter, independent-marginals, or constant-row, got '{other}'"
                ),
            }),
        }
    }
}

impl GeneratorKind {
    pub fn with_sigma(self, sigma: f64) -> Self {
        match self {
            GeneratorKind::Jitter { .. } => GeneratorKind::Jitter { sigma },
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
    pub rows: usize,
}

fn bootstrap_indices(n: usize, rows: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..rows).map(|_| rng.random_range(0..n)).collect()
}

/// Synthesizes `spec.rows` rows against `real`'s schema. Deterministic
/// given the spec.
pub fn generate<F: Scalar>(real: &Table<F>, spec: &GeneratorSpec) -> Result<Table<F>> {
    if real.row_count() == 0 {
        return Err(Error::InsufficientData(
            "generation needs a nonempty real table".to_string(),
        ));
    }
    if spec.rows == 0 {
        return Err(Error::InvalidArgument {
            name: "rows".to_string(),
            message: "output row count must be positive".to_string(),
        });
    }
    if let GeneratorKind::Jitter { sigma } = spec.kind {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidArgument {
                name: "sigma".to_string(),
                message: format!("must be finite and nonnegative, got {sigma}"),
            });
        }
    }

    let n = real.row_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let table = match spec.kind {
        GeneratorKind::Resample => {
            real.take_rows(&bootstrap_indices(n, spec.rows, &mut rng))
        }
        GeneratorKind::Jitter { sigma } => {
            let base = real.take_rows(&bootstrap_indices(n, spec.rows, &mut rng));
            let mut columns = Vec::with_capacity(base.column_count());
            for (index, column) in base.columns().iter().enumerate() {
                match column {
                    Column::Continuous(values) => {
                        let scale = sigma * std_dev(real.continuous(index).unwrap()).as_f64();
                        let noisy = if scale > 0.0 {
                            let normal = Normal::new(0.0, scale).expect("positive finite scale");
                            values
                                .iter()
                                .map(|&v| v + F::c(normal.sample(&mut rng)))
                                .collect()
                        } else {
                            values.clone()
                        };
                        columns.push(Column::Continuous(noisy));
                    }
                    categorical => columns.push(categorical.clone()),
                }
            }
            Table::new_unchecked(base.schema().clone(), columns, spec.rows)
        }
        GeneratorKind::IndependentMarginals => {
            let mut columns = Vec::with_capacity(real.column_count());
            for column in real.columns() {
                match column {
                    Column::Continuous(values) => {
                        let drawn = (0..spec.rows)
                            .map(|_| values[rng.random_range(0..n)])
                            .collect();
                        columns.push(Column::Continuous(drawn));
                    }
                    Column::Categorical(cat) => {
                        let codes = (0..spec.rows)
                            .map(|_| cat.codes[rng.random_range(0..n)])
                            .collect();
                        columns.push(Column::Categorical(CategoricalColumn {
                            codes,
                            categories: cat.categories.clone(),
                        }));
                    }
                }
            }
            Table::new_unchecked(real.schema().clone(), columns, spec.rows)
        }
        GeneratorKind::ConstantRow => {
            let row = rng.random_range(0..n);
            real.take_rows(&vec![row; spec.rows])
        }
    };
    Ok(table)
}
