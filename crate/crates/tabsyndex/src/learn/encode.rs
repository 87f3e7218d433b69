//! Numeric feature encoding for learners. Continuous columns are
//! standardized with statistics from the fitting table only; categorical
//! columns are one-hot encoded against the fitting table's vocabulary, and
//! labels unseen at fit time encode as an all-zero block.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, EPS_ZERO};
use crate::table::{Column, Table};

enum ColumnEncoding<F> {
    Continuous { index: usize, mean: F, std: F },
    Categorical { index: usize, vocab: Vec<String> },
}

/// Column-to-feature mapping fitted on one table.
pub struct FeatureEncoder<F = f64> {
    encodings: Vec<ColumnEncoding<F>>,
    n_features: usize,
}

/// Dense row-major feature block produced by [`FeatureEncoder::transform`].
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix<F = f64> {
    pub data: Vec<F>,
    pub rows: usize,
    pub cols: usize,
}

impl<F: Scalar> FeatureMatrix<F> {
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FeatureMatrix {
            data: vec![F::zero(); rows * cols],
            rows,
            cols,
        }
    }
}

impl<F: Scalar> FeatureEncoder<F> {
    /// Fits the encoder on `table`, encoding exactly the columns listed in
    /// `columns` (schema indices), in that order.
    pub fn fit(table: &Table<F>, columns: &[usize]) -> Result<Self> {
        let mut encodings = Vec::with_capacity(columns.len());
        let mut n_features = 0;
        for &index in columns {
            let column = table.columns().get(index).ok_or_else(|| Error::InvalidArgument {
                name: "columns".to_string(),
                message: format!("column index {index} out of range"),
            })?;
            match column {
                Column::Continuous(values) => {
                    let n = F::from_count(values.len().max(1));
                    let mean = values.iter().copied().sum::<F>() / n;
                    let var = values
                        .iter()
                        .map(|&v| (v - mean) * (v - mean))
                        .sum::<F>()
                        / n;
                    encodings.push(ColumnEncoding::Continuous {
                        index,
                        mean,
                        std: var.sqrt(),
                    });
                    n_features += 1;
                }
                Column::Categorical(cat) => {
                    let vocab = cat.categories.clone();
                    n_features += vocab.len();
                    encodings.push(ColumnEncoding::Categorical { index, vocab });
                }
            }
        }
        Ok(FeatureEncoder {
            encodings,
            n_features,
        })
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Encodes `table` into a dense matrix with `n_features` columns.
    pub fn transform(&self, table: &Table<F>) -> Result<FeatureMatrix<F>> {
        let rows = table.row_count();
        let mut out = FeatureMatrix::zeros(rows, self.n_features);
        let mut offset = 0;
        for encoding in &self.encodings {
            match encoding {
                ColumnEncoding::Continuous { index, mean, std } => {
                    let values =
                        table
                            .continuous(*index)
                            .ok_or_else(|| Error::SchemaMismatch(format!(
                                "column {index} is not continuous"
                            )))?;
                    let eps = F::c(EPS_ZERO);
                    for (r, &v) in values.iter().enumerate() {
                        out.data[r * self.n_features + offset] = if *std <= eps {
                            F::zero()
                        } else {
                            (v - *mean) / *std
                        };
                    }
                    offset += 1;
                }
                ColumnEncoding::Categorical { index, vocab } => {
                    let cat =
                        table
                            .categorical(*index)
                            .ok_or_else(|| Error::SchemaMismatch(format!(
                                "column {index} is not categorical"
                            )))?;
                    let remap: Vec<Option<usize>> = cat
                        .categories
                        .iter()
                        .map(|label| vocab.iter().position(|v| v == label))
                        .collect();
                    for (r, &code) in cat.codes.iter().enumerate() {
                        if let Some(slot) = remap[code as usize] {
                            out.data[r * self.n_features + offset + slot] = F::one();
                        }
                    }
                    offset += vocab.len();
                }
            }
        }
        Ok(out)
    }
}
