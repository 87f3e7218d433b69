//! Seeded shuffling, splitting, and without-replacement sampling. Sizes
//! round half up so a given fraction always maps to the same row count.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::Table;

/// How to divide a table: `fraction` of rows go to the first part, and the
/// second part may then be thinned to `proportion` of itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub fraction: f64,
    pub seed: u64,
    pub proportion: f64,
}

impl SplitSpec {
    pub fn new(fraction: f64, seed: u64) -> Self {
        SplitSpec {
            fraction,
            seed,
            proportion: 1.0,
        }
    }
}

/// Round-half-up size arithmetic shared by split and sample.
pub fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    indices
}

/// Shuffles rows with the spec's seed and cuts them into two disjoint
/// tables; the first receives `round(fraction * rows)` rows.
pub fn split<F: Scalar>(table: &Table<F>, spec: &SplitSpec) -> Result<(Table<F>, Table<F>)> {
    if table.row_count() < 2 {
        return Err(Error::InsufficientData(format!(
            "split needs at least 2 rows, got {}",
            table.row_count()
        )));
    }
    if !(spec.fraction > 0.0 && spec.fraction < 1.0) {
        return Err(Error::InvalidArgument {
            name: "fraction".to_string(),
            message: format!("must lie in (0, 1), got {}", spec.fraction),
        });
    }
    let n = table.row_count();
    let k = round_half_up(spec.fraction * n as f64);
    let indices = shuffled_indices(n, spec.seed);
    Ok((
        table.take_rows(&indices[..k]),
        table.take_rows(&indices[k..]),
    ))
}

/// Uniform without-replacement sample of `round(proportion * rows)` rows,
/// in shuffled order.
pub fn sample<F: Scalar>(table: &Table<F>, proportion: f64, seed: u64) -> Result<Table<F>> {
    if !(proportion > 0.0 && proportion <= 1.0) {
        return Err(Error::InvalidArgument {
            name: "proportion".to_string(),
            message: format!("must lie in (0, 1], got {proportion}"),
        });
    }
    let n = table.row_count();
    let k = round_half_up(proportion * n as f64);
    let indices = shuffled_indices(n, seed);
    Ok(table.take_rows(&indices[..k.min(n)]))
}
