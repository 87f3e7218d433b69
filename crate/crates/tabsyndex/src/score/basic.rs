//! Basic-statistics score: clipped relative errors of mean, median, and
//! standard deviation across continuous columns.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{BasicBreakdown, BasicColumnErrors, BasicStatTriple};
use crate::scalar::{Scalar, EPS_ZERO};
use crate::table::{ensure_schemas_match, Column, Table};

pub fn mean<F: Scalar>(values: &[F]) -> F {
    values.iter().copied().sum::<F>() / F::from_count(values.len().max(1))
}

/// Median with the even-length convention: mean of the two middle order
/// statistics.
pub fn median<F: Scalar>(values: &[F]) -> F {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite column values"));
    let n = sorted.len();
    if n == 0 {
        return F::zero();
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / F::c(2.0)
    }
}

/// Population standard deviation (divide by n).
pub fn std_dev<F: Scalar>(values: &[F]) -> F {
    let m = mean(values);
    let var = values
        .iter()
        .map(|&v| (v - m) * (v - m))
        .sum::<F>()
        / F::from_count(values.len().max(1));
    var.sqrt()
}

pub fn column_stats<F: Scalar>(values: &[F]) -> BasicStatTriple<F> {
    BasicStatTriple {
        mean: mean(values),
        median: median(values),
        std_dev: std_dev(values),
    }
}

/// Relative error |real − fake| / |real|, clipped to 1. A real statistic
/// within ε of zero scores 0 when the fake one is too, else 1.
pub fn stat_error<F: Scalar>(real: F, fake: F) -> F {
    let eps = F::c(EPS_ZERO);
    if real.abs() < eps {
        if fake.abs() < eps {
            F::zero()
        } else {
            F::one()
        }
    } else {
        ((real - fake).abs() / real.abs()).min(F::one())
    }
}

/// S_basic over the continuous columns: each statistic contributes 1 minus
/// its mean per-column error, and the three statistic scores average.
pub fn basic_score<F: Scalar>(
    real: &Table<F>,
    synth: &Table<F>,
) -> Result<(F, BasicBreakdown<F>)> {
    ensure_schemas_match(real, synth)?;
    let mut per_column = BTreeMap::new();
    let mut sums = BasicColumnErrors {
        mean: F::zero(),
        median: F::zero(),
        std_dev: F::zero(),
    };
    let mut count = 0usize;
    for (i, spec) in real.schema().columns.iter().enumerate() {
        let (Column::Continuous(r), Column::Continuous(s)) = (real.column(i), synth.column(i))
        else {
            continue;
        };
        let rs = column_stats(r);
        let ss = column_stats(s);
        let errors = BasicColumnErrors {
            mean: stat_error(rs.mean, ss.mean),
            median: stat_error(rs.median, ss.median),
            std_dev: stat_error(rs.std_dev, ss.std_dev),
        };
        sums.mean = sums.mean + errors.mean;
        sums.median = sums.median + errors.median;
        sums.std_dev = sums.std_dev + errors.std_dev;
        per_column.insert(spec.name.clone(), errors);
        count += 1;
    }
    if count == 0 {
        return Err(Error::InsufficientData(
            "basic score needs at least one continuous column".to_string(),
        ));
    }
    let n = F::from_count(count);
    let breakdown = BasicBreakdown {
        s_mean: F::one() - sums.mean / n,
        s_median: F::one() - sums.median / n,
        s_std: F::one() - sums.std_dev / n,
        per_column,
    };
    let score = (breakdown.s_mean + breakdown.s_median + breakdown.s_std) / F::c(3.0);
    Ok((score, breakdown))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{ColumnSpec, Schema};

    const EPS: f64 = 1e-9;

    fn one_column(values: &[f64]) -> Table<f64> {
        let schema = Schema::new(vec![ColumnSpec::continuous("x")]);
        Table::from_columns(schema, vec![Column::Continuous(values.to_vec())]).unwrap()
    }

    #[test]
    fn stat_error_matches_hand_arithmetic() {
        assert!((stat_error(10.0_f64, 12.0) - 0.2).abs() < EPS);
        assert_eq!(stat_error(5.0, 5.0), 0.0);
        assert_eq!(stat_error(1.0, 3.5), 1.0);
    }

    #[test]
    fn near_zero_real_statistic_uses_the_epsilon_rule() {
        assert_eq!(stat_error(0.0, 0.0), 0.0);
        assert_eq!(stat_error(0.0, 1e-3), 1.0);
        assert_eq!(stat_error(1e-13, 5e-13), 0.0);
    }

    #[test]
    fn median_handles_both_parities() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 3.0, 4.0]), 2.5);
    }

    #[test]
    fn population_std_dev_divides_by_n() {
        assert!((std_dev(&[8.0_f64, 12.0]) - 2.0).abs() < EPS);
    }

    #[test]
    fn identical_tables_score_exactly_one() {
        let table = one_column(&[1.0, 4.0, 9.0, 16.0]);
        let (score, breakdown) = basic_score(&table, &table).unwrap();
        assert_eq!(score, 1.0);
        assert_eq!(breakdown.s_mean, 1.0);
    }

    #[test]
    fn two_point_columns_match_hand_computation() {
        // real: mean 10, median 10, std 2; synth: mean 12, median 12, std 3
        // errors 0.2, 0.2, 0.5 -> s 0.8, 0.8, 0.5 -> S_basic 0.7
        let real = one_column(&[8.0, 12.0]);
        let synth = one_column(&[9.0, 15.0]);
        let (score, breakdown) = basic_score(&real, &synth).unwrap();
        assert!((score - 0.7).abs() < EPS);
        assert!((breakdown.s_mean - 0.8).abs() < EPS);
        assert!((breakdown.s_std - 0.5).abs() < EPS);
    }

    #[test]
    fn doubled_statistics_score_zero() {
        let real = one_column(&[8.0, 12.0]);
        let synth = one_column(&[20.0, 28.0]);
        let (score, _) = basic_score(&real, &synth).unwrap();
        assert_eq!(score, 0.0);
    }

    #[test]
    fn scaling_both_tables_leaves_errors_unchanged() {
        let real = one_column(&[1.0, 5.0, 2.0, 8.0]);
        let synth = one_column(&[2.0, 4.0, 3.0, 7.0]);
        let (_, base) = basic_score(&real, &synth).unwrap();
        let scale = -3.7;
        let real_scaled = one_column(&real.continuous(0).unwrap().iter().map(|v| v * scale).collect::<Vec<_>>());
        let synth_scaled = one_column(&synth.continuous(0).unwrap().iter().map(|v| v * scale).collect::<Vec<_>>());
        let (_, scaled) = basic_score(&real_scaled, &synth_scaled).unwrap();
        let a = &base.per_column["x"];
        let b = &scaled.per_column["x"];
        assert!((a.mean - b.mean).abs() < 1e-12);
        assert!((a.median - b.median).abs() < 1e-12);
        assert!((a.std_dev - b.std_dev).abs() < 1e-12);
    }

    #[test]
    fn all_categorical_tables_are_not_scorable() {
        use crate::table::CategoricalColumn;
        let schema = Schema::new(vec![ColumnSpec::categorical("c")]);
        let table: Table<f64> = Table::from_columns(
            schema,
            vec![Column::Categorical(CategoricalColumn::from_labels(&["a", "b"]))],
        )
        .unwrap();
        assert!(basic_score(&table, &table).is_err());
    }
}
