//! Association score: mixed-type association matrices (Pearson,
//! correlation ratio, Theil's U) compared entry-wise through a signed,
//! clamped log transform.
//!
//! Undefined associations (a constant column) score 0 with a warning
//! instead of erroring, so degenerate synthetic data is graded, not
//! rejected.

use crate::error::{Error, Result};
use crate::report::{AssociationDiagnostics, Warning, WarningCode};
use crate::scalar::{Scalar, EPS_ASSOC, EPS_ZERO};
use crate::table::{ensure_schemas_match, CategoricalColumn, Column, Table};

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::InvalidArgument {
            name: "columns".to_string(),
            message: format!("length mismatch: {a} vs {b}"),
        });
    }
    Ok(())
}

fn is_constant<F: Scalar>(column: &Column<F>) -> bool {
    match column {
        Column::Continuous(values) => values.windows(2).all(|w| w[0] == w[1]),
        Column::Categorical(cat) => cat.codes.windows(2).all(|w| w[0] == w[1]),
    }
}

/// Sample Pearson correlation; `None` when either column is constant.
pub fn pearson<F: Scalar>(x: &[F], y: &[F]) -> Result<Option<F>> {
    check_lengths(x.len(), y.len())?;
    let n = F::from_count(x.len().max(1));
    let mx = x.iter().copied().sum::<F>() / n;
    let my = y.iter().copied().sum::<F>() / n;
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    let mut syy = F::zero();
    for (&xv, &yv) in x.iter().zip(y) {
        let dx = xv - mx;
        let dy = yv - my;
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Ok(None);
    }
    let r = sxy / (sxx * syy).sqrt();
    Ok(Some(r.max(-F::one()).min(F::one())))
}

/// Correlation ratio η between a categorical and a continuous column;
/// `None` when the continuous column is constant (total variance 0).
pub fn correlation_ratio<F: Scalar>(cat: &CategoricalColumn, cont: &[F]) -> Result<Option<F>> {
    check_lengths(cat.len(), cont.len())?;
    if cont.windows(2).all(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let grand = cont.iter().copied().sum::<F>() / F::from_count(cont.len().max(1));
    let k = cat.categories.len();
    let mut sums = vec![F::zero(); k];
    let mut counts = vec![0usize; k];
    for (&code, &v) in cat.codes.iter().zip(cont) {
        sums[code as usize] = sums[code as usize] + v;
        counts[code as usize] += 1;
    }
    let mut between = F::zero();
    for (sum, &count) in sums.iter().zip(&counts) {
        if count == 0 {
            continue;
        }
        let m = *sum / F::from_count(count);
        between = between + F::from_count(count) * (m - grand) * (m - grand);
    }
    let total = cont.iter().map(|&v| (v - grand) * (v - grand)).sum::<F>();
    let eta = (between / total).sqrt();
    Ok(Some(eta.min(F::one()).max(F::zero())))
}

fn entropy<F: Scalar>(counts: &[usize], total: usize) -> F {
    let n = F::from_count(total.max(1));
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = F::from_count(c) / n;
            -p * p.ln()
        })
        .sum()
}

/// Theil's uncertainty coefficient U(x|y): the fraction of x's entropy
/// explained by y. `None` when H(x) = 0 (x constant). Asymmetric.
pub fn theils_u<F: Scalar>(x: &CategoricalColumn, y: &CategoricalColumn) -> Result<Option<F>> {
    check_lengths(x.len(), y.len())?;
    let n = x.len();
    let kx = x.categories.len();
    let ky = y.categories.len();
    let mut x_counts = vec![0usize; kx];
    let mut y_counts = vec![0usize; ky];
    let mut joint = vec![0usize; kx * ky];
    for (&cx, &cy) in x.codes.iter().zip(&y.codes) {
        x_counts[cx as usize] += 1;
        y_counts[cy as usize] += 1;
        joint[cx as usize * ky + cy as usize] += 1;
    }
    let hx: F = entropy(&x_counts, n);
    if hx == F::zero() {
        return Ok(None);
    }
    let nf = F::from_count(n.max(1));
    let mut hx_given_y = F::zero();
    for (cy, &ny) in y_counts.iter().enumerate() {
        if ny == 0 {
            continue;
        }
        let slice: Vec<usize> = (0..kx).map(|cx| joint[cx * ky + cy]).collect();
        let h: F = entropy(&slice, ny);
        hx_given_y = hx_given_y + F::from_count(ny) / nf * h;
    }
    let u = (hx - hx_given_y) / hx;
    Ok(Some(u.min(F::one()).max(F::zero())))
}

/// sign(x) · ln(|x| clamped into [1e-6, 1]); zero takes the positive sign.
pub fn signed_log<F: Scalar>(x: F) -> F {
    let sign = if x < F::zero() { -F::one() } else { F::one() };
    let magnitude = x.abs().max(F::c(EPS_ASSOC)).min(F::one());
    sign * magnitude.ln()
}

/// Relative error between two associations in signed-log space, clipped
/// to 1. A real association at the clamp boundary (sln = 0) scores 0 only
/// against a synthetic one that clamps identically.
pub fn entry_error<F: Scalar>(r: F, f: F) -> F {
    let a = signed_log(r);
    let b = signed_log(f);
    let eps = F::c(EPS_ZERO);
    if a.abs() < eps {
        if b.abs() < eps {
            F::zero()
        } else {
            F::one()
        }
    } else {
        ((a - b).abs() / a.abs()).min(F::one())
    }
}

/// Builds the full n×n association matrix for one table. Diagonal entries
/// are 1 by convention; undefined entries score 0 and each constant column
/// is reported once. `origin` names the table in warning text.
pub fn association_matrix<F: Scalar>(
    table: &Table<F>,
    origin: &str,
) -> (Vec<Vec<F>>, Vec<Warning>) {
    let n = table.column_count();
    let mut warnings = Vec::new();
    for (i, spec) in table.schema().columns.iter().enumerate() {
        if table.row_count() > 0 && is_constant(table.column(i)) {
            warnings.push(Warning::for_column(
                WarningCode::ConstantColumn,
                &spec.name,
                format!("constant in the {origin} table; its associations score 0"),
            ));
        }
    }
    let mut matrix = vec![vec![F::zero(); n]; n];
    for i in 0..n {
        matrix[i][i] = F::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let value = match (table.column(i), table.column(j)) {
                (Column::Continuous(x), Column::Continuous(y)) => pearson(x, y),
                (Column::Categorical(x), Column::Categorical(y)) => theils_u(x, y),
                (Column::Categorical(x), Column::Continuous(y)) => correlation_ratio(x, y),
                (Column::Continuous(x), Column::Categorical(y)) => correlation_ratio(y, x),
            };
            matrix[i][j] = value
                .expect("lengths validated by table invariants")
                .unwrap_or(F::zero());
        }
    }
    (matrix, warnings)
}

/// S_corr: one minus the mean signed-log relative error over all n² − n
/// off-diagonal entries of the two association matrices.
pub fn correlation_score<F: Scalar>(
    real: &Table<F>,
    synth: &Table<F>,
) -> Result<(F, AssociationDiagnostics<F>, Vec<Warning>)> {
    ensure_schemas_match(real, synth)?;
    let n = real.column_count();
    if n < 2 {
        return Err(Error::InsufficientData(
            "association score needs at least 2 columns".to_string(),
        ));
    }
    let (rm, mut warnings) = association_matrix(real, "real");
    let (sm, synth_warnings) = association_matrix(synth, "synthetic");
    warnings.extend(synth_warnings);
    let mut total = F::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total = total + entry_error(rm[i][j], sm[i][j]);
            }
        }
    }
    let pairs = F::from_count(n * n - n);
    let score = F::one() - total / pairs;
    let diagnostics = AssociationDiagnostics {
        columns: real.schema().names().map(str::to_string).collect(),
        real: rm,
        synth: sm,
    };
    Ok((score, diagnostics, warnings))
}
