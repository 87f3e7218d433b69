//! Evaluation metrics for the efficacy comparison: macro-averaged F1 for
//! classification and root-mean-square error for regression.

use crate::scalar::Scalar;

/// Macro-averaged F1 over the union of classes present in `truth` or
/// `pred`. Degenerate precision/recall ratios (0/0) count as zero.
pub fn macro_f1<F: Scalar>(truth: &[u32], pred: &[u32]) -> F {
    let mut classes: Vec<u32> = truth.iter().chain(pred.iter()).copied().collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.is_empty() {
        return F::zero();
    }
    let mut total = F::zero();
    for &class in &classes {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fn_ = 0usize;
        for (&t, &p) in truth.iter().zip(pred) {
            match (t == class, p == class) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => {}
            }
        }
        let precision = ratio_or_zero::<F>(tp, tp + fp);
        let recall = ratio_or_zero::<F>(tp, tp + fn_);
        if precision + recall > F::zero() {
            total = total + F::c(2.0) * precision * recall / (precision + recall);
        }
    }
    total / F::from_count(classes.len())
}

fn ratio_or_zero<F: Scalar>(num: usize, den: usize) -> F {
    if den == 0 {
        F::zero()
    } else {
        F::from_count(num) / F::from_count(den)
    }
}

/// Root-mean-square error between equal-length slices.
pub fn rmse<F: Scalar>(truth: &[F], pred: &[F]) -> F {
    if truth.is_empty() {
        return F::zero();
    }
    let n = F::from_count(truth.len());
    let sum_sq = truth
        .iter()
        .zip(pred)
        .map(|(&t, &p)| (t - p) * (t - p))
        .sum::<F>();
    (sum_sq / n).sqrt()
}
