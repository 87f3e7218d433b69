//! Binary logistic regression trained by full-batch gradient descent, and a
//! one-vs-rest wrapper for multiclass targets. Weights start at zero, so
//! training is fully deterministic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::encode::FeatureMatrix;

/// Numerically stable logistic function.
pub fn sigmoid<F: Scalar>(z: F) -> F {
    if z >= F::zero() {
        F::one() / (F::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (F::one() + e)
    }
}

/// ln(1 + e^z) without overflow for large |z|.
fn softplus<F: Scalar>(z: F) -> F {
    z.max(F::zero()) + (F::one() + (-z.abs()).exp()).ln()
}

/// L2-regularized binary logistic regression. The bias is not penalized.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRegression<F = f64> {
    pub weights: Vec<F>,
    pub bias: F,
    pub l2: F,
    pub learning_rate: F,
    pub max_iters: usize,
    pub grad_tol: F,
}

impl<F: Scalar> LogisticRegression<F> {
    pub fn new(n_features: usize) -> Self {
        LogisticRegression {
            weights: vec![F::zero(); n_features],
            bias: F::zero(),
            l2: F::c(1e-4),
            learning_rate: F::c(0.1),
            max_iters: 500,
            grad_tol: F::c(1e-6),
        }
    }

    pub fn decision(&self, row: &[F]) -> F {
        let mut z = self.bias;
        for (w, x) in self.weights.iter().zip(row) {
            z = z + *w * *x;
        }
        z
    }

    /// Mean log loss plus the L2 penalty on the weights.
    pub fn loss(&self, x: &FeatureMatrix<F>, y: &[F]) -> F {
        let n = F::from_count(x.rows.max(1));
        let mut total = F::zero();
        for (i, &yi) in y.iter().enumerate() {
            let z = self.decision(x.row(i));
            // -[y ln p + (1-y) ln(1-p)] = softplus(z) - y z
            total = total + softplus(z) - yi * z;
        }
        let penalty = self
            .weights
            .iter()
            .map(|&w| w * w)
            .sum::<F>()
            * self.l2
            / F::c(2.0);
        total / n + penalty
    }

    /// Gradient of [`Self::loss`] with respect to weights and bias.
    pub fn gradient(&self, x: &FeatureMatrix<F>, y: &[F]) -> (Vec<F>, F) {
        let n = F::from_count(x.rows.max(1));
        let mut grad_w = vec![F::zero(); self.weights.len()];
        let mut grad_b = F::zero();
        for (i, &yi) in y.iter().enumerate() {
            let row = x.row(i);
            let residual = sigmoid(self.decision(row)) - yi;
            for (g, &xv) in grad_w.iter_mut().zip(row) {
                *g = *g + residual * xv;
            }
            grad_b = grad_b + residual;
        }
        for (g, &w) in grad_w.iter_mut().zip(&self.weights) {
            *g = *g / n + self.l2 * w;
        }
        (grad_w, grad_b / n)
    }

    /// Runs gradient descent until the gradient norm drops below `grad_tol`
    /// or `max_iters` steps have been taken.
    pub fn fit(&mut self, x: &FeatureMatrix<F>, y: &[F]) {
        for _ in 0..self.max_iters {
            let (grad_w, grad_b) = self.gradient(x, y);
            let norm = (grad_w.iter().map(|&g| g * g).sum::<F>() + grad_b * grad_b).sqrt();
            if norm < self.grad_tol {
                break;
            }
            for (w, g) in self.weights.iter_mut().zip(&grad_w) {
                *w = *w - self.learning_rate * *g;
            }
            self.bias = self.bias - self.learning_rate * grad_b;
        }
    }

    pub fn predict_proba(&self, x: &FeatureMatrix<F>) -> Vec<F> {
        (0..x.rows).map(|i| sigmoid(self.decision(x.row(i)))).collect()
    }
}

/// One-vs-rest multiclass logistic regression over category codes.
#[derive(Debug, Clone, PartialEq)]
pub struct MulticlassLogistic<F = f64> {
    pub classes: Vec<u32>,
    pub models: Vec<LogisticRegression<F>>,
}

impl<F: Scalar> MulticlassLogistic<F> {
    /// Fits one binary model per distinct code in `y`, in ascending code
    /// order.
    pub fn fit(x: &FeatureMatrix<F>, y: &[u32]) -> Result<Self> {
        let mut classes: Vec<u32> = y.to_vec();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() < 2 {
            return Err(Error::SingleClassLabels);
        }
        let models = classes
            .iter()
            .map(|&class| {
                let targets: Vec<F> = y
                    .iter()
                    .map(|&code| if code == class { F::one() } else { F::zero() })
                    .collect();
                let mut model = LogisticRegression::new(x.cols);
                model.fit(x, &targets);
                model
            })
            .collect();
        Ok(MulticlassLogistic { classes, models })
    }

    /// Predicts the class whose one-vs-rest score is highest; ties resolve
    /// to the lowest code.
    pub fn predict(&self, x: &FeatureMatrix<F>) -> Vec<u32> {
        (0..x.rows)
            .map(|i| {
                let row = x.row(i);
                let mut best = 0usize;
                let mut best_score = F::neg_infinity();
                for (k, model) in self.models.iter().enumerate() {
                    let score = model.decision(row);
                    if score > best_score {
                        best_score = score;
                        best = k;
                    }
                }
                self.classes[best]
            })
            .collect()
    }
}
