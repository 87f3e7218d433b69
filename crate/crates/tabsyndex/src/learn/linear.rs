//! Regularized linear regression (lasso, ridge, elastic net) fitted by
//! cyclic coordinate descent with an unpenalized intercept.

use crate::scalar::Scalar;

use super::encode::FeatureMatrix;

/// Regularization family; only the L1/L2 mixing differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Penalty {
    Lasso,
    Ridge,
    ElasticNet,
}

impl Penalty {
    /// Fraction of the penalty assigned to the L1 term.
    fn mixing<F: Scalar>(self) -> F {
        match self {
            Penalty::Lasso => F::one(),
            Penalty::Ridge => F::zero(),
            Penalty::ElasticNet => F::c(0.5),
        }
    }
}

/// Minimizes (1/2n)‖y − b − Xw‖² + λ·mix‖w‖₁ + (λ(1−mix)/2)‖w‖².
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticNet<F = f64> {
    pub weights: Vec<F>,
    pub bias: F,
    pub lambda: F,
    pub mixing: F,
    pub tol: F,
    pub max_sweeps: usize,
}

fn soft_threshold<F: Scalar>(value: F, threshold: F) -> F {
    if value > threshold {
        value - threshold
    } else if value < -threshold {
        value + threshold
    } else {
        F::zero()
    }
}

impl<F: Scalar> ElasticNet<F> {
    pub fn new(n_features: usize, penalty: Penalty) -> Self {
        ElasticNet {
            weights: vec![F::zero(); n_features],
            bias: F::zero(),
            lambda: F::c(0.1),
            mixing: penalty.mixing(),
            tol: F::c(1e-6),
            max_sweeps: 1000,
        }
    }

    /// Cyclic coordinate descent; stops when no coefficient moves by more
    /// than `tol` in a full sweep.
    pub fn fit(&mut self, x: &FeatureMatrix<F>, y: &[F]) {
        let n = F::from_count(x.rows.max(1));
        let d = x.cols;
        let l1 = self.lambda * self.mixing;
        let l2 = self.lambda * (F::one() - self.mixing);
        // Mean squared value per column; zero for all-zero columns.
        let col_sq: Vec<F> = (0..d)
            .map(|j| {
                (0..x.rows)
                    .map(|i| {
                        let v = x.row(i)[j];
                        v * v
                    })
                    .sum::<F>()
                    / n
            })
            .collect();
        self.bias = y.iter().copied().sum::<F>() / n;
        let mut residual: Vec<F> = y.iter().map(|&yi| yi - self.bias).collect();
        for _ in 0..self.max_sweeps {
            let mut max_delta = F::zero();
            for j in 0..d {
                if col_sq[j] == F::zero() {
                    continue;
                }
                let old = self.weights[j];
                let mut rho = F::zero();
                for i in 0..x.rows {
                    let xij = x.row(i)[j];
                    rho = rho + xij * (residual[i] + xij * old);
                }
                rho = rho / n;
                let new = soft_threshold(rho, l1) / (col_sq[j] + l2);
                if new != old {
                    let delta = old - new;
                    for i in 0..x.rows {
                        residual[i] = residual[i] + x.row(i)[j] * delta;
                    }
                    self.weights[j] = new;
                    max_delta = max_delta.max(delta.abs());
                }
            }
            let shift = residual.iter().copied().sum::<F>() / n;
            if shift != F::zero() {
                self.bias = self.bias + shift;
                for r in residual.iter_mut() {
                    *r = *r - shift;
                }
                max_delta = max_delta.max(shift.abs());
            }
            if max_delta < self.tol {
                break;
            }
        }
    }

    pub fn predict(&self, x: &FeatureMatrix<F>) -> Vec<F> {
        (0..x.rows)
            .map(|i| {
                let mut value = self.bias;
                for (w, &xv) in self.weights.iter().zip(x.row(i)) {
                    value = value + *w * xv;
                }
                value
            })
            .collect()
    }
}
