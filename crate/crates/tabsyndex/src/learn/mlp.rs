//! Single-hidden-layer perceptron: 32 rectified units, softmax/log loss for
//! classification, mean squared loss for regression, full-batch gradient
//! descent. Weights draw from a seeded uniform, so fits are reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

use super::encode::FeatureMatrix;

const HIDDEN: usize = 32;
const EPOCHS: usize = 300;
const INIT_RANGE: f64 = 0.1;

/// Training targets: class indices in `0..outputs`, or numeric values.
pub enum MlpTargets<'a, F> {
    Classes(&'a [u32]),
    Values(&'a [F]),
}

/// Loss gradient with the same shapes as the corresponding weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpGradient<F = f64> {
    pub w1: Vec<F>,
    pub b1: Vec<F>,
    pub w2: Vec<F>,
    pub b2: Vec<F>,
}

/// `w1` is `inputs x HIDDEN` row-major, `w2` is `HIDDEN x outputs`; biases
/// start at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp<F = f64> {
    pub w1: Vec<F>,
    pub b1: Vec<F>,
    pub w2: Vec<F>,
    pub b2: Vec<F>,
    pub inputs: usize,
    pub outputs: usize,
    pub learning_rate: F,
}

impl<F: Scalar> Mlp<F> {
    /// Classification networks take `outputs` >= 2 softmax units; regression
    /// networks take `outputs == 1`.
    pub fn new(inputs: usize, outputs: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |n: usize| -> Vec<F> {
            (0..n)
                .map(|_| F::c(rng.random_range(-INIT_RANGE..=INIT_RANGE)))
                .collect()
        };
        Mlp {
            w1: draw(inputs * HIDDEN),
            b1: vec![F::zero(); HIDDEN],
            w2: draw(HIDDEN * outputs),
            b2: vec![F::zero(); outputs],
            inputs,
            outputs,
            learning_rate: F::c(0.01),
        }
    }

    fn forward(&self, row: &[F]) -> (Vec<F>, Vec<F>) {
        let mut hidden = self.b1.clone();
        for (i, &x) in row.iter().enumerate() {
            if x == F::zero() {
                continue;
            }
            let base = i * HIDDEN;
            for (h, slot) in hidden.iter_mut().enumerate() {
                *slot = *slot + self.w1[base + h] * x;
            }
        }
        for h in hidden.iter_mut() {
            *h = h.max(F::zero());
        }
        let mut out = self.b2.clone();
        for (h, &a) in hidden.iter().enumerate() {
            if a == F::zero() {
                continue;
            }
            let base = h * self.outputs;
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = *slot + self.w2[base + k] * a;
            }
        }
        (hidden, out)
    }

    fn softmax(logits: &[F]) -> Vec<F> {
        let peak = logits
            .iter()
            .copied()
            .fold(F::neg_infinity(), |a, b| a.max(b));
        let exps: Vec<F> = logits.iter().map(|&z| (z - peak).exp()).collect();
        let total = exps.iter().copied().sum::<F>();
        exps.into_iter().map(|e| e / total).collect()
    }

    /// Mean log loss (classification) or mean squared error (regression).
    pub fn loss(&self, x: &FeatureMatrix<F>, targets: &MlpTargets<'_, F>) -> F {
        let n = F::from_count(x.rows.max(1));
        let mut total = F::zero();
        for i in 0..x.rows {
            let (_, out) = self.forward(x.row(i));
            match targets {
                MlpTargets::Classes(y) => {
                    let p = Self::softmax(&out);
                    total = total - p[y[i] as usize].ln();
                }
                MlpTargets::Values(y) => {
                    let err = out[0] - y[i];
                    total = total + err * err;
                }
            }
        }
        total / n
    }

    /// Exact full-batch gradient of [`Self::loss`].
    pub fn gradient(&self, x: &FeatureMatrix<F>, targets: &MlpTargets<'_, F>) -> MlpGradient<F> {
        let n = F::from_count(x.rows.max(1));
        let mut grad = MlpGradient {
            w1: vec![F::zero(); self.w1.len()],
            b1: vec![F::zero(); HIDDEN],
            w2: vec![F::zero(); self.w2.len()],
            b2: vec![F::zero(); self.outputs],
        };
        for i in 0..x.rows {
            let row = x.row(i);
            let (hidden, out) = self.forward(row);
            let dout: Vec<F> = match targets {
                MlpTargets::Classes(y) => {
                    let mut d = Self::softmax(&out);
                    let truth = y[i] as usize;
                    d[truth] = d[truth] - F::one();
                    d.into_iter().map(|v| v / n).collect()
                }
                MlpTargets::Values(y) => {
                    vec![F::c(2.0) * (out[0] - y[i]) / n]
                }
            };
            let mut dhidden = vec![F::zero(); HIDDEN];
            for (h, &a) in hidden.iter().enumerate() {
                // Inactive ReLU: w2 gradient is zero and no signal flows back.
                if a <= F::zero() {
                    continue;
                }
                let base = h * self.outputs;
                for (k, &dk) in dout.iter().enumerate() {
                    grad.w2[base + k] = grad.w2[base + k] + a * dk;
                    dhidden[h] = dhidden[h] + self.w2[base + k] * dk;
                }
            }
            for (k, &dk) in dout.iter().enumerate() {
                grad.b2[k] = grad.b2[k] + dk;
            }
            for (h, &dh) in dhidden.iter().enumerate() {
                if dh == F::zero() {
                    continue;
                }
                grad.b1[h] = grad.b1[h] + dh;
                for (i_feat, &xv) in row.iter().enumerate() {
                    if xv != F::zero() {
                        grad.w1[i_feat * HIDDEN + h] = grad.w1[i_feat * HIDDEN + h] + dh * xv;
                    }
                }
            }
        }
        grad
    }

    pub fn fit(&mut self, x: &FeatureMatrix<F>, targets: &MlpTargets<'_, F>) {
        for _ in 0..EPOCHS {
            let grad = self.gradient(x, targets);
            let lr = self.learning_rate;
            for (w, g) in self.w1.iter_mut().zip(&grad.w1) {
                *w = *w - lr * *g;
            }
            for (b, g) in self.b1.iter_mut().zip(&grad.b1) {
                *b = *b - lr * *g;
            }
            for (w, g) in self.w2.iter_mut().zip(&grad.w2) {
                *w = *w - lr * *g;
            }
            for (b, g) in self.b2.iter_mut().zip(&grad.b2) {
                *b = *b - lr * *g;
            }
        }
    }

    /// Argmax over softmax units; ties resolve to the lowest index.
    pub fn predict_classes(&self, x: &FeatureMatrix<F>) -> Vec<u32> {
        (0..x.rows)
            .map(|i| {
                let (_, out) = self.forward(x.row(i));
                let mut best = 0usize;
                for (k, &v) in out.iter().enumerate() {
                    if v > out[best] {
                        best = k;
                    }
                }
                best as u32
            })
            .collect()
    }

    pub fn predict_values(&self, x: &FeatureMatrix<F>) -> Vec<F> {
        (0..x.rows).map(|i| self.forward(x.row(i)).1[0]).collect()
    }
}
