//! Random forest over the CART tree: bootstrap resampling per tree and
//! seeded √d feature subsampling per split. All randomness flows from one
//! seeded generator, so a fixed seed gives identical forests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

use super::encode::FeatureMatrix;
use super::tree::DecisionTree;

const N_TREES: usize = 20;

enum Targets<'a, F> {
    Classes(&'a [u32]),
    Values(&'a [F]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest<F = f64> {
    trees: Vec<DecisionTree<F>>,
}

fn features_per_split(d: usize) -> usize {
    ((d as f64).sqrt().floor() as usize).clamp(1, d.max(1))
}

impl<F: Scalar> RandomForest<F> {
    pub fn fit_classifier(x: &FeatureMatrix<F>, y: &[u32], seed: u64) -> Self {
        Self::fit(x, &Targets::Classes(y), seed)
    }

    pub fn fit_regressor(x: &FeatureMatrix<F>, y: &[F], seed: u64) -> Self {
        Self::fit(x, &Targets::Values(y), seed)
    }

    fn fit(x: &FeatureMatrix<F>, targets: &Targets<'_, F>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = x.rows;
        let k = features_per_split(x.cols);
        let trees = (0..N_TREES)
            .map(|_| {
                let draw: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                let mut boot = FeatureMatrix::zeros(n, x.cols);
                for (slot, &src) in draw.iter().enumerate() {
                    boot.data[slot * x.cols..(slot + 1) * x.cols].copy_from_slice(x.row(src));
                }
                let mut sampler = |d: usize| {
                    let mut chosen = rand::seq::index::sample(&mut rng, d, k.min(d)).into_vec();
                    chosen.sort_unstable();
                    chosen
                };
                match targets {
                    Targets::Classes(y) => {
                        let labels: Vec<u32> = draw.iter().map(|&i| y[i]).collect();
                        DecisionTree::fit_classifier_with(&boot, &labels, &mut sampler)
                    }
                    Targets::Values(y) => {
                        let labels: Vec<F> = draw.iter().map(|&i| y[i]).collect();
                        DecisionTree::fit_regressor_with(&boot, &labels, &mut sampler)
                    }
                }
            })
            .collect();
        RandomForest { trees }
    }

    /// Majority vote across trees; ties resolve to the lowest code.
    pub fn predict_classes(&self, x: &FeatureMatrix<F>) -> Vec<u32> {
        let per_tree: Vec<Vec<u32>> = self.trees.iter().map(|t| t.predict_classes(x)).collect();
        (0..x.rows)
            .map(|i| {
                let mut votes: Vec<(u32, usize)> = Vec::new();
                for preds in &per_tree {
                    let class = preds[i];
                    match votes.iter_mut().find(|(c, _)| *c == class) {
                        Some((_, count)) => *count += 1,
                        None => votes.push((class, 1)),
                    }
                }
                votes.sort_by_key(|&(class, count)| (std::cmp::Reverse(count), class));
                votes[0].0
            })
            .collect()
    }

    /// Mean of the per-tree predictions.
    pub fn predict_values(&self, x: &FeatureMatrix<F>) -> Vec<F> {
        let per_tree: Vec<Vec<F>> = self.trees.iter().map(|t| t.predict_values(x)).collect();
        let scale = F::from_count(self.trees.len().max(1));
        (0..x.rows)
            .map(|i| per_tree.iter().map(|p| p[i]).sum::<F>() / scale)
            .collect()
    }
}
