//! CART decision tree for classification (Gini) and regression (variance),
//! with fixed depth and minimum-split bounds. Split search is exhaustive
//! over value midpoints; ties keep the first candidate, so fitting is
//! deterministic for a fixed row and feature order.

use crate::scalar::Scalar;

use super::encode::FeatureMatrix;

const MAX_DEPTH: usize = 8;
const MIN_SPLIT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
enum Node<F> {
    LeafClass(u32),
    LeafValue(F),
    Split {
        feature: usize,
        threshold: F,
        left: usize,
        right: usize,
    },
}

enum Labels<'a, F> {
    Classes(&'a [u32], usize),
    Values(&'a [F]),
}

/// Candidate features to scan for one split, given the feature count.
pub(crate) type FeatureSampler<'a> = dyn FnMut(usize) -> Vec<usize> + 'a;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecisionTree<F = f64> {
    nodes: Vec<Node<F>>,
}

impl<F: Scalar> DecisionTree<F> {
    pub fn fit_classifier(x: &FeatureMatrix<F>, y: &[u32]) -> Self {
        Self::fit_classifier_with(x, y, &mut |d| (0..d).collect())
    }

    pub fn fit_regressor(x: &FeatureMatrix<F>, y: &[F]) -> Self {
        Self::fit_regressor_with(x, y, &mut |d| (0..d).collect())
    }

    pub(crate) fn fit_classifier_with(
        x: &FeatureMatrix<F>,
        y: &[u32],
        sampler: &mut FeatureSampler<'_>,
    ) -> Self {
        let n_classes = y.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut tree = DecisionTree { nodes: Vec::new() };
        let indices: Vec<usize> = (0..x.rows).collect();
        tree.build(x, &Labels::Classes(y, n_classes), indices, 0, sampler);
        tree
    }

    pub(crate) fn fit_regressor_with(
        x: &FeatureMatrix<F>,
        y: &[F],
        sampler: &mut FeatureSampler<'_>,
    ) -> Self {
        let mut tree = DecisionTree { nodes: Vec::new() };
        let indices: Vec<usize> = (0..x.rows).collect();
        tree.build(x, &Labels::Values(y), indices, 0, sampler);
        tree
    }

    fn leaf(&mut self, labels: &Labels<'_, F>, indices: &[usize]) -> usize {
        let node = match labels {
            Labels::Classes(y, n_classes) => {
                let mut counts = vec![0usize; *n_classes];
                for &i in indices {
                    counts[y[i] as usize] += 1;
                }
                let best = counts
                    .iter()
                    .enumerate()
                    .max_by_key(|&(class, &count)| (count, std::cmp::Reverse(class)))
                    .map(|(class, _)| class as u32)
                    .unwrap_or(0);
                Node::LeafClass(best)
            }
            Labels::Values(y) => {
                let n = F::from_count(indices.len().max(1));
                let mean = indices.iter().map(|&i| y[i]).sum::<F>() / n;
                Node::LeafValue(mean)
            }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn build(
        &mut self,
        x: &FeatureMatrix<F>,
        labels: &Labels<'_, F>,
        indices: Vec<usize>,
        depth: usize,
        sampler: &mut FeatureSampler<'_>,
    ) -> usize {
        let n = indices.len();
        if depth >= MAX_DEPTH || n < MIN_SPLIT || is_pure(labels, &indices) {
            return self.leaf(labels, &indices);
        }
        let parent_impurity = impurity(labels, &indices);
        let mut best: Option<(F, usize, F)> = None;
        let mut sorted = indices.clone();
        for feature in sampler(x.cols) {
            sorted.sort_by(|&a, &b| {
                x.row(a)[feature]
                    .partial_cmp(&x.row(b)[feature])
                    .expect("finite feature values")
            });
            let mut scan = SplitScan::start(labels, &sorted);
            for pos in 1..n {
                scan.advance(labels, sorted[pos - 1]);
                let prev = x.row(sorted[pos - 1])[feature];
                let here = x.row(sorted[pos])[feature];
                if prev == here {
                    continue;
                }
                let score = scan.weighted_impurity(F::from_count(n));
                if score < parent_impurity && best.map_or(true, |(b, _, _)| score < b) {
                    let threshold = (prev + here) / F::c(2.0);
                    best = Some((score, feature, threshold));
                }
            }
        }
        let Some((_, feature, threshold)) = best else {
            return self.leaf(labels, &indices);
        };
        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
            .into_iter()
            .partition(|&i| x.row(i)[feature] <= threshold);
        let slot = self.nodes.len();
        self.nodes.push(Node::Split {
            feature,
            threshold,
            left: 0,
            right: 0,
        });
        let left = self.build(x, labels, left_idx, depth + 1, sampler);
        let right = self.build(x, labels, right_idx, depth + 1, sampler);
        if let Node::Split {
            left: l, right: r, ..
        } = &mut self.nodes[slot]
        {
            *l = left;
            *r = right;
        }
        slot
    }

    fn descend(&self, row: &[F]) -> &Node<F> {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[*feature] <= *threshold { *left } else { *right };
                }
                leaf => return leaf,
            }
        }
    }

    pub fn predict_classes(&self, x: &FeatureMatrix<F>) -> Vec<u32> {
        (0..x.rows)
            .map(|i| match self.descend(x.row(i)) {
                Node::LeafClass(c) => *c,
                _ => unreachable!("regression leaf in classifier"),
            })
            .collect()
    }

    pub fn predict_values(&self, x: &FeatureMatrix<F>) -> Vec<F> {
        (0..x.rows)
            .map(|i| match self.descend(x.row(i)) {
                Node::LeafValue(v) => *v,
                _ => unreachable!("class leaf in regressor"),
            })
            .collect()
    }
}

fn is_pure<F: Scalar>(labels: &Labels<'_, F>, indices: &[usize]) -> bool {
    match labels {
        Labels::Classes(y, _) => indices.windows(2).all(|w| y[w[0]] == y[w[1]]),
        Labels::Values(y) => indices.windows(2).all(|w| y[w[0]] == y[w[1]]),
    }
}

/// Gini impurity or variance of one candidate node, times its share of
/// the parent (so values are comparable across splits of the same node).
fn impurity<F: Scalar>(labels: &Labels<'_, F>, indices: &[usize]) -> F {
    let n = F::from_count(indices.len().max(1));
    match labels {
        Labels::Classes(y, n_classes) => {
            let mut counts = vec![0usize; *n_classes];
            for &i in indices {
                counts[y[i] as usize] += 1;
            }
            let sum_sq = counts
                .iter()
                .map(|&c| {
                    let c = F::from_count(c);
                    c * c
                })
                .sum::<F>();
            F::one() - sum_sq / (n * n)
        }
        Labels::Values(y) => {
            let mean = indices.iter().map(|&i| y[i]).sum::<F>() / n;
            indices.iter().map(|&i| (y[i] - mean) * (y[i] - mean)).sum::<F>() / n
        }
    }
}

/// Incremental left/right statistics while sweeping a sorted candidate
/// feature. Left starts empty and absorbs one row per step.
struct SplitScan<F> {
    left_counts: Vec<usize>,
    right_counts: Vec<usize>,
    left_sum: F,
    left_sum_sq: F,
    right_sum: F,
    right_sum_sq: F,
    left_n: usize,
    right_n: usize,
}

impl<F: Scalar> SplitScan<F> {
    fn start(labels: &Labels<'_, F>, indices: &[usize]) -> Self {
        let mut scan = SplitScan {
            left_counts: Vec::new(),
            right_counts: Vec::new(),
            left_sum: F::zero(),
            left_sum_sq: F::zero(),
            right_sum: F::zero(),
            right_sum_sq: F::zero(),
            left_n: 0,
            right_n: indices.len(),
        };
        match labels {
            Labels::Classes(y, n_classes) => {
                scan.left_counts = vec![0; *n_classes];
                scan.right_counts = vec![0; *n_classes];
                for &i in indices {
                    scan.right_counts[y[i] as usize] += 1;
                }
            }
            Labels::Values(y) => {
                for &i in indices {
                    scan.right_sum = scan.right_sum + y[i];
                    scan.right_sum_sq = scan.right_sum_sq + y[i] * y[i];
                }
            }
        }
        scan
    }

    fn advance(&mut self, labels: &Labels<'_, F>, index: usize) {
        self.left_n += 1;
        self.right_n -= 1;
        match labels {
            Labels::Classes(y, _) => {
                let class = y[index] as usize;
                self.left_counts[class] += 1;
                self.right_counts[class] -= 1;
            }
            Labels::Values(y) => {
                let v = y[index];
                self.left_sum = self.left_sum + v;
                self.left_sum_sq = self.left_sum_sq + v * v;
                self.right_sum = self.right_sum - v;
                self.right_sum_sq = self.right_sum_sq - v * v;
            }
        }
    }

    fn weighted_impurity(&self, total: F) -> F {
        if !self.left_counts.is_empty() {
            let side = |counts: &[usize], n: usize| {
                if n == 0 {
                    return F::zero();
                }
                let nf = F::from_count(n);
                let sum_sq = counts
                    .iter()
                    .map(|&c| {
                        let c = F::from_count(c);
                        c * c
                    })
                    .sum::<F>();
                nf - sum_sq / nf
            };
            (side(&self.left_counts, self.left_n) + side(&self.right_counts, self.right_n)) / total
        } else {
            let side = |sum: F, sum_sq: F, n: usize| {
                if n == 0 {
                    return F::zero();
                }
                sum_sq - sum * sum / F::from_count(n)
            };
            (side(self.left_sum, self.left_sum_sq, self.left_n)
                + side(self.right_sum, self.right_sum_sq, self.right_n))
                / total
        }
    }
}
