//! Seeded, dependency-free learners used by the propensity and efficacy
//! scores: feature encoding, linear models, trees, a small MLP, and the
//! evaluation metrics they report.

pub mod encode;
pub mod forest;
pub mod linear;
pub mod logistic;
pub mod metrics;
pub mod mlp;
pub mod tree;

use serde::{Deserialize, Serialize};

pub use encode::{FeatureEncoder, FeatureMatrix};
pub use forest::RandomForest;
pub use linear::{ElasticNet, Penalty};
pub use logistic::{LogisticRegression, MulticlassLogistic};
pub use metrics::{macro_f1, rmse};
pub use mlp::Mlp;
pub use tree::DecisionTree;

/// Prediction task implied by the target column's kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Classification,
    Regression,
}

/// Model families entering the efficacy comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Logistic,
    RandomForest,
    DecisionTree,
    Mlp,
    Lasso,
    Ridge,
    ElasticNet,
}

impl ModelKind {
    /// The four models evaluated for a task, in reporting order.
    pub fn roster(task: Task) -> [ModelKind; 4] {
        match task {
            Task::Classification => [
                ModelKind::Logistic,
                ModelKind::RandomForest,
                ModelKind::DecisionTree,
                ModelKind::Mlp,
            ],
            Task::Regression => [
                ModelKind::RandomForest,
                ModelKind::Lasso,
                ModelKind::Ridge,
                ModelKind::ElasticNet,
            ],
        }
    }
}
