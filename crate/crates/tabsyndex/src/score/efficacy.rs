//! Machine-learning efficacy: four task-appropriate models are fitted on
//! real training data and on synthetic data with the same seed, both are
//! evaluated on held-out real data, and their metric gap becomes the score.

use crate::error::{Error, Result};
use crate::learn::{
    macro_f1, rmse, DecisionTree, ElasticNet, FeatureEncoder, Mlp, ModelKind, MulticlassLogistic,
    Penalty, RandomForest, Task,
};
use crate::learn::mlp::MlpTargets;
use crate::report::{EfficacyBreakdown, EfficacyRow, Warning, WarningCode};
use crate::scalar::{Scalar, EPS_ZERO};
use crate::table::{ensure_schemas_match, ColumnKind, Table};

/// min(1, |real − synth| / max(real, ε)).
pub fn relative_error<F: Scalar>(metric_real: F, metric_synth: F) -> F {
    let denom = metric_real.max(F::c(EPS_ZERO));
    ((metric_real - metric_synth).abs() / denom).min(F::one())
}

/// 1 minus the mean of the per-model errors.
pub fn s_ml_from_errors<F: Scalar>(errors: &[F]) -> F {
    F::one() - errors.iter().copied().sum::<F>() / F::from_count(errors.len().max(1))
}

/// Category codes for one table's target column against a shared label
/// vocabulary built across all tables entering the comparison.
struct SharedTarget {
    vocab: Vec<String>,
    codes: [Vec<u32>; 3],
}

fn shared_target<F: Scalar>(tables: [&Table<F>; 3], target: usize) -> SharedTarget {
    let mut vocab: Vec<String> = Vec::new();
    for table in tables {
        let cat = table.categorical(target).expect("categorical target");
        for label in &cat.categories {
            if !vocab.contains(label) {
                vocab.push(label.clone());
            }
        }
    }
    let codes = tables.map(|table| {
        let cat = table.categorical(target).expect("categorical target");
        cat.codes
            .iter()
            .map(|&code| {
                let label = cat.label(code);
                vocab.iter().position(|v| v == label).expect("label in vocab") as u32
            })
            .collect()
    });
    SharedTarget { vocab, codes }
}

struct ClassificationSetup<F> {
    train_x: crate::learn::FeatureMatrix<F>,
    test_x: crate::learn::FeatureMatrix<F>,
    train_y: Vec<u32>,
    n_classes: usize,
}

fn classification_metric<F: Scalar>(
    kind: ModelKind,
    setup: &ClassificationSetup<F>,
    test_y: &[u32],
    seed: u64,
) -> Result<F> {
    let pred = match kind {
        ModelKind::Logistic => {
            MulticlassLogistic::fit(&setup.train_x, &setup.train_y)?.predict(&setup.test_x)
        }
        ModelKind::RandomForest => {
            RandomForest::fit_classifier(&setup.train_x, &setup.train_y, seed)
                .predict_classes(&setup.test_x)
        }
        ModelKind::DecisionTree => {
            DecisionTree::fit_classifier(&setup.train_x, &setup.train_y)
                .predict_classes(&setup.test_x)
        }
        ModelKind::Mlp => {
            let mut mlp = Mlp::new(setup.train_x.cols, setup.n_classes.max(2), seed);
            mlp.fit(&setup.train_x, &MlpTargets::Classes(&setup.train_y));
            mlp.predict_classes(&setup.test_x)
        }
        other => unreachable!("{other:?} is not a classification model"),
    };
    Ok(macro_f1(test_y, &pred))
}

fn regression_metric<F: Scalar>(
    kind: ModelKind,
    train_x: &crate::learn::FeatureMatrix<F>,
    train_y: &[F],
    test_x: &crate::learn::FeatureMatrix<F>,
    test_y: &[F],
    seed: u64,
) -> F {
    let pred = match kind {
        ModelKind::RandomForest => {
            RandomForest::fit_regressor(train_x, train_y, seed).predict_values(test_x)
        }
        ModelKind::Lasso => {
            let mut model = ElasticNet::new(train_x.cols, Penalty::Lasso);
            model.fit(train_x, train_y);
            model.predict(test_x)
        }
        ModelKind::Ridge => {
            let mut model = ElasticNet::new(train_x.cols, Penalty::Ridge);
            model.fit(train_x, train_y);
            model.predict(test_x)
        }
        ModelKind::ElasticNet => {
            let mut model = ElasticNet::new(train_x.cols, Penalty::ElasticNet);
            model.fit(train_x, train_y);
            model.predict(test_x)
        }
        other => unreachable!("{other:?} is not a regression model"),
    };
    rmse(test_y, &pred)
}

/// S_ml over the four models for the target's task. Models whose fit is
/// impossible on degenerate training labels score error 1 with a warning.
pub fn ml_efficacy<F: Scalar>(
    real_train: &Table<F>,
    synth: &Table<F>,
    real_test: &Table<F>,
    target: &str,
    seed: u64,
) -> Result<(F, EfficacyBreakdown<F>, Vec<Warning>)> {
    ensure_schemas_match(real_train, synth)?;
    ensure_schemas_match(real_train, real_test)?;
    let target_index = real_train
        .schema()
        .index_of(target)
        .ok_or_else(|| Error::InvalidArgument {
            name: "target".to_string(),
            message: format!("column '{target}' not found"),
        })?;
    let task = match real_train.schema().columns[target_index].kind {
        ColumnKind::Categorical => Task::Classification,
        ColumnKind::Continuous => Task::Regression,
    };
    let feature_columns: Vec<usize> = (0..real_train.column_count())
        .filter(|&i| i != target_index)
        .collect();
    if feature_columns.is_empty() {
        return Err(Error::InsufficientData(
            "efficacy needs at least one feature column besides the target".to_string(),
        ));
    }

    // Each training table gets its own encoder so standardization and
    // vocabulary always come from that model's training data.
    let real_encoder = FeatureEncoder::fit(real_train, &feature_columns)?;
    let synth_encoder = FeatureEncoder::fit(synth, &feature_columns)?;
    let real_x = real_encoder.transform(real_train)?;
    let real_test_x = real_encoder.transform(real_test)?;
    let synth_x = synth_encoder.transform(synth)?;
    let synth_test_x = synth_encoder.transform(real_test)?;

    let mut rows = Vec::with_capacity(4);
    let mut errors = Vec::with_capacity(4);
    let mut warnings = Vec::new();

    match task {
        Task::Classification => {
            let shared = shared_target([real_train, synth, real_test], target_index);
            let n_classes = shared.vocab.len();
            let [train_y_real, train_y_synth, test_y] = shared.codes;
            let real_setup = ClassificationSetup {
                train_x: real_x,
                test_x: real_test_x,
                train_y: train_y_real,
                n_classes,
            };
            let synth_setup = ClassificationSetup {
                train_x: synth_x,
                test_x: synth_test_x,
                train_y: train_y_synth,
                n_classes,
            };
            for kind in ModelKind::roster(task) {
                let metric_real = classification_metric(kind, &real_setup, &test_y, seed);
                let metric_synth = classification_metric(kind, &synth_setup, &test_y, seed);
                let (metric_real, metric_synth, error) = match (metric_real, metric_synth) {
                    (Ok(r), Ok(s)) => (r, s, relative_error(r, s)),
                    (r, s) => {
                        warnings.push(Warning::new(
                            WarningCode::DegenerateTraining,
                            format!(
                                "{kind:?}: training labels hold a single class; error set to 1"
                            ),
                        ));
                        (
                            r.unwrap_or(F::zero()),
                            s.unwrap_or(F::zero()),
                            F::one(),
                        )
                    }
                };
                errors.push(error);
                rows.push(EfficacyRow {
                    model: kind,
                    metric_real,
                    metric_synth,
                    relative_error: error,
                });
            }
        }
        Task::Regression => {
            let train_y_real = real_train.continuous(target_index).expect("continuous target");
            let train_y_synth = synth.continuous(target_index).expect("continuous target");
            let test_y = real_test.continuous(target_index).expect("continuous target");
            for kind in ModelKind::roster(task) {
                let metric_real =
                    regression_metric(kind, &real_x, train_y_real, &real_test_x, test_y, seed);
                let metric_synth =
                    regression_metric(kind, &synth_x, train_y_synth, &synth_test_x, test_y, seed);
                let error = relative_error(metric_real, metric_synth);
                errors.push(error);
                rows.push(EfficacyRow {
                    model: kind,
                    metric_real,
                    metric_synth,
                    relative_error: error,
                });
            }
        }
    }

    let score = s_ml_from_errors(&errors);
    let breakdown = EfficacyBreakdown {
        task,
        target: target.to_string(),
        metric: match task {
            Task::Classification => "macro_f1".to_string(),
            Task::Regression => "rmse".to_string(),
        },
        rows,
    };
    Ok((score, breakdown, warnings))
}
