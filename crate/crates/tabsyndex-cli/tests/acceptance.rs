//! Acceptance gate for the whole workspace. Runs without the libtest
//! harness and prints exactly one line per criterion:
//!
//! ```text
//! criterion <n> PASS - <name>: <detail>
//! criterion <n> FAIL - <name>: <assertion message>
//! ```
//!
//! The process exits nonzero if any criterion fails. Benchmark-shaped
//! fixtures come from the shared test module; each line notes whether a
//! cached real dataset or its offline simulation was used.

#[path = "../../tabsyndex/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tabsyndex::aggregate::{aggregate, WeightConfig};
use tabsyndex::evaluate::{evaluate, EvalConfig};
use tabsyndex::generate::{generate, GeneratorKind, GeneratorSpec};
use tabsyndex::learn::mlp::MlpTargets;
use tabsyndex::learn::{FeatureMatrix, LogisticRegression, Mlp};
use tabsyndex::score::basic::basic_score;
use tabsyndex::score::{
    column_coverage, entry_error, expected_pmse0, pmse, relative_error, s_ml_from_errors,
    s_pmse_index, signed_log, stat_error,
};
use tabsyndex::table::CategoricalColumn;
use tabsyndex::{Column, ColumnSpec, Schema, Table, WarningCode};

const ORACLE_TOL: f64 = 1e-9;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 0 {
        (xs[mid - 1] + xs[mid]) / 2.0
    } else {
        xs[mid]
    }
}

fn head(table: &Table<f64>, rows: usize) -> Table<f64> {
    let keep: Vec<usize> = (0..rows.min(table.row_count())).collect();
    table.take_rows(&keep)
}

fn one_column(values: &[f64]) -> Table<f64> {
    Table::from_columns(
        Schema::new(vec![ColumnSpec::continuous("c0")]),
        vec![Column::Continuous(values.to_vec())],
    )
    .unwrap()
}

/// Criterion 1: a table evaluated against an exact copy of itself scores 1
/// on every component except pMSE, which lands at its indistinguishable
/// ceiling; the power-plant case must finish within a minute.
fn criterion_identity() -> String {
    let config = EvalConfig::default();
    let mut parts = Vec::new();
    for name in common::BENCHMARKS {
        let (table, provenance) = common::benchmark_table(name);
        let start = Instant::now();
        let report = evaluate(&table, &table, &config).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        let c = &report.components;
        assert_eq!(c.s_basic, Some(1.0), "{name}: s_basic must equal 1 exactly");
        assert_eq!(c.s_corr, Some(1.0), "{name}: s_corr must equal 1 exactly");
        assert_eq!(c.s_cr, Some(1.0), "{name}: s_cr must equal 1 exactly");
        assert_eq!(c.s_ml, Some(1.0), "{name}: s_ml must equal 1 exactly");
        let s_pmse = c.s_pmse.expect("identity pmse computed");
        assert!(s_pmse >= 0.8, "{name}: identity s_pmse {s_pmse} below 0.8");
        assert!(c.tabsyndex >= 0.95, "{name}: identity total {}", c.tabsyndex);
        if name == "powerplant" {
            assert!(elapsed < 60.0, "powerplant identity took {elapsed:.1}s, budget 60s");
        }
        parts.push(format!("{name}({provenance}) {:.4} in {elapsed:.1}s", c.tabsyndex));
    }
    parts.join(", ")
}

/// Criterion 2: half-vs-half sampling trends. Larger samples of the same
/// distribution score higher, and the full-proportion medians land inside
/// the published bands.
fn criterion_trends() -> String {
    let start = Instant::now();
    let config = EvalConfig::default();
    let proportions = [0.10, 0.25, 0.50, 1.0];
    let mut medians = Vec::new();
    for name in ["powerplant", "wine", "concrete"] {
        let (table, _) = common::benchmark_table(name);
        let mut per_prop: Vec<Vec<f64>> = vec![Vec::new(); proportions.len()];
        for seed in 0..20u64 {
            let result =
                tabsyndex::sanity_check(&table, &proportions, seed, &config, name).unwrap();
            for (slot, entry) in result.entries.iter().enumerate() {
                per_prop[slot].push(entry.components.tabsyndex);
            }
        }
        medians.push(per_prop.into_iter().map(median).collect::<Vec<f64>>());
    }
    let (pp100, wine100) = (medians[0][3], medians[1][3]);
    let (c10, c50) = (medians[2][0], medians[2][2]);
    assert!((0.92..=1.0).contains(&pp100), "powerplant 100% median {pp100} outside [0.92, 1]");
    assert!((0.88..=1.0).contains(&wine100), "wine 100% median {wine100} outside [0.88, 1]");
    assert!(c10 < c50, "concrete 10% median {c10} not below 50% median {c50}");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1800.0, "trend suite took {elapsed:.0}s, budget 30min");
    format!(
        "powerplant@100 {pp100:.3}, wine@100 {wine100:.3}, concrete@10 {c10:.3} < @50 {c50:.3}, \
         20 seeds in {elapsed:.0}s"
    )
}

/// Criterion 3: frozen hand-derived oracle values, asserted to 1e-9.
fn criterion_oracles() -> String {
    let mut checks = 0usize;
    let mut close = |actual: f64, expected: f64, label: &str| {
        assert!(
            (actual - expected).abs() <= ORACLE_TOL,
            "{label}: {actual} differs from {expected}"
        );
        checks += 1;
    };

    close(stat_error(10.0, 12.0), 0.2, "statistic error (10, 12)");
    close(stat_error(1.0, 3.5), 1.0, "statistic error clips at 1");
    let (s_basic, breakdown) = basic_score(
        &one_column(&[8.0, 8.0, 10.0, 12.0, 12.0]),
        &one_column(&[10.0, 11.0, 11.0, 13.0, 15.0]),
    )
    .unwrap();
    close(breakdown.s_mean, 0.8, "mean statistic score");
    close(breakdown.s_median, 0.9, "median statistic score");
    close(breakdown.s_std, 1.0, "std statistic score");
    close(s_basic, 0.9, "basic score composition");

    close(signed_log(0.5), -0.693_147_180_559_945_3, "sln(0.5)");
    close(signed_log(-0.5), 0.693_147_180_559_945_3, "sln(-0.5)");
    close(entry_error(0.5, 0.25), 1.0, "association entry error 0.5 vs 0.25");

    close(pmse(&[0.9, 0.1], 0.5).unwrap(), 0.16, "pmse of [0.9, 0.1]");
    close(pmse(&[1.0, 0.0], 0.5).unwrap(), 0.25, "pmse at maximal separation");
    close(expected_pmse0(3, 0.5, 100).unwrap(), 0.0025, "null pmse k=3 N=100");
    close(expected_pmse0(2, 0.5, 8).unwrap(), 0.015625, "null pmse k=2 N=8");
    close(1.2f64.powf(-1.0), 0.833_333_333_333_333_4, "pmse score at ratio 0");
    close(1.2f64.powf(-4.0), 0.482_253_086_419_753_06, "pmse score at ratio 5");
    let identity = head(&common::benchmark_table("powerplant").0, 2000);
    let null_fit = s_pmse_index(&identity, &identity, 1.2).unwrap();
    close(null_fit.ratio, 0.0, "identity propensity ratio");
    close(null_fit.s_pmse, 1.0 / 1.2, "identity pmse score");
    let shifted = one_shifted(&identity, 1000.0);
    let separated = s_pmse_index(&identity, &shifted, 1.2).unwrap();
    close(
        separated.s_pmse,
        1.2f64.powf(-(1.0 - separated.ratio).abs()),
        "pmse score follows the exponential map",
    );

    let (cov, ratios) = column_coverage(&[90, 10], &[50, 50], 100, 100, 2.0).unwrap();
    close(ratios[0].unwrap(), 0.555_555_555_555_555_6, "majority category ratio");
    close(ratios[1].unwrap(), 2.0, "minority ratio clips at beta");
    close(cov, 1.0, "ratio mean 1.2778 clips to 1");
    let (cov, ratios) = column_coverage(&[90, 10], &[100, 0], 100, 100, 2.0).unwrap();
    close(ratios[0].unwrap(), 1.111_111_111_111_111_2, "overfilled category ratio");
    close(ratios[1].unwrap(), 0.0, "dropped category ratio");
    close(cov, 0.555_555_555_555_555_6, "dropping a rare category halves the score");
    let mut collapsed = vec![0usize; 20];
    collapsed[0] = 100;
    let (cov, _) = column_coverage(&[5; 20], &collapsed, 100, 100, 2.0).unwrap();
    close(cov, 0.1, "single-bin mode collapse coverage");

    close(s_ml_from_errors(&[0.1, 0.2, 0.3, 0.4]), 0.75, "efficacy from model errors");
    close(relative_error(2.0, 5.0), 1.0, "efficacy relative error clips");
    let weights = WeightConfig::default();
    let raw = [Some(0.9), Some(0.8), Some(0.7), Some(0.6), Some(0.5)];
    close(aggregate(&raw, &weights).unwrap(), 0.7, "equal-weight aggregation");
    let raw = [Some(-0.2), Some(1.0), Some(1.0), Some(1.0), Some(1.0)];
    close(aggregate(&raw, &weights).unwrap(), 0.8, "negative component clamps to 0");

    format!("{checks} frozen values within 1e-9")
}

fn one_shifted(table: &Table<f64>, delta: f64) -> Table<f64> {
    let columns = (0..table.column_count())
        .map(|i| match table.column(i) {
            Column::Continuous(v) => Column::Continuous(v.iter().map(|x| x + delta).collect()),
            Column::Categorical(c) => Column::Categorical(c.clone()),
        })
        .collect();
    Table::from_columns(table.schema().clone(), columns).unwrap()
}

/// Criterion 4: the score separates generators by fidelity. Bootstrap
/// resampling beats independent marginals, which beat a constant row, and
/// breaking the association structure costs s_corr at least 0.2.
fn criterion_ordering() -> String {
    let config = EvalConfig::default();
    let kinds = [
        GeneratorKind::Resample,
        GeneratorKind::IndependentMarginals,
        GeneratorKind::ConstantRow,
    ];
    let mut totals = Vec::new();
    let mut corrs = Vec::new();
    for kind in kinds {
        let mut kind_totals = Vec::new();
        let mut kind_corrs = Vec::new();
        for seed in 0..20u64 {
            let real = head(&common::powerplant_like(seed ^ 0xD15C), 2400);
            let spec = GeneratorSpec { kind, seed: seed + 101, rows: real.row_count() };
            let synth = generate(&real, &spec).unwrap();
            let report = evaluate(&real, &synth, &config).unwrap();
            kind_totals.push(report.components.tabsyndex);
            kind_corrs.push(report.components.s_corr.unwrap_or(0.0));
        }
        totals.push(median(kind_totals));
        corrs.push(median(kind_corrs));
    }
    assert!(
        totals[0] > totals[1] && totals[1] > totals[2],
        "medians not ordered: resample {} marginals {} constant {}",
        totals[0],
        totals[1],
        totals[2]
    );
    assert!(
        corrs[1] <= corrs[0] - 0.2,
        "marginals s_corr {} not 0.2 below resample {}",
        corrs[1],
        corrs[0]
    );
    format!(
        "20-seed medians resample {:.3} > marginals {:.3} > constant {:.3}; \
         s_corr gap {:.2}",
        totals[0],
        totals[1],
        totals[2],
        corrs[0] - corrs[1]
    )
}

/// Criterion 5: a constant-row table trips the coverage floor and the
/// collapse warning.
fn criterion_collapse() -> String {
    let real = head(&common::powerplant_like(99), 2400);
    let spec = GeneratorSpec { kind: GeneratorKind::ConstantRow, seed: 7, rows: real.row_count() };
    let synth = generate(&real, &spec).unwrap();
    let report = evaluate(&real, &synth, &EvalConfig::default()).unwrap();
    let s_cr = report.components.s_cr.expect("coverage computed");
    assert!(s_cr <= 0.2, "constant-row s_cr {s_cr} above 0.2");
    assert!(
        report.warnings.iter().any(|w| w.code == WarningCode::CollapseSignature),
        "collapse warning missing from report"
    );
    format!("s_cr {s_cr:.3} with the collapse warning raised")
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> FeatureMatrix<f64> {
    FeatureMatrix {
        data: (0..rows * cols).map(|_| rng.random_range(-2.0..2.0)).collect(),
        rows,
        cols,
    }
}

fn central_diff(mut f: impl FnMut(f64) -> f64, at: f64, h: f64) -> f64 {
    (f(at + h) - f(at - h)) / (2.0 * h)
}

/// Distance from the nearest ReLU pre-activation to its kink. Central
/// differences need this to exceed the probe displacement, or the two
/// loss evaluations would sample different linear pieces.
fn kink_margin(net: &Mlp<f64>, x: &FeatureMatrix<f64>) -> f64 {
    let hidden = net.b1.len();
    let mut margin = f64::INFINITY;
    for r in 0..x.rows {
        let row = x.row(r);
        for unit in 0..hidden {
            let z = net.b1[unit]
                + row.iter().enumerate().map(|(i, v)| v * net.w1[i * hidden + unit]).sum::<f64>();
            margin = margin.min(z.abs());
        }
    }
    margin
}

/// Matches analytic against finite-difference gradients; coordinates where
/// both are essentially zero pass on absolute agreement.
fn gradient_close(analytic: f64, fd: f64, bound: f64, label: &str) {
    let scale = analytic.abs().max(fd.abs());
    if scale < 1e-7 {
        return;
    }
    let rel = (analytic - fd).abs() / scale.max(1e-6);
    assert!(rel < bound, "{label}: relative error {rel:.2e} at gradient {analytic:.3e}");
}

fn random_pair(seed: u64) -> (Table<f64>, Table<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7AB1E);
    let rows = rng.random_range(6..=24);
    let cols = rng.random_range(2..=4);
    let with_cat = seed % 2 == 0;
    let build = |rng: &mut ChaCha8Rng| {
        let mut specs: Vec<ColumnSpec> =
            (0..cols).map(|i| ColumnSpec::continuous(format!("c{i}"))).collect();
        let mut columns: Vec<Column<f64>> = (0..cols)
            .map(|_| Column::Continuous((0..rows).map(|_| rng.random_range(-100.0..100.0)).collect()))
            .collect();
        if with_cat {
            let labels: Vec<&str> =
                (0..rows).map(|_| ["a", "b", "c"][rng.random_range(0..3usize)]).collect();
            specs.push(ColumnSpec::categorical("cat"));
            columns.push(Column::Categorical(CategoricalColumn::from_labels(&labels)));
        }
        Table::from_columns(Schema::new(specs), columns).unwrap()
    };
    let real = build(&mut rng);
    let synth = build(&mut rng);
    (real, synth)
}

/// Criterion 6: analytic learner gradients agree with central finite
/// differences, and every component stays inside [0, 1] across 1000
/// random table pairs.
fn criterion_soundness() -> String {
    for point in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF00D + point);
        let x = random_matrix(&mut rng, 12, 4);
        let y: Vec<f64> = (0..12).map(|_| f64::from(rng.random_range(0..2u32))).collect();
        let mut model = LogisticRegression::new(4);
        for w in &mut model.weights {
            *w = rng.random_range(-1.0..1.0);
        }
        model.bias = rng.random_range(-1.0..1.0);
        let (grad_w, grad_b) = model.gradient(&x, &y);
        for j in 0..4 {
            let fd = central_diff(
                |v| {
                    let mut probe = model.clone();
                    probe.weights[j] = v;
                    probe.loss(&x, &y)
                },
                model.weights[j],
                1e-6,
            );
            gradient_close(grad_w[j], fd, 1e-4, "logistic weight");
        }
        let fd = central_diff(
            |v| {
                let mut probe = model.clone();
                probe.bias = v;
                probe.loss(&x, &y)
            },
            model.bias,
            1e-6,
        );
        gradient_close(grad_b, fd, 1e-4, "logistic bias");
    }

    for point in 0..10u64 {
        let outputs = if point % 2 == 0 { 2 } else { 1 };
        let mut attempt = 0xBEEF + point;
        let (x, net, classes, values) = loop {
            let mut rng = ChaCha8Rng::seed_from_u64(attempt);
            let x = random_matrix(&mut rng, 8, 3);
            let classes: Vec<u32> = (0..8).map(|_| rng.random_range(0..2)).collect();
            let values: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut net = Mlp::new(3, outputs, attempt);
            for b in net.b1.iter_mut().chain(net.b2.iter_mut()) {
                *b = rng.random_range(-0.5..0.5);
            }
            if kink_margin(&net, &x) > 5e-4 {
                break (x, net, classes, values);
            }
            attempt += 0x1000;
        };
        let targets = if point % 2 == 0 {
            MlpTargets::Classes(&classes)
        } else {
            MlpTargets::Values(&values)
        };
        let grad = net.gradient(&x, &targets);
        let slots: Vec<(usize, usize)> = [
            net.w1.len(),
            net.b1.len(),
            net.w2.len(),
            net.b2.len(),
        ]
        .iter()
        .enumerate()
        .flat_map(|(field, &len)| (0..len).map(move |i| (field, i)))
        .collect();
        for (field, i) in slots {
            let current = match field {
                0 => net.w1[i],
                1 => net.b1[i],
                2 => net.w2[i],
                _ => net.b2[i],
            };
            let analytic = match field {
                0 => grad.w1[i],
                1 => grad.b1[i],
                2 => grad.w2[i],
                _ => grad.b2[i],
            };
            let fd = central_diff(
                |v| {
                    let mut probe = net.clone();
                    match field {
                        0 => probe.w1[i] = v,
                        1 => probe.b1[i] = v,
                        2 => probe.w2[i] = v,
                        _ => probe.b2[i] = v,
                    }
                    probe.loss(&x, &targets)
                },
                current,
                1e-5,
            );
            gradient_close(analytic, fd, 1e-3, "mlp parameter");
        }
    }

    let config = EvalConfig::default();
    let out_of_range = (0..1000u64)
        .into_par_iter()
        .filter(|&seed| {
            let (real, synth) = random_pair(seed);
            let report = evaluate(&real, &synth, &config).unwrap();
            let components = report.components.as_array();
            let bad = |v: f64| !(0.0..=1.0).contains(&v);
            components.into_iter().flatten().any(bad) || bad(report.components.tabsyndex)
        })
        .count();
    assert_eq!(out_of_range, 0, "{out_of_range}/1000 random pairs left [0, 1]");
    format!("10 logistic and 10 mlp gradient points matched; 1000 random pairs in range")
}

fn run_cli(bin: &str, args: &[&str]) -> Output {
    let output = Command::new(bin).args(args).output().expect("spawn tabsyndex binary");
    assert!(
        output.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

fn path_str(path: &Path) -> String {
    path.to_str().expect("utf-8 temp path").to_string()
}

/// Criterion 7: rerunning evaluate, monitor, and sanity with identical
/// inputs reproduces the outputs byte for byte.
fn criterion_determinism() -> String {
    let bin = env!("CARGO_BIN_EXE_tabsyndex");
    let dir = tempfile::tempdir().unwrap();
    let real = head(&common::powerplant_like(1), 400);
    let real_path = dir.path().join("real.csv");
    common::write_csv(&real_path, &real);
    let real_arg = path_str(&real_path);

    let synth_path = dir.path().join("synth.csv");
    run_cli(
        bin,
        &[
            "generate", "--real", &real_arg, "--kind", "jitter", "--sigma", "0.5",
            "--seed", "9", "--out", &path_str(&synth_path),
        ],
    );

    let synth_arg = path_str(&synth_path);
    let eval_args: [&str; 7] =
        ["evaluate", "--real", &real_arg, "--synthetic", &synth_arg, "--seed", "5"];
    let first = run_cli(bin, &eval_args);
    let second = run_cli(bin, &eval_args);
    assert_eq!(first.stdout, second.stdout, "evaluate stdout differs between runs");

    let epochs = dir.path().join("epochs");
    std::fs::create_dir(&epochs).unwrap();
    std::fs::copy(&synth_path, epochs.join("epoch_1.csv")).unwrap();
    run_cli(
        bin,
        &[
            "generate", "--real", &real_arg, "--kind", "resample", "--seed", "10",
            "--out", &path_str(&epochs.join("epoch_2.csv")),
        ],
    );
    let mut progress = Vec::new();
    for run in ["a", "b"] {
        let csv = dir.path().join(format!("progress_{run}.csv"));
        let svg = dir.path().join(format!("progress_{run}.svg"));
        run_cli(
            bin,
            &[
                "monitor", "--real", &real_arg, "--dir", &path_str(&epochs),
                "--out", &path_str(&csv), "--plot", &path_str(&svg),
            ],
        );
        progress.push((std::fs::read(&csv).unwrap(), std::fs::read(&svg).unwrap()));
    }
    assert_eq!(progress[0].0, progress[1].0, "monitor CSV differs between runs");
    assert_eq!(progress[0].1, progress[1].1, "monitor SVG differs between runs");

    let sanity_args: [&str; 7] =
        ["sanity", "--data", &real_arg, "--proportions", "50,100", "--seed", "3"];
    let first = run_cli(bin, &sanity_args);
    let second = run_cli(bin, &sanity_args);
    assert_eq!(first.stdout, second.stdout, "sanity stdout differs between runs");

    "evaluate, monitor, and sanity reproduce byte-identical output".to_string()
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, fn() -> String); 7] = [
        ("identity scores on the four benchmarks", criterion_identity),
        ("sampling-proportion score trends", criterion_trends),
        ("hand-derived equation oracles", criterion_oracles),
        ("generator discrimination ordering", criterion_ordering),
        ("mode-collapse signature", criterion_collapse),
        ("numerical soundness", criterion_soundness),
        ("deterministic command-line output", criterion_determinism),
    ];
    let mut all_pass = true;
    for (index, (name, criterion)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(criterion)) {
            Ok(detail) => println!("criterion {} PASS - {name}: {detail}", index + 1),
            Err(payload) => {
                all_pass = false;
                let message = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| (*s).to_string()))
                    .unwrap_or_else(|| "panicked without a message".to_string());
                println!("criterion {} FAIL - {name}: {message}", index + 1);
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
