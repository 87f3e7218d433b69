//! Shared test fixtures: benchmark-shaped datasets. Each loader prefers a
//! locally cached copy of the real dataset (`data/<name>.csv` under the
//! workspace root, or `$TABSYNDEX_DATA_DIR`) and otherwise falls back to a
//! seeded simulation with the same shape, column kinds, and association
//! structure, so every test runs offline.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use tabsyndex::ingest::{read_csv_path, SchemaConfig};
use tabsyndex::table::CategoricalColumn;
use tabsyndex::{Column, ColumnSpec, Schema, Table};

pub const BENCHMARKS: [&str; 4] = ["concrete", "wine", "powerplant", "news"];

fn data_dir() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("TABSYNDEX_DATA_DIR") {
        return Some(PathBuf::from(dir));
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    Some(manifest.parent()?.parent()?.join("data"))
}

/// Writes a table as a plain header-plus-rows CSV. Continuous cells use
/// the Display form of f64, which round-trips exactly on reread.
pub fn write_csv(path: &Path, table: &Table<f64>) {
    let mut out = String::new();
    out.push_str(&table.schema().names().collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in 0..table.row_count() {
        let cells: Vec<String> = (0..table.column_count())
            .map(|col| match table.column(col) {
                Column::Continuous(v) => v[row].to_string(),
                Column::Categorical(c) => c.label(c.codes[row]).to_string(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    std::fs::write(path, out).unwrap();
}

/// The named benchmark table plus its provenance: "cached" when the real
/// file was found on disk, "simulated" otherwise.
pub fn benchmark_table(name: &str) -> (Table<f64>, &'static str) {
    if let Some(dir) = data_dir() {
        let path = dir.join(format!("{name}.csv"));
        if path.is_file() {
            if let Ok(table) = read_csv_path(&path, &SchemaConfig::default()) {
                return (table, "cached");
            }
        }
    }
    let table = match name {
        "concrete" => concrete_like(1),
        "wine" => wine_like(2),
        "powerplant" => powerplant_like(3),
        "news" => news_like(4),
        other => panic!("unknown benchmark '{other}'"),
    };
    (table, "simulated")
}

fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// 1030 rows, 8 continuous mix features plus a strength target driven by
/// them; mirrors the concrete compressive strength table's shape.
pub fn concrete_like(seed: u64) -> Table<f64> {
    let n = 1030;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0C0);
    let cement: Vec<f64> = normals(&mut rng, n).iter().map(|z| 280.0 + 90.0 * z).collect();
    let slag: Vec<f64> = normals(&mut rng, n).iter().map(|z| (70.0 + 75.0 * z).max(0.0)).collect();
    let flyash: Vec<f64> = normals(&mut rng, n).iter().map(|z| (50.0 + 55.0 * z).max(0.0)).collect();
    let water: Vec<f64> = normals(&mut rng, n).iter().map(|z| 181.0 + 20.0 * z).collect();
    let superplast: Vec<f64> = normals(&mut rng, n).iter().map(|z| (6.0 + 5.0 * z).max(0.0)).collect();
    let coarse: Vec<f64> = normals(&mut rng, n).iter().map(|z| 970.0 + 77.0 * z).collect();
    let fine: Vec<f64> = normals(&mut rng, n).iter().map(|z| 773.0 + 80.0 * z).collect();
    let age: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..120.0)).collect();
    let noise = normals(&mut rng, n);
    let strength: Vec<f64> = (0..n)
        .map(|i| {
            10.0 + 0.055 * cement[i] + 0.035 * slag[i] + 0.02 * flyash[i]
                - 0.18 * (water[i] - 181.0)
                + 0.4 * superplast[i]
                + 6.5 * age[i].ln()
                + 4.5 * noise[i]
        })
        .collect();
    let schema = Schema::new(vec![
        ColumnSpec::continuous("cement"),
        ColumnSpec::continuous("slag"),
        ColumnSpec::continuous("flyash"),
        ColumnSpec::continuous("water"),
        ColumnSpec::continuous("superplasticizer"),
        ColumnSpec::continuous("coarse_aggregate"),
        ColumnSpec::continuous("fine_aggregate"),
        ColumnSpec::continuous("age"),
        ColumnSpec::continuous("strength"),
    ]);
    Table::from_columns(
        schema,
        vec![
            Column::Continuous(cement),
            Column::Continuous(slag),
            Column::Continuous(flyash),
            Column::Continuous(water),
            Column::Continuous(superplast),
            Column::Continuous(coarse),
            Column::Continuous(fine),
            Column::Continuous(age),
            Column::Continuous(strength),
        ],
    )
    .unwrap()
}

/// 4898 rows, 11 continuous features plus a 5-class quality label derived
/// from them; mirrors the white wine quality table's shape and task.
pub fn wine_like(seed: u64) -> Table<f64> {
    let n = 4898;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x317E);
    let names = [
        "fixed_acidity",
        "volatile_acidity",
        "citric_acid",
        "residual_sugar",
        "chlorides",
        "free_sulfur_dioxide",
        "total_sulfur_dioxide",
        "density",
        "ph",
        "sulphates",
        "alcohol",
    ];
    let centers = [6.85, 0.28, 0.33, 6.4, 0.046, 35.3, 138.4, 0.994, 3.19, 0.49, 10.5];
    let spreads = [0.84, 0.1, 0.12, 5.0, 0.022, 17.0, 42.5, 0.003, 0.15, 0.11, 1.23];
    // Two shared factors (body, acid profile) give every feature pair a
    // correlation well away from zero, like the real table; near-zero pairs
    // would flip sign between sampled halves and read as dissimilar.
    let loadings: [(f64, f64); 11] = [
        (0.60, 0.30),   // fixed_acidity
        (-0.55, 0.30),  // volatile_acidity
        (0.60, 0.25),   // citric_acid
        (0.70, -0.20),  // residual_sugar
        (0.60, -0.25),  // chlorides
        (0.65, -0.20),  // free_sulfur_dioxide
        (0.70, -0.25),  // total_sulfur_dioxide
        (0.0, 0.0),     // density, rebuilt from sugar and alcohol below
        (-0.60, -0.30), // ph
        (0.55, 0.30),   // sulphates
        (-0.65, 0.25),  // alcohol
    ];
    let body = normals(&mut rng, n);
    let acid = normals(&mut rng, n);
    let mut features: Vec<Vec<f64>> = Vec::with_capacity(names.len());
    for i in 0..names.len() {
        let (lambda, mu) = loadings[i];
        let nu = (1.0 - lambda * lambda - mu * mu).sqrt();
        let eps = normals(&mut rng, n);
        features.push(
            (0..n)
                .map(|r| centers[i] + spreads[i] * (lambda * body[r] + mu * acid[r] + nu * eps[r]))
                .collect(),
        );
    }
    // Density tracks sugar and alcohol, as in the real table.
    for i in 0..n {
        features[7][i] = 0.994 + 0.0004 * (features[3][i] - 6.4) - 0.0009 * (features[10][i] - 10.5)
            + 0.0008 * rng.sample::<f64, _>(StandardNormal);
    }
    let noise = normals(&mut rng, n);
    let quality: Vec<&str> = (0..n)
        .map(|i| {
            let score = 1.2 * (features[10][i] - 10.5) / 1.23 - 0.8 * (features[1][i] - 0.28) / 0.1
                + 0.3 * (features[9][i] - 0.49) / 0.11
                + 0.6 * noise[i];
            if score < -2.1 {
                "4"
            } else if score < -0.6 {
                "5"
            } else if score < 0.9 {
                "6"
            } else if score < 2.3 {
                "7"
            } else {
                "8"
            }
        })
        .collect();
    let mut specs: Vec<ColumnSpec> = names.iter().map(|n| ColumnSpec::continuous(*n)).collect();
    specs.push(ColumnSpec::categorical("quality").target());
    let mut columns: Vec<Column<f64>> = features.into_iter().map(Column::Continuous).collect();
    columns.push(Column::Categorical(CategoricalColumn::from_labels(&quality)));
    Table::from_columns(Schema::new(specs), columns).unwrap()
}

/// 9568 rows, 4 strongly correlated ambient readings plus a power output
/// target; mirrors the combined-cycle power plant table.
pub fn powerplant_like(seed: u64) -> Table<f64> {
    let n = 9568;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x90E8);
    let at: Vec<f64> = normals(&mut rng, n).iter().map(|z| 19.65 + 7.45 * z).collect();
    let v: Vec<f64> = (0..n)
        .map(|i| 25.0 + 1.3 * (at[i] - 19.65) + 3.2 * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let ap: Vec<f64> = (0..n)
        .map(|i| 1013.26 - 0.35 * (at[i] - 19.65) + 4.5 * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let rh: Vec<f64> = (0..n)
        .map(|i| 73.3 - 1.1 * (at[i] - 19.65) + 11.0 * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let pe: Vec<f64> = (0..n)
        .map(|i| {
            454.365 - 1.977 * at[i] - 0.234 * v[i] + 0.0618 * (ap[i] - 1013.26)
                - 0.158 * (rh[i] - 73.3)
                + 3.0 * rng.sample::<f64, _>(StandardNormal)
        })
        .collect();
    let schema = Schema::new(vec![
        ColumnSpec::continuous("at"),
        ColumnSpec::continuous("v"),
        ColumnSpec::continuous("ap"),
        ColumnSpec::continuous("rh"),
        ColumnSpec::continuous("pe"),
    ]);
    Table::from_columns(
        schema,
        vec![
            Column::Continuous(at),
            Column::Continuous(v),
            Column::Continuous(ap),
            Column::Continuous(rh),
            Column::Continuous(pe),
        ],
    )
    .unwrap()
}

/// 39644 rows, 60 continuous features in correlated blocks plus a
/// heavy-tailed shares target; mirrors the online news table's shape.
pub fn news_like(seed: u64) -> Table<f64> {
    let n = 39644;
    let features = 60;
    let factors = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4E35);
    let latent: Vec<Vec<f64>> = (0..factors).map(|_| normals(&mut rng, n)).collect();
    let mut specs: Vec<ColumnSpec> = Vec::with_capacity(features + 1);
    let mut columns: Vec<Column<f64>> = Vec::with_capacity(features + 1);
    for f in 0..features {
        let primary = f % factors;
        let secondary = (f / factors) % factors;
        let scale = 1.0 + (f % 7) as f64;
        let zs = normals(&mut rng, n);
        let values: Vec<f64> = (0..n)
            .map(|i| scale * (0.8 * latent[primary][i] + 0.4 * latent[secondary][i] + 0.45 * zs[i]))
            .collect();
        specs.push(ColumnSpec::continuous(format!("feature_{f:02}")));
        columns.push(Column::Continuous(values));
    }
    let zs = normals(&mut rng, n);
    let shares: Vec<f64> = (0..n)
        .map(|i| (7.0 + 0.5 * latent[0][i] + 0.3 * latent[3][i] + 0.9 * zs[i]).exp())
        .collect();
    specs.push(ColumnSpec::continuous("shares"));
    columns.push(Column::Continuous(shares));
    Table::from_columns(Schema::new(specs), columns).unwrap()
}
