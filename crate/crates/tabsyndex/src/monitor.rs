//! Training-curve monitoring: evaluates every per-epoch synthetic dump in
//! a directory against one real reference and emits the score progression
//! as CSV, optionally with an SVG chart. Each epoch is a full independent
//! evaluation, so the series matches separate `evaluate` calls exactly.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{evaluate, EvalConfig};
use crate::ingest::{pin_schema, read_csv_path};
use crate::report::{ComponentScores, ConfigEcho, Warning, WarningCode};
use crate::scalar::Scalar;
use crate::table::Table;

/// Filename template with a `{n}` placeholder for the epoch index, e.g.
/// `epoch_{n}.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpochPattern {
    prefix: String,
    suffix: String,
}

impl EpochPattern {
    pub fn parse(pattern: &str) -> Result<Self> {
        let Some(at) = pattern.find("{n}") else {
            return Err(Error::InvalidArgument {
                name: "pattern".to_string(),
                message: format!("'{pattern}' must contain one '{{n}}' epoch placeholder"),
            });
        };
        let (prefix, rest) = pattern.split_at(at);
        let suffix = &rest[3..];
        if suffix.contains("{n}") {
            return Err(Error::InvalidArgument {
                name: "pattern".to_string(),
                message: "pattern admits only one '{n}' placeholder".to_string(),
            });
        }
        Ok(EpochPattern {
            prefix: prefix.to_string(),
            suffix: suffix.to_string(),
        })
    }

    /// Epoch index of a matching filename; `None` when it does not match.
    pub fn epoch_of(&self, filename: &str) -> Option<u64> {
        let digits = filename
            .strip_prefix(&self.prefix)?
            .strip_suffix(&self.suffix)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok()
    }
}

/// One evaluated epoch dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochEntry<F = f64> {
    pub epoch: u64,
    pub file: String,
    pub components: ComponentScores<F>,
    pub warnings: Vec<Warning>,
}

/// Score progression across epochs, sorted by strictly increasing epoch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgressionSeries<F = f64> {
    pub entries: Vec<EpochEntry<F>>,
    pub config: ConfigEcho<F>,
    /// Gap and duplicate notices; entries above are unaffected by them.
    pub warnings: Vec<Warning>,
}

/// Evaluates every file in `dir` matching `pattern` against `real`. Files
/// that fail to parse or evaluate become gap warnings; at least one epoch
/// must survive. Duplicate epoch indices keep the lexicographically first
/// file and warn about the rest.
pub fn monitor_directory<F: Scalar>(
    real: &Table<F>,
    dir: &Path,
    pattern: &EpochPattern,
    config: &EvalConfig,
) -> Result<ProgressionSeries<F>> {
    config.validate()?;
    let mut matched: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if let Some(epoch) = pattern.epoch_of(&name) {
            matched.entry(epoch).or_default().push(name);
        }
    }
    if matched.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no file in {} matches the epoch pattern",
            dir.display()
        )));
    }

    let mut warnings = Vec::new();
    let mut jobs: Vec<(u64, String)> = Vec::with_capacity(matched.len());
    for (epoch, mut files) in matched {
        files.sort();
        jobs.push((epoch, files[0].clone()));
        for extra in &files[1..] {
            warnings.push(Warning::new(
                WarningCode::EpochGap,
                format!("epoch {epoch}: '{extra}' ignored, '{}' already claims it", files[0]),
            ));
        }
    }

    // Epoch dumps are parsed under the real table's schema, not re-inferred;
    // a drifting dump must not silently flip a column's kind.
    let schema_config = pin_schema(real);
    let outcomes: Vec<(u64, String, Result<ComponentScoresWithWarnings<F>>)> = jobs
        .into_par_iter()
        .map(|(epoch, file)| {
            let result = read_csv_path::<F>(&dir.join(&file), &schema_config)
                .and_then(|table| evaluate(real, &table, config))
                .map(|report| ComponentScoresWithWarnings {
                    components: report.components,
                    warnings: report.warnings,
                });
            (epoch, file, result)
        })
        .collect();

    let mut entries = Vec::new();
    for (epoch, file, outcome) in outcomes {
        match outcome {
            Ok(scored) => entries.push(EpochEntry {
                epoch,
                file,
                components: scored.components,
                warnings: scored.warnings,
            }),
            Err(err) => warnings.push(Warning::new(
                WarningCode::EpochGap,
                format!("epoch {epoch}: '{file}' skipped: {err}"),
            )),
        }
    }
    if entries.is_empty() {
        return Err(Error::InsufficientData(
            "every matching epoch file failed to evaluate".to_string(),
        ));
    }
    Ok(ProgressionSeries {
        entries,
        config: config.echo(config.target.clone()),
        warnings,
    })
}

struct ComponentScoresWithWarnings<F> {
    components: ComponentScores<F>,
    warnings: Vec<Warning>,
}

fn csv_cell<F: Scalar>(value: Option<F>) -> String {
    value.map(|v| v.as_f64().to_string()).unwrap_or_default()
}

/// Renders the progression as CSV text: a header plus one row per epoch,
/// seven columns. Uncomputed components leave their cell empty.
pub fn progression_csv<F: Scalar>(series: &ProgressionSeries<F>) -> String {
    let mut out = String::from("epoch,s_basic,s_corr,s_pmse,s_cr,s_ml,tabsyndex\n");
    for entry in &series.entries {
        let c = &entry.components;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            entry.epoch,
            csv_cell(c.s_basic),
            csv_cell(c.s_corr),
            csv_cell(c.s_pmse),
            csv_cell(c.s_cr),
            csv_cell(c.s_ml),
            c.tabsyndex.as_f64(),
        ));
    }
    out
}

const SERIES_NAMES: [&str; 6] = ["s_basic", "s_corr", "s_pmse", "s_cr", "s_ml", "tabsyndex"];
const SERIES_COLORS: [&str; 6] = [
    "#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#17202a",
];

fn series_values<F: Scalar>(entry: &EpochEntry<F>) -> [Option<F>; 6] {
    let c = &entry.components;
    [c.s_basic, c.s_corr, c.s_pmse, c.s_cr, c.s_ml, Some(c.tabsyndex)]
}

/// Static SVG line chart of all six series over the epoch axis; the score
/// axis is fixed to [0, 1].
pub fn progression_svg<F: Scalar>(series: &ProgressionSeries<F>) -> String {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 480.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 660.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 440.0;

    let min_epoch = series.entries.first().map_or(0, |e| e.epoch);
    let max_epoch = series.entries.last().map_or(0, |e| e.epoch);
    let span = (max_epoch - min_epoch).max(1) as f64;
    let x_of = |epoch: u64| LEFT + (epoch - min_epoch) as f64 / span * (RIGHT - LEFT);
    let y_of = |score: f64| BOTTOM - score.clamp(0.0, 1.0) * (BOTTOM - TOP);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for i in 0..=4 {
        let score = i as f64 * 0.25;
        let y = y_of(score);
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{y:.2}\" x2=\"{RIGHT}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{score:.2}</text>\n",
            LEFT - 8.0,
            y + 4.0
        ));
    }
    for entry in &series.entries {
        let x = x_of(entry.epoch);
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            BOTTOM + 18.0,
            entry.epoch
        ));
    }
    for (index, name) in SERIES_NAMES.iter().enumerate() {
        let color = SERIES_COLORS[index];
        let points: Vec<String> = series
            .entries
            .iter()
            .filter_map(|entry| {
                series_values(entry)[index]
                    .map(|v| format!("{:.2},{:.2}", x_of(entry.epoch), y_of(v.as_f64())))
            })
            .collect();
        if !points.is_empty() {
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                points.join(" ")
            ));
            for point in &points {
                let (x, y) = point.split_once(',').expect("point format");
                svg.push_str(&format!(
                    "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.5\" fill=\"{color}\"/>\n"
                ));
            }
        }
        let legend_y = TOP + 16.0 * index as f64;
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"{color}\"/>\n",
            RIGHT + 14.0,
            legend_y
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">{name}</text>\n",
            RIGHT + 30.0,
            legend_y + 9.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes the CSV (and, when requested, the SVG chart) to disk.
pub fn emit_progression<F: Scalar>(
    series: &ProgressionSeries<F>,
    csv_out: &Path,
    plot_out: Option<&Path>,
) -> Result<()> {
    if series.entries.is_empty() {
        return Err(Error::InsufficientData(
            "progression series has no epochs".to_string(),
        ));
    }
    fs::write(csv_out, progression_csv(series))?;
    if let Some(path) = plot_out {
        fs::write(path, progression_svg(series))?;
    }
    Ok(())
}
