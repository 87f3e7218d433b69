//! Report serialization: canonical JSON (sorted keys, stable float text,
//! trailing newline) for machines, and a plain-text table for humans.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::ScoreReport;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::InvalidArgument {
                name: "format".to_string(),
                message: format!("expected 'json' or 'text', got '{other}'"),
            }),
        }
    }
}

/// Canonical JSON for any serializable artifact: round-tripping through
/// `serde_json::Value` sorts every object's keys, so equal values always
/// produce identical bytes. Ends with a newline.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    let mut out = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    out.push('\n');
    Ok(out)
}

pub fn render_json<F: Scalar>(report: &ScoreReport<F>) -> Result<String> {
    canonical_json(report)
}

fn fmt_component<F: Scalar>(value: Option<F>) -> String {
    match value {
        Some(v) => format!("{:.6}", v.as_f64()),
        None => "not computed".to_string(),
    }
}

/// Human-readable report: the unified score, the five components, compact
/// breakdown summaries, and every warning once.
pub fn render_text<F: Scalar>(report: &ScoreReport<F>) -> String {
    let mut out = String::new();
    let c = &report.components;
    let _ = writeln!(out, "TabSynDex {:.6}", c.tabsyndex.as_f64());
    let _ = writeln!(out);
    let _ = writeln!(out, "components");
    let _ = writeln!(out, "  s_basic  {}", fmt_component(c.s_basic));
    let _ = writeln!(out, "  s_corr   {}", fmt_component(c.s_corr));
    let _ = writeln!(out, "  s_pmse   {}", fmt_component(c.s_pmse));
    let _ = writeln!(out, "  s_cr     {}", fmt_component(c.s_cr));
    let _ = writeln!(out, "  s_ml     {}", fmt_component(c.s_ml));

    if let Some(basic) = &report.basic {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "basic statistics: mean {:.6}  median {:.6}  std {:.6}  ({} columns)",
            basic.s_mean.as_f64(),
            basic.s_median.as_f64(),
            basic.s_std.as_f64(),
            basic.per_column.len()
        );
    }
    if let Some(assoc) = &report.association {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "association: {0}x{0} matrices over {0} columns",
            assoc.columns.len()
        );
    }
    if let Some(pmse) = &report.pmse {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "pmse: observed {:.6e}  null {:.6e}  ratio {:.6}",
            pmse.pmse.as_f64(),
            pmse.expected_pmse0.as_f64(),
            pmse.ratio.as_f64()
        );
    }
    if let Some(coverage) = &report.coverage {
        let _ = writeln!(out);
        let _ = writeln!(out, "coverage per column");
        for (name, score) in &coverage.per_column {
            let _ = writeln!(out, "  {name}  {:.6}", score.as_f64());
        }
    }
    if let Some(efficacy) = &report.efficacy {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "ml efficacy: {:?} on '{}' ({})",
            efficacy.task, efficacy.target, efficacy.metric
        );
        for row in &efficacy.rows {
            let _ = writeln!(
                out,
                "  {:?}: real {:.6}  synth {:.6}  error {:.6}",
                row.model,
                row.metric_real.as_f64(),
                row.metric_synth.as_f64(),
                row.relative_error.as_f64()
            );
        }
    }

    let cfg = &report.config;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "config: alpha {}  beta {}  bins {}  seed {}  train fraction {}",
        cfg.alpha, cfg.beta, cfg.bins, cfg.seed, cfg.ml_train_fraction
    );
    let _ = writeln!(
        out,
        "weights: basic {}  corr {}  pmse {}  coverage {}  ml {}",
        cfg.weights[0], cfg.weights[1], cfg.weights[2], cfg.weights[3], cfg.weights[4]
    );
    if let Some(target) = &cfg.target {
        let _ = writeln!(out, "target: {target}");
    }

    if !report.warnings.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "warnings");
        for warning in &report.warnings {
            let _ = writeln!(out, "  {warning}");
        }
    }
    out
}

pub fn render_report<F: Scalar>(report: &ScoreReport<F>, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Text => Ok(render_text(report)),
    }
}
