//! TabSynDex: a single-number similarity score for synthetic tabular data.
//!
//! The library compares a synthetic table against the real table it was
//! generated from and reports five component scores, each in [0, 1]:
//!
//! * basic statistics (means, medians, standard deviations),
//! * pairwise association structure,
//! * propensity-score distinguishability (pMSE),
//! * category and histogram-bin coverage,
//! * machine-learning efficacy (train-on-synthetic vs train-on-real).
//!
//! Their weighted mean is the TabSynDex score. 1 means the synthetic data
//! is statistically indistinguishable from the real data under these five
//! lenses; 0 means it fails them all.
//!
//! Scores are generic over the float width via [`scalar::Scalar`]; the
//! crate-root aliases fix `f64`, which the CLI and reports use.

pub mod aggregate;
pub mod error;
pub mod evaluate;
pub mod generate;
pub mod ingest;
pub mod learn;
pub mod monitor;
pub mod render;
pub mod report;
pub mod sanity;
pub mod scalar;
pub mod score;
pub mod table;

pub use aggregate::{aggregate, clamp_unit, WeightConfig};
pub use error::{Error, Result};
pub use evaluate::{evaluate, EvalConfig};
pub use generate::{generate, GeneratorKind, GeneratorSpec};
pub use monitor::{emit_progression, monitor_directory, EpochPattern, ProgressionSeries};
pub use render::{canonical_json, render_report, ReportFormat};
pub use report::{ComponentScores, ScoreReport, Warning, WarningCode};
pub use sanity::{sanity_check, SanityResult};
pub use scalar::Scalar;
pub use table::{Column, ColumnKind, ColumnSpec, Schema, Table};
