//! The five component scores.

pub mod association;
pub mod basic;
pub mod coverage;
pub mod efficacy;
pub mod pmse;

pub use association::{
    association_matrix, correlation_ratio, correlation_score, entry_error, pearson, signed_log,
    theils_u,
};
pub use basic::{basic_score, column_stats, stat_error};
pub use coverage::{column_coverage, coverage_score, BinSpec};
pub use efficacy::{ml_efficacy, relative_error, s_ml_from_errors};
pub use pmse::{expected_pmse0, pmse, s_pmse_index};
