//! Data ingestion: CSV parsing with schema inference, seeded splitting and
//! sampling, and benchmark dataset retrieval.

mod csv;
mod fetch;
mod split;

pub use csv::{
    parse_csv, pin_schema, read_csv_path, ColumnOverride, SchemaConfig,
    DEFAULT_CATEGORICAL_THRESHOLD,
};
pub use fetch::{fetch_dataset, Dataset};
pub use split::{round_half_up, sample, split, SplitSpec};
