//! tabsyndex: score synthetic tabular data against the real table it
//! imitates. Exit code 0 on success, 1 on evaluation failure, 2 on usage
//! errors; results go to `--out` (or standard output), diagnostics to
//! standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tabsyndex::evaluate::{evaluate, EvalConfig};
use tabsyndex::generate::{generate, GeneratorKind, GeneratorSpec};
use tabsyndex::ingest::{fetch_dataset, pin_schema, read_csv_path, Dataset, SchemaConfig};
use tabsyndex::monitor::{emit_progression, monitor_directory, EpochPattern};
use tabsyndex::render::{canonical_json, render_report, ReportFormat};
use tabsyndex::sanity::sanity_check;
use tabsyndex::{Column, Error, Result, Table, WeightConfig};

#[derive(Parser)]
#[command(name = "tabsyndex", version, about = "Similarity scoring for synthetic tabular data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a synthetic table against its real counterpart
    Evaluate(EvaluateArgs),
    /// Score every per-epoch synthetic dump in a directory
    Monitor(MonitorArgs),
    /// Half-vs-half self check of the metric on one real dataset
    Sanity(SanityArgs),
    /// Produce baseline synthetic data with a known failure mode
    Generate(GenerateArgs),
    /// Download and cache a benchmark dataset
    Fetch(FetchArgs),
}

/// Scoring knobs shared by evaluate, monitor, and sanity.
#[derive(Args)]
struct ScoreFlags {
    /// Target column for ML efficacy (default: schema target, else last column)
    #[arg(long)]
    target: Option<String>,

    /// Base of the pMSE exponential; must exceed 1
    #[arg(long, default_value_t = 1.2)]
    alpha: f64,

    /// Per-category coverage ratio clip; must be at least 1
    #[arg(long, default_value_t = 2.0)]
    beta: f64,

    /// Histogram bins for continuous coverage
    #[arg(long, default_value_t = 20)]
    bins: usize,

    /// Component weights, comma separated: basic,corr,pmse,coverage,ml
    #[arg(long, default_value = "1,1,1,1,1")]
    weights: String,

    /// Seed for splits, samples, and learners
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl ScoreFlags {
    fn eval_config(&self) -> Result<EvalConfig> {
        let config = EvalConfig {
            alpha: self.alpha,
            beta: self.beta,
            bins: self.bins,
            weights: WeightConfig::new(parse_weights(&self.weights)?)?,
            seed: self.seed,
            target: self.target.clone(),
            ..EvalConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct EvaluateArgs {
    /// Real table (CSV with a header row)
    #[arg(long)]
    real: PathBuf,

    /// Synthetic table (CSV, same columns as the real table)
    #[arg(long)]
    synthetic: PathBuf,

    /// Schema config (TOML or JSON) applied to both tables
    #[arg(long)]
    schema: Option<PathBuf>,

    #[command(flatten)]
    score: ScoreFlags,

    /// Report file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: json or text
    #[arg(long, default_value = "json")]
    format: String,

    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct MonitorArgs {
    /// Real table (CSV with a header row)
    #[arg(long)]
    real: PathBuf,

    /// Directory of per-epoch synthetic dumps
    #[arg(long)]
    dir: PathBuf,

    /// Filename pattern; the braced-n placeholder stands for the epoch number
    #[arg(long, default_value = "epoch_{n}.csv")]
    pattern: String,

    /// Schema config (TOML or JSON) for the real table
    #[arg(long)]
    schema: Option<PathBuf>,

    #[command(flatten)]
    score: ScoreFlags,

    /// Progression CSV output path
    #[arg(long)]
    out: PathBuf,

    /// Optional SVG chart output path
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SanityArgs {
    /// Real dataset to split against itself (CSV with a header row)
    #[arg(long)]
    data: PathBuf,

    /// Schema config (TOML or JSON)
    #[arg(long)]
    schema: Option<PathBuf>,

    /// Percentages of the held-out half to score, comma separated
    #[arg(long, default_value = "10,25,50,100")]
    proportions: String,

    #[command(flatten)]
    score: ScoreFlags,

    /// Result JSON path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct GenerateArgs {
    /// Real table to derive synthetic data from (CSV with a header row)
    #[arg(long)]
    real: PathBuf,

    /// Schema config (TOML or JSON)
    #[arg(long)]
    schema: Option<PathBuf>,

    /// Generator: resample, jitter, independent-marginals, or constant-row
    #[arg(long)]
    kind: String,

    /// Noise scale for jitter, in units of each column's std deviation
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,

    /// Output row count (0 = match the real table)
    #[arg(long, default_value_t = 0)]
    rows: usize,

    /// Seed for the generator
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Synthetic CSV output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FetchArgs {
    /// Dataset name: concrete, wine, powerplant, news, or all
    #[arg(long)]
    dataset: String,

    /// Cache directory for downloaded files
    #[arg(long, default_value = "data")]
    dir: PathBuf,
}

fn parse_weights(text: &str) -> Result<[f64; 5]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 5 {
        return Err(Error::InvalidArgument {
            name: "weights".to_string(),
            message: format!("expected 5 comma-separated values, got {}", parts.len()),
        });
    }
    let mut weights = [0.0; 5];
    for (slot, part) in weights.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| Error::InvalidArgument {
            name: "weights".to_string(),
            message: format!("'{part}' is not a number"),
        })?;
    }
    Ok(weights)
}

fn parse_proportions(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            let percent: f64 = part.trim().parse().map_err(|_| Error::InvalidArgument {
                name: "proportions".to_string(),
                message: format!("'{part}' is not a number"),
            })?;
            Ok(percent / 100.0)
        })
        .collect()
}

fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        // Ignore a second initialization; tests may run commands in-process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn schema_config(path: Option<&Path>) -> Result<SchemaConfig> {
    match path {
        Some(p) => SchemaConfig::from_path(p),
        None => Ok(SchemaConfig::default()),
    }
}

fn load_table(path: &Path, config: &SchemaConfig) -> Result<Table<f64>> {
    read_csv_path(path, config)
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn table_csv(table: &Table<f64>) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let to_csv_err = |e: csv::Error| Error::Config(format!("csv write failed: {e}"));
    writer
        .write_record(table.schema().names())
        .map_err(to_csv_err)?;
    for row in 0..table.row_count() {
        let record: Vec<String> = table
            .columns()
            .iter()
            .map(|column| match column {
                Column::Continuous(values) => values[row].to_string(),
                Column::Categorical(cat) => cat.label(cat.codes[row]).to_string(),
            })
            .collect();
        writer.write_record(&record).map_err(to_csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv write failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv write failed: {e}")))
}

fn run_evaluate(args: EvaluateArgs) -> Result<()> {
    let config = args.score.eval_config()?;
    let format: ReportFormat = args.format.parse()?;
    configure_jobs(args.jobs);
    let schema = schema_config(args.schema.as_deref())?;
    let real = load_table(&args.real, &schema)?;
    // The synthetic file is parsed under the real table's resolved schema;
    // inference on the synthetic values alone could flip a low-cardinality
    // column to categorical and fail the comparison it exists to serve.
    let synth = load_table(&args.synthetic, &pin_schema(&real))?;
    let report = evaluate(&real, &synth, &config)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    write_output(args.out.as_deref(), &render_report(&report, format)?)
}

fn run_monitor(args: MonitorArgs) -> Result<()> {
    let config = args.score.eval_config()?;
    let pattern = EpochPattern::parse(&args.pattern)?;
    configure_jobs(args.jobs);
    let schema = schema_config(args.schema.as_deref())?;
    let real = load_table(&args.real, &schema)?;
    let series = monitor_directory(&real, &args.dir, &pattern, &config)?;
    for warning in &series.warnings {
        eprintln!("warning: {warning}");
    }
    for entry in &series.entries {
        for warning in &entry.warnings {
            eprintln!("warning: epoch {}: {warning}", entry.epoch);
        }
    }
    emit_progression(&series, &args.out, args.plot.as_deref())
}

fn run_sanity(args: SanityArgs) -> Result<()> {
    let config = args.score.eval_config()?;
    let proportions = parse_proportions(&args.proportions)?;
    configure_jobs(args.jobs);
    let schema = schema_config(args.schema.as_deref())?;
    let data = load_table(&args.data, &schema)?;
    let dataset = args
        .data
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data".to_string());
    let result = sanity_check(&data, &proportions, args.score.seed, &config, dataset)?;
    write_output(args.out.as_deref(), &canonical_json(&result)?)
}

fn run_generate(args: GenerateArgs) -> Result<()> {
    let kind: GeneratorKind = args.kind.parse::<GeneratorKind>()?.with_sigma(args.sigma);
    let schema = schema_config(args.schema.as_deref())?;
    let real = load_table(&args.real, &schema)?;
    let spec = GeneratorSpec {
        kind,
        seed: args.seed,
        rows: if args.rows == 0 { real.row_count() } else { args.rows },
    };
    let synthetic = generate(&real, &spec)?;
    write_output(args.out.as_deref(), &table_csv(&synthetic)?)
}

fn run_fetch(args: FetchArgs) -> Result<()> {
    let datasets: Vec<Dataset> = if args.dataset == "all" {
        Dataset::ALL.to_vec()
    } else {
        vec![args.dataset.parse()?]
    };
    for dataset in datasets {
        let path = fetch_dataset(dataset, &args.dir)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Evaluate(args) => run_evaluate(args),
        Command::Monitor(args) => run_monitor(args),
        Command::Sanity(args) => run_sanity(args),
        Command::Generate(args) => run_generate(args),
        Command::Fetch(args) => run_fetch(args),
    }
}

/// Usage mistakes exit 2 (matching clap's own convention); anything that
/// fails during evaluation exits 1.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument { .. } | Error::Config(_) | Error::UnknownDataset(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
