//! The `agent-eval` command line: simulate, evaluate, analyze, report.
//!
//! Every subcommand writes into `--out` and leaves a `<command>_metadata.json`
//! next to its outputs. Exit codes: 0 success, 2 usage or validation
//! error, 3 I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::model::{self, task_csv, MetricCell, TaskRecord};
use crate::report::{
    self, datasets, ChartInputs, ChartKind, EvalSettings, ReportError, StatReport,
};
use crate::simulator::{self, ConfigError, Mode, SimConfig, SimError};
use crate::stats::StatsError;

#[derive(Debug, Parser)]
#[command(name = "agent-eval", version, about = "Outcome-based evaluation of AI agents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the synthetic task-level and adaptability datasets.
    Simulate(SimulateArgs),
    /// Compute per-cell, overall and business metrics from a task CSV.
    Evaluate(EvaluateArgs),
    /// Run the statistical comparison of agents.
    Analyze(AnalyzeArgs),
    /// Render tables and charts from evaluation outputs.
    Report(ReportArgs),
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    /// TOML configuration; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// appendix-d or table-calibrated; overrides the configured mode.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Test tasks per setting for the zero-/few-shot comparison.
    #[arg(long, default_value_t = simulator::DEFAULT_N_TEST)]
    pub n_test: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct EvaluateArgs {
    /// Task-level CSV; defaults to `<out>/data_task_level.csv`.
    pub input: Option<PathBuf>,
    /// Configuration supplying the cost model, complexity weights and KPI
    /// conversions.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Human baseline decision turnaround, seconds.
    #[arg(long)]
    pub baseline_dtt: Option<f64>,
    /// Human baseline resource units per task.
    #[arg(long)]
    pub baseline_ces: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// Aggregate or task-level CSV; defaults to `<out>/data_aggregate_metrics.csv`.
    pub input: Option<PathBuf>,
    /// Used to aggregate cells when the input is task-level.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Txt, Format::Csv])]
    pub format: Vec<Format>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    /// Directory holding the evaluation outputs; defaults to `--out`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Csv, Format::Txt, Format::Svg])]
    pub format: Vec<Format>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Txt,
    #[value(alias = "svg-like")]
    Svg,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        if e.is_io() {
            CliError::Io(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::Usage(format!("statistics: {e}"))
    }
}

#[derive(Serialize)]
struct OutputFile {
    file: String,
    rows: Option<usize>,
}

#[derive(Serialize)]
struct Metadata {
    command: &'static str,
    version: &'static str,
    seed: Option<u64>,
    mode: Option<&'static str>,
    config: Option<String>,
    inputs: Vec<String>,
    outputs: Vec<OutputFile>,
}

struct Run<'a> {
    out_dir: &'a Path,
    stdout: &'a mut dyn Write,
    outputs: Vec<OutputFile>,
}

impl<'a> Run<'a> {
    fn new(out_dir: &'a Path, stdout: &'a mut dyn Write) -> Result<Self, CliError> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", out_dir.display())))?;
        Ok(Run { out_dir, stdout, outputs: Vec::new() })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn note(&mut self, name: &str, rows: Option<usize>) {
        let _ = match rows {
            Some(n) => writeln!(self.stdout, "wrote {name} ({n} rows)"),
            None => writeln!(self.stdout, "wrote {name}"),
        };
        self.outputs.push(OutputFile { file: name.to_string(), rows });
    }

    fn text(&mut self, name: &str, contents: &str, rows: Option<usize>) -> Result<(), CliError> {
        let p = self.path(name);
        std::fs::write(&p, contents).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        self.note(name, rows);
        Ok(())
    }

    fn finish(mut self, mut meta: Metadata) -> Result<(), CliError> {
        meta.outputs = std::mem::take(&mut self.outputs);
        let name = format!("{}_metadata.json", meta.command);
        let mut json = serde_json::to_string_pretty(&meta).expect("metadata serializes");
        json.push('\n');
        let p = self.path(&name);
        std::fs::write(&p, json).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        let _ = writeln!(self.stdout, "wrote {name}");
        Ok(())
    }
}

fn load_config(path: Option<&Path>) -> Result<SimConfig, CliError> {
    match path {
        Some(p) => Ok(SimConfig::load(p)?),
        None => Ok(SimConfig::default()),
    }
}

fn show(p: Option<&Path>) -> Option<String> {
    p.map(|p| p.display().to_string())
}

fn metadata(command: &'static str) -> Metadata {
    Metadata {
        command,
        version: env!("CARGO_PKG_VERSION"),
        seed: None,
        mode: None,
        config: None,
        inputs: Vec::new(),
        outputs: Vec::new(),
    }
}

pub fn simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut config = load_config(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(mode) = args.mode {
        config.mode = mode;
    }
    config.validate()?;
    if args.n_test == 0 {
        return Err(CliError::Usage("--n-test must be at least 1".into()));
    }
    let records = simulator::generate(&config)?;
    let adaptability = simulator::generate_adaptability(&config, args.n_test)?;

    let mut run = Run::new(&args.out, stdout)?;
    datasets::write_tasks_file(&run.path(datasets::TASK_FILE), &records)?;
    run.note(datasets::TASK_FILE, Some(records.len()));
    datasets::write_adaptability_file(&run.path(datasets::ADAPTABILITY_FILE), &adaptability)?;
    run.note(datasets::ADAPTABILITY_FILE, Some(adaptability.len()));
    let _ = writeln!(run.stdout, "seed {} mode {}", config.seed, config.mode);

    let mut meta = metadata("simulate");
    meta.seed = Some(config.seed);
    meta.mode = Some(config.mode.as_str());
    meta.config = show(args.config.as_deref());
    run.finish(meta)
}

fn read_records(path: &Path) -> Result<Vec<TaskRecord>, CliError> {
    let records = datasets::read_tasks_file(path)?;
    let mut problems = Vec::new();
    for (i, r) in records.iter().enumerate() {
        for v in model::validate(r) {
            problems.push(format!("row {} ({}): {v}", i + 1, r.task_id));
        }
    }
    if !problems.is_empty() {
        let shown: Vec<&str> = problems.iter().take(5).map(String::as_str).collect();
        let more = problems.len().saturating_sub(shown.len());
        let tail = if more > 0 { format!(" (and {more} more)") } else { String::new() };
        return Err(CliError::Usage(format!(
            "{}: invalid records: {}{tail}",
            path.display(),
            shown.join("; ")
        )));
    }
    if records.is_empty() {
        return Err(CliError::Usage(format!("{}: no task records", path.display())));
    }
    Ok(records)
}

fn settings(config: &SimConfig, baseline_dtt: Option<f64>, baseline_ces: Option<f64>) -> Result<EvalSettings, CliError> {
    for (name, v) in [("--baseline-dtt", baseline_dtt), ("--baseline-ces", baseline_ces)] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be a positive number")));
            }
        }
    }
    Ok(EvalSettings {
        cost_model: config.cost_model,
        weights: config.complexity_weights,
        baseline_dtt,
        baseline_ces,
    })
}

fn evaluate_records(records: &[TaskRecord], config: &SimConfig, s: &EvalSettings) -> Result<Vec<MetricCell>, CliError> {
    Ok(report::aggregate_grid(records, s, |d| config.domain_config_or_neutral(d))?)
}

pub fn evaluate(args: &EvaluateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(args.config.as_deref())?;
    let s = settings(&config, args.baseline_dtt, args.baseline_ces)?;
    let input = args.input.clone().unwrap_or_else(|| args.out.join(datasets::TASK_FILE));
    let records = read_records(&input)?;

    let cells = evaluate_records(&records, &config, &s)?;
    let overall = report::aggregate_all(&cells, &report::observed_counts(&cells))?;
    let business = report::business_rows(&cells, |d| config.domain_config_or_neutral(d));

    let mut run = Run::new(&args.out, stdout)?;
    datasets::write_cells_file(&run.path(datasets::AGGREGATE_FILE), &cells)?;
    run.note(datasets::AGGREGATE_FILE, Some(cells.len()));
    datasets::write_overall_file(&run.path(datasets::OVERALL_FILE), &overall)?;
    run.note(datasets::OVERALL_FILE, Some(overall.len()));
    datasets::write_business_file(&run.path(datasets::BUSINESS_FILE), &business)?;
    run.note(datasets::BUSINESS_FILE, Some(business.len()));

    let mut meta = metadata("evaluate");
    meta.config = show(args.config.as_deref());
    meta.inputs = vec![input.display().to_string()];
    run.finish(meta)
}

enum Schema {
    Tasks,
    Aggregate,
}

fn detect_schema(path: &Path) -> Result<Schema, CliError> {
    let file = datasets::open_file(path)?;
    let mut rdr = csv::Reader::from_reader(file);
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if task_csv::is_task_header(headers) {
        return Ok(Schema::Tasks);
    }
    if ["agent", "domain", "n_tasks", "gcr_pct"]
        .iter()
        .all(|c| headers.iter().any(|h| h.trim() == *c))
    {
        return Ok(Schema::Aggregate);
    }
    Err(CliError::Usage(format!(
        "{}: neither a task-level nor an aggregate metrics file",
        path.display()
    )))
}

fn write_stats(run: &mut Run<'_>, stats: &StatReport, formats: &[Format]) -> Result<(), CliError> {
    if formats.contains(&Format::Txt) {
        run.text("stats_report.txt", &stats.to_text(), None)?;
    }
    if formats.contains(&Format::Csv) {
        for (name, body) in stats.csv_files() {
            let rows = body.lines().count().saturating_sub(1);
            run.text(name, &body, Some(rows))?;
        }
    }
    Ok(())
}

pub fn analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let input = args.input.clone().unwrap_or_else(|| args.out.join(datasets::AGGREGATE_FILE));
    let stats = match detect_schema(&input)? {
        Schema::Aggregate => {
            let cells = datasets::read_cells_file(&input)?;
            report::analyze_cells(&cells)?
        }
        Schema::Tasks => {
            let config = load_config(args.config.as_deref())?;
            let s = settings(&config, None, None)?;
            let records = read_records(&input)?;
            let cells = evaluate_records(&records, &config, &s)?;
            report::analyze_tasks(&records, &cells)?
        }
    };
    let mut run = Run::new(&args.out, stdout)?;
    write_stats(&mut run, &stats, &args.format)?;
    let mut meta = metadata("analyze");
    meta.config = show(args.config.as_deref());
    meta.inputs = vec![input.display().to_string()];
    run.finish(meta)
}

pub fn report_cmd(args: &ReportArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dir = args.input.clone().unwrap_or_else(|| args.out.clone());
    let paths = datasets::DatasetPaths::in_dir(&dir);
    let needed = [&paths.aggregate, &paths.overall, &paths.adaptability, &paths.business];
    let missing: Vec<String> = needed
        .iter()
        .filter(|p| !p.is_file())
        .map(|p| p.display().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Usage(format!("missing input files: {}", missing.join(", "))));
    }
    let cells = datasets::read_cells_file(&paths.aggregate)?;
    let overall = datasets::read_overall_file(&paths.overall)?;
    let adaptability = datasets::read_adaptability_file(&paths.adaptability)?;
    let business = datasets::read_business_file(&paths.business)?;

    let inputs = ChartInputs { cells: &cells, overall: &overall, adaptability: &adaptability };
    let charts = ChartKind::ALL
        .iter()
        .map(|k| report::chart_data(&inputs, *k))
        .collect::<Result<Vec<_>, _>>()?;

    let mut run = Run::new(&args.out, stdout)?;
    if args.format.contains(&Format::Txt) {
        let mut text = String::new();
        for t in [
            report::overall_table(&overall),
            report::domain_table(&cells),
            report::adaptability_table(&adaptability),
            report::business_table(&business),
            report::gcr_matrix(&cells),
        ] {
            text.push_str(&t.render());
            text.push('\n');
        }
        match report::analyze_cells(&cells) {
            Ok(s) => text.push_str(&s.to_text()),
            Err(e) => text.push_str(&format!("Statistical analysis unavailable: {e}\n")),
        }
        run.text("report.txt", &text, None)?;
    }
    for c in &charts {
        if args.format.contains(&Format::Csv) {
            run.text(&format!("{}.csv", c.kind.file_stem()), &c.to_csv(), Some(c.rows.len()))?;
        }
        if args.format.contains(&Format::Svg) {
            run.text(&format!("{}.svg", c.kind.file_stem()), &report::render_svg(c), None)?;
        }
    }
    let mut meta = metadata("report");
    meta.inputs = needed.iter().map(|p| p.display().to_string()).collect();
    run.finish(meta)
}

/// Runs a parsed command, writing progress lines to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate(a, stdout),
        Command::Evaluate(a) => evaluate(a, stdout),
        Command::Analyze(a) => analyze(a, stdout),
        Command::Report(a) => report_cmd(a, stdout),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
