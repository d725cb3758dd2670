use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use thiserror::Error;

use seqthin::io::{export_voxels_csv, FormatError, PatternFormat};
use seqthin::metrics::{mean_csv_row, MetricsError, CSV_HEADER};
use seqthin::pattern::PatternError;
use seqthin::schedule::ScheduleError;
use seqthin::shapes::{
    generate, ruggedize, RuggedSpec, ShapeError, ShapeKind, ShapeSpec, DEFAULT_HYPERBOLOID_A,
    DEFAULT_HYPERBOLOID_C, DEFAULT_PARABOLOID_A, DEFAULT_PARABOLOID_B,
};
use seqthin::thin::ThinError;
use seqthin::{evaluate, gh_thin, thin as nd_thin, zs_thin, BinaryPattern, MetricsReport, Schedule, ThinOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Algorithm(String),
}

impl CliError {
    /// 1 for algorithm and metric failures, 2 for usage and file problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Algorithm(_) => 1,
            _ => 2,
        }
    }
}

impl From<ScheduleError> for CliError {
    fn from(e: ScheduleError) -> Self {
        CliError::Usage(format!("schedule: {e}"))
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Algorithm(e.to_string())
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::Algorithm(e.to_string())
    }
}

impl From<ThinError> for CliError {
    fn from(e: ThinError) -> Self {
        match e {
            ThinError::Schedule(s) => s.into(),
            other => CliError::Algorithm(other.to_string()),
        }
    }
}

impl From<ShapeError> for CliError {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::InvalidParameter(_) | ShapeError::WrongDimension { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Algorithm(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Sequential slice-based thinning (any dimension)
    Nd,
    /// Zhang-Suen (2D)
    Zs,
    /// Guo-Hall (2D)
    Gh,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Nd => "nd",
            Algo::Zs => "zs",
            Algo::Gh => "gh",
        }
    }

    fn run(self, pattern: &BinaryPattern, schedule: Option<&Schedule>) -> Result<ThinOutcome, CliError> {
        Ok(match self {
            Algo::Nd => {
                let default = Schedule::default_for(pattern.ndim());
                nd_thin(pattern, schedule.unwrap_or(&default))?
            }
            Algo::Zs => zs_thin(pattern)?,
            Algo::Gh => gh_thin(pattern)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Pbm,
    Ndbin,
    /// Foreground coordinates, one per line (output only)
    Csv,
}

fn output_format(path: &Path, explicit: Option<FileFormat>) -> Result<FileFormat, CliError> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("pbm") => Ok(FileFormat::Pbm),
        Some("ndbin") => Ok(FileFormat::Ndbin),
        Some("csv") => Ok(FileFormat::Csv),
        _ => Err(CliError::Usage(format!(
            "{}: cannot tell output format from extension; use .pbm, .ndbin, .csv or --output-format",
            path.display()
        ))),
    }
}

fn read_pattern(path: &Path, explicit: Option<FileFormat>) -> Result<BinaryPattern, CliError> {
    let format = match explicit {
        Some(FileFormat::Pbm) => PatternFormat::Pbm,
        Some(FileFormat::Ndbin) => PatternFormat::Ndbin,
        Some(FileFormat::Csv) => {
            return Err(CliError::Usage("csv is an output-only format".into()));
        }
        None => PatternFormat::from_path(path).map_err(|source| CliError::Format {
            path: path.to_path_buf(),
            source,
        })?,
    };
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    format.read(&bytes).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn write_pattern(path: &Path, pattern: &BinaryPattern, explicit: Option<FileFormat>) -> Result<(), CliError> {
    let bytes = match output_format(path, explicit)? {
        FileFormat::Pbm => PatternFormat::Pbm.write(pattern),
        FileFormat::Ndbin => PatternFormat::Ndbin.write(pattern),
        FileFormat::Csv => Ok(export_voxels_csv(pattern)),
    }
    .map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn print_lines(lines: &[String]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    for l in lines {
        writeln!(out, "{l}").map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    }
    Ok(())
}

fn score(input: &BinaryPattern, outcome: &ThinOutcome) -> Result<MetricsReport, CliError> {
    let report = evaluate(input, outcome)?;
    if !report.skeleton_within_input {
        eprintln!("seqthin: warning: skeleton has foreground outside the input");
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct ThinArgs {
    #[arg(long, value_enum, default_value = "nd")]
    algo: Algo,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Erosion schedule for `nd`, e.g. `1fb,0fb` or `2fb;1fb,0fb`
    #[arg(long)]
    schedule: Option<String>,
    /// Print a metrics CSV header and row
    #[arg(long)]
    metrics: bool,
    /// Input format, overriding the file extension
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
    /// Output format, overriding the file extension
    #[arg(long, value_enum)]
    output_format: Option<FileFormat>,
}

fn parse_schedule(algo: Algo, text: Option<&str>) -> Result<Option<Schedule>, CliError> {
    match text {
        None => Ok(None),
        Some(_) if algo != Algo::Nd => Err(CliError::Usage("--schedule applies to --algo nd only".into())),
        Some(t) => Ok(Some(t.parse()?)),
    }
}

pub fn thin(args: ThinArgs) -> Result<(), CliError> {
    let schedule = parse_schedule(args.algo, args.schedule.as_deref())?;
    // fail on an unusable output path before doing any work
    output_format(&args.output, args.output_format)?;
    let input = read_pattern(&args.input, args.format)?;
    let outcome = args.algo.run(&input, schedule.as_ref())?;
    let row = if args.metrics {
        Some(score(&input, &outcome)?.csv_row(args.algo.name()))
    } else {
        None
    };
    write_pattern(&args.output, &outcome.skeleton, args.output_format)?;
    if let Some(row) = row {
        print_lines(&[CSV_HEADER.to_string(), row])?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// One or more pattern files
    #[arg(long, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "zs,gh,nd")]
    algos: Vec<Algo>,
    /// Erosion schedule for `nd`
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

pub fn compare(args: CompareArgs) -> Result<(), CliError> {
    if args.input.is_empty() {
        return Err(CliError::Usage("compare needs at least one --input".into()));
    }
    if args.algos.is_empty() {
        return Err(CliError::Usage("compare needs at least one algorithm".into()));
    }
    let schedule: Option<Schedule> = args.schedule.as_deref().map(str::parse).transpose()?;

    let mut lines = vec![CSV_HEADER.to_string()];
    let mut per_algo: Vec<Vec<MetricsReport>> = vec![Vec::new(); args.algos.len()];
    for path in &args.input {
        let input = read_pattern(path, args.format)?;
        for (slot, &algo) in args.algos.iter().enumerate() {
            let outcome = algo.run(&input, schedule.as_ref())?;
            let report = score(&input, &outcome)?;
            lines.push(report.csv_row(algo.name()));
            per_algo[slot].push(report);
        }
    }
    if args.input.len() > 1 {
        for (algo, reports) in args.algos.iter().zip(&per_algo) {
            lines.push(mean_csv_row(&format!("mean:{}", algo.name()), reports));
        }
    }
    print_lines(&lines)
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// The original pattern
    #[arg(long)]
    input: PathBuf,
    /// The skeleton to score
    #[arg(long)]
    skeleton: PathBuf,
    /// Iteration count to report
    #[arg(long, default_value_t = 0)]
    iterations: usize,
    /// Label for the algorithm column
    #[arg(long, default_value = "skeleton")]
    algorithm: String,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

pub fn metrics(args: MetricsArgs) -> Result<(), CliError> {
    let input = read_pattern(&args.input, args.format)?;
    let skeleton = read_pattern(&args.skeleton, args.format)?;
    let report = score(
        &input,
        &ThinOutcome {
            skeleton,
            iterations: args.iterations,
        },
    )?;
    print_lines(&[CSV_HEADER.to_string(), report.csv_row(&args.algorithm)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeName {
    Square,
    Rectangle,
    Disc,
    Triangle,
    Sphere,
    Cylinder,
    Hyperboloid1,
    Hyperboloid2,
    Paraboloid,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    shape: ShapeName,
    /// Grid extents, e.g. `31x31` or `21x21x15`
    #[arg(long)]
    grid: String,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    base: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Probability of clearing each boundary cell
    #[arg(long)]
    rugged: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum)]
    output_format: Option<FileFormat>,
}

fn parse_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad --grid {text:?}, expected e.g. 7x7 or 9x9x5"));
    let dims = text
        .split(['x', 'X'])
        .map(|d| d.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    if dims.len() < 2 {
        return Err(bad());
    }
    Ok(dims)
}

fn require<T>(v: Option<T>, flag: &str, shape: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--shape {shape} needs --{flag}")))
}

fn shape_kind(args: &GenArgs, grid: &[usize]) -> Result<ShapeKind, CliError> {
    let name = format!("{:?}", args.shape).to_ascii_lowercase();
    let name = name.as_str();
    let default_height = || grid.get(2).map_or(1, |&z| z.saturating_sub(2).max(1));
    Ok(match args.shape {
        ShapeName::Square => ShapeKind::Square {
            side: require(args.side, "side", name)?,
        },
        ShapeName::Rectangle => ShapeKind::Rectangle {
            height: require(args.height, "height", name)?,
            width: require(args.width, "width", name)?,
        },
        ShapeName::Disc => ShapeKind::Disc {
            radius: require(args.radius, "radius", name)?,
        },
        ShapeName::Triangle => {
            let base = args.base.or(args.side);
            let height = args.height.or(args.side);
            ShapeKind::Triangle {
                base: require(base, "base", name)?,
                height: require(height, "height", name)?,
            }
        }
        ShapeName::Sphere => ShapeKind::Sphere {
            radius: require(args.radius, "radius", name)?,
        },
        ShapeName::Cylinder => ShapeKind::Cylinder {
            radius: require(args.radius, "radius", name)?,
            height: args.height.unwrap_or_else(default_height),
        },
        ShapeName::Hyperboloid1 => ShapeKind::HyperboloidOneSheet {
            a: args.a.unwrap_or(DEFAULT_HYPERBOLOID_A),
            c: args.c.unwrap_or(DEFAULT_HYPERBOLOID_C),
            height: args.height.unwrap_or_else(default_height),
        },
        ShapeName::Hyperboloid2 => ShapeKind::HyperboloidTwoSheet {
            a: args.a.unwrap_or(DEFAULT_HYPERBOLOID_A),
            c: args.c.unwrap_or(DEFAULT_HYPERBOLOID_C),
            height: args.height.unwrap_or_else(default_height),
        },
        ShapeName::Paraboloid => ShapeKind::EllipticParaboloid {
            a: args.a.unwrap_or(DEFAULT_PARABOLOID_A),
            b: args.b.unwrap_or(DEFAULT_PARABOLOID_B),
            height: args.height.unwrap_or_else(default_height),
        },
    })
}

pub fn gen(args: GenArgs) -> Result<(), CliError> {
    let grid = parse_grid(&args.grid)?;
    let kind = shape_kind(&args, &grid)?;
    output_format(&args.output, args.output_format)?;
    let mut pattern = generate(&ShapeSpec::new(kind, &grid))?;
    if let Some(probability) = args.rugged {
        pattern = ruggedize(
            &pattern,
            &RuggedSpec {
                probability,
                seed: args.seed,
            },
        )?;
    }
    write_pattern(&args.output, &pattern, args.output_format)
}
