//! Command line front end.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subsums_core::{
    box_dimension_estimate, classify, classify_ferdinands_family, classify_multigeometric,
    classify_sine, kakeya_scan, measure_estimate, outer_cover, sandwich_check, sumset,
    sumset_meet_in_middle, Error, Param, Rational, SeriesSpec,
};

use crate::parse::{parse_grid, parse_list, parse_rational, parse_series, parse_weights, ParseError};
use crate::report::{self, *};

#[derive(Parser, Debug)]
#[command(name = "subsums", version, about = "Classify and approximate sets of subsums of multigeometric-type series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sine,
    Mgs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified topological label from the threshold theorems.
    Classify {
        #[arg(long)]
        series: String,
        #[command(flatten)]
        output: Output,
    },
    /// Labels along an x grid (`--k` with `--x-grid` or `--x`), or the
    /// term-versus-tail comparisons of one series (`--series`).
    Scan {
        #[arg(long, conflicts_with_all = ["k", "x_grid", "x"])]
        series: Option<String>,
        #[arg(long)]
        k: Option<String>,
        /// `lo:hi:step`, read exactly.
        #[arg(long)]
        x_grid: Option<String>,
        /// Comma separated grid points.
        #[arg(long, conflicts_with = "x_grid")]
        x: Option<String>,
        #[arg(long, value_enum, default_value_t = Family::Sine)]
        family: Family,
        #[arg(long, default_value_t = 64)]
        horizon: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Outer cover of the set of subsums at a given depth.
    Cover {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Upper bounds on the Lebesgue measure for depths `0..=depth`.
    Measure {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Box-counting dimension estimate over several depths.
    Dimension {
        #[arg(long)]
        series: String,
        #[arg(long, default_value = "8,12,16")]
        depths: String,
        #[command(flatten)]
        output: Output,
    },
    /// Subset sums of a weight vector and their longest run.
    Sumset {
        #[arg(long)]
        k: String,
        /// Split the weights in two halves (up to 48 weights).
        #[arg(long)]
        mitm: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Per-index check of the two comparison chains for `a`, `c`, `b`.
    Sandwich {
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 64)]
        horizon: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Core(Error),
    Io(std::io::Error),
    Csv(csv::Error),
}

impl CliError {
    /// 2 for bad input, 3 for a size or range guard, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(e) if e.is_guard() => 3,
            CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "invalid input: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

fn render<T: serde::Serialize>(
    r: &T,
    format: Format,
    csv: fn(&T) -> Result<String, csv::Error>,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => to_json(r),
        Format::Csv => csv(r)?,
    })
}

fn classify_series(text: &str) -> Result<ClassificationReport, CliError> {
    let s = parse_series(text)?;
    let c = match &s.ferdinands {
        Some(f) => classify_ferdinands_family(f.a, f.d, f.n, &f.q)?,
        None => classify(&s.spec)?,
    };
    Ok((&c).into())
}

fn grid_points(x_grid: Option<&str>, x: Option<&str>) -> Result<Vec<(String, Rational)>, CliError> {
    let points = match (x_grid, x) {
        (Some(g), None) => parse_grid(g)?
            .into_iter()
            .map(|r| (r.to_string(), r))
            .collect(),
        (None, Some(list)) => list
            .split(',')
            .map(|t| parse_rational(t).map(|r| (t.trim().to_string(), r)))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(ParseError("scan needs --series, or --k with --x-grid or --x".into()).into()),
    };
    if points.len() < 2 {
        return Err(ParseError(format!("a grid needs at least 2 points, found {}", points.len())).into());
    }
    Ok(points)
}

fn grid_scan(k: &str, family: Family, points: Vec<(String, Rational)>) -> Result<GridReport, CliError> {
    let k = parse_weights(k)?;
    let mut specs = Vec::with_capacity(points.len());
    for (text, x) in &points {
        let p = Param::exact(*x);
        let spec = match family {
            Family::Sine => SeriesSpec::sine(k.clone(), p),
            Family::Mgs => SeriesSpec::multigeometric(k.clone(), p),
        }
        .map_err(|e| ParseError(format!("grid point {text}: {e}")))?;
        specs.push(spec);
    }
    let mut rows = Vec::with_capacity(points.len());
    for ((text, x), spec) in points.into_iter().zip(&specs) {
        let c = match family {
            Family::Sine => classify_sine(spec)?,
            Family::Mgs => classify_multigeometric(spec)?,
        };
        rows.push(GridRow {
            x: text,
            x_value: Param::exact(x).enclosure().mid(),
            label: c.label.as_str().to_string(),
            certificate: decisive(&c).map(str::to_string).unwrap_or_default(),
        });
    }
    Ok(GridReport {
        family: match family {
            Family::Sine => "sine",
            Family::Mgs => "mgs",
        }
        .to_string(),
        k,
        rows,
    })
}

/// Theorem behind the label: the certificate whose conclusion matches
/// it, else the first one.
fn decisive(c: &subsums_core::Classification) -> Option<&'static str> {
    use subsums_core::{Conclusion, Label};
    let want = match c.label {
        Label::Interval => Some(Conclusion::IsInterval),
        Label::CantorSet => Some(Conclusion::CantorSet),
        Label::ContainsInterval => Some(Conclusion::ContainsInterval),
        Label::NotFiniteUnion => Some(Conclusion::NotFiniteUnion),
        _ => None,
    };
    c.certificates
        .iter()
        .find(|x| Some(x.conclusion) == want)
        .or(c.certificates.first())
        .map(|x| x.theorem)
}

/// Runs one command and returns the rendered report and its format.
pub fn run(cli: &Cli) -> Result<(String, Option<PathBuf>), CliError> {
    let (text, out) = match &cli.command {
        Command::Classify { series, output } => {
            let r = classify_series(series)?;
            (render(&r, output.format, report::classification_csv)?, output)
        }
        Command::Scan {
            series,
            k,
            x_grid,
            x,
            family,
            horizon,
            output,
        } => match (series, k) {
            (Some(series), _) => {
                if *horizon == 0 {
                    return Err(ParseError("horizon must be at least 1".into()).into());
                }
                let s = parse_series(series)?;
                let r: KakeyaReport = (&kakeya_scan(&s.spec, *horizon)?).into();
                (render(&r, output.format, report::kakeya_csv)?, output)
            }
            (None, Some(k)) => {
                let points = grid_points(x_grid.as_deref(), x.as_deref())?;
                let r = grid_scan(k, *family, points)?;
                (render(&r, output.format, report::grid_csv)?, output)
            }
            (None, None) => {
                return Err(ParseError("scan needs --series, or --k with --x-grid or --x".into()).into())
            }
        },
        Command::Cover {
            series,
            depth,
            output,
        } => {
            let s = parse_series(series)?;
            let r: CoverReport = (&outer_cover(&s.spec, *depth)?).into();
            (render(&r, output.format, report::cover_csv)?, output)
        }
        Command::Measure {
            series,
            depth,
            output,
        } => {
            let s = parse_series(series)?;
            let r: MeasureReport = (&measure_estimate(&s.spec, *depth)?).into();
            (render(&r, output.format, report::measure_csv)?, output)
        }
        Command::Dimension {
            series,
            depths,
            output,
        } => {
            let s = parse_series(series)?;
            let depths: Vec<usize> = parse_list(depths, "depth")?;
            let r: DimensionReport = (&box_dimension_estimate(&s.spec, &depths)?).into();
            (render(&r, output.format, report::dimension_csv)?, output)
        }
        Command::Sumset { k, mitm, output } => {
            let k: Vec<u64> = parse_weights(k)?.into_iter().map(u64::from).collect();
            let info = if *mitm {
                sumset_meet_in_middle(&k)?
            } else {
                sumset(&k)?
            };
            let r: SumsetReport = (&info).into();
            (render(&r, output.format, report::sumset_csv)?, output)
        }
        Command::Sandwich {
            a,
            c,
            b,
            horizon,
            output,
        } => {
            let (a, c, b) = (parse_series(a)?, parse_series(c)?, parse_series(b)?);
            let r: SandwichOutput = (&sandwich_check(&a.spec, &c.spec, &b.spec, *horizon)?).into();
            (render(&r, output.format, report::sandwich_csv)?, output)
        }
    };
    Ok((text, out.out.clone()))
}

/// Parses arguments, runs, writes the report, and returns the exit code.
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
    match run(&cli) {
        Ok((text, None)) => {
            print!("{text}");
            0
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {}", CliError::Io(e));
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
