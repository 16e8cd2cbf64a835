use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use phase_cavity::sweep::{figure_preset, sweep_1d, sweep_2d, FigureId, SweepResult};
use phase_cavity::{intensity_ratios, SweepPoint, SystemParams};

use phase_cavity_cli::config::{parse_axis, resolve, ParamFlags};
use phase_cavity_cli::emit::{write_csv, write_json};
use phase_cavity_cli::validate;
use phase_cavity_cli::CliError;

/// Closed-loop four-level medium in a two-sided cavity: intensity ratios as
/// functions of probe detuning and the two control phases.
#[derive(Parser)]
#[command(name = "phase-cavity", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    #[command(allow_negative_numbers = true)]
    Point(RunArgs),
    /// Scan one axis (requires exactly one --axis).
    #[command(allow_negative_numbers = true)]
    Spectrum(RunArgs),
    /// Scan two axes, outer axis first (requires exactly two --axis).
    #[command(allow_negative_numbers = true)]
    Contour(RunArgs),
    /// Run a built-in figure grid (fig2a..fig5c).
    #[command(allow_negative_numbers = true)]
    Preset {
        /// Preset identifier: fig2a, fig2b, fig3a, fig3b, fig3c, fig4a,
        /// fig4b, fig4c, fig5a, fig5b or fig5c.
        id: String,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Run the validation suite and print one pass/fail line per check.
    #[command(allow_negative_numbers = true)]
    Validate {
        #[command(flatten)]
        args: RunArgs,
        /// Scale factor applied to every check bound (1 = pinned values).
        #[arg(long = "tol-scale", default_value_t = 1.0)]
        tol_scale: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` configuration file; flags override file values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: ParamFlags,
    /// Scan axis as name:start:stop:count with name one of delta_p, phi1,
    /// phi2. Repeatable up to twice.
    #[arg(long = "axis", value_name = "SPEC")]
    axes: Vec<String>,
    /// Output path; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn usage_error(msg: impl Into<String>) -> CliError {
    CliError::Validation {
        name: "usage".to_string(),
        msg: msg.into(),
    }
}

fn resolve_args(
    args: &RunArgs,
    base: SystemParams,
    base_delta_p: f64,
) -> Result<(SystemParams, f64), CliError> {
    let file_text = match &args.config {
        Some(path) => Some(fs::read_to_string(path)?),
        None => None,
    };
    resolve(file_text.as_deref(), &args.params, base, base_delta_p)
}

fn emit(result: &SweepResult, args: &RunArgs) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match args.format {
        Format::Csv => write_csv(result, &mut sink),
        Format::Json => write_json(result, &mut sink),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Point(args) => {
            if !args.axes.is_empty() {
                return Err(usage_error("point mode takes no --axis"));
            }
            let (p, dp) = resolve_args(&args, SystemParams::default(), 0.0)?;
            let result = SweepResult {
                base: p,
                base_delta_p: dp,
                axes: vec![],
                points: vec![SweepPoint {
                    delta_p: dp,
                    phi1: p.phi1,
                    phi2: p.phi2,
                    record: intensity_ratios(&p, dp),
                }],
            };
            emit(&result, &args)?;
            Ok(0)
        }
        Command::Spectrum(args) => {
            let (p, dp) = resolve_args(&args, SystemParams::default(), 0.0)?;
            let [axis] = args.axes.as_slice() else {
                return Err(usage_error("spectrum mode needs exactly one --axis"));
            };
            let axis = parse_axis(axis)?;
            emit(&sweep_1d(&p, dp, &axis), &args)?;
            Ok(0)
        }
        Command::Contour(args) => {
            let (p, dp) = resolve_args(&args, SystemParams::default(), 0.0)?;
            let [outer, inner] = args.axes.as_slice() else {
                return Err(usage_error("contour mode needs exactly two --axis"));
            };
            let (outer, inner) = (parse_axis(outer)?, parse_axis(inner)?);
            emit(&sweep_2d(&p, dp, &outer, &inner), &args)?;
            Ok(0)
        }
        Command::Preset { id, args } => {
            if !args.axes.is_empty() {
                return Err(usage_error("presets define their own axes; drop --axis"));
            }
            let id: FigureId = id.parse()?;
            let (preset_params, preset_dp, axes) = figure_preset(id);
            let (p, dp) = resolve_args(&args, preset_params, preset_dp)?;
            let result = match axes.as_slice() {
                [axis] => sweep_1d(&p, dp, axis),
                [outer, inner] => sweep_2d(&p, dp, outer, inner),
                _ => unreachable!("presets define one or two axes"),
            };
            emit(&result, &args)?;
            Ok(0)
        }
        Command::Validate { args, tol_scale } => {
            if !args.axes.is_empty() {
                return Err(usage_error("validate mode takes no --axis"));
            }
            if !tol_scale.is_finite() || tol_scale < 0.0 {
                return Err(usage_error("--tol-scale must be a finite non-negative number"));
            }
            let (p, _dp) = resolve_args(&args, SystemParams::default(), 0.0)?;
            let report = validate::run_all(&p, tol_scale);
            let mut sink: Box<dyn Write> = match &args.output {
                Some(path) => Box::new(fs::File::create(path)?),
                None => Box::new(io::stdout().lock()),
            };
            write!(sink, "{report}")?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
