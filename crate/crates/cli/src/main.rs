//! `gyrosim`: command-line front end over the gyroscope core. Subcommands
//! share a JSON config (see `config`); every run is deterministic for fixed
//! inputs. Exit codes: 0 success, 2 configuration or validation error, 1
//! runtime or I/O error.

mod config;

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gyrosim_core::error::Error as CoreError;
use gyrosim_core::ode::{extract_steady_state, integrate_detect, integrate_drive};
use gyrosim_core::params::{damping_ratio, natural_frequency, DerivedParams, RateInput};
use gyrosim_core::phasor::wrap_angle;
use gyrosim_core::response::{detect_phasor_from_drive, drive_response_damped, phase_lag_from_ratio};
use gyrosim_core::sweep::{run_damping_sweep, run_temperature_sweep, write_csv, write_csv_to, SweepScale, SweepSpec, SweepVariable};
use gyrosim_core::Float;

use crate::config::ConfigFile;

#[derive(Parser)]
#[command(name = "gyrosim", about = "Comb-drive vibratory gyroscope simulator", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived modal quantities of the configured device
    Derive(DeriveArgs),
    /// Closed-form frequency response over a linear frequency grid, as CSV
    Respond(RespondArgs),
    /// Time-domain integration of the drive and detect motion, as CSV
    Simulate(SimulateArgs),
    /// Damping or temperature sweep of the steady-state response, as CSV
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Device configuration file (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Override a config value by dotted path, e.g. gyro.damping=2e-7
    #[arg(long = "params", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Args)]
struct DeriveArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct RespondArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Low end of the frequency grid, Hz
    #[arg(long)]
    freq_min_hz: f64,
    /// High end of the frequency grid, Hz
    #[arg(long)]
    freq_max_hz: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 101)]
    points: u32,
    /// Output CSV path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output CSV path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Quantity to sweep
    #[arg(long, value_enum)]
    variable: VariableArg,
    /// Low end of the sweep (N*s/m or K)
    #[arg(long)]
    min: f64,
    /// High end of the sweep (N*s/m or K)
    #[arg(long)]
    max: f64,
    /// Number of sweep points
    #[arg(long, default_value_t = 100)]
    points: u32,
    /// Grid spacing
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    scale: ScaleArg,
    /// Output CSV path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariableArg {
    /// Damping coefficient c
    Damping,
    /// Gas temperature with the viscosity power law
    Temperature,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Logarithmic,
}

enum CliError {
    /// Bad configuration or arguments: exit code 2.
    Config(String),
    /// Runtime or I/O failure: exit code 1.
    Runtime(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Io { .. } => CliError::Runtime(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Derive(args) => cmd_derive(args),
        Command::Respond(args) => cmd_respond(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<ConfigFile, CliError> {
    let text = fs::read_to_string(&common.config)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", common.config.display())))?;
    let mut doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", common.config.display())))?;
    for spec in &common.params {
        apply_override(&mut doc, spec)?;
    }
    serde_json::from_value(doc).map_err(|e| CliError::Config(e.to_string()))
}

/// Sets one dotted-path key in the JSON document before deserialization, so
/// overrides pass through exactly the same validation as file contents. The
/// value is parsed as JSON where possible and taken as a string otherwise.
fn apply_override(doc: &mut serde_json::Value, spec: &str) -> Result<(), CliError> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--params expects KEY=VALUE, got `{spec}`")))?;
    let mut segments: Vec<&str> = path.split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(CliError::Config(format!("--params key `{path}` has an empty segment")));
    }
    let last = segments.pop().expect("split yields at least one segment");
    let parsed: serde_json::Value =
        serde_json::from_str(raw).unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));

    let mut cursor = doc;
    for segment in segments {
        let object = cursor
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("--params key `{path}`: `{segment}` is not an object")))?;
        cursor = object
            .entry(segment.to_string())
            .or_insert_with(|| serde_json::Value::Object(serde_json::Map::new()));
    }
    cursor
        .as_object_mut()
        .ok_or_else(|| CliError::Config(format!("--params key `{path}` does not address an object field")))?
        .insert(last.to_string(), parsed);
    Ok(())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_derive(args: DeriveArgs) -> Result<(), CliError> {
    let config = load_config(&args.common)?;
    let params = config.gyro_params();
    let derived = DerivedParams::from_params(&params)?;
    println!("omega_n = {:.6e} rad/s", derived.natural_freq);
    println!("f_n = {:.6e} Hz", derived.natural_freq / TAU);
    println!("xi = {:.6e}", derived.damping_ratio);
    match derived.quality_factor {
        Some(q) => println!("Q = {:.6e}", q),
        None => println!("Q = undamped"),
    }
    println!("F = {:.6e} N", derived.force_amplitude);
    Ok(())
}

fn cmd_respond(args: RespondArgs) -> Result<(), CliError> {
    let config = load_config(&args.common)?;
    let base = config.gyro_params();
    base.validate()?;
    if !(args.freq_min_hz > 0.0 && args.freq_min_hz < args.freq_max_hz && args.freq_max_hz.is_finite()) {
        return Err(CliError::Config(format!(
            "need 0 < freq-min-hz < freq-max-hz, got {} and {}",
            args.freq_min_hz, args.freq_max_hz
        )));
    }
    if args.points < 2 {
        return Err(CliError::Config("respond needs at least 2 points".into()));
    }

    let rate = RateInput::new(config.rate())?;
    let wn = natural_frequency(base.mass, base.stiffness)?;
    let xi = damping_ratio(base.damping, base.mass, base.stiffness)?;
    let last = (args.points - 1) as usize;

    let mut csv = String::from("freq_hz,drive_amp_m,phase_deg,detect_amp_m\n");
    for i in 0..args.points as usize {
        let freq_hz = if i == 0 {
            args.freq_min_hz
        } else if i == last {
            args.freq_max_hz
        } else {
            args.freq_min_hz + (i as f64 / last as f64) * (args.freq_max_hz - args.freq_min_hz)
        };
        let mut p = base;
        p.drive_freq = TAU * freq_hz;
        match drive_response_damped(&p) {
            Ok(drive) => {
                let detect = detect_phasor_from_drive(&drive, rate)?;
                let phase_deg = phase_lag_from_ratio(wn, p.drive_freq, xi).rad_to_deg();
                writeln!(
                    csv,
                    "{:.16e},{:.16e},{:.16e},{:.16e}",
                    freq_hz,
                    drive.amplitude(),
                    phase_deg,
                    detect.amplitude()
                )
                .expect("string write cannot fail");
            }
            // undamped pole: mark the row rather than abort the grid
            Err(CoreError::ResonanceSingularity) => {
                writeln!(csv, "{freq_hz:.16e},singular,singular,singular").expect("string write cannot fail");
            }
            Err(other) => return Err(other.into()),
        }
    }
    write_output(&args.out, &csv)
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let config = load_config(&args.common)?;
    let params = config.gyro_params();
    params.validate()?;
    let integrator = config.integrator(&params)?;
    let rate = RateInput::new(config.rate())?;

    let traj = integrate_detect(&integrate_drive(&params, &integrator)?, rate)?;
    let z = traj.z().expect("detect channel was just integrated");

    let mut csv = String::from("t_s,x_m,v_mps,z_m\n");
    for i in 0..traj.len() {
        writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            traj.time_at(i),
            traj.x()[i],
            traj.v()[i],
            z[i]
        )
        .expect("string write cannot fail");
    }
    write_output(&args.out, &csv)?;

    let steady = extract_steady_state(&traj, params.drive_freq, integrator.measure_cycles)?;
    println!(
        "steady_state: amplitude_m = {:.6e}, phase_lag_deg = {:.6e}",
        steady.amplitude(),
        wrap_angle(-steady.phase()).rad_to_deg()
    );
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let config = load_config(&args.common)?;
    let spec = SweepSpec {
        variable: match args.variable {
            VariableArg::Damping => SweepVariable::DampingC,
            VariableArg::Temperature => SweepVariable::Temperature,
        },
        min: args.min,
        max: args.max,
        points: args.points,
        scale: match args.scale {
            ScaleArg::Linear => SweepScale::Linear,
            ScaleArg::Logarithmic => SweepScale::Logarithmic,
        },
        base_params: config.gyro_params(),
        damping_model: config.damping_model(),
        rate: RateInput::new(config.rate())?,
    };
    let rows = match spec.variable {
        SweepVariable::DampingC => run_damping_sweep(&spec)?,
        SweepVariable::Temperature => run_temperature_sweep(&spec)?,
    };
    match &args.out {
        Some(path) => write_csv(&rows, path)?,
        None => write_csv_to(&rows, &mut std::io::stdout().lock())?,
    }
    Ok(())
}
