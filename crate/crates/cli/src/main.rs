use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iterlog_cli::diagnose::{DEFAULT_DEGREE_CAP, DEFAULT_LADDER_MAX};
use iterlog_cli::render::Render;
use iterlog_cli::{
    cmd_diagnose, cmd_norm, cmd_samples_dump, cmd_verify, exit, CliError, CliResult, DiagnoseOptions, Format,
    RunConfig, Suite,
};
use iterlog_core::io::{read_series, SeriesInput};
use iterlog_core::norms::SpaceSpec;

#[derive(Parser)]
#[command(name = "iterlog", version, about = "Norms, iterated-log diagnostics and bound checks for stable polynomials")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for sphere directions and randomized instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of sphere directions sampled by the estimators
    #[arg(long, global = true, default_value_t = RunConfig::default().sphere_samples)]
    sphere_samples: usize,

    /// Number of radii per direction
    #[arg(long, global = true, default_value_t = RunConfig::default().radial_grid)]
    radial_grid: usize,

    /// Absolute tolerance for adaptive quadrature
    #[arg(long, global = true, default_value_t = RunConfig::default().tol)]
    tol: f64,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: json, csv or text
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Norm and tail profile of a polynomial or truncated series
    Norm {
        #[arg(long)]
        input: PathBuf,
        /// h2d:d=<d>, dirichlet, or besov:d=<d>,N=<N>,measure=<measure>
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Stability, argument and sup-norm checks, then tail profiles of the
    /// iterated-log ladder
    Diagnose {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to h2d:d=<dimension of the input>
        #[arg(long)]
        space: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
        #[arg(long, default_value_t = DEFAULT_LADDER_MAX)]
        ladder_max: usize,
    },
    /// Run a verification suite, or all of them
    Verify {
        /// Suite names, or "all" (the default)
        suite: Vec<String>,
    },
    /// Run the series identity suites
    VerifyIdentities,
    /// Print the seeded sphere directions
    SamplesDump {
        #[arg(long)]
        dimension: usize,
    },
}

fn read_input(path: &PathBuf) -> CliResult<SeriesInput> {
    Ok(read_series(path)?)
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    let c = &cli.common;
    let cfg = RunConfig {
        seed: c.seed,
        sphere_samples: c.sphere_samples,
        radial_grid: c.radial_grid,
        tol: c.tol,
    };
    let (text, code) = match cli.command {
        Command::Norm {
            input,
            space,
            degree_cap,
        } => {
            let input = read_input(&input)?;
            let space = SpaceSpec::parse(&space)?;
            let r = cmd_norm(&input, &space, degree_cap)?;
            (r.render(c.format.unwrap_or(Format::Text)), exit::OK)
        }
        Command::Diagnose {
            input,
            space,
            degree_cap,
            ladder_max,
        } => {
            let input = read_input(&input)?;
            let space = match space {
                Some(s) => SpaceSpec::parse(&s)?,
                None => SpaceSpec::h2d(input.series.dim())?,
            };
            let opts = DiagnoseOptions {
                space,
                degree_cap,
                ladder_max,
                run: cfg,
            };
            let r = cmd_diagnose(&input, &opts)?;
            (r.render(c.format.unwrap_or(Format::Json)), r.exit_code())
        }
        Command::Verify { suite } => {
            let mut suites = Vec::new();
            for name in &suite {
                suites.extend(Suite::parse_list(name).map_err(iterlog_core::Error::Parse)?);
            }
            suites.sort();
            suites.dedup();
            if suites.is_empty() {
                suites = Suite::ALL.to_vec();
            }
            let r = cmd_verify(&suites, &cfg)?;
            (r.render(c.format.unwrap_or(Format::Text)), r.exit_code())
        }
        Command::VerifyIdentities => {
            let r = cmd_verify(&Suite::IDENTITIES, &cfg)?;
            (r.render(c.format.unwrap_or(Format::Json)), r.exit_code())
        }
        Command::SamplesDump { dimension } => {
            let r = cmd_samples_dump(dimension, &cfg)?;
            (r.render(c.format.unwrap_or(Format::Csv)), exit::OK)
        }
    };
    emit(&text, &c.out)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
