//! Library half of the `iterlog` command-line tool.
//!
//! Each subcommand is a plain function returning a serializable report, so
//! the binary only parses flags, renders and picks an exit code.

pub mod diagnose;
pub mod norm;
pub mod render;
pub mod samples;
pub mod suites;

use iterlog_core::sampling::SampleConfig;
use iterlog_core::Error;
use serde::Serialize;
use thiserror::Error;

pub use diagnose::{cmd_diagnose, DiagnoseOptions, DiagnosticReport};
pub use norm::{cmd_norm, NormReport};
pub use samples::{cmd_samples_dump, SamplesReport};
pub use suites::{cmd_verify, CheckRow, Suite, SuiteReport};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const DIMENSION: i32 = 3;
    pub const UNSTABLE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(e) => match e {
                Error::DimensionMismatch { .. } | Error::ZeroDimension | Error::NotUnivariate(_) => {
                    exit::DIMENSION
                }
                Error::NotStable { .. } | Error::ZeroPolynomial | Error::ZeroConstantTerm => exit::UNSTABLE,
                Error::Parse(_)
                | Error::InvalidArgument(_)
                | Error::InvalidMeasure(_)
                | Error::MomentOutOfRange { .. }
                | Error::DegreeTooSmall { .. }
                | Error::InsideDisk(_)
                | Error::NonUnitDirection(_) => exit::PARSE,
                Error::NonzeroConstantTerm(_)
                | Error::BranchCut { .. }
                | Error::LadderBranch { .. }
                | Error::NotHomogeneous(..) => exit::VERIFICATION_FAILED,
            },
            Self::Io(_) => exit::PARSE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Sampling and tolerance settings shared by every subcommand. Reports echo
/// this verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub sphere_samples: usize,
    pub radial_grid: usize,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SampleConfig::default();
        Self {
            seed: s.rng_seed,
            sphere_samples: s.sphere_samples,
            radial_grid: s.radial_grid,
            tol: 1e-6,
        }
    }
}

impl RunConfig {
    pub fn samples(&self) -> CliResult<SampleConfig> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)).into());
        }
        Ok(SampleConfig::new(self.sphere_samples, self.radial_grid, self.seed)?)
    }
}

/// One observed quantity next to the bound it is tested against. A check
/// fails only when `observed − error_estimate` leaves `[lower_bound, bound]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    pub bound: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn at_most(name: impl Into<String>, observed: f64, error_estimate: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            error_estimate,
            lower_bound: None,
            bound,
            passed: observed - error_estimate <= bound,
            detail: None,
        }
    }

    pub fn within(name: impl Into<String>, observed: f64, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            error_estimate: 0.0,
            lower_bound: Some(lower),
            bound: upper,
            passed: (lower..=upper).contains(&observed),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Forces a failure, e.g. when the quadrature did not converge.
    pub fn require(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.passed = false;
            self.detail = Some(match self.detail.take() {
                Some(d) => format!("{d}; {why}"),
                None => why.to_string(),
            });
        }
        self
    }
}

/// Output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(format!("unknown format {other:?}, expected json, csv or text")),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
