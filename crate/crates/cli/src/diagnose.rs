//! Cyclicity diagnostics for a polynomial `p` with `p(0) ≠ 0`.
//!
//! After a stability check on sampled slices, `p` is normalized to
//! `q = p/(2ⁿp(0))` and the ladder `F₁ = log(1/q)`, `F_{k+1} = log(1 + F_k)`
//! is built through the degree cap. Each level gets a tail profile in the
//! requested space. Level 0 is the raw input.

use std::f64::consts::PI;

use iterlog_core::io::{series_to_json, SeriesInput};
use iterlog_core::norms::{self, SpaceSpec, TailProfile, Verdict};
use iterlog_core::quadrature;
use iterlog_core::transforms::{self, StabilityEvidence, StablePolynomial};
use iterlog_core::{Error, TruncatedSeries};
use serde::Serialize;

use crate::render::{num, Render};
use crate::{exit, Check, CliResult, RunConfig};

/// Above this declared degree the integral bounds are skipped; the slice
/// integrals grow with the number of roots and the bound `16n²` is loose.
pub const INTEGRAL_CHECK_MAX_DEGREE: u32 = 12;

pub const DEFAULT_DEGREE_CAP: u32 = 200;
pub const DEFAULT_LADDER_MAX: usize = 2;

#[derive(Clone, Debug)]
pub struct DiagnoseOptions {
    pub space: SpaceSpec,
    pub degree_cap: u32,
    pub ladder_max: usize,
    pub run: RunConfig,
}

impl DiagnoseOptions {
    pub fn new(space: SpaceSpec) -> Self {
        Self {
            space,
            degree_cap: DEFAULT_DEGREE_CAP,
            ladder_max: DEFAULT_LADDER_MAX,
            run: RunConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub space: String,
    pub degree_cap: u32,
    pub ladder_max: usize,
    #[serde(flatten)]
    pub run: RunConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub series: String,
    pub verdict: Verdict,
    pub profile: TailProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticReport {
    pub input: serde_json::Value,
    pub config: ConfigEcho,
    pub declared_degree: u32,
    pub stability_evidence: StabilityEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability_witness: Option<Vec<iterlog_core::Complex64>>,
    /// Sampled `sup |arg p − arg p(0)|` against `nπ`.
    pub bounded_argument: Option<Check>,
    /// Sampled `sup |q|` against 1.
    pub sup_norm_estimate: Option<Check>,
    pub inequalities: Vec<Check>,
    pub levels: Vec<LevelReport>,
    pub verdict: Verdict,
}

impl DiagnosticReport {
    pub fn level(&self, k: usize) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.level == k)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.stability_evidence.stable {
            return exit::UNSTABLE;
        }
        let checks = self
            .bounded_argument
            .iter()
            .chain(&self.sup_norm_estimate)
            .chain(&self.inequalities);
        if checks.into_iter().all(|c| c.passed) {
            exit::OK
        } else {
            exit::VERIFICATION_FAILED
        }
    }
}

fn level_name(k: usize) -> String {
    match k {
        0 => "p".into(),
        1 => "F1 = log(1/q)".into(),
        _ => format!("F{k} = log(1 + F{})", k - 1),
    }
}

/// Overall verdict: with no ladder, the raw profile decides. Otherwise any
/// consistent level suffices, and the input is diverging only if every level
/// diverges.
pub fn overall_verdict(levels: &[LevelReport]) -> Verdict {
    let ladder: Vec<Verdict> = levels.iter().filter(|l| l.level > 0).map(|l| l.verdict).collect();
    if ladder.is_empty() {
        return levels.first().map_or(Verdict::Inconclusive, |l| l.verdict);
    }
    if ladder.contains(&Verdict::ConsistentWithMembership) {
        Verdict::ConsistentWithMembership
    } else if ladder.iter().all(|&v| v == Verdict::Diverging) {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    }
}

fn profile_level(k: usize, f: &TruncatedSeries, space: &SpaceSpec) -> CliResult<LevelReport> {
    let profile = norms::tail_profile(f, space)?;
    Ok(LevelReport {
        level: k,
        series: level_name(k),
        verdict: profile.verdict(),
        profile,
    })
}

pub fn cmd_diagnose(input: &SeriesInput, opts: &DiagnoseOptions) -> CliResult<DiagnosticReport> {
    let p = &input.series;
    let space = &opts.space;
    if p.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: space.dim(),
            right: p.dim(),
        }
        .into());
    }
    let cfg = opts.run.samples()?;
    let tol = opts.run.tol;
    let declared = match input.declared_degree {
        Some(n) => n,
        None => p.total_degree().ok_or(Error::ZeroPolynomial)?,
    };

    let mut levels = vec![profile_level(0, &p.with_cap(opts.degree_cap), space)?];
    let evidence = transforms::stability_check(p, &cfg)?;
    let mut report = DiagnosticReport {
        input: series_to_json(p, input.declared_degree),
        config: ConfigEcho {
            space: space.label().to_string(),
            degree_cap: opts.degree_cap,
            ladder_max: opts.ladder_max,
            run: opts.run,
        },
        declared_degree: declared,
        stability_witness: (!evidence.stable).then(|| evidence.witness_point()).flatten(),
        stability_evidence: evidence,
        bounded_argument: None,
        sup_norm_estimate: None,
        inequalities: Vec::new(),
        levels: Vec::new(),
        verdict: Verdict::Inconclusive,
    };
    if !report.stability_evidence.stable {
        report.levels = levels;
        return Ok(report);
    }

    let stable = StablePolynomial::new(p.clone(), declared)?;
    let n = declared as f64;
    let arg = transforms::bounded_argument_estimate(&stable, &cfg)?;
    report.bounded_argument = Some(Check::at_most("bounded argument", arg, 0.0, n * PI + 1e-6));
    let q = transforms::normalize_stable(&stable);
    let sup = transforms::sup_norm_estimate(&q, &cfg);
    report.sup_norm_estimate = Some(Check::at_most("sup |q|", sup, 0.0, 1.0 + 1e-12));

    if declared <= INTEGRAL_CHECK_MAX_DEGREE {
        let bound = 16.0 * n * n;
        let check = if p.dim() == 1 {
            let r = quadrature::dirichlet_integral_F(&stable, declared, tol)?;
            Check::at_most("dirichlet integral of F", r.quad.value, r.quad.error_estimate, bound)
                .with_detail(format!("min Re(1 + log) = {}", num(r.min_denominator_re)))
                .require(r.quad.converged, "quadrature did not converge")
        } else {
            let r = quadrature::slice_besov_integral(&stable, declared, &cfg, tol)?;
            Check::at_most("slice-averaged integral of |RF|²", r.mean, r.quad.error_estimate, bound)
                .with_detail(format!(
                    "standard error {} over {} directions, largest slice {}",
                    num(r.std_error),
                    r.directions,
                    num(r.max_slice_value)
                ))
                .require(r.quad.converged, "quadrature did not converge")
        };
        report.inequalities.push(check);
    }

    if opts.ladder_max > 0 {
        let ladder = transforms::iterated_log_levels(&q.with_cap(opts.degree_cap), opts.ladder_max)?;
        for (i, f) in ladder.iter().enumerate() {
            levels.push(profile_level(i + 1, f, space)?);
        }
    }
    report.verdict = overall_verdict(&levels);
    report.levels = levels;
    Ok(report)
}

fn check_line(c: &Check) -> String {
    format!(
        "{:<4} {:<34} {} (err {}) <= {}",
        if c.passed { "ok" } else { "FAIL" },
        c.name,
        num(c.observed),
        num(c.error_estimate),
        num(c.bound)
    )
}

impl Render for DiagnosticReport {
    fn csv(&self) -> String {
        let mut out = String::from("level,degree,partial_norm_sq,increment\n");
        for l in &self.levels {
            for (d, (s, inc)) in l.profile.partial_norms.iter().zip(&l.profile.increments).enumerate() {
                out.push_str(&format!("{},{d},{s:e},{inc:e}\n", l.level));
            }
        }
        out
    }

    fn text(&self) -> String {
        let mut out = format!(
            "space            {}\ndegree cap       {}\ndeclared degree  {}\nseed             {}\n",
            self.config.space, self.config.degree_cap, self.declared_degree, self.config.run.seed
        );
        let ev = &self.stability_evidence;
        out.push_str(&format!(
            "stable           {} (min root modulus {} over {} directions)\n",
            ev.stable,
            num(ev.min_root_modulus),
            ev.directions
        ));
        if let Some(w) = &self.stability_witness {
            let coords: Vec<String> = w.iter().map(|z| format!("{z}")).collect();
            out.push_str(&format!("witness          ({})\n", coords.join(", ")));
        }
        for c in self.bounded_argument.iter().chain(&self.sup_norm_estimate).chain(&self.inequalities) {
            out.push_str(&check_line(c));
            out.push('\n');
        }
        for l in &self.levels {
            let slope = l.profile.slope.map_or_else(|| "none".to_string(), num);
            out.push_str(&format!(
                "level {:<2} {:<18} total {} slope {} {}\n",
                l.level,
                l.series,
                num(l.profile.total()),
                slope,
                l.verdict
            ));
        }
        out.push_str(&format!("verdict          {}\n", self.verdict));
        out
    }
}
