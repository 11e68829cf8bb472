//! Named verification suites. Every randomized instance derives from the
//! run seed, so a suite run is reproducible from its flags.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use iterlog_core::corpus;
use iterlog_core::identities;
use iterlog_core::norms::{self, SpaceSpec};
use iterlog_core::quadrature;
use iterlog_core::sampling::stream_rng;
use iterlog_core::transforms::{self, StablePolynomial};
use iterlog_core::weights::{RadialMeasure, WeightSequence};
use iterlog_core::{Complex64, MultiIndex, TruncatedSeries};
use rand::Rng;
use serde::Serialize;

use crate::render::{num, Render};
use crate::{exit, Check, CliResult, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Continuous argument of stable polynomials against `nπ`.
    ArgumentBound,
    /// `∫_𝔻 h(2|λ|/|z−λ|) dA/π ≤ 16` for `|λ| ≥ 1`.
    DiskLogBound,
    /// Dirichlet integral of `F = log(1 + log(2ⁿp(0)/p))` against `16n²`.
    DirichletLogBound,
    /// Sphere average of slice Dirichlet integrals against `16n²`.
    SliceBesovBound,
    FaaDiBruno,
    /// Radial-derivative identities for `ψ^{n+2} e^{−φ/ψ}` and `φ^{n+1} log φ`.
    DerivativeIdentities,
    /// Power-series expansion of `(1−φ) log(1−φ)`.
    Log1m,
    /// Weight sequences and the coefficient norms built on them.
    Weights,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::ArgumentBound,
        Suite::DiskLogBound,
        Suite::DirichletLogBound,
        Suite::SliceBesovBound,
        Suite::FaaDiBruno,
        Suite::DerivativeIdentities,
        Suite::Log1m,
        Suite::Weights,
    ];

    pub const IDENTITIES: [Suite; 3] = [Suite::FaaDiBruno, Suite::DerivativeIdentities, Suite::Log1m];

    pub fn name(&self) -> &'static str {
        match self {
            Self::ArgumentBound => "argument-bound",
            Self::DiskLogBound => "disk-log-bound",
            Self::DirichletLogBound => "dirichlet-log-bound",
            Self::SliceBesovBound => "slice-besov-bound",
            Self::FaaDiBruno => "faa-di-bruno",
            Self::DerivativeIdentities => "derivative-identities",
            Self::Log1m => "log1m",
            Self::Weights => "weights",
        }
    }

    /// Alternative names accepted on the command line.
    pub fn aliases(&self) -> &'static [&'static str] {
        match self {
            Self::ArgumentBound => &["lemma-6.1"],
            Self::DiskLogBound => &["lemma-6.2"],
            Self::DirichletLogBound => &["lemma-6.3"],
            Self::SliceBesovBound => &["theorem-6.4"],
            Self::DerivativeIdentities => &["r-identities"],
            _ => &[],
        }
    }

    /// Parses a suite name or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.parse().map(|x| vec![x])
    }

    pub fn run(&self, cfg: &RunConfig) -> CliResult<Vec<Check>> {
        match self {
            Self::ArgumentBound => argument_bound(cfg),
            Self::DiskLogBound => disk_log_bound(cfg),
            Self::DirichletLogBound => dirichlet_log_bound(cfg),
            Self::SliceBesovBound => slice_besov_bound(cfg),
            Self::FaaDiBruno => faa_di_bruno(cfg),
            Self::DerivativeIdentities => derivative_identities(cfg),
            Self::Log1m => log1m(cfg),
            Self::Weights => weights(cfg),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s || x.aliases().contains(&s))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}, expected one of {} or all", names.join(", "))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub suite: Suite,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    /// Largest `observed / bound` over the upper-bound checks; range checks
    /// are left out.
    pub worst_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub summary: Vec<SuiteSummary>,
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            exit::OK
        } else {
            exit::VERIFICATION_FAILED
        }
    }
}

pub fn cmd_verify(suites: &[Suite], cfg: &RunConfig) -> CliResult<SuiteReport> {
    cfg.samples()?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &suite in suites {
        let checks = suite.run(cfg)?;
        let worst_ratio = checks
            .iter()
            .filter(|c| c.lower_bound.is_none())
            .map(|c| if c.bound > 0.0 { c.observed / c.bound } else { c.observed })
            .fold(0.0, f64::max);
        summary.push(SuiteSummary {
            suite,
            checks: checks.len(),
            failures: checks.iter().filter(|c| !c.passed).count(),
            worst_ratio,
        });
        rows.extend(checks.into_iter().map(|check| CheckRow { suite, check }));
    }
    Ok(SuiteReport {
        config: *cfg,
        passed: rows.iter().all(|r| r.check.passed),
        summary,
        rows,
    })
}

impl Render for SuiteReport {
    fn csv(&self) -> String {
        let mut out = String::from("suite,check,observed,error_estimate,lower_bound,bound,passed\n");
        for r in &self.rows {
            let c = &r.check;
            out.push_str(&format!(
                "{},\"{}\",{},{},{},{},{}\n",
                r.suite,
                c.name,
                num(c.observed),
                num(c.error_estimate),
                c.lower_bound.map(num).unwrap_or_default(),
                num(c.bound),
                c.passed
            ));
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let c = &r.check;
            let range = match c.lower_bound {
                Some(lo) => format!("in [{}, {}]", num(lo), num(c.bound)),
                None => format!("<= {}", num(c.bound)),
            };
            out.push_str(&format!(
                "{:<4} {:<21} {:<44} {} (err {}) {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                r.suite.name(),
                c.name,
                num(c.observed),
                num(c.error_estimate),
                range
            ));
        }
        out.push('\n');
        for s in &self.summary {
            out.push_str(&format!(
                "{:<21} {:>4} checks {:>3} failed  worst ratio {}\n",
                s.suite.name(),
                s.checks,
                s.failures,
                num(s.worst_ratio)
            ));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "verification FAILED\n" });
        out
    }
}

const CORPUS_SIZE: usize = 50;
const CORPUS_MAX_DEGREE: u32 = 4;
const RANDOM_INPUTS: usize = 20;
const IDENTITY_TOLERANCE: f64 = 1e-9;

// Distinct RNG stream families per suite.
const DISK_STREAM: u64 = 0x6469_736b;
const IDENTITY_STREAM: u64 = 0x6964_656e;
const WEIGHT_STREAM: u64 = 0x7765_6967;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn stable_corpus(cfg: &RunConfig) -> CliResult<Vec<(String, StablePolynomial)>> {
    corpus::stable_univariate_corpus(cfg.seed, CORPUS_SIZE, CORPUS_MAX_DEGREE)
        .into_iter()
        .enumerate()
        .map(|(i, p)| Ok((format!("random stable #{i}"), StablePolynomial::from_polynomial(p)?)))
        .collect()
}

fn one_minus_iz_product() -> TruncatedSeries {
    // (1 − z)(1 − iz) = 1 − (1 + i)z + iz².
    TruncatedSeries::univariate(2, &[real(1.0), Complex64::new(-1.0, -1.0), Complex64::new(0.0, 1.0)])
}

fn argument_bound(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let samples = cfg.samples()?;
    let mut cases = stable_corpus(cfg)?;
    for (name, p) in [
        ("1 - 3^(3/2) z1 z2 z3", corpus::p1()),
        ("1 - (z1^2 + z2^2 + z3^2)", corpus::p2()),
        ("1 - (z1 + z2)/2", corpus::half_sum()),
    ] {
        cases.push((name.to_string(), StablePolynomial::from_polynomial(p)?));
    }
    cases
        .iter()
        .map(|(name, p)| {
            let n = p.declared_degree();
            let arg = transforms::bounded_argument_estimate(p, &samples)?;
            Ok(Check::at_most(format!("{name} (n={n})"), arg, 0.0, n as f64 * PI + 1e-6))
        })
        .collect()
}

fn disk_log_bound(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let mut rng = stream_rng(cfg.seed ^ DISK_STREAM, 0);
    let mut checks = Vec::new();
    for modulus in [1.0, 1.1, 1.5, 2.0, 4.0] {
        for _ in 0..4 {
            let phase: f64 = rng.gen_range(0.0..TAU);
            let q = quadrature::lemma_h_integral(Complex64::from_polar(modulus, phase), cfg.tol)?;
            checks.push(
                Check::at_most(format!("|lambda| = {modulus}, arg = {phase:.6}"), q.value, q.error_estimate, 16.0)
                    .require(q.converged, "quadrature did not converge"),
            );
        }
    }
    Ok(checks)
}

fn dirichlet_log_bound(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let mut cases = stable_corpus(cfg)?;
    cases.push(("1 - z".into(), StablePolynomial::from_polynomial(corpus::one_minus_z1(1))?));
    cases.push(("(1 - z)(1 - iz)".into(), StablePolynomial::from_polynomial(one_minus_iz_product())?));
    cases
        .iter()
        .map(|(name, p)| {
            let n = p.declared_degree();
            let r = quadrature::dirichlet_integral_F(p, n, cfg.tol)?;
            Ok(Check::at_most(
                format!("{name} (n={n})"),
                r.quad.value,
                r.quad.error_estimate,
                16.0 * (n * n) as f64,
            )
            .require(r.quad.converged, "quadrature did not converge")
            .require(r.min_denominator_re >= 1.0 - 1e-9, "Re(1 + log) dropped below 1"))
        })
        .collect()
}

fn slice_besov_bound(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let samples = cfg.samples()?;
    let mut checks = Vec::new();
    for (name, p, n) in [
        ("1 - z1 on B2", corpus::one_minus_z1(2), 1u32),
        ("1 - (z1 + z2)/2 on B2", corpus::half_sum(), 1),
        ("1 - (z1^2 + z2^2 + z3^2) on B3", corpus::p2(), 2),
    ] {
        let p = StablePolynomial::new(p, n)?;
        let r = quadrature::slice_besov_integral(&p, n, &samples, cfg.tol)?;
        checks.push(
            Check::at_most(format!("{name} (n={n})"), r.mean, r.quad.error_estimate, 16.0 * (n * n) as f64)
                .with_detail(format!("{} directions, largest slice {}", r.directions, num(r.max_slice_value)))
                .require(r.quad.converged, "quadrature did not converge"),
        );
        checks.push(Check::at_most(format!("{name} standard error"), r.std_error, 0.0, 0.5));
    }
    Ok(checks)
}

fn random_series(cfg: &RunConfig, stream: u64, dim: usize, cap: u32, scale: f64, constant: Complex64) -> TruncatedSeries {
    let mut rng = stream_rng(cfg.seed ^ IDENTITY_STREAM, stream);
    corpus::random_series(&mut rng, dim, cap, 3 * cap as usize + 2, scale, constant)
}

/// Number of partitions of `m`, by the standard coin-change recurrence.
pub fn partition_count(m: usize) -> u64 {
    let mut p = vec![0u64; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            p[total] += p[total - part];
        }
    }
    p[m]
}

fn max_over<F>(count: usize, mut f: F) -> CliResult<f64>
where
    F: FnMut(usize) -> CliResult<f64>,
{
    (0..count).try_fold(0.0, |acc: f64, i| Ok(acc.max(f(i)?)))
}

fn faa_di_bruno(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for (dim, cap) in [(1usize, 12u32), (2, 10), (3, 8)] {
        for m in 1..=5u32 {
            let worst = max_over(RANDOM_INPUTS, |i| {
                let f = random_series(cfg, (dim * 100 + i) as u64, dim, cap, 0.4, real(0.0));
                Ok(identities::verify_faa_di_bruno(&f, m)?)
            })?;
            checks.push(Check::at_most(
                format!("d={dim} D={cap} m={m}, {RANDOM_INPUTS} inputs"),
                worst,
                0.0,
                IDENTITY_TOLERANCE,
            ));
        }
    }
    for m in 1..=12u32 {
        let count = identities::enumerate_a_m(m)?.len() as f64;
        let expected = partition_count(m as usize) as f64;
        checks.push(Check::within(format!("|A_{m}| = p({m})"), count, expected, expected));
    }
    Ok(checks)
}

fn derivative_identities(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 0..=2u32 {
        let worst = max_over(RANDOM_INPUTS, |i| {
            let dim = i % 3 + 1;
            let phi = random_series(cfg, 1000 + i as u64, dim, 3, 0.5, real(0.3)).with_cap(8);
            let psi = random_series(cfg, 2000 + i as u64, dim, 3, 0.5, real(1.0)).with_cap(8);
            Ok(identities::verify_r_exp_identity(&phi, &psi, n)?)
        })?;
        checks.push(Check::at_most(format!("exponential form, n={n}"), worst, 0.0, IDENTITY_TOLERANCE));
    }
    for n in 0..=2u32 {
        let worst = max_over(RANDOM_INPUTS, |i| {
            let dim = i % 3 + 1;
            let phi = if dim == 1 {
                let p = corpus::random_stable_univariate(cfg.seed, i, CORPUS_MAX_DEGREE);
                p.scale(p.constant_term().inv()).with_cap(12)
            } else {
                random_series(cfg, 3000 + i as u64, dim, 8, 0.3, real(1.0))
            };
            Ok(identities::verify_r_log_identity(&phi, n)?)
        })?;
        checks.push(Check::at_most(format!("logarithmic form, n={n}"), worst, 0.0, IDENTITY_TOLERANCE));
    }
    Ok(checks)
}

fn log1m(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let worst = max_over(RANDOM_INPUTS, |i| {
        let phi = random_series(cfg, 4000 + i as u64, i % 3 + 1, 8, 0.5, real(0.0));
        Ok(identities::verify_log1m_expansion(&phi)?)
    })?;
    Ok(vec![Check::at_most(
        format!("(1-phi) log(1-phi) expansion, {RANDOM_INPUTS} inputs"),
        worst,
        0.0,
        IDENTITY_TOLERANCE,
    )])
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// All exponent tuples in `dim` variables with total degree at most `max`.
fn multi_indices(dim: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max - used).map(move |a| {
                    let mut next = e.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// `α!/|α|!` as an exact rational in `u128`, converted once.
fn da_weight_oracle(alpha: &[u32]) -> f64 {
    let fact = |k: u32| (1..=k as u128).product::<u128>();
    let num: u128 = alpha.iter().map(|&a| fact(a)).product();
    num as f64 / fact(alpha.iter().sum()) as f64
}

fn weights(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();

    let seq = WeightSequence::new(2, RadialMeasure::NormalizedLebesgue)?;
    let table = seq.table(1000)?;
    let scaled: Vec<f64> = (1..=1000).map(|n| (n * n) as f64 * table[n]).collect();
    let worst = scaled
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let n = (i + 1) as f64;
            relative(v, n * n / ((n + 1.0) * (n + 1.0)))
        })
        .fold(0.0, f64::max);
    checks.push(Check::at_most("d=2 lebesgue: n^2 w_n vs n^2/(n+1)^2, n <= 1000", worst, 0.0, 1e-13));
    let lo = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scaled.iter().copied().fold(0.0, f64::max);
    checks.push(Check::within("d=2 lebesgue: min n^2 w_n", lo, 0.25, 1.0));
    checks.push(Check::within("d=2 lebesgue: max n^2 w_n", hi, 0.25, 1.0).require(hi < 1.0, "reached 1"));

    let mut worst = 0.0f64;
    for dim in 1..=3 {
        for alpha in multi_indices(dim, 8) {
            let f = TruncatedSeries::monomial(8, MultiIndex::new(alpha.clone())?, 1.0);
            worst = worst.max(relative(norms::h2d_norm_sq(&f), da_weight_oracle(&alpha)));
        }
    }
    checks.push(Check::at_most("h2d monomials |alpha| <= 8, d <= 3", worst, 0.0, 4.0 * f64::EPSILON));

    let mut rng = stream_rng(cfg.seed ^ WEIGHT_STREAM, 0);
    let cap = 60;
    let mut worst = 0.0f64;
    for radius in [0.3, 0.6, 0.9] {
        let w = [
            Complex64::from_polar(radius * 0.6, rng.gen_range(0.0..TAU)),
            Complex64::from_polar(radius * 0.8, rng.gen_range(0.0..TAU)),
        ];
        // k_w(z) = 1/(1 − ⟨z, w⟩) truncated at the cap.
        let linear = TruncatedSeries::from_terms(2, cap, [(vec![1, 0], w[0].conj()), (vec![0, 1], w[1].conj())])?;
        let kernel = linear.scale(-1.0).add_constant(1.0).reciprocal()?;
        let r2 = radius * radius;
        let exact = (1.0 - r2.powi(cap as i32 + 1)) / (1.0 - r2);
        worst = worst.max(relative(norms::h2d_norm_sq(&kernel), exact));
    }
    checks.push(Check::at_most("truncated kernel norm vs geometric sum, |w| <= 0.9", worst, 0.0, 1e-12));

    let f = random_series(cfg, 5000, 2, 10, 1.0, Complex64::new(0.2, 1.0));
    let mut worst = 0.0f64;
    for order in 1..=3 {
        let space = SpaceSpec::besov(2, order as f64, RadialMeasure::NormalizedLebesgue)?;
        let lhs = norms::besov_norm_sq(&f, &space)?;
        let rhs = space.total_mass() * f.constant_term().norm_sqr()
            + norms::besov_norm_sq(&f.radial_derivative(), &space.lower_order()?)?;
        worst = worst.max(relative(lhs, rhs));
    }
    checks.push(Check::at_most("order recursion N = 1..3", worst, 0.0, 1e-12));

    Ok(checks)
}
