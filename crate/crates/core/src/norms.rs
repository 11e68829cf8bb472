//! Norms on `H²_d`, the radially weighted Besov spaces `B^N_ω` and the
//! Dirichlet space, together with truncation-tail diagnostics.
//!
//! Every Besov norm is evaluated from coefficients:
//!
//! ```text
//! ‖f‖² = ω(𝔹_d)|f(0)|² + Σ_{n≥1} n^{2N} ω_n ‖f_n‖²_{H²_d}
//! ```
//!
//! where `f_n` is the degree-`n` homogeneous part. Sphere and disk integrals
//! exist only as cross-checks.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::{self, QuadResult};
use crate::sampling::SampleConfig;
use crate::series::{HomogeneousPart, TruncatedSeries};
use crate::weights::{sphere_ratio, RadialMeasure, WeightSequence};

/// Which norm a [`SpaceSpec`] computes.
#[derive(Clone, Debug)]
pub enum SpaceKind {
    /// The Drury–Arveson coefficient norm `Σ α!/|α|! |f̂(α)|²`.
    DruryArveson,
    /// `B^N_ω` for a real order `N ≥ 0` and `ω = μ × σ`.
    Besov { order: f64, weights: WeightSequence },
}

/// A norm definition: dimension plus either the Drury–Arveson formula or a
/// Besov order and radial measure.
#[derive(Clone, Debug)]
pub struct SpaceSpec {
    dim: usize,
    kind: SpaceKind,
    label: String,
}

impl SpaceSpec {
    pub fn h2d(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            kind: SpaceKind::DruryArveson,
            label: format!("h2d:d={dim}"),
        })
    }

    pub fn besov(dim: usize, order: f64, measure: RadialMeasure) -> Result<Self> {
        if !(order >= 0.0) || !order.is_finite() {
            return Err(Error::InvalidArgument(format!("order must be >= 0, got {order}")));
        }
        let label = format!("besov:d={dim},N={order},measure={measure}");
        Ok(Self {
            dim,
            kind: SpaceKind::Besov {
                order,
                weights: WeightSequence::new(dim, measure)?,
            },
            label,
        })
    }

    /// The Dirichlet space of the disk, `|f(0)|² + Σ n|f̂(n)|²`.
    ///
    /// Realized as `B^{1/2}_σ` in one variable, where `n^{2N} ω_n = n`.
    pub fn dirichlet() -> Self {
        let mut s = Self::besov(1, 0.5, RadialMeasure::sigma()).expect("valid");
        s.label = "dirichlet".into();
        s
    }

    /// `B¹_V` on `𝔹₂`, which equals `H²₂` with an equivalent norm.
    pub fn besov_one_volume_b2() -> Self {
        Self::besov(2, 1.0, RadialMeasure::NormalizedLebesgue).expect("valid")
    }

    /// Parses `h2d:d=<d>`, `dirichlet`, or
    /// `besov:d=<d>,N=<N>,measure=<measure>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "dirichlet" {
            return Ok(Self::dirichlet());
        }
        if let Some(rest) = s.strip_prefix("h2d:") {
            let d = parse_key(rest, "d")?;
            return Self::h2d(parse_num(d, "d")?);
        }
        if let Some(rest) = s.strip_prefix("besov:") {
            // The measure string may itself contain '=' and ':', so it is
            // everything after "measure=".
            let (head, measure) = match rest.find("measure=") {
                Some(i) => (&rest[..i], &rest[i + "measure=".len()..]),
                None => return Err(Error::Parse(format!("besov space needs measure=, got {s:?}"))),
            };
            let head = head.trim_end_matches(',');
            let d = parse_num(parse_key(head, "d")?, "d")?;
            let order: f64 = parse_num(parse_key(head, "N")?, "N")?;
            return Self::besov(d, order, RadialMeasure::parse(measure)?);
        }
        Err(Error::Parse(format!("unknown space {s:?}")))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `ω(𝔹_d)`, the weight of `|f(0)|²`.
    pub fn total_mass(&self) -> f64 {
        match &self.kind {
            SpaceKind::DruryArveson => 1.0,
            SpaceKind::Besov { weights, .. } => weights.measure().total_mass(),
        }
    }

    /// Weight applied to `‖f_n‖²_{H²_d}`: 1 for Drury–Arveson, otherwise
    /// `ω(𝔹_d)` at `n = 0` and `n^{2N} ω_n` above.
    pub fn degree_weight(&self, n: usize) -> Result<f64> {
        match &self.kind {
            SpaceKind::DruryArveson => Ok(1.0),
            SpaceKind::Besov { .. } if n == 0 => Ok(self.total_mass()),
            SpaceKind::Besov { order, weights } => {
                Ok((n as f64).powf(2.0 * order) * weights.omega(n)?)
            }
        }
    }

    /// The same space with the order lowered by one (Besov only).
    pub fn lower_order(&self) -> Result<Self> {
        match &self.kind {
            SpaceKind::Besov { order, weights } if *order >= 1.0 => {
                Self::besov(self.dim, order - 1.0, weights.measure().clone())
            }
            _ => Err(Error::InvalidArgument(format!(
                "{} has no order to lower",
                self.label
            ))),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn parse_key<'a>(s: &'a str, key: &str) -> Result<&'a str> {
    s.split(',')
        .filter_map(|kv| kv.split_once('='))
        .find(|(k, _)| k.trim() == key)
        .map(|(_, v)| v.trim())
        .ok_or_else(|| Error::Parse(format!("missing {key}= in {s:?}")))
}

fn parse_num<T: std::str::FromStr>(s: &str, key: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    s.parse()
        .map_err(|e| Error::Parse(format!("bad value for {key}: {s:?} ({e})")))
}

/// `‖f‖²_{H²_d} = Σ α!/|α|! |f̂(α)|²` over the stored coefficients.
pub fn h2d_norm_sq(f: &TruncatedSeries) -> f64 {
    f.terms()
        .map(|(k, v)| k.drury_arveson_weight() * v.norm_sqr())
        .sum()
}

/// `‖f_n‖²_{H²(∂𝔹)} = n!(d−1)!/(n+d−1)! · ‖f_n‖²_{H²_d}` for a homogeneous
/// polynomial of degree `n`.
pub fn hardy_sphere_norm_sq(p: &HomogeneousPart) -> f64 {
    let s = p.series();
    sphere_ratio(s.dim(), p.degree() as usize) * h2d_norm_sq(s)
}

/// `‖f_n‖²_{H²_d}` for every degree `n = 0..=cap`.
pub fn degree_norms_sq(f: &TruncatedSeries) -> Vec<f64> {
    let mut out = vec![0.0; f.cap() as usize + 1];
    for (k, v) in f.terms() {
        out[k.degree() as usize] += k.drury_arveson_weight() * v.norm_sqr();
    }
    out
}

/// Contribution of each degree to the norm of `f` in `space`.
pub fn degree_contributions(f: &TruncatedSeries, space: &SpaceSpec) -> Result<Vec<f64>> {
    if f.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: space.dim(),
        });
    }
    degree_norms_sq(f)
        .into_iter()
        .enumerate()
        .map(|(n, a)| Ok(if a == 0.0 { 0.0 } else { space.degree_weight(n)? * a }))
        .collect()
}

/// `‖f‖²` in `space`, summed lowest degree first.
pub fn besov_norm_sq(f: &TruncatedSeries, space: &SpaceSpec) -> Result<f64> {
    Ok(degree_contributions(f, space)?.into_iter().sum())
}

/// `|f(0)|² + ∫_𝔻 |f′|² dA/π` by disk quadrature, for a function given by its
/// value at the origin and a derivative oracle.
pub fn dirichlet_norm_sq_integral<D>(f0: Complex64, derivative: D, tol: f64) -> QuadResult
where
    D: Fn(Complex64) -> Complex64 + Sync,
{
    let mut q = quadrature::disk_integral(|z| derivative(z).norm_sqr(), tol);
    q.value += f0.norm_sqr();
    q
}

/// [`dirichlet_norm_sq_integral`] for a univariate series, differentiated
/// termwise.
pub fn dirichlet_norm_sq_integral_series(f: &TruncatedSeries, tol: f64) -> Result<QuadResult> {
    let c = f.univariate_coefficients()?;
    let derivative: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(n, a)| a * n as f64).collect();
    let f0 = c[0];
    Ok(dirichlet_norm_sq_integral(
        f0,
        |z| derivative.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a),
        tol,
    ))
}

/// Partial norms `s_D` of the truncations of a series, for `D = 0..=cap`.
#[derive(Clone, Debug, Serialize)]
pub struct TailProfile {
    pub space: String,
    pub partial_norms: Vec<f64>,
    pub increments: Vec<f64>,
    /// Least-squares slope of `log increment` against `log D` over the top
    /// half of degrees, skipping zero increments. `None` when fewer than two
    /// usable points exist.
    pub slope: Option<f64>,
}

/// Membership verdict read off a tail profile. A finite truncation never
/// proves membership; these are heuristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Diverging,
    ConsistentWithMembership,
    Inconclusive,
}

impl Verdict {
    /// Increments decaying faster than `D^{-1.05}`.
    pub const CONSISTENT_BELOW: f64 = -1.05;
    /// Increments decaying slower than `D^{-0.95}`.
    pub const DIVERGING_ABOVE: f64 = -0.95;

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Diverging => "diverging",
            Self::ConsistentWithMembership => "consistent-with-membership",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TailProfile {
    pub fn max_degree(&self) -> usize {
        self.partial_norms.len() - 1
    }

    pub fn total(&self) -> f64 {
        *self.partial_norms.last().expect("nonempty profile")
    }

    /// True when no degree in the top half contributes anything.
    pub fn is_flat(&self) -> bool {
        let d = self.max_degree();
        self.increments[d.div_ceil(2).max(1).min(d + 1)..]
            .iter()
            .all(|&x| x == 0.0)
    }

    pub fn verdict(&self) -> Verdict {
        if self.is_flat() {
            return Verdict::ConsistentWithMembership;
        }
        match self.slope {
            Some(s) if s < Verdict::CONSISTENT_BELOW => Verdict::ConsistentWithMembership,
            Some(s) if s > Verdict::DIVERGING_ABOVE => Verdict::Diverging,
            _ => Verdict::Inconclusive,
        }
    }

    /// `degree,partial_norm_sq,increment` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,partial_norm_sq,increment\n");
        for (d, (s, inc)) in self.partial_norms.iter().zip(&self.increments).enumerate() {
            out.push_str(&format!("{d},{s:e},{inc:e}\n"));
        }
        out
    }
}

/// Partial norms, increments and decay slope of `f` in `space`.
pub fn tail_profile(f: &TruncatedSeries, space: &SpaceSpec) -> Result<TailProfile> {
    let increments = degree_contributions(f, space)?;
    let partial_norms: Vec<f64> = increments
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let slope = decay_slope(&increments);
    Ok(TailProfile {
        space: space.label().to_string(),
        partial_norms,
        increments,
        slope,
    })
}

/// Least-squares slope of `log x_D` against `log D` for `D` in the top half
/// of `1..=len-1` with `x_D > 0`.
pub fn decay_slope(increments: &[f64]) -> Option<f64> {
    let top = increments.len().checked_sub(1)?;
    let start = top.div_ceil(2).max(1);
    let pts: Vec<(f64, f64)> = (start..=top)
        .filter(|&d| increments[d] > 0.0)
        .map(|d| ((d as f64).ln(), increments[d].ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Lower bound for the Bloch seminorm `sup |Rf(z)|(1 − |z|)` of the
/// truncation, from the sample grid of `cfg`.
pub fn bloch_seminorm_estimate(f: &TruncatedSeries, cfg: &SampleConfig) -> f64 {
    let radii = cfg.radii();
    let directions = cfg.directions(f.dim());
    let per_direction = par::map_slice(&directions, |zeta| {
        let c = f.slice_coefficients(zeta);
        // Rf(rζ) = Σ n c_n r^n
        radii
            .iter()
            .map(|&r| {
                let rf = c
                    .iter()
                    .enumerate()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, (n, a)| acc * r + a * n as f64);
                rf.norm() * (1.0 - r)
            })
            .fold(0.0, f64::max)
    });
    per_direction.into_iter().fold(0.0, f64::max)
}
