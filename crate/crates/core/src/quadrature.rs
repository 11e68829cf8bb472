//! Integration over the unit disk with normalized area `dA/π`, the integral
//! bounds for stable polynomials, and a Monte Carlo cross-check.
//!
//! All rules are built on one globally adaptive Gauss–Legendre integrator.
//! Each interval carries the 16-point value on the whole interval and on its
//! two halves; their difference is the error estimate, and the interval with
//! the largest estimate is split until the total meets the tolerance.
//!
//! Integrands with a singular point on or near the circle are integrated in
//! polar coordinates centred at that point, with the radial variable mapped
//! through `u = 1/(1 + ln(2/ρ))`. In those coordinates the `1/(ρ² ln² ρ)`
//! behaviour of the bounds' integrands becomes bounded and smooth.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::roots::polynomial_roots;
use crate::sampling::{self, SampleConfig};
use crate::transforms::{StablePolynomial, STABILITY_TOLERANCE};

pub use crate::sampling::sphere_samples;

const GL_ORDER: usize = 16;
const MAX_INTERVALS_OUTER: usize = 4000;
const MAX_INTERVALS_INNER: usize = 1500;
const ANGULAR_PANELS: usize = 16;
const RADIAL_DYADIC_LEVELS: i32 = 8;
const MC_BATCH: usize = 1 << 14;
/// Roots within this distance are integrated around a single centre.
const CENTER_MERGE_DISTANCE: f64 = 1e-6;
/// Roots farther than this from the origin leave the integrand smooth
/// enough for the plain polar rule.
const SINGULAR_CENTER_RADIUS: f64 = 2.0;

/// Value of an integral with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl QuadResult {
    fn point(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            evaluations: 1,
            converged: true,
        }
    }

    fn zero() -> Self {
        Self {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// `value − error_estimate > bound`: the bound is violated beyond doubt.
    pub fn exceeds(&self, bound: f64) -> bool {
        self.value - self.error_estimate > bound
    }

    fn combine(parts: &[QuadResult], tol: f64) -> Self {
        let value = parts.iter().map(|q| q.value).sum();
        let error_estimate = parts.iter().map(|q| q.error_estimate).sum::<f64>();
        Self {
            value,
            error_estimate,
            evaluations: parts.iter().map(|q| q.evaluations).sum(),
            converged: error_estimate <= tol,
        }
    }
}

fn gl_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(GL_ORDER).expect("nonzero order"))
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// Nodes of the 16-point rule on `[a, m]` and `[m, b]`, left half first.
fn half_nodes(a: f64, b: f64) -> Vec<(f64, f64)> {
    let m = 0.5 * (a + b);
    let mut nodes = Vec::with_capacity(2 * GL_ORDER);
    for (lo, hi) in [(a, m), (m, b)] {
        let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        nodes.extend(gl_rule().iter().map(|&(x, w)| (c + h * x, w * h)));
    }
    nodes
}

/// 16-point value on the whole interval, used only for the first estimate of
/// an initial panel.
fn whole_nodes(a: f64, b: f64) -> Vec<(f64, f64)> {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    gl_rule().iter().map(|&(x, w)| (c + h * x, w * h)).collect()
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    diff: f64,
    inner_error: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }
}

struct ByDiff(Panel);

impl PartialEq for ByDiff {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByDiff {}
impl PartialOrd for ByDiff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByDiff {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .diff
            .total_cmp(&other.0.diff)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

struct Adaptive<'f, F> {
    f: &'f F,
    parallel: bool,
    evaluations: u64,
}

impl<F> Adaptive<'_, F>
where
    F: Fn(f64) -> QuadResult + Sync,
{
    /// Weighted sums over each chunk of `GL_ORDER` nodes, with the matching
    /// integrated inner error.
    fn sums(&mut self, nodes: &[(f64, f64)]) -> Vec<(f64, f64)> {
        let values: Vec<QuadResult> = if self.parallel {
            par::map_slice(nodes, |&(x, _)| (self.f)(x))
        } else {
            nodes.iter().map(|&(x, _)| (self.f)(x)).collect()
        };
        self.evaluations += values.iter().map(|q| q.evaluations).sum::<u64>();
        nodes
            .chunks(GL_ORDER)
            .zip(values.chunks(GL_ORDER))
            .map(|(n, v)| {
                n.iter().zip(v).fold((0.0, 0.0), |(s, e), (&(_, w), q)| {
                    (s + w * q.value, e + w.abs() * q.error_estimate)
                })
            })
            .collect()
    }

    fn split(&mut self, a: f64, b: f64, whole: f64) -> Panel {
        let halves = self.sums(&half_nodes(a, b));
        let (left, right) = (halves[0].0, halves[1].0);
        Panel {
            a,
            b,
            left,
            right,
            diff: (whole - left - right).abs(),
            inner_error: halves[0].1 + halves[1].1,
        }
    }
}

/// Globally adaptive integration of `f` over `[breaks[0], breaks[last]]`
/// with initial panels at `breaks`. `f` returns its own value and error
/// estimate, so nested integrals propagate their errors.
fn adaptive<F>(f: &F, breaks: &[f64], tol: f64, max_intervals: usize, parallel: bool) -> QuadResult
where
    F: Fn(f64) -> QuadResult + Sync,
{
    let mut ad = Adaptive {
        f,
        parallel,
        evaluations: 0,
    };
    let mut initial_nodes = Vec::new();
    for w in breaks.windows(2) {
        initial_nodes.extend(whole_nodes(w[0], w[1]));
        initial_nodes.extend(half_nodes(w[0], w[1]));
    }
    // One batch so the initial panels evaluate together.
    let sums = ad.sums(&initial_nodes);
    let mut heap = BinaryHeap::new();
    for (k, w) in breaks.windows(2).enumerate() {
        let whole = sums[3 * k].0;
        let (left, right) = (sums[3 * k + 1], sums[3 * k + 2]);
        heap.push(ByDiff(Panel {
            a: w[0],
            b: w[1],
            left: left.0,
            right: right.0,
            diff: (whole - left.0 - right.0).abs(),
            inner_error: left.1 + right.1,
        }));
    }

    let outer_budget = 0.5 * tol;
    let mut diff_total: f64 = heap.iter().map(|p| p.0.diff).sum();
    while diff_total > outer_budget && heap.len() < max_intervals {
        let ByDiff(top) = heap.pop().expect("heap is never empty");
        let m = 0.5 * (top.a + top.b);
        if m <= top.a || m >= top.b {
            heap.push(ByDiff(top));
            break;
        }
        let l = ad.split(top.a, m, top.left);
        let r = ad.split(m, top.b, top.right);
        heap.push(ByDiff(l));
        heap.push(ByDiff(r));
        // Recomputed rather than updated so rounding cannot drift.
        diff_total = heap.iter().map(|p| p.0.diff).sum();
    }

    let mut panels: Vec<Panel> = heap.into_iter().map(|p| p.0).collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = panels.iter().map(Panel::value).sum();
    let error_estimate = panels.iter().map(|p| p.diff + p.inner_error).sum::<f64>();
    QuadResult {
        value,
        error_estimate,
        evaluations: ad.evaluations,
        converged: error_estimate <= tol,
    }
}

/// `∫_a^b f(x) dx` to absolute tolerance `tol`.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, tol: f64) -> QuadResult
where
    F: Fn(f64) -> f64 + Sync,
{
    adaptive(&|x| QuadResult::point(f(x)), &[a, b], tol, MAX_INTERVALS_INNER, false)
}

fn radial_breaks() -> Vec<f64> {
    let mut breaks = vec![0.0];
    breaks.extend((1..=RADIAL_DYADIC_LEVELS).map(|k| 1.0 - 0.5f64.powi(k)));
    breaks.push(1.0);
    breaks
}

/// `∫_𝔻 g dA/π` in polar coordinates: angular panels refined where the
/// integrand varies, radial panels accumulating dyadically toward `r = 1`.
pub fn disk_integral<G>(g: G, tol: f64) -> QuadResult
where
    G: Fn(Complex64) -> f64 + Sync,
{
    let rbreaks = radial_breaks();
    let angular: Vec<f64> = (0..=ANGULAR_PANELS)
        .map(|k| TAU * k as f64 / ANGULAR_PANELS as f64)
        .collect();
    // The outer integral weighs inner errors by at most 2π · (1/π).
    let inner_tol = tol / (4.0 * 2.0);
    let ray = |theta: f64| {
        let e = Complex64::from_polar(1.0, theta);
        adaptive(
            &|r: f64| QuadResult::point(g(e * r) * r / PI),
            &rbreaks,
            inner_tol,
            MAX_INTERVALS_INNER,
            false,
        )
    };
    adaptive(&ray, &angular, tol, MAX_INTERVALS_OUTER, true)
}

/// A quadrature node handed to a singular integrand.
///
/// Nodes of the singular rule are generated around a centre `b` as
/// `z = b + ρ e^{iφ}` with `ln ρ` known exactly, so quantities relative to
/// `b` stay accurate even when `ρ` underflows. Integrands receive the point
/// and return `g(z) · ρ²`, where `ρ` is the distance to the anchor (`ρ = 1`
/// for nodes without an anchor).
#[derive(Clone, Copy, Debug)]
pub struct DiskPoint {
    pub z: Complex64,
    anchor: Option<Anchor>,
}

#[derive(Clone, Copy, Debug)]
struct Anchor {
    center: Complex64,
    direction: Complex64,
    ln_rho: f64,
}

impl DiskPoint {
    pub fn plain(z: Complex64) -> Self {
        Self { z, anchor: None }
    }

    /// `z − c`.
    pub fn minus(&self, c: Complex64) -> Complex64 {
        match self.anchor {
            Some(a) => a.direction * a.ln_rho.exp() + (a.center - c),
            None => self.z - c,
        }
    }

    /// `ρ / (z − c)`, finite for every `c` that is not the point itself.
    pub fn scaled_inv_minus(&self, c: Complex64) -> Complex64 {
        match self.anchor {
            Some(a) if a.center == c => a.direction.conj(),
            Some(a) => {
                let rho = a.ln_rho.exp();
                Complex64::new(rho, 0.0) / (a.direction * rho + (a.center - c))
            }
            None => (self.z - c).inv(),
        }
    }

    /// Principal `ln(w / (z − c))`, accurate for `z` arbitrarily close to
    /// the anchor.
    pub fn ln_ratio(&self, w: Complex64, c: Complex64) -> Complex64 {
        match self.anchor {
            Some(a) if a.center == c => {
                Complex64::new(w.norm().ln() - a.ln_rho, (w * a.direction.conj()).arg())
            }
            _ => (w / self.minus(c)).ln(),
        }
    }

    /// `ln |z − c|`.
    pub fn ln_distance(&self, c: Complex64) -> f64 {
        match self.anchor {
            Some(a) if a.center == c => a.ln_rho,
            _ => self.minus(c).norm().ln(),
        }
    }
}

fn merge_centers(centers: &[Complex64]) -> Vec<Complex64> {
    let mut unique: Vec<Complex64> = Vec::new();
    for &c in centers {
        if unique.iter().all(|u| (u - c).norm() > CENTER_MERGE_DISTANCE) {
            unique.push(c);
        }
    }
    unique
}

/// `ln ρ` for `u = 1/(1 + ln(2/ρ))`.
fn ln_rho_of_u(u: f64) -> f64 {
    std::f64::consts::LN_2 + 1.0 - 1.0 / u
}

fn u_of_rho(rho: f64) -> f64 {
    if rho <= 0.0 {
        0.0
    } else {
        1.0 / (1.0 + (2.0 / rho).ln())
    }
}

/// Contribution of the disk as seen from centre `centers[k]`, weighted by
/// the partition of unity `w_k ∝ |z − b_k|^{−2}`.
fn centered_piece<G>(g: &G, centers: &[Complex64], k: usize, tol: f64) -> QuadResult
where
    G: Fn(DiskPoint) -> f64 + Sync,
{
    let b = centers[k];
    let s = b.norm();
    // w_k = 1 / Σ_j |ρ_k / (z − b_j)|², the j = k term being 1.
    let weight = |p: &DiskPoint| -> f64 {
        let total: f64 = centers.iter().map(|&c| p.scaled_inv_minus(c).norm_sqr()).sum();
        1.0 / total
    };
    // Ray `b + ρ e^{iφ}` meets the disk for ρ ∈ [ρ−, ρ+].
    let ray = |phi: f64, jac: f64| -> QuadResult {
        let e = Complex64::from_polar(1.0, phi);
        let proj = -(b.conj() * e).re;
        let disc = 1.0 - s * s + proj * proj;
        if disc <= 0.0 {
            return QuadResult::zero();
        }
        let hi = proj + disc.sqrt();
        // ρ₋ρ₊ = |b|² − 1; the product form keeps ρ₋ accurate near tangency.
        let lo = if s > 1.0 { (s * s - 1.0) / hi } else { 0.0 };
        if hi <= lo {
            return QuadResult::zero();
        }
        // ρ dρ = ρ² du / u², and g returns g · ρ².
        let f = |u: f64| {
            let ln_rho = ln_rho_of_u(u);
            let p = DiskPoint {
                z: b + e * ln_rho.exp(),
                anchor: Some(Anchor {
                    center: b,
                    direction: e,
                    ln_rho,
                }),
            };
            QuadResult::point(g(p) * weight(&p) * jac / (PI * u * u))
        };
        adaptive(&f, &[u_of_rho(lo), u_of_rho(hi)], tol / 8.0, MAX_INTERVALS_INNER, false)
    };

    let base = if s > 0.0 { b.arg() + PI } else { 0.0 };
    if s >= 1.0 {
        // ψ = ψmax sin t removes the square-root behaviour at the tangent rays.
        let psi_max = (1.0 / s).asin();
        let outer = |t: f64| ray(base + psi_max * t.sin(), psi_max * t.cos());
        let breaks: Vec<f64> = (0..=8).map(|j| -FRAC_PI_2 + PI * j as f64 / 8.0).collect();
        adaptive(&outer, &breaks, tol, MAX_INTERVALS_OUTER, true)
    } else {
        let outer = |psi: f64| ray(base + psi, 1.0);
        let breaks: Vec<f64> = (0..=ANGULAR_PANELS)
            .map(|j| -PI + TAU * j as f64 / ANGULAR_PANELS as f64)
            .collect();
        adaptive(&outer, &breaks, tol, MAX_INTERVALS_OUTER, true)
    }
}

/// `∫_𝔻 g dA/π` for an integrand singular at the given centres (on or
/// outside the closed disk, or at most a rounding error inside it). The
/// closure returns `g(z) · ρ²` as described on [`DiskPoint`]. Without
/// centres this is [`disk_integral`].
pub fn disk_integral_singular<G>(g: G, centers: &[Complex64], tol: f64) -> QuadResult
where
    G: Fn(DiskPoint) -> f64 + Sync,
{
    let centers = merge_centers(centers);
    if centers.is_empty() {
        return disk_integral(|z| g(DiskPoint::plain(z)), tol);
    }
    let share = tol / centers.len() as f64;
    let parts: Vec<QuadResult> = (0..centers.len())
        .map(|k| centered_piece(&g, &centers, k, share))
        .collect();
    QuadResult::combine(&parts, tol)
}

/// `h(x) = x² / (1 + ln x)²`.
pub fn lemma_h(x: f64) -> f64 {
    let d = 1.0 + x.ln();
    (x / d) * (x / d)
}

/// `∫_𝔻 h(2|λ| / |z − λ|) dA(z)/π` for `|λ| ≥ 1`; at most 16.
pub fn lemma_h_integral(lambda: Complex64, tol: f64) -> Result<QuadResult> {
    let s = lambda.norm();
    // Phases applied to |λ| = 1 may round the modulus just below 1.
    if s < 1.0 - 1e-12 {
        return Err(Error::InsideDisk(s));
    }
    // x ρ = 2|λ| · |ρ/(z − λ)| and ln x = ln 2|λ| − ln|z − λ|.
    let g = |p: DiskPoint| {
        let x_rho = 2.0 * s * p.scaled_inv_minus(lambda).norm();
        let d = 1.0 + (2.0 * s).ln() - p.ln_distance(lambda);
        (x_rho / d) * (x_rho / d)
    };
    let centers: &[Complex64] = if s <= SINGULAR_CENTER_RADIUS { &[lambda] } else { &[] };
    Ok(disk_integral_singular(g, centers, tol))
}

/// Result of [`dirichlet_integral_F`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirichletLogIntegral {
    pub quad: QuadResult,
    /// Smallest `Re(1 + log(2ⁿp(0)/p(z)))` seen at any quadrature node.
    pub min_denominator_re: f64,
}

fn atomic_min(cell: &AtomicU64, value: f64) {
    let _ = cell.fetch_update(AtomicOrdering::Relaxed, AtomicOrdering::Relaxed, |bits| {
        (value < f64::from_bits(bits)).then(|| value.to_bits())
    });
}

/// `∫_𝔻 |F′|² dA/π` for `F = log(1 + log(2ⁿp(0)/p))` and a univariate
/// stable `p`, with `F′ = −(p′/p) / (1 + log(2ⁿp(0)/p))` evaluated from the
/// roots of `p`. At most `16n²`.
#[allow(non_snake_case)]
pub fn dirichlet_integral_F(p: &StablePolynomial, n: u32, tol: f64) -> Result<DirichletLogIntegral> {
    let series = p.series();
    let coeffs = series.univariate_coefficients()?;
    let actual = (coeffs.len() as u32).saturating_sub(1);
    if n < actual {
        return Err(Error::DegreeTooSmall { declared: n, actual });
    }
    let roots = if actual == 0 { Vec::new() } else { polynomial_roots(&coeffs)? };
    if let Some(inside) = roots.iter().find(|r| r.norm() < 1.0 - STABILITY_TOLERANCE) {
        return Err(Error::NotStable { witness: vec![*inside] });
    }
    // p(0)/p(z) = Π λ_j/(λ_j − z); leading coefficients trimmed as
    // negligible only remove roots far outside the disk.
    let k = roots.len() as f64;
    let shift = (n as f64 - k) * std::f64::consts::LN_2;
    if roots.is_empty() {
        return Ok(DirichletLogIntegral {
            quad: QuadResult::zero(),
            min_denominator_re: 1.0 + shift,
        });
    }
    let min_re = AtomicU64::new(f64::INFINITY.to_bits());
    let g = |pt: DiskPoint| {
        let mut log = Complex64::new(1.0 + shift, 0.0);
        // ρ p′/p = Σ ρ/(z − λ_j)
        let mut dlog = Complex64::new(0.0, 0.0);
        for &lambda in &roots {
            log += pt.ln_ratio(-2.0 * lambda, lambda);
            dlog += pt.scaled_inv_minus(lambda);
        }
        atomic_min(&min_re, log.re);
        (dlog / log).norm_sqr()
    };
    let centers: Vec<Complex64> = roots
        .iter()
        .copied()
        .filter(|r| r.norm() <= SINGULAR_CENTER_RADIUS)
        .collect();
    let quad = disk_integral_singular(g, &centers, tol);
    Ok(DirichletLogIntegral {
        quad,
        min_denominator_re: f64::from_bits(min_re.load(AtomicOrdering::Relaxed)),
    })
}

/// Average over sampled directions `ζ` of [`dirichlet_integral_F`] for the
/// slices `λ ↦ p(λζ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceIntegral {
    pub mean: f64,
    pub std_error: f64,
    pub directions: usize,
    /// Quadrature error of the mean and total evaluation count.
    pub quad: QuadResult,
    pub min_denominator_re: f64,
    pub max_slice_value: f64,
}

/// Sphere average of the slice Dirichlet integrals of `F`, which dominates
/// `∫_𝔹 |RF|² u(r) 2r dr dσ` for `‖u‖_∞ ≤ 1`. At most `16n²`.
pub fn slice_besov_integral(
    p: &StablePolynomial,
    n: u32,
    cfg: &SampleConfig,
    tol: f64,
) -> Result<SliceIntegral> {
    let directions = cfg.directions(p.dim());
    let per_slice = par::map_slice(&directions, |zeta| -> Result<DirichletLogIntegral> {
        let coeffs = p.series().slice_coefficients(zeta);
        let slice = crate::series::TruncatedSeries::univariate(coeffs.len() as u32 - 1, &coeffs);
        let sp = StablePolynomial::new(slice, n).map_err(|e| match e {
            Error::ZeroPolynomial | Error::ZeroConstantTerm => Error::NotStable {
                witness: zeta.clone(),
            },
            other => other,
        })?;
        dirichlet_integral_F(&sp, n, tol).map_err(|e| match e {
            Error::NotStable { witness } => Error::NotStable {
                witness: zeta.iter().map(|z| z * witness[0]).collect(),
            },
            other => other,
        })
    });
    let results: Vec<DirichletLogIntegral> = per_slice.into_iter().collect::<Result<_>>()?;
    let count = results.len() as f64;
    let mean = results.iter().map(|r| r.quad.value).sum::<f64>() / count;
    let var = if results.len() > 1 {
        results.iter().map(|r| (r.quad.value - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let error_estimate = results.iter().map(|r| r.quad.error_estimate).sum::<f64>() / count;
    Ok(SliceIntegral {
        mean,
        std_error: (var / count).sqrt(),
        directions: results.len(),
        quad: QuadResult {
            value: mean,
            error_estimate,
            evaluations: results.iter().map(|r| r.quad.evaluations).sum(),
            converged: results.iter().all(|r| r.quad.converged),
        },
        min_denominator_re: results.iter().map(|r| r.min_denominator_re).fold(f64::INFINITY, f64::min),
        max_slice_value: results.iter().map(|r| r.quad.value).fold(0.0, f64::max),
    })
}

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub mean: f64,
    pub std_error: f64,
    pub points: usize,
}

impl MonteCarlo {
    /// `|mean − value| ≤ k · sqrt(σ²_mc + err²)`.
    pub fn agrees_with(&self, q: &QuadResult, k: f64) -> bool {
        let combined = (self.std_error.powi(2) + q.error_estimate.powi(2)).sqrt();
        (self.mean - q.value).abs() <= k * combined
    }
}

/// `∫_𝔻 g dA/π` as the mean of `g` at `points` uniform points, drawn by
/// rejection from the square. Batches use their own RNG streams.
pub fn monte_carlo_disk<G>(g: G, points: usize, seed: u64) -> MonteCarlo
where
    G: Fn(Complex64) -> f64 + Sync,
{
    let batches = points.div_ceil(MC_BATCH);
    let sums = par::map_indexed(batches, |b| {
        let mut rng = sampling::stream_rng(seed, b as u64);
        let count = MC_BATCH.min(points - b * MC_BATCH);
        let (mut s, mut s2) = (0.0, 0.0);
        let mut drawn = 0;
        while drawn < count {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.norm_sqr() >= 1.0 {
                continue;
            }
            let v = g(z);
            s += v;
            s2 += v * v;
            drawn += 1;
        }
        (s, s2)
    });
    let (s, s2) = sums.into_iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = points as f64;
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0).max(1.0)).max(0.0);
    MonteCarlo {
        mean,
        std_error: (var / n).sqrt(),
        points,
    }
}
