//! Named test polynomials and seeded random generators shared by the tests,
//! the verification suites and the benchmarks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::sampling::stream_rng;
use crate::series::TruncatedSeries;

fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `1 − 3^{3/2} z₁z₂z₃` on `𝔹₃`; zero-free on the open ball with zeros on
/// the sphere at `|z_j| = 1/√3`.
pub fn p1() -> TruncatedSeries {
    TruncatedSeries::polynomial(3, [(vec![0, 0, 0], real(1.0)), (vec![1, 1, 1], real(-(3f64.powf(1.5))))])
        .expect("fixed polynomial")
}

/// `1 − (z₁² + z₂² + z₃²)` on `𝔹₃`.
pub fn p2() -> TruncatedSeries {
    TruncatedSeries::polynomial(
        3,
        [
            (vec![0, 0, 0], real(1.0)),
            (vec![2, 0, 0], real(-1.0)),
            (vec![0, 2, 0], real(-1.0)),
            (vec![0, 0, 2], real(-1.0)),
        ],
    )
    .expect("fixed polynomial")
}

/// `1 − (z₁ + z₂)/2` on `𝔹₂`.
pub fn half_sum() -> TruncatedSeries {
    TruncatedSeries::polynomial(
        2,
        [(vec![0, 0], real(1.0)), (vec![1, 0], real(-0.5)), (vec![0, 1], real(-0.5))],
    )
    .expect("fixed polynomial")
}

/// `1 − z₁` in dimension `dim`.
pub fn one_minus_z1(dim: usize) -> TruncatedSeries {
    let mut e = vec![0u32; dim];
    let zero = e.clone();
    e[0] = 1;
    TruncatedSeries::polynomial(dim, [(zero, real(1.0)), (e, real(-1.0))]).expect("dim >= 1")
}

/// `Σ_{n≤cap} zⁿ`, the truncation of `1/(1−z)`.
pub fn geometric(cap: u32) -> TruncatedSeries {
    TruncatedSeries::univariate(cap, &vec![real(1.0); cap as usize + 1])
}

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `c Π (1 − z/λ_j)` with roots `|λ_j| = 1 + |N(0,1)|` at uniform phases,
/// degree uniform in `1..=max_degree`, and `c` complex Gaussian.
/// Member `index` of the family for `seed` is always the same polynomial.
pub fn random_stable_univariate(seed: u64, index: usize, max_degree: u32) -> TruncatedSeries {
    let mut rng = stream_rng(seed, index as u64);
    let degree = rng.gen_range(1..=max_degree.max(1));
    let mut scale = complex_normal(&mut rng);
    while scale.norm() < 0.1 {
        scale = complex_normal(&mut rng);
    }
    let mut coeffs = vec![scale];
    for _ in 0..degree {
        let modulus = 1.0 + rng.sample::<f64, _>(StandardNormal).abs();
        let lambda = Complex64::from_polar(modulus, rng.gen_range(0.0..TAU));
        let mut next = coeffs.clone();
        next.push(real(0.0));
        for (k, &a) in coeffs.iter().enumerate() {
            next[k + 1] -= a / lambda;
        }
        coeffs = next;
    }
    TruncatedSeries::univariate(degree, &coeffs)
}

pub fn stable_univariate_corpus(seed: u64, count: usize, max_degree: u32) -> Vec<TruncatedSeries> {
    (0..count).map(|i| random_stable_univariate(seed, i, max_degree)).collect()
}

/// A random series with `terms` Gaussian coefficients of total degree in
/// `1..=cap`, scaled by `scale`, plus the given constant term.
pub fn random_series<R: Rng>(
    rng: &mut R,
    dim: usize,
    cap: u32,
    terms: usize,
    scale: f64,
    constant: Complex64,
) -> TruncatedSeries {
    let top = cap.max(1);
    let mut entries = vec![(vec![0u32; dim], constant)];
    for _ in 0..terms {
        let degree = rng.gen_range(1..=top);
        let mut exps = vec![0u32; dim];
        for _ in 0..degree {
            exps[rng.gen_range(0..dim)] += 1;
        }
        entries.push((exps, complex_normal(rng) * scale));
    }
    TruncatedSeries::from_terms(dim, cap, entries).expect("consistent dimension")
}
