//! Seeded sample sets on the sphere `∂𝔹_d` and radial grids.
//!
//! Every direction draws from its own ChaCha stream keyed by
//! `(seed, index)`, so a sample set is the same whether it is generated
//! serially, in parallel, or one direction at a time.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// How densely the ball is sampled by the estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub sphere_samples: usize,
    pub radial_grid: usize,
    pub rng_seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            sphere_samples: 200,
            radial_grid: 50,
            rng_seed: 0,
        }
    }
}

impl SampleConfig {
    pub fn new(sphere_samples: usize, radial_grid: usize, rng_seed: u64) -> Result<Self> {
        if sphere_samples == 0 || radial_grid == 0 {
            return Err(Error::InvalidArgument(
                "sample counts must be at least 1".into(),
            ));
        }
        Ok(Self {
            sphere_samples,
            radial_grid,
            rng_seed,
        })
    }

    /// Radii `j / radial_grid` for `j = 1..=radial_grid`; the last one is 1.
    pub fn radii(&self) -> Vec<f64> {
        (1..=self.radial_grid)
            .map(|j| j as f64 / self.radial_grid as f64)
            .collect()
    }

    /// The sphere directions of this configuration in dimension `dim`.
    pub fn directions(&self, dim: usize) -> Vec<Vec<Complex64>> {
        sphere_samples(dim, self.sphere_samples, self.rng_seed)
    }
}

/// An RNG for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Direction number `index` of the sample set for `seed`: a normalized
/// standard complex Gaussian vector, hence `σ`-distributed.
pub fn sphere_direction(dim: usize, seed: u64, index: usize) -> Vec<Complex64> {
    assert!(dim >= 1, "dimension must be at least 1");
    let mut rng = stream_rng(seed, index as u64);
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// `count` pseudo-uniform points on `∂𝔹_d`, deterministic per seed.
pub fn sphere_samples(dim: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    par::map_indexed(count, |i| sphere_direction(dim, seed, i))
}

/// Euclidean norm of a point of `ℂ^d`.
pub fn norm(z: &[Complex64]) -> f64 {
    z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt()
}
