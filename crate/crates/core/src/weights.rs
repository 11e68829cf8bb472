//! Admissible radial measures and the weight sequence
//! `ω_n = n!(d−1)!/(n+d−1)! · ∫ r^{2n} dμ(r)` they induce on homogeneous parts.

use std::fmt;
use std::path::Path;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// Number of leading moments checked for positivity and monotonicity when a
/// moment table is supplied by the user.
pub const CHECKED_MOMENTS: usize = 64;

/// A radial measure `μ` on `[0, 1]`, described through its even moments.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialMeasure {
    /// `μ = mass · δ₁`; with unit mass `ω` is the surface measure `σ`.
    PointMass { mass: f64 },
    /// `dμ = 2r dr`, giving normalized volume measure `V`.
    NormalizedLebesgue,
    /// `dμ ∝ (1 − r²)^β 2r dr` with `β > −1`, normalized to total mass 1.
    Power { beta: f64 },
    /// Explicit table `m(n) = ∫ r^{2n} dμ`.
    Moments(Arc<[f64]>),
}

impl RadialMeasure {
    /// The unit point mass at `r = 1`.
    pub fn sigma() -> Self {
        Self::PointMass { mass: 1.0 }
    }

    pub fn power(beta: f64) -> Result<Self> {
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(Error::InvalidMeasure(format!("power weight needs beta > -1, got {beta}")));
        }
        Ok(Self::Power { beta })
    }

    /// Validates a moment table: every value positive, and the first
    /// [`CHECKED_MOMENTS`] non-increasing. Entries past that are trusted.
    pub fn moments(table: Vec<f64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::InvalidMeasure("empty moment table".into()));
        }
        if let Some((i, m)) = table.iter().enumerate().find(|(_, m)| !(**m > 0.0) || !m.is_finite()) {
            return Err(Error::InvalidMeasure(format!("moment {i} = {m} is not positive")));
        }
        let head = &table[..table.len().min(CHECKED_MOMENTS)];
        if let Some(i) = head.windows(2).position(|w| w[1] > w[0]) {
            return Err(Error::InvalidMeasure(format!(
                "moments must be non-increasing, m({}) = {} > m({}) = {}",
                i + 1,
                head[i + 1],
                i,
                head[i]
            )));
        }
        Ok(Self::Moments(table.into()))
    }

    /// Reads a JSON array of moment values.
    pub fn moments_from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let table: Vec<f64> =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::moments(table)
    }

    /// Parses `sigma`, `lebesgue`, `power:beta=<x>` or `moments:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "sigma" => return Ok(Self::sigma()),
            "lebesgue" => return Ok(Self::NormalizedLebesgue),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("power:") {
            let value = rest
                .strip_prefix("beta=")
                .ok_or_else(|| Error::Parse(format!("expected power:beta=<x>, got {s:?}")))?;
            let beta = value
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad beta {value:?}: {e}")))?;
            return Self::power(beta);
        }
        if let Some(path) = s.strip_prefix("moments:") {
            return Self::moments_from_file(path);
        }
        Err(Error::Parse(format!("unknown measure {s:?}")))
    }

    /// `∫ r^{2n} dμ(r)`.
    pub fn moment(&self, n: usize) -> Result<f64> {
        Ok(match self {
            Self::PointMass { mass } => *mass,
            Self::NormalizedLebesgue => 1.0 / (n as f64 + 1.0),
            // B(n+1, β+1) / B(1, β+1) = Π_{j=1}^{n} j / (j + β + 1)
            Self::Power { beta } => (1..=n).fold(1.0, |acc, j| acc * j as f64 / (j as f64 + beta + 1.0)),
            Self::Moments(table) => *table.get(n).ok_or(Error::MomentOutOfRange {
                index: n,
                len: table.len(),
            })?,
        })
    }

    /// `μ([0, 1])`, which is also `ω(𝔹_d)` since `σ` is a probability measure.
    pub fn total_mass(&self) -> f64 {
        self.moment(0).expect("moment 0 always exists")
    }
}

impl fmt::Display for RadialMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PointMass { mass } if *mass == 1.0 => f.write_str("sigma"),
            Self::PointMass { mass } => write!(f, "point-mass:{mass}"),
            Self::NormalizedLebesgue => f.write_str("lebesgue"),
            Self::Power { beta } => write!(f, "power:beta={beta}"),
            Self::Moments(t) => write!(f, "moments[{}]", t.len()),
        }
    }
}

/// `n!(d−1)!/(n+d−1)! = 1 / C(n+d−1, d−1)`, the ratio between the sphere
/// and Drury–Arveson norms of a degree-`n` homogeneous polynomial.
pub fn sphere_ratio(dim: usize, n: usize) -> f64 {
    (1..dim).fold(1.0, |acc, j| acc * j as f64 / (n + j) as f64)
}

/// The weights `ω_n` for a fixed dimension and measure, cached as they are
/// requested.
#[derive(Debug)]
pub struct WeightSequence {
    dim: usize,
    measure: RadialMeasure,
    cache: RwLock<Vec<f64>>,
}

impl Clone for WeightSequence {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            measure: self.measure.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl WeightSequence {
    pub fn new(dim: usize, measure: RadialMeasure) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            measure,
            cache: RwLock::new(Vec::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn measure(&self) -> &RadialMeasure {
        &self.measure
    }

    /// `ω_n`.
    pub fn omega(&self, n: usize) -> Result<f64> {
        if let Some(&w) = self.cache.read().expect("cache lock").get(n) {
            return Ok(w);
        }
        let mut cache = self.cache.write().expect("cache lock");
        // Another reader may have filled it meanwhile; the fill is idempotent.
        for k in cache.len()..=n {
            let w = sphere_ratio(self.dim, k) * self.measure.moment(k)?;
            cache.push(w);
        }
        Ok(cache[n])
    }

    /// `ω_0, …, ω_max`.
    pub fn table(&self, max: usize) -> Result<Vec<f64>> {
        self.omega(max)?;
        Ok(self.cache.read().expect("cache lock")[..=max].to_vec())
    }
}
