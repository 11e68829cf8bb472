//! Multivariate power series truncated at a total-degree cap.

mod analytic;
mod index;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use index::MultiIndex;
pub(crate) use index::factorial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Taylor coefficients of an analytic function on the ball, exact through
/// total degree `cap`.
///
/// Storage is sparse and iterated in graded order. Exact zeros are never
/// stored, so an absent index means a zero coefficient.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    dim: usize,
    cap: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, cap: u32) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            dim,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, cap: u32, c: impl Into<Complex64>) -> Self {
        let mut s = Self::zero(dim, cap);
        s.insert(MultiIndex::zero(dim), c.into());
        s
    }

    pub fn one(dim: usize, cap: u32) -> Self {
        Self::constant(dim, cap, 1.0)
    }

    /// The coordinate function `z_{j+1}`.
    pub fn variable(dim: usize, cap: u32, j: usize) -> Self {
        let mut s = Self::zero(dim, cap);
        s.insert(MultiIndex::unit(dim, j), Complex64::new(1.0, 0.0));
        s
    }

    pub fn monomial(cap: u32, index: MultiIndex, c: impl Into<Complex64>) -> Self {
        let mut s = Self::zero(index.dim(), cap);
        s.insert(index, c.into());
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs. Duplicate
    /// exponents are summed and terms above `cap` are dropped.
    pub fn from_terms<I, E, C>(dim: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<Vec<u32>>,
        C: Into<Complex64>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut s = Self::zero(dim, cap);
        for (e, c) in terms {
            let idx = MultiIndex::new(e)?;
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: idx.dim(),
                });
            }
            s.insert(idx, c.into());
        }
        Ok(s)
    }

    /// Like [`from_terms`](Self::from_terms) with the cap set to the highest
    /// total degree present, which is the natural cap of a polynomial.
    pub fn polynomial<I, E, C>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<Vec<u32>>,
        C: Into<Complex64>,
    {
        let s = Self::from_terms(dim, u32::MAX, terms)?;
        let cap = s.total_degree().unwrap_or(0);
        Ok(s.truncate(cap))
    }

    /// Adds `c` to the coefficient at `index`, ignoring indices above the cap.
    fn insert(&mut self, index: MultiIndex, c: Complex64) {
        if index.degree() > self.cap {
            return;
        }
        match self.coeffs.entry(index) {
            Entry::Vacant(e) => {
                if c != ZERO {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == ZERO {
                    e.remove();
                }
            }
        }
    }

    fn from_map(dim: usize, cap: u32, map: BTreeMap<MultiIndex, Complex64>) -> Self {
        let coeffs = map
            .into_iter()
            .filter(|(k, v)| *v != ZERO && k.degree() <= cap)
            .collect();
        Self { dim, cap, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs.get(index).copied().unwrap_or(ZERO)
    }

    /// Coefficient lookup by raw exponents; panics on a dimension mismatch.
    pub fn coeff_of(&self, exponents: &[u32]) -> Complex64 {
        assert_eq!(exponents.len(), self.dim, "exponent length");
        self.coeff(&MultiIndex::new(exponents.to_vec()).expect("nonempty"))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest total degree carrying a nonzero coefficient.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().map(MultiIndex::degree)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next().map(MultiIndex::degree)
    }

    /// Drops every term above `cap`. A cap above the current one is clamped.
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        Self {
            dim: self.dim,
            cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.degree() <= cap)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    /// Declares the series exact through a larger cap. Only meaningful for
    /// polynomials, whose missing higher coefficients really are zero.
    pub fn with_cap(&self, cap: u32) -> Self {
        if cap <= self.cap {
            return self.truncate(cap);
        }
        Self {
            dim: self.dim,
            cap,
            coeffs: self.coeffs.clone(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        let mut map = BTreeMap::new();
        for (k, v) in self.terms().chain(other.terms()) {
            if k.degree() <= cap {
                *map.entry(k.clone()).or_insert(ZERO) += v;
            }
        }
        Ok(Self::from_map(self.dim, cap, map))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Cauchy product through `min(cap_f, cap_g)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        let rhs = other.truncate(cap).graded();
        let mut map: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, ca) in self.terms() {
            let da = a.degree();
            if da > cap {
                break;
            }
            let top = ((cap - da) as usize).min(rhs.len() - 1);
            for part in &rhs[..=top] {
                for (b, cb) in part {
                    *map.entry(a.add(b)).or_insert(ZERO) += ca * cb;
                }
            }
        }
        Ok(Self::from_map(self.dim, cap, map))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let map = self.terms().map(|(k, v)| (k.clone(), v * c)).collect();
        Self::from_map(self.dim, self.cap, map)
    }

    /// `self + c`.
    pub fn add_constant(&self, c: impl Into<Complex64>) -> Self {
        let mut s = self.clone();
        s.insert(MultiIndex::zero(self.dim), c.into());
        s
    }

    /// The radial derivative `R = Σ z_j ∂/∂z_j`: multiplies the coefficient
    /// at `α` by `|α|`.
    pub fn radial_derivative(&self) -> Self {
        let map = self
            .terms()
            .map(|(k, v)| (k.clone(), v * k.degree() as f64))
            .collect();
        Self::from_map(self.dim, self.cap, map)
    }

    /// `R` applied `m` times.
    pub fn radial_derivative_n(&self, m: u32) -> Self {
        let map = self
            .terms()
            .map(|(k, v)| (k.clone(), v * (k.degree() as f64).powi(m as i32)))
            .collect();
        Self::from_map(self.dim, self.cap, map)
    }

    /// `Σ_{|α| ≤ D} f̂(α) z^α`, summed in graded order.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.dim, "point dimension");
        let top = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<Complex64>> = z
            .iter()
            .map(|&zj| {
                let mut p = Vec::with_capacity(top + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=top {
                    p.push(acc);
                    acc *= zj;
                }
                p
            })
            .collect();
        self.terms()
            .fold(ZERO, |acc, (k, v)| acc + v * k.monomial_from_powers(&powers))
    }

    /// Coefficients of the slice `λ ↦ f(λζ)`: entry `n` is
    /// `Σ_{|α|=n} f̂(α) ζ^α`. The vector runs up to the highest degree present.
    pub fn slice_coefficients(&self, direction: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(direction.len(), self.dim, "direction dimension");
        let top = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<Complex64>> = direction
            .iter()
            .map(|&zj| {
                let mut p = Vec::with_capacity(top + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=top {
                    p.push(acc);
                    acc *= zj;
                }
                p
            })
            .collect();
        let mut out = vec![ZERO; top + 1];
        for (k, v) in self.terms() {
            out[k.degree() as usize] += v * k.monomial_from_powers(&powers);
        }
        out
    }

    /// A univariate series from its coefficient vector.
    pub fn univariate(cap: u32, coefficients: &[Complex64]) -> Self {
        let coeffs = coefficients
            .iter()
            .enumerate()
            .filter(|(n, c)| **c != ZERO && *n as u32 <= cap)
            .map(|(n, c)| (MultiIndex(vec![n as u32].into_boxed_slice()), *c))
            .collect();
        Self { dim: 1, cap, coeffs }
    }

    /// Dense coefficient vector of a univariate series, through the highest
    /// degree present.
    pub fn univariate_coefficients(&self) -> Result<Vec<Complex64>> {
        if self.dim != 1 {
            return Err(Error::NotUnivariate(self.dim));
        }
        let top = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![ZERO; top + 1];
        for (k, v) in self.terms() {
            out[k.degree() as usize] = v;
        }
        Ok(out)
    }

    /// Splits the series into its nonzero homogeneous parts, lowest degree first.
    pub fn homogeneous_parts(&self) -> Vec<HomogeneousPart> {
        let mut out: Vec<HomogeneousPart> = Vec::new();
        for (k, v) in self.terms() {
            let n = k.degree();
            match out.last_mut() {
                Some(p) if p.degree == n => p.series.insert(k.clone(), v),
                _ => {
                    let mut series = Self::zero(self.dim, self.cap);
                    series.insert(k.clone(), v);
                    out.push(HomogeneousPart { degree: n, series });
                }
            }
        }
        out
    }

    /// Terms bucketed by degree: entry `n` holds the degree-`n` terms, up to
    /// the highest degree present.
    pub(crate) fn graded(&self) -> Vec<Vec<(MultiIndex, Complex64)>> {
        let top = self.total_degree().unwrap_or(0).min(self.cap);
        let mut parts = vec![Vec::new(); top as usize + 1];
        for (k, v) in self.terms() {
            parts[k.degree() as usize].push((k.clone(), v));
        }
        parts
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms().map(|(_, v)| v.norm()).fold(0.0, f64::max)
    }

    /// `max_α |f̂(α) − ĝ(α)| / (1 + max(|f̂(α)|, |ĝ(α)|))` over `|α|` up to the
    /// smaller cap.
    pub fn relative_discrepancy(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        let mut worst = 0.0f64;
        for k in self.coeffs.keys().chain(other.coeffs.keys()) {
            if k.degree() > cap {
                continue;
            }
            let (a, b) = (self.coeff(k), other.coeff(k));
            let d = (a - b).norm() / (1.0 + a.norm().max(b.norm()));
            worst = worst.max(d);
        }
        Ok(worst)
    }

    /// Largest absolute coefficient difference up to the smaller cap.
    pub fn max_abs_difference(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        Ok(self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|k| k.degree() <= cap)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max))
    }
}

/// Series compare equal when their coefficients agree exactly on every index
/// up to the smaller cap.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let cap = self.cap.min(other.cap);
        let lhs = self.coeffs.iter().filter(|(k, _)| k.degree() <= cap);
        let rhs = other.coeffs.iter().filter(|(k, _)| k.degree() <= cap);
        lhs.eq(rhs)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.try_add(rhs).expect("series dimensions must agree")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.try_sub(rhs).expect("series dimensions must agree")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.multiply(rhs).expect("series dimensions must agree")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(-1.0)
    }
}

/// The degree-`n` piece of a series.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPart {
    degree: u32,
    series: TruncatedSeries,
}

impl HomogeneousPart {
    /// Wraps `series`, checking that every term has total degree `degree`.
    pub fn new(degree: u32, series: TruncatedSeries) -> Result<Self> {
        if let Some(bad) = series.terms().map(|(k, _)| k.degree()).find(|&d| d != degree) {
            return Err(Error::NotHomogeneous(degree, bad));
        }
        Ok(Self { degree, series })
    }

    /// Infers the degree from the support; the zero series is degree 0.
    pub fn from_series(series: TruncatedSeries) -> Result<Self> {
        let degree = series.order().unwrap_or(0);
        Self::new(degree, series)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.series
    }
}
