use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An exponent tuple `α ∈ ℕ₀^d`.
///
/// Ordered graded: total degree first, then lexicographically with the
/// exponent of `z₁` descending, so `z₁` sorts before `z₂` within degree one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub(super) Box<[u32]>);

impl MultiIndex {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Result<Self> {
        let exponents = exponents.into();
        if exponents.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(exponents.into_boxed_slice()))
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self(vec![0; dim].into_boxed_slice())
    }

    /// The exponent of the coordinate function `z_{j+1}`.
    pub fn unit(dim: usize, j: usize) -> Self {
        assert!(j < dim, "coordinate {j} out of range for dimension {dim}");
        let mut e = vec![0; dim];
        e[j] = 1;
        Self(e.into_boxed_slice())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|α| = α₁ + … + α_d`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum; the exponent of the product `z^α z^β`.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `ln α! = Σ ln α_j!`.
    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&a| ln_factorial(a)).sum()
    }

    /// `α! = α₁! ⋯ α_d!`, finite only while it fits in a double.
    pub fn factorial(&self) -> f64 {
        if self.degree() <= 170 {
            self.0.iter().map(|&a| factorial(a)).product()
        } else {
            self.ln_factorial().exp()
        }
    }

    /// The multinomial coefficient `|α|! / α!`.
    pub fn multinomial(&self) -> f64 {
        if self.degree() <= 60 {
            // Product of binomials; each partial product is an integer below 2^53.
            let mut total = 0u32;
            let mut m = 1.0f64;
            for &a in self.0.iter() {
                total += a;
                m *= binomial(total, a);
            }
            m
        } else {
            (ln_factorial(self.degree()) - self.ln_factorial()).exp()
        }
    }

    /// `α! / |α|!`, the Drury–Arveson weight of the monomial `z^α`.
    pub fn drury_arveson_weight(&self) -> f64 {
        if self.degree() <= 60 {
            1.0 / self.multinomial()
        } else {
            (self.ln_factorial() - ln_factorial(self.degree())).exp()
        }
    }

    /// `z^α` at the point `z`, using precomputed powers `powers[j][k] = z_j^k`.
    pub(crate) fn monomial_from_powers(&self, powers: &[Vec<Complex64>]) -> Complex64 {
        self.0
            .iter()
            .zip(powers)
            .fold(Complex64::new(1.0, 0.0), |acc, (&a, p)| acc * p[a as usize])
    }

    /// `z^α` at the point `z`.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(z)
            .fold(Complex64::new(1.0, 0.0), |acc, (&a, &zj)| acc * zj.powu(a))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "z{}", j + 1)?;
            } else {
                write!(f, "z{}^{}", j + 1, a)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub(crate) fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `C(n, k)` by the multiplicative formula; exact while the result is below 2^53.
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let a = MultiIndex::new(vec![1, 0]).unwrap();
        let b = MultiIndex::new(vec![0, 1]).unwrap();
        let c = MultiIndex::new(vec![0, 2]).unwrap();
        let zero = MultiIndex::zero(2);
        let mut v = vec![c.clone(), b.clone(), zero.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![zero, a, b, c]);
    }

    #[test]
    fn weights_small() {
        let a = MultiIndex::new(vec![1, 1]).unwrap();
        assert_eq!(a.drury_arveson_weight(), 0.5);
        let b = MultiIndex::new(vec![2, 1, 1]).unwrap();
        // 2!1!1!/4! = 2/24
        assert!((b.drury_arveson_weight() - 1.0 / 12.0).abs() < 1e-16);
        assert_eq!(MultiIndex::zero(3).drury_arveson_weight(), 1.0);
    }

    #[test]
    fn large_degree_weight_in_log_space() {
        let a = MultiIndex::new(vec![100, 100]).unwrap();
        // 100!100!/200! = 1 / C(200, 100)
        let expected = -(ln_factorial(200) - 2.0 * ln_factorial(100));
        assert!((a.drury_arveson_weight().ln() - expected).abs() < 1e-9);
        assert!(a.drury_arveson_weight() > 0.0);
    }

    #[test]
    fn empty_index_rejected() {
        assert_eq!(MultiIndex::new(Vec::<u32>::new()), Err(Error::ZeroDimension));
    }

    #[test]
    fn display() {
        let a = MultiIndex::new(vec![2, 0, 1]).unwrap();
        assert_eq!(a.to_string(), "z1^2*z3");
        assert_eq!(MultiIndex::zero(2).to_string(), "1");
    }
}
