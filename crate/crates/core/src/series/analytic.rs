//! Reciprocal, logarithm, exponential and composition, each solved degree
//! by degree so the result is exact through the cap.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{MultiIndex, TruncatedSeries, ZERO};
use crate::error::{Error, Result};

type Part = Vec<(MultiIndex, Complex64)>;

/// Caps above this are almost certainly a polynomial built with an unbounded
/// cap; the graded solvers allocate per degree.
const MAX_SOLVE_CAP: u32 = 1 << 16;

fn check_solve_cap(cap: u32) -> Result<()> {
    if cap > MAX_SOLVE_CAP {
        return Err(Error::InvalidArgument(format!(
            "degree cap {cap} too large for a graded solve; truncate first"
        )));
    }
    Ok(())
}

/// Adds `scale · a · b` into `acc` for homogeneous parts `a` and `b`.
fn accumulate_product(acc: &mut HashMap<MultiIndex, Complex64>, a: &Part, b: &Part, scale: f64) {
    for (ia, ca) in a {
        for (ib, cb) in b {
            *acc.entry(ia.add(ib)).or_insert(ZERO) += ca * cb * scale;
        }
    }
}

fn into_part(acc: HashMap<MultiIndex, Complex64>, factor: Complex64) -> Part {
    let mut part: Part = acc
        .into_iter()
        .map(|(k, v)| (k, v * factor))
        .filter(|(_, v)| *v != ZERO)
        .collect();
    part.sort_by(|a, b| a.0.cmp(&b.0));
    part
}

fn graded_full(f: &TruncatedSeries) -> Vec<Part> {
    let mut parts = f.graded();
    parts.resize(f.cap as usize + 1, Vec::new());
    parts
}

fn assemble(dim: usize, cap: u32, parts: Vec<Part>) -> TruncatedSeries {
    let coeffs = parts.into_iter().flatten().filter(|(_, v)| *v != ZERO).collect();
    TruncatedSeries { dim, cap, coeffs }
}

impl TruncatedSeries {
    /// `1/f` through the cap. Requires `f(0) ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = self.constant_term();
        if f0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        check_solve_cap(self.cap)?;
        let f = graded_full(self);
        let inv0 = f0.inv();
        let mut g: Vec<Part> = Vec::with_capacity(f.len());
        g.push(vec![(MultiIndex::zero(self.dim), inv0)]);
        for n in 1..f.len() {
            let mut acc = HashMap::new();
            for k in 1..=n {
                accumulate_product(&mut acc, &f[k], &g[n - k], 1.0);
            }
            g.push(into_part(acc, -inv0));
        }
        Ok(assemble(self.dim, self.cap, g))
    }

    /// Principal-branch logarithm: the constant term is `ln f(0)` with
    /// imaginary part in `(−π, π]`, and the degree-`n` part is
    /// `(Rf · f⁻¹)_n / n`.
    pub fn log(&self) -> Result<Self> {
        let f0 = self.constant_term();
        if f0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let quotient = self.radial_derivative().multiply(&self.reciprocal()?)?;
        let mut parts = graded_full(&quotient);
        parts[0] = vec![(MultiIndex::zero(self.dim), f0.ln())];
        for (n, part) in parts.iter_mut().enumerate().skip(1) {
            for (_, c) in part.iter_mut() {
                *c /= n as f64;
            }
        }
        Ok(assemble(self.dim, self.cap, parts))
    }

    /// Like [`log`](Self::log) but refuses constant terms on the cut
    /// `(−∞, 0]`, where the principal branch is discontinuous.
    pub fn log_off_cut(&self) -> Result<Self> {
        let f0 = self.constant_term();
        if f0.im == 0.0 && f0.re <= 0.0 {
            return Err(Error::BranchCut { value: f0 });
        }
        self.log()
    }

    /// `exp f` through the cap, from `R E = E · Rf`.
    pub fn exp(&self) -> Result<Self> {
        check_solve_cap(self.cap)?;
        let rf = graded_full(&self.radial_derivative());
        let mut e: Vec<Part> = Vec::with_capacity(rf.len());
        e.push(vec![(MultiIndex::zero(self.dim), self.constant_term().exp())]);
        for n in 1..rf.len() {
            let mut acc = HashMap::new();
            for k in 1..=n {
                accumulate_product(&mut acc, &rf[k], &e[n - k], 1.0);
            }
            e.push(into_part(acc, Complex64::new(1.0 / n as f64, 0.0)));
        }
        Ok(assemble(self.dim, self.cap, e))
    }

    /// `f^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.dim, self.cap);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The composition `f ∘ w` for univariate `f` and `w(0) = 0`, by Horner's
    /// rule over the series ring.
    ///
    /// The result is exact through `min(cap_w, ord(w)·(cap_f + 1) − 1)`,
    /// which is `cap_w` whenever `f` carries enough terms.
    pub fn compose(&self, w: &TruncatedSeries) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::NotUnivariate(self.dim));
        }
        let w0 = w.constant_term();
        if w0 != ZERO {
            return Err(Error::NonzeroConstantTerm(w0));
        }
        let Some(order) = w.order() else {
            return Ok(Self::constant(w.dim, w.cap, self.constant_term()));
        };
        let exact = (order as u64 * (self.cap as u64 + 1) - 1).min(w.cap as u64) as u32;
        let w = w.truncate(exact);
        // Powers of w above exact/order vanish through the cap.
        let top = exact / order;
        let coeff = |k: u32| self.coeff(&MultiIndex::new(vec![k]).expect("nonempty"));
        let mut acc = Self::constant(w.dim, exact, coeff(top));
        for k in (0..top).rev() {
            acc = (&acc * &w).add_constant(coeff(k));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn one_minus_z(cap: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(1, cap, [(vec![0], c(1.0)), (vec![1], c(-1.0))]).unwrap()
    }

    #[test]
    fn geometric_reciprocal() {
        let g = one_minus_z(10).reciprocal().unwrap();
        for n in 0..=10 {
            assert_eq!(g.coeff_of(&[n]), c(1.0));
        }
    }

    #[test]
    fn reciprocal_of_constant() {
        let g = TruncatedSeries::constant(2, 5, 2.0).reciprocal().unwrap();
        assert_eq!(g, TruncatedSeries::constant(2, 5, 0.5));
    }

    #[test]
    fn zero_constant_term_rejected() {
        let z = TruncatedSeries::variable(1, 4, 0);
        assert_eq!(z.reciprocal().unwrap_err(), Error::ZeroConstantTerm);
        assert_eq!(z.log().unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn mercator() {
        let l = one_minus_z(12).log().unwrap();
        assert_eq!(l.constant_term(), c(0.0));
        for n in 1..=12u32 {
            assert!((l.coeff_of(&[n]) - c(-1.0 / n as f64)).norm() < 1e-15);
        }
    }

    #[test]
    fn log_of_e() {
        let l = TruncatedSeries::constant(1, 3, std::f64::consts::E).log().unwrap();
        assert!((l.constant_term() - c(1.0)).norm() < 1e-15);
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn principal_branch_constant() {
        let l = TruncatedSeries::constant(1, 0, -1.0).log().unwrap();
        assert!((l.constant_term().im - std::f64::consts::PI).abs() < 1e-15);
        assert!(TruncatedSeries::constant(1, 0, -1.0).log_off_cut().is_err());
    }

    #[test]
    fn exponential_series() {
        let e = TruncatedSeries::variable(1, 10, 0).exp().unwrap();
        let mut fact = 1.0;
        for n in 0..=10u32 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff_of(&[n]) - c(1.0 / fact)).norm() < 1e-16);
        }
        assert_eq!(TruncatedSeries::zero(2, 4).exp().unwrap(), TruncatedSeries::one(2, 4));
    }

    #[test]
    fn compose_geometric() {
        let f = one_minus_z(12).reciprocal().unwrap();
        let w = TruncatedSeries::from_terms(2, 12, [(vec![1, 1], c(1.0))]).unwrap();
        let g = f.compose(&w).unwrap();
        assert_eq!(g.cap(), 12);
        for n in 0..=6u32 {
            assert_eq!(g.coeff_of(&[n, n]), c(1.0));
        }
        assert_eq!(g.len(), 7);
    }

    #[test]
    fn compose_identity() {
        let id = TruncatedSeries::variable(1, 8, 0);
        let w = TruncatedSeries::from_terms(
            3,
            8,
            [(vec![1, 0, 0], c(0.5)), (vec![0, 2, 1], c(-2.0))],
        )
        .unwrap();
        assert_eq!(id.compose(&w).unwrap(), w);
    }

    #[test]
    fn compose_requires_vanishing_inner() {
        let f = one_minus_z(4);
        let w = TruncatedSeries::one(2, 4);
        assert!(matches!(f.compose(&w), Err(Error::NonzeroConstantTerm(_))));
        let g = TruncatedSeries::one(2, 4);
        assert!(matches!(g.compose(&w), Err(Error::NotUnivariate(2))));
    }

    #[test]
    fn compose_cap_limited_by_outer_terms() {
        // f known through degree 2, w of order 3: exact through degree 8.
        let f = one_minus_z(2);
        let w = TruncatedSeries::from_terms(3, 20, [(vec![1, 1, 1], c(1.0))]).unwrap();
        assert_eq!(f.compose(&w).unwrap().cap(), 8);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = TruncatedSeries::from_terms(2, 6, [(vec![0, 0], c(1.0)), (vec![1, 0], c(1.0)), (vec![0, 1], c(1.0))])
            .unwrap();
        let p3 = &(&f * &f) * &f;
        assert!(f.pow(3).max_abs_difference(&p3).unwrap() < 1e-14);
        assert_eq!(f.pow(0), TruncatedSeries::one(2, 6));
    }
}
