//! Series-level checks of derivative identities for the radial derivative.
//!
//! Each `verify_*` function computes both sides of an identity as truncated
//! series and returns the largest coefficient discrepancy, scaled by
//! `1 + max(|a|, |b|)` per coefficient.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{factorial, TruncatedSeries};

/// `η = (η₁, …, η_m)` with `Σ i·η_i = m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PartitionTuple(Vec<u32>);

impl PartitionTuple {
    pub fn new(eta: Vec<u32>) -> Result<Self> {
        if eta.is_empty() {
            return Err(Error::InvalidArgument("partition tuple must have m >= 1".into()));
        }
        let m = eta.len() as u64;
        let weighted: u64 = eta.iter().enumerate().map(|(i, &e)| (i as u64 + 1) * e as u64).sum();
        if weighted != m {
            return Err(Error::InvalidArgument(format!(
                "sum of i*eta_i is {weighted}, expected {m}"
            )));
        }
        Ok(Self(eta))
    }

    pub fn m(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|η| = Σ η_i`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `η! = Π η_i!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `m! / (η! Π (j!)^{η_j})`, the number of set partitions of `m` points
    /// with block sizes given by `η`.
    pub fn faa_weight(&self) -> f64 {
        let denom: f64 = self
            .0
            .iter()
            .enumerate()
            .map(|(j, &e)| factorial(j as u32 + 1).powi(e as i32))
            .product();
        factorial(self.m()) / (self.factorial() * denom)
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All of `A_m`, in descending lexicographic order.
pub fn enumerate_a_m(m: u32) -> Result<Vec<PartitionTuple>> {
    if m == 0 {
        return Err(Error::InvalidArgument("A_m needs m >= 1".into()));
    }
    fn fill(i: u32, rem: u32, eta: &mut Vec<u32>, m: u32, out: &mut Vec<PartitionTuple>) {
        if i > m {
            if rem == 0 {
                out.push(PartitionTuple(eta.clone()));
            }
            return;
        }
        for e in (0..=rem / i).rev() {
            eta.push(e);
            fill(i + 1, rem - e * i, eta, m, out);
            eta.pop();
        }
    }
    let mut out = Vec::new();
    fill(1, m, &mut Vec::with_capacity(m as usize), m, &mut out);
    Ok(out)
}

/// `T_η(F) = Π_i (R^i F)^{η_i}`.
pub fn t_eta(f: &TruncatedSeries, eta: &PartitionTuple) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(f.dim(), f.cap());
    let mut derivative = f.clone();
    for &e in eta.entries() {
        derivative = derivative.radial_derivative();
        if e > 0 {
            out = &out * &derivative.pow(e);
        }
    }
    out
}

/// `R^m log(1 + F)` from the Faà di Bruno expansion over `A_m`.
pub fn rm_log1p_faa(f: &TruncatedSeries, m: u32) -> Result<TruncatedSeries> {
    let shifted = f.add_constant(1.0);
    if shifted.constant_term() == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroConstantTerm);
    }
    let inv = shifted.reciprocal()?;
    let mut acc = TruncatedSeries::zero(f.dim(), f.cap());
    for eta in enumerate_a_m(m)? {
        let k = eta.size();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let coefficient = eta.faa_weight() * sign * factorial(k - 1);
        let term = &inv.pow(k) * &t_eta(f, &eta);
        acc = &acc + &term.scale(coefficient);
    }
    Ok(acc)
}

fn check_off_cut(value: Complex64) -> Result<()> {
    if value.im == 0.0 && value.re <= 0.0 {
        return Err(Error::BranchCut { value });
    }
    Ok(())
}

/// Discrepancy between [`rm_log1p_faa`] and `R^m` applied to `log(1 + F)`.
pub fn verify_faa_di_bruno(f: &TruncatedSeries, m: u32) -> Result<f64> {
    let shifted = f.add_constant(1.0);
    check_off_cut(shifted.constant_term())?;
    let direct = shifted.log()?.radial_derivative_n(m);
    rm_log1p_faa(f, m)?.relative_discrepancy(&direct)
}

/// Discrepancy in
/// `R(ψ^{n+2} e^{−φ/ψ}) = ψⁿ e^{−φ/ψ} ((n+2)(Rψ)ψ − ((Rφ)ψ − (Rψ)φ))`.
pub fn verify_r_exp_identity(phi: &TruncatedSeries, psi: &TruncatedSeries, n: u32) -> Result<f64> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            left: phi.dim(),
            right: psi.dim(),
        });
    }
    let e = phi.multiply(&psi.reciprocal()?)?.scale(-1.0).exp()?;
    let lhs = psi.pow(n + 2).multiply(&e)?.radial_derivative();
    let r_phi = phi.radial_derivative();
    let r_psi = psi.radial_derivative();
    let bracket = &(&r_psi * psi).scale((n + 2) as f64) - &(&(&r_phi * psi) - &(&r_psi * phi));
    let rhs = &(&psi.pow(n) * &e) * &bracket;
    lhs.relative_discrepancy(&rhs)
}

/// Discrepancy in `R(φ^{n+1} log φ) = ((n+1) log φ + 1) φⁿ Rφ`.
pub fn verify_r_log_identity(phi: &TruncatedSeries, n: u32) -> Result<f64> {
    check_off_cut(phi.constant_term())?;
    let log = phi.log()?;
    let lhs = (&phi.pow(n + 1) * &log).radial_derivative();
    let factor = log.scale((n + 1) as f64).add_constant(1.0);
    let rhs = &(&factor * &phi.pow(n)) * &phi.radial_derivative();
    lhs.relative_discrepancy(&rhs)
}

/// `−φ (1 − Σ_{k≥1} φ^k / (k(k+1)))` through the cap of `φ`, for `φ(0) = 0`.
pub fn log1m_expansion_rhs(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c0 = phi.constant_term();
    if c0 != Complex64::new(0.0, 0.0) {
        return Err(Error::NonzeroConstantTerm(c0));
    }
    let mut sum = TruncatedSeries::zero(phi.dim(), phi.cap());
    let mut power = phi.clone();
    for k in 1..=phi.cap() {
        if power.is_empty() {
            break;
        }
        sum = &sum + &power.scale(1.0 / (k as f64 * (k as f64 + 1.0)));
        power = &power * phi;
    }
    Ok(-&(phi * &(&TruncatedSeries::one(phi.dim(), phi.cap()) - &sum)))
}

/// Discrepancy between `(1−φ) log(1−φ)` and [`log1m_expansion_rhs`].
pub fn verify_log1m_expansion(phi: &TruncatedSeries) -> Result<f64> {
    let rhs = log1m_expansion_rhs(phi)?;
    let one_minus = phi.scale(-1.0).add_constant(1.0);
    let lhs = &one_minus * &one_minus.log()?;
    lhs.relative_discrepancy(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn series(dim: usize, cap: u32, terms: &[(Vec<u32>, f64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(dim, cap, terms.iter().map(|(e, v)| (e.clone(), c(*v)))).unwrap()
    }

    fn partition_count(m: usize) -> usize {
        let mut p = vec![0usize; m + 1];
        p[0] = 1;
        for part in 1..=m {
            for total in part..=m {
                p[total] += p[total - part];
            }
        }
        p[m]
    }

    fn bell(m: usize) -> f64 {
        // Bell triangle.
        let mut row = vec![1.0f64];
        for _ in 1..m {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    #[test]
    fn small_index_sets() {
        let a1 = enumerate_a_m(1).unwrap();
        assert_eq!(a1, vec![PartitionTuple(vec![1])]);
        let a2 = enumerate_a_m(2).unwrap();
        assert_eq!(a2, vec![PartitionTuple(vec![2, 0]), PartitionTuple(vec![0, 1])]);
        assert_eq!(enumerate_a_m(4).unwrap().len(), 5);
        assert!(enumerate_a_m(0).is_err());
    }

    #[test]
    fn index_set_sizes_are_partition_numbers() {
        for m in 1..=12 {
            let set = enumerate_a_m(m as u32).unwrap();
            assert_eq!(set.len(), partition_count(m));
            for eta in &set {
                assert!(PartitionTuple::new(eta.entries().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn weights_sum_to_bell_numbers() {
        for m in 1..=12 {
            let total: f64 = enumerate_a_m(m as u32).unwrap().iter().map(PartitionTuple::faa_weight).sum();
            assert!((total - bell(m)).abs() < 1e-9 * bell(m), "m = {m}");
        }
    }

    #[test]
    fn tuple_validation() {
        assert!(PartitionTuple::new(vec![1, 1]).is_err());
        assert!(PartitionTuple::new(vec![]).is_err());
        assert_eq!(PartitionTuple::new(vec![1, 1, 0]).unwrap().size(), 2);
    }

    #[test]
    fn t_eta_examples() {
        let z = TruncatedSeries::variable(1, 6, 0);
        let f = series(2, 6, &[(vec![1, 0], 1.0), (vec![0, 2], 3.0)]);
        assert_eq!(t_eta(&f, &PartitionTuple(vec![1])), f.radial_derivative());
        assert_eq!(t_eta(&z, &PartitionTuple(vec![0, 1])), z);
        assert_eq!(t_eta(&z, &PartitionTuple(vec![2, 0])), &z * &z);
    }

    #[test]
    fn faa_first_order_is_log_derivative() {
        let f = series(2, 8, &[(vec![1, 0], 0.5), (vec![1, 1], -1.0)]);
        let expected = &f.radial_derivative() * &f.add_constant(1.0).reciprocal().unwrap();
        assert!(rm_log1p_faa(&f, 1).unwrap().max_abs_difference(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn faa_second_order_closed_form() {
        // R² log(1+z) = z/(1+z) − z²/(1+z)².
        let z = TruncatedSeries::variable(1, 12, 0);
        let inv = z.add_constant(1.0).reciprocal().unwrap();
        let expected = &(&z * &inv) - &(&(&z * &z) * &inv.pow(2));
        assert!(rm_log1p_faa(&z, 2).unwrap().max_abs_difference(&expected).unwrap() < 1e-13);
    }

    #[test]
    fn faa_examples() {
        let z = TruncatedSeries::variable(1, 12, 0);
        for m in 1..=4 {
            assert!(verify_faa_di_bruno(&z, m).unwrap() <= 1e-10);
        }
        let f = series(2, 12, &[(vec![1, 0], 1.0), (vec![0, 2], 1.0)]);
        assert!(verify_faa_di_bruno(&f, 3).unwrap() <= 1e-10);
        let zero = TruncatedSeries::zero(2, 6);
        for m in 1..=5 {
            assert!(rm_log1p_faa(&zero, m).unwrap().is_empty());
            assert_eq!(verify_faa_di_bruno(&zero, m).unwrap(), 0.0);
        }
        let bad = TruncatedSeries::constant(1, 4, -2.0);
        assert!(matches!(verify_faa_di_bruno(&bad, 2), Err(Error::BranchCut { .. })));
    }

    #[test]
    fn exp_identity_examples() {
        let psi = series(2, 8, &[(vec![0, 0], 1.0), (vec![1, 0], 0.5), (vec![0, 1], -0.25)]);
        let zero = TruncatedSeries::zero(2, 8);
        for n in 0..3 {
            assert!(verify_r_exp_identity(&zero, &psi, n).unwrap() < 1e-12);
        }
        let z = TruncatedSeries::variable(1, 10, 0);
        assert!(verify_r_exp_identity(&z, &TruncatedSeries::one(1, 10), 0).unwrap() < 1e-14);
        assert_eq!(
            verify_r_exp_identity(&z, &z, 0).unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn log_identity_examples() {
        let k = TruncatedSeries::constant(2, 5, 3.0);
        assert_eq!(verify_r_log_identity(&k, 1).unwrap(), 0.0);
        let phi = series(1, 10, &[(vec![0], 1.0), (vec![1], -0.5)]);
        for n in 0..3 {
            assert!(verify_r_log_identity(&phi, n).unwrap() < 1e-13);
        }
        assert!(matches!(
            verify_r_log_identity(&TruncatedSeries::constant(1, 3, -1.0), 0),
            Err(Error::BranchCut { .. })
        ));
    }

    #[test]
    fn log1m_examples() {
        assert_eq!(verify_log1m_expansion(&TruncatedSeries::zero(1, 5)).unwrap(), 0.0);
        let z = TruncatedSeries::variable(1, 15, 0);
        assert!(verify_log1m_expansion(&z).unwrap() <= 1e-10);
        let half = series(2, 10, &[(vec![1, 0], 0.5), (vec![0, 1], 0.5)]);
        assert!(verify_log1m_expansion(&half).unwrap() <= 1e-10);
        assert!(matches!(
            verify_log1m_expansion(&TruncatedSeries::one(1, 3)),
            Err(Error::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn log1m_sum_must_start_at_one() {
        // Dropping the k = 1 term leaves z²/2 unaccounted for.
        let z = TruncatedSeries::variable(1, 8, 0);
        let one_minus = z.scale(-1.0).add_constant(1.0);
        let lhs = &one_minus * &one_minus.log().unwrap();
        let full = log1m_expansion_rhs(&z).unwrap();
        let without_first = &full - &(&z * &z).scale(0.5);
        assert!(lhs.max_abs_difference(&full).unwrap() < 1e-15);
        assert!((lhs.max_abs_difference(&without_first).unwrap() - 0.5).abs() < 1e-15);
    }
}
