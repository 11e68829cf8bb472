use std::f64::consts::PI;

use proptest::prelude::*;

use iterlog_core::corpus;
use iterlog_core::identities;
use iterlog_core::norms::{self, SpaceSpec};
use iterlog_core::quadrature;
use iterlog_core::sampling::{self, SampleConfig};
use iterlog_core::transforms::{self, StablePolynomial};
use iterlog_core::weights::RadialMeasure;
use iterlog_core::{Complex64, TruncatedSeries};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random(seed: u64, dim: usize, cap: u32, constant: Complex64, scale: f64) -> TruncatedSeries {
    let mut rng = sampling::stream_rng(seed, dim as u64);
    corpus::random_series(&mut rng, dim, cap, 3 * cap as usize + 2, scale, constant)
}

fn measures() -> impl Strategy<Value = RadialMeasure> {
    prop_oneof![
        Just(RadialMeasure::sigma()),
        Just(RadialMeasure::NormalizedLebesgue),
        (-0.9f64..3.0).prop_map(|b| RadialMeasure::power(b).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reciprocal_inverts(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=8) {
        let f = random(seed, dim, cap, Complex64::new(1.5, -0.5), 0.5);
        let prod = &f * &f.reciprocal().unwrap();
        prop_assert!(prod.relative_discrepancy(&TruncatedSeries::one(dim, cap)).unwrap() < 1e-10);
    }

    #[test]
    fn exp_inverts_log(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=8) {
        let f = random(seed, dim, cap, Complex64::new(2.0, 0.5), 0.5);
        let back = f.log().unwrap().exp().unwrap();
        prop_assert!(back.relative_discrepancy(&f).unwrap() < 1e-10);
    }

    #[test]
    fn radial_derivative_is_a_derivation(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=8) {
        let f = random(seed, dim, cap, c(0.3), 1.0);
        let g = random(seed.wrapping_add(1), dim, cap, c(-1.0), 1.0);
        let lhs = (&f * &g).radial_derivative();
        let rhs = &(&f.radial_derivative() * &g) + &(&f * &g.radial_derivative());
        prop_assert!(lhs.relative_discrepancy(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn product_commutes_and_associates(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=6) {
        let f = random(seed, dim, cap, c(1.0), 1.0);
        let g = random(seed ^ 0xabc, dim, cap, c(0.5), 1.0);
        let h = random(seed ^ 0xdef, dim, cap, c(-2.0), 1.0);
        prop_assert!((&f * &g).relative_discrepancy(&(&g * &f)).unwrap() < 1e-13);
        prop_assert!((&(&f * &g) * &h).relative_discrepancy(&(&f * &(&g * &h))).unwrap() < 1e-12);
    }

    #[test]
    fn parseval_in_one_variable(seed in any::<u64>(), cap in 0u32..=30) {
        let f = random(seed, 1, cap, c(0.7), 1.0);
        let space = SpaceSpec::besov(1, 0.0, RadialMeasure::sigma()).unwrap();
        let plain: f64 = f.terms().map(|(_, v)| v.norm_sqr()).sum();
        prop_assert!((norms::besov_norm_sq(&f, &space).unwrap() - plain).abs() <= 1e-13 * plain.max(1.0));
    }

    #[test]
    fn order_recursion(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=10, order in 1u32..=3, measure in measures()) {
        let f = random(seed, dim, cap, Complex64::new(0.2, 1.0), 1.0);
        let space = SpaceSpec::besov(dim, order as f64, measure).unwrap();
        let lhs = norms::besov_norm_sq(&f, &space).unwrap();
        let rhs = space.total_mass() * f.constant_term().norm_sqr()
            + norms::besov_norm_sq(&f.radial_derivative(), &space.lower_order().unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1e-300));
    }

    #[test]
    fn tail_increments_are_nonnegative(seed in any::<u64>(), dim in 1usize..=3, cap in 0u32..=12, measure in measures()) {
        let f = random(seed, dim, cap, c(0.0), 1.0);
        for space in [SpaceSpec::h2d(dim).unwrap(), SpaceSpec::besov(dim, 1.0, measure).unwrap()] {
            let prof = norms::tail_profile(&f, &space).unwrap();
            prop_assert!(prof.increments.iter().all(|&x| x >= 0.0));
            prop_assert!(prof.partial_norms.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn sphere_samples_are_deterministic(seed in any::<u64>(), dim in 1usize..=4) {
        let a = quadrature::sphere_samples(dim, 20, seed);
        prop_assert_eq!(&a, &quadrature::sphere_samples(dim, 20, seed));
        // A prefix of a larger sample set is the smaller set.
        prop_assert_eq!(&a[..], &quadrature::sphere_samples(dim, 40, seed)[..20]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn faa_di_bruno_holds(seed in any::<u64>(), dim in 1usize..=3, m in 1u32..=5) {
        let cap = [12, 10, 8][dim - 1];
        let f = random(seed, dim, cap, c(0.0), 0.4);
        prop_assert!(identities::verify_faa_di_bruno(&f, m).unwrap() <= 1e-9);
    }

    #[test]
    fn exponential_identity_holds(seed in any::<u64>(), dim in 1usize..=3, n in 0u32..=2) {
        let phi = random(seed, dim, 3, c(0.3), 0.5).with_cap(8);
        let psi = random(seed ^ 1, dim, 3, c(1.0), 0.5).with_cap(8);
        prop_assert!(identities::verify_r_exp_identity(&phi, &psi, n).unwrap() <= 1e-9);
    }

    #[test]
    fn log_identity_holds(seed in any::<u64>(), n in 0u32..=2, index in 0usize..1000) {
        let p = corpus::random_stable_univariate(seed, index, 4);
        let phi = p.scale(p.constant_term().inv()).with_cap(12);
        prop_assert!(identities::verify_r_log_identity(&phi, n).unwrap() <= 1e-9);
    }

    #[test]
    fn log1m_identity_holds(seed in any::<u64>(), dim in 1usize..=3) {
        let phi = random(seed, dim, 8, c(0.0), 0.5);
        prop_assert!(identities::verify_log1m_expansion(&phi).unwrap() <= 1e-9);
    }

    #[test]
    fn normalized_stable_polynomials_are_bounded(seed in any::<u64>(), index in 0usize..1000) {
        let p = StablePolynomial::from_polynomial(corpus::random_stable_univariate(seed, index, 4)).unwrap();
        let q = transforms::normalize_stable(&p);
        let cfg = SampleConfig::new(64, 25, seed).unwrap();
        prop_assert!(transforms::sup_norm_estimate(&q, &cfg) <= 1.0 + 1e-12);
    }

    #[test]
    fn argument_bound(seed in any::<u64>(), index in 0usize..1000) {
        let p = StablePolynomial::from_polynomial(corpus::random_stable_univariate(seed, index, 4)).unwrap();
        let n = p.declared_degree() as f64;
        let cfg = SampleConfig::new(64, 25, seed).unwrap();
        prop_assert!(transforms::bounded_argument_estimate(&p, &cfg).unwrap() <= n * PI + 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dirichlet_log_integral_bound(seed in any::<u64>(), index in 0usize..1000) {
        let p = StablePolynomial::from_polynomial(corpus::random_stable_univariate(seed, index, 4)).unwrap();
        let n = p.declared_degree();
        let r = quadrature::dirichlet_integral_F(&p, n, 1e-6).unwrap();
        prop_assert!(!r.quad.exceeds(16.0 * (n * n) as f64));
        prop_assert!(r.min_denominator_re >= 1.0 - 1e-9);
    }

    #[test]
    fn lemma_h_bound(r in 1.0f64..6.0, theta in 0.0f64..(2.0 * PI)) {
        let q = quadrature::lemma_h_integral(Complex64::from_polar(r, theta), 1e-6).unwrap();
        prop_assert!(!q.exceeds(16.0));
    }
}
