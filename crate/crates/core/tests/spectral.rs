use heisenberg_lab::heisenberg::GeometryConfig;
use heisenberg_lab::lab::{random_field, scenario_support, FieldSection, Scenario};
use heisenberg_lab::linalg::{max_abs, CMat, C64};
use heisenberg_lab::special_fn::{ComplexOrder, SpectralPoint};
use heisenberg_lab::spectral::{
    analytic_family, dyadic_projection, g_function, normalized_fractional, poisson, spherical_mean, uniform_average, FnPath,
    SpectralField,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(seed: u64, scenario: Scenario) -> SpectralField {
    let g = GeometryConfig::new(2, &[-2, -1, 1, 2], 8, 12.0, 24).unwrap();
    let section = FieldSection { scenario, epsilon: 0.5, big_n: 8 };
    random_field(&g, 2, &scenario_support(&g, &section), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn averages_contract(seed in any::<u64>(), r in 0.01f64..60.0) {
        let f = field(seed, Scenario::Mixed);
        let base = f.l2_norm();
        prop_assert!(spherical_mean(&f, r).unwrap().l2_norm() <= base * (1.0 + 1e-12));
        prop_assert!(uniform_average(&f, r).unwrap().l2_norm() <= base * (1.0 + 1e-9));
        prop_assert!(poisson(&f, r).unwrap().l2_norm() <= base * (1.0 + 1e-12));
    }

    #[test]
    fn poisson_is_a_semigroup(seed in any::<u64>(), r1 in 0.0f64..5.0, r2 in 0.0f64..5.0) {
        let f = field(seed, Scenario::Laguerre);
        let two = poisson(&poisson(&f, r1).unwrap(), r2).unwrap();
        let one = poisson(&f, r1 + r2).unwrap();
        prop_assert!(two.relative_error(&one).unwrap() <= 1e-13);
    }

    #[test]
    fn analytic_family_at_zero_is_the_spherical_mean(seed in any::<u64>(), r in 0.0f64..20.0) {
        let f = field(seed, Scenario::Laguerre);
        let a = analytic_family(&f, ComplexOrder::real(0.0), r).unwrap();
        let s = spherical_mean(&f, r).unwrap();
        prop_assert!(a.relative_error(&s).unwrap() <= 1e-12);
    }

    #[test]
    fn hermitian_fields_stay_hermitian(seed in any::<u64>(), r in 0.0f64..20.0) {
        let f = field(seed, Scenario::Mixed);
        prop_assert!(f.hermitian_defect() <= 1e-12);
        prop_assert!(spherical_mean(&f, r).unwrap().hermitian_defect() <= 1e-12);
    }
}

#[test]
fn dyadic_blocks_partition_the_laguerre_mass() {
    let f = field(4, Scenario::Laguerre);
    let mut sum = SpectralField::zero(f.geometry.clone(), f.fiber_dim);
    for j in -1..=12 {
        sum = sum.axpy(C64::new(1.0, 0.0), &dyadic_projection(&f, j).unwrap()).unwrap();
    }
    assert!(sum.relative_error(&f).unwrap() <= 1e-15);
    assert!(dyadic_projection(&f, -2).is_err());
}

#[test]
fn normalized_fractional_tends_to_identity() {
    let x = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.2, 0.3), C64::new(0.2, -0.3), C64::new(-0.5, 0.0)]);
    let path = FnPath { dim: 2, f: |s: f64| &x * C64::new((1.0 + s).recip() + s.sin(), 0.0) };
    for r in [0.5f64, 2.0] {
        let target = &x * C64::new((1.0 + r).recip() + r.sin(), 0.0);
        let errs: Vec<f64> = [0.5, 0.2, 0.05, 0.01]
            .iter()
            .map(|&a| max_abs(&(normalized_fractional(&path, ComplexOrder::real(a), r).unwrap() - &target)))
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs[3] < 0.05 * max_abs(&target).max(1.0));
    }
}

#[test]
fn trivial_mass_has_no_g_function() {
    let g = GeometryConfig::new(2, &[-1, 1], 4, 8.0, 16).unwrap();
    let f = SpectralField::zero(g, 2).with(SpectralPoint::Trivial, CMat::identity(2, 2)).unwrap();
    assert_eq!(g_function(&f, 1).unwrap().norm, 0.0);
    assert_eq!(spherical_mean(&f, 5.0).unwrap().relative_error(&f).unwrap(), 0.0);
}
