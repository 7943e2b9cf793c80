mod common;

use heisenberg_lab::linalg::{abs, random_gaussian, random_hermitian, CMat};
use heisenberg_lab::nc_lp::{
    center_average, conjugate_exponent, lp_norm, maximal_norm, trace_product, AlgebraElement, MaximalNormSolver, SolverOptions,
    TracialAlgebra,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXPONENTS: [f64; 5] = [1.0, 1.5, 2.0, 4.0, f64::INFINITY];

fn element(rng: &mut ChaCha8Rng, algebra: &TracialAlgebra, d: usize, hermitian: bool) -> AlgebraElement {
    let fibers: Vec<CMat> =
        (0..algebra.len()).map(|_| if hermitian { random_hermitian(rng, d) } else { random_gaussian(rng, d) }).collect();
    if hermitian {
        AlgebraElement::hermitian(algebra.clone(), fibers).unwrap()
    } else {
        AlgebraElement::new(algebra.clone(), fibers).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn holder_inequality(seed in any::<u64>(), which in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algebra = TracialAlgebra::new(3, vec![0.5, 1.0, 2.0]).unwrap();
        let x = element(&mut rng, &algebra, 3, false);
        let y = element(&mut rng, &algebra, 3, false);
        let p = EXPONENTS[which];
        let q = conjugate_exponent(p);
        let lhs = trace_product(&x, &y).unwrap().norm();
        let rhs = lp_norm(&x, p).unwrap() * lp_norm(&y, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn norms_are_monotone_in_p_on_probability_traces(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algebra = TracialAlgebra::new(2, vec![0.25, 0.25]).unwrap();
        let x = element(&mut rng, &algebra, 2, false);
        let values: Vec<f64> = EXPONENTS.iter().map(|&p| lp_norm(&x, p).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solver_certificate_is_feasible_and_sandwiched(seed in any::<u64>(), count in 1usize..=4, which in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algebra = TracialAlgebra::new(2, vec![1.0, 0.5]).unwrap();
        let family: Vec<AlgebraElement> = (0..count).map(|_| element(&mut rng, &algebra, 2, true)).collect();
        let p = EXPONENTS[which];
        let res = maximal_norm(&family, p).unwrap();
        prop_assert!(res.min_slack(&family) >= -1e-8 * res.certificate.sup_norm());
        let lower = family.iter().map(|x| lp_norm(x, p).unwrap()).fold(0.0, f64::max);
        let sum = family.iter().skip(1).fold(family[0].map(abs), |acc, x| {
            let fibers = acc.fibers.iter().zip(&x.fibers).map(|(a, b)| a + abs(b)).collect();
            AlgebraElement::hermitian(algebra.clone(), fibers).unwrap()
        });
        let upper = lp_norm(&sum, p).unwrap();
        prop_assert!(res.value >= lower * (1.0 - 1e-12), "{} < {}", res.value, lower);
        prop_assert!(res.value <= upper * (1.0 + 1e-12), "{} > {}", res.value, upper);
    }

    #[test]
    fn extending_the_family_never_lowers_the_norm(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algebra = TracialAlgebra::matrices(2);
        let family: Vec<AlgebraElement> = (0..3).map(|_| element(&mut rng, &algebra, 2, true)).collect();
        let p = [1.0, 2.0, f64::INFINITY][which];
        let small = maximal_norm(&family[..2], p).unwrap().value;
        let big = maximal_norm(&family, p).unwrap().value;
        prop_assert!(big >= small * (1.0 - 1e-6));
    }
}

#[test]
fn agrees_with_brute_force_on_two_by_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..6 {
        let xs: Vec<CMat> = (0..2).map(|_| random_hermitian(&mut rng, 2)).collect();
        let family: Vec<AlgebraElement> = xs.iter().map(|x| AlgebraElement::single_hermitian(x.clone()).unwrap()).collect();
        for p in [1.0, 2.0, f64::INFINITY] {
            let v = maximal_norm(&family, p).unwrap().value;
            let b = common::brute_force_maximal_2x2(&xs, p, 30);
            assert!((v - b).abs() <= 1e-3 * b, "p = {p}: {v} vs {b}");
        }
    }
}

#[test]
fn single_element_norm_is_the_lp_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let algebra = TracialAlgebra::new(3, vec![1.0, 2.0]).unwrap();
    let x = element(&mut rng, &algebra, 3, true);
    for p in [1.0, 3.0, f64::INFINITY] {
        let v = maximal_norm(std::slice::from_ref(&x), p).unwrap().value;
        let expect = lp_norm(&x, p).unwrap();
        assert!((v - expect).abs() <= 1e-6 * expect, "p = {p}");
    }
}

#[test]
fn oversized_problems_are_refused() {
    let algebra = TracialAlgebra::new(4, vec![1.0; 80]).unwrap();
    let x = AlgebraElement::hermitian(algebra, vec![CMat::identity(4, 4); 80]).unwrap();
    let solver = MaximalNormSolver::new(SolverOptions::default());
    assert!(solver.solve(&[x], 2.0).is_err());
}

#[test]
fn center_average_fixes_center_independent_fields() {
    use heisenberg_lab::heisenberg::{GeometryConfig, PhysicalField};
    let g = GeometryConfig::new(1, &[-2, -1, 1, 2], 3, 6.0, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_hermitian(&mut rng, 2);
    let f = PhysicalField::from_fn(g, 2, |rho, _| &x * heisenberg_lab::linalg::C64::new((-rho).exp(), 0.0)).unwrap();
    let avg = center_average(&f);
    for (a, b) in avg.values().iter().zip(f.values()) {
        assert!(heisenberg_lab::linalg::max_abs(&(a - b)) < 1e-12);
    }
}
