use heisenberg_lab::estimates::{compute_a, compute_b, comparison_residual, CheckRegistry};
use heisenberg_lab::special_fn::{psi, ComplexOrder, SpectralPoint};
use proptest::prelude::*;

/// `(int_1^R |psi(sqrt(eta) r)|^2 dr, int_1^R |d/dr psi(sqrt(eta) r)|^2 dr)` by composite Simpson.
fn tail_oracle(b: f64, k: usize, eta: f64) -> (f64, f64) {
    let se = eta.sqrt();
    let turn = (2.0 * (4.0 * k as f64 + 2.0 * b + 2.0)).sqrt();
    let hi = (se.max(turn) + 24.0) / se;
    let steps = 40_000;
    let h = (hi - 1.0) / steps as f64;
    let order = ComplexOrder::real(b);
    let value = |r: f64| psi(k, order, se * r).unwrap().norm_sqr();
    let slope = |r: f64| {
        let e = 2e-4 * r;
        let f = |x: f64| psi(k, order, se * x).unwrap();
        ((8.0 * (f(r + e) - f(r - e)) - (f(r + 2.0 * e) - f(r - 2.0 * e))) / (12.0 * e)).norm_sqr()
    };
    let (mut a, mut s) = (0.0, 0.0);
    for i in 0..=steps {
        let r = 1.0 + i as f64 * h;
        let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        a += w * value(r);
        s += w * slope(r);
    }
    (a * h / 3.0, s * h / 3.0)
}

#[test]
fn tail_integrals_match_simpson() {
    let cases = [
        (0.25, 0, 0.5),
        (0.25, 4, 2.0),
        (0.5, 1, 1.0),
        (0.5, 12, 3.0),
        (1.0, 0, 10.0),
        (1.0, 7, 0.3),
        (1.0, 30, 1.5),
        (1.5, 3, 5.0),
        (2.0, 20, 0.8),
        (0.75, 50, 2.5),
    ];
    for (b, k, eta) in cases {
        let (a2, b2) = tail_oracle(b, k, eta);
        let a = compute_a(ComplexOrder::real(b), k, eta).unwrap();
        let bb = compute_b(ComplexOrder::real(b), k, eta).unwrap();
        assert!((a * a - a2).abs() <= 1e-8 * a2, "A^2 at b={b} k={k} eta={eta}: {} vs {a2}", a * a);
        assert!((bb * bb - b2).abs() <= 1e-8 * b2, "B^2 at b={b} k={k} eta={eta}: {} vs {b2}", bb * bb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn comparison_identity_holds(lambda in 0.2f64..4.0, k in 0usize..20, r in 0.05f64..8.0, n in 1usize..=3) {
        let res = comparison_residual(SpectralPoint::laguerre(lambda, k).unwrap(), r, n).unwrap();
        prop_assert!(res <= 1e-9, "residual {}", res);
        let res = comparison_residual(SpectralPoint::bessel(lambda).unwrap(), r, n).unwrap();
        prop_assert!(res <= 1e-9, "residual {}", res);
    }
}

#[test]
fn registry_lists_every_check() {
    let reg = CheckRegistry::standard();
    let names: Vec<&str> = reg.iter().map(|c| c.name()).collect();
    for name in [
        "laguerre-connection",
        "psi-subordination",
        "decay-fit",
        "asymptotics",
        "spectral-integral",
        "pointwise-spherical",
        "pointwise-control",
        "comparison",
    ] {
        assert!(names.contains(&name), "missing {name}");
    }
    assert_eq!(names.len(), 8);
}

#[test]
fn cheap_checks_pass_and_repeat_exactly() {
    let reg = CheckRegistry::standard();
    for name in ["comparison", "psi-subordination", "asymptotics"] {
        let a = reg.get(name).unwrap().run().unwrap();
        let b = reg.get(name).unwrap().run().unwrap();
        assert!(a.pass, "{name}: {:?}", a.notes);
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    }
}
