//! Random spectral fields for the experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::config::{FieldSection, Scenario};
use crate::error::{param, Result};
use crate::heisenberg::GeometryConfig;
use crate::linalg::{CMat, C64};
use crate::special_fn::SpectralPoint;
use crate::spectral::SpectralField;

/// Generator for trial `trial`: one ChaCha8 stream per trial under a shared seed,
/// so results do not depend on how trials are scheduled.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Laguerre points of `Sigma_{eps,N}` resolved by the geometry, one per
/// `lambda > 0` (the partners come from Hermitian symmetrization).
pub fn laguerre_support(geometry: &GeometryConfig, epsilon: f64, big_n: usize) -> Vec<SpectralPoint> {
    let kmax = big_n.min(geometry.k_max);
    let mut lambdas: Vec<i64> = geometry.lambda_set.iter().copied().filter(|&l| l > 0).collect();
    lambdas.sort_unstable();
    lambdas.dedup();
    let mut out = Vec::new();
    for l in lambdas {
        let a = l as f64;
        if a < epsilon || a > big_n as f64 {
            continue;
        }
        for k in 0..=kmax {
            out.push(SpectralPoint::Laguerre { lambda: a, k });
        }
    }
    out
}

/// Bessel grid nodes inside `Sigma'_eps = [eps, 1/eps]`.
pub fn bessel_support(geometry: &GeometryConfig, epsilon: f64) -> Vec<SpectralPoint> {
    geometry
        .bessel_grid
        .nodes
        .iter()
        .filter(|&&u| u >= epsilon && u <= 1.0 / epsilon)
        .map(|&u| SpectralPoint::Bessel { u })
        .collect()
}

pub fn scenario_support(geometry: &GeometryConfig, field: &FieldSection) -> Vec<SpectralPoint> {
    match field.scenario {
        Scenario::Laguerre => laguerre_support(geometry, field.epsilon, field.big_n),
        Scenario::Bessel => bessel_support(geometry, field.epsilon),
        Scenario::Mixed => {
            let mut s = laguerre_support(geometry, field.epsilon, field.big_n);
            s.extend(bessel_support(geometry, field.epsilon));
            s
        }
        Scenario::Trivial => vec![SpectralPoint::Trivial],
    }
}

fn gaussian_matrix(rng: &mut impl Rng, d: usize) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMat::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(h * re, h * im)
    })
}

/// Independent standard complex Gaussian coefficients on `support`,
/// Hermitian-symmetrized and scaled to `||f||_2 = 1`.
pub fn random_field(geometry: &GeometryConfig, fiber_dim: usize, support: &[SpectralPoint], rng: &mut impl Rng) -> Result<SpectralField> {
    if support.is_empty() {
        return Err(param("the scenario selects no spectral points for this geometry"));
    }
    let mut f = SpectralField::zero(geometry.clone(), fiber_dim);
    for z in support {
        f.insert(*z, gaussian_matrix(rng, fiber_dim))?;
    }
    let f = f.hermitian_symmetrized()?;
    let norm = f.l2_norm();
    if !(norm > 0.0) {
        return Err(param("random field vanished"));
    }
    Ok(f.scale(C64::new(1.0 / norm, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometry() -> GeometryConfig {
        GeometryConfig::new(2, &[-2, -1, 1, 2], 8, 12.0, 24).unwrap()
    }

    #[test]
    fn fields_are_normalized_and_hermitian() {
        let g = geometry();
        let field = FieldSection { scenario: Scenario::Mixed, epsilon: 0.5, big_n: 8 };
        let support = scenario_support(&g, &field);
        let f = random_field(&g, 2, &support, &mut trial_rng(1, 0)).unwrap();
        assert!((f.l2_norm() - 1.0).abs() < 1e-12);
        assert!(f.hermitian_defect() < 1e-14);
        assert!(f.has_bessel_mass());
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let g = geometry();
        let support = laguerre_support(&g, 0.5, 4);
        let a = random_field(&g, 2, &support, &mut trial_rng(9, 3)).unwrap();
        let b = random_field(&g, 2, &support, &mut trial_rng(9, 3)).unwrap();
        let c = random_field(&g, 2, &support, &mut trial_rng(9, 4)).unwrap();
        assert_eq!(a.sub(&b).unwrap().l2_norm(), 0.0);
        assert!(a.sub(&c).unwrap().l2_norm() > 0.1);
    }

    #[test]
    fn support_respects_epsilon_and_n() {
        let g = geometry();
        let s = laguerre_support(&g, 1.5, 3);
        assert!(s.iter().all(|z| matches!(z, SpectralPoint::Laguerre { lambda, k } if *lambda == 2.0 && *k <= 3)));
        assert!(bessel_support(&g, 0.5).iter().all(|z| matches!(z, SpectralPoint::Bessel { u } if *u >= 0.5 && *u <= 2.0)));
    }
}
