//! Fourier-Bessel representation of the center-independent (Bessel) part:
//! on the disc `|z| <= R` a radial profile is expanded in `eta_{u_k}` with
//! `u_k = j_{n-1,k} / R`.

use super::field::RadialProfile;
use super::geometry::BesselGrid;
use super::sphere::unit_sphere_area;
use crate::error::{param, Error, Result};
use crate::linalg::{frobenius_sq, max_abs, CMat, C64};
use crate::quadrature::gauss_legendre;
use crate::special_fn::bessel::bessel_eta;
use super::convolution::DECAY_THRESHOLD;
use super::laguerre_transform::TAIL_LIMIT;

fn eta(u: f64, rho: f64, n: usize) -> f64 {
    bessel_eta(u, rho, n).expect("u > 0 on a Bessel grid")
}

/// A finite series `sum_k C_k eta_{u_k}`.
#[derive(Clone, Debug)]
pub struct HankelExpansion {
    pub n: usize,
    pub nodes: Vec<f64>,
    pub coefficients: Vec<CMat>,
    pub tail_energy: f64,
}

impl RadialProfile for HankelExpansion {
    fn fiber_dim(&self) -> usize {
        self.coefficients.first().map_or(0, |c| c.nrows())
    }

    fn eval(&self, rho: f64) -> CMat {
        let d = self.fiber_dim();
        let mut out = CMat::zeros(d, d);
        for (&u, c) in self.nodes.iter().zip(&self.coefficients) {
            out += c * C64::new(eta(u, rho, self.n), 0.0);
        }
        out
    }
}

/// Coefficients `C_k = <f, eta_{u_k}> / ||eta_{u_k}||^2` on the disc of the grid.
pub fn hankel_analysis(profile: &dyn RadialProfile, n: usize, grid: &BesselGrid) -> Result<HankelExpansion> {
    if n == 0 || grid.is_empty() {
        return Err(param("Hankel analysis needs n >= 1 and a nonempty grid"));
    }
    let rule = gauss_legendre(2 * grid.len() + 64).mapped(0.0, grid.radius);
    let area = unit_sphere_area(n);
    let samples: Vec<CMat> = rule.nodes.iter().map(|&r| profile.eval(r)).collect();
    let scale = samples.iter().map(max_abs).fold(0.0, f64::max);
    let edge = max_abs(&profile.eval(grid.radius));
    if edge > DECAY_THRESHOLD * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::InsufficientDecay { value: edge, radius: grid.radius });
    }
    let measure: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&r, &w)| w * area * r.powi(2 * n as i32 - 1))
        .collect();
    let energy: f64 = samples.iter().zip(&measure).map(|(m, w)| w * frobenius_sq(m)).sum();
    let d = profile.fiber_dim();
    let mut captured = 0.0;
    let coefficients = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .map(|(&u, &norm)| {
            let mut acc = CMat::zeros(d, d);
            for ((m, &w), &r) in samples.iter().zip(&measure).zip(&rule.nodes) {
                acc += m * C64::new(w * eta(u, r, n), 0.0);
            }
            let c = acc / C64::new(norm, 0.0);
            captured += norm * frobenius_sq(&c);
            c
        })
        .collect();
    let tail = if energy > 0.0 { ((energy - captured) / energy).max(0.0) } else { 0.0 };
    if tail > TAIL_LIMIT {
        return Err(Error::TailEnergy { tail, limit: TAIL_LIMIT });
    }
    Ok(HankelExpansion { n, nodes: grid.nodes.clone(), coefficients, tail_energy: tail })
}

pub fn hankel_synthesis(coefficients: &[CMat], n: usize, grid: &BesselGrid) -> Result<HankelExpansion> {
    if coefficients.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), got: coefficients.len() });
    }
    Ok(HankelExpansion { n, nodes: grid.nodes.clone(), coefficients: coefficients.to_vec(), tail_energy: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_gaussian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_profile() {
        let grid = BesselGrid::fourier_bessel(2, 20.0, 16).unwrap();
        let zero = (2usize, |_: f64| CMat::zeros(2, 2));
        let e = hankel_analysis(&zero, 2, &grid).unwrap();
        assert!(e.coefficients.iter().all(|c| max_abs(c) == 0.0));
    }

    #[test]
    fn band_limited_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2] {
            let grid = BesselGrid::fourier_bessel(n, 30.0, 24).unwrap();
            let coeffs: Vec<CMat> = (0..24).map(|_| random_gaussian(&mut rng, 2)).collect();
            let syn = hankel_synthesis(&coeffs, n, &grid).unwrap();
            let back = hankel_analysis(&syn, n, &grid).unwrap();
            let num: f64 = back.coefficients.iter().zip(&coeffs).map(|(a, b)| frobenius_sq(&(a - b))).sum();
            let den: f64 = coeffs.iter().map(frobenius_sq).sum();
            assert!((num / den).sqrt() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn undecayed_profile_is_rejected() {
        let grid = BesselGrid::fourier_bessel(2, 20.0, 16).unwrap();
        let one = (1usize, |_: f64| CMat::identity(1, 1));
        assert!(matches!(hankel_analysis(&one, 2, &grid), Err(Error::InsufficientDecay { .. })));
    }

    #[test]
    fn windowed_eta_concentrates_near_its_frequency() {
        let grid = BesselGrid::fourier_bessel(2, 60.0, 64).unwrap();
        let u0 = 1.3;
        let prof = (1usize, move |r: f64| CMat::from_element(1, 1, C64::new(eta(u0, r, 2) * (-(r / 10.0).powi(2)).exp(), 0.0)));
        let e = hankel_analysis(&prof, 2, &grid).unwrap();
        let mass: Vec<f64> = e.coefficients.iter().zip(&grid.weights).map(|(c, w)| w * frobenius_sq(c)).collect();
        let peak = (0..mass.len()).max_by(|&a, &b| mass[a].total_cmp(&mass[b])).unwrap();
        let nearest = (0..grid.len())
            .min_by(|&a, &b| (grid.nodes[a] - u0).abs().total_cmp(&(grid.nodes[b] - u0).abs()))
            .unwrap();
        assert!(peak.abs_diff(nearest) <= 1);
        let total: f64 = mass.iter().sum();
        let near: f64 = mass[peak.saturating_sub(8)..(peak + 9).min(mass.len())].iter().sum();
        assert!(near / total > 0.99);
    }
}
