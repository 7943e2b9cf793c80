//! Expansion of radial profiles in the Laguerre functions
//! `phi^lambda_k(z) = L^{n-1}_k(|lambda| |z|^2 / 2) e^{-|lambda| |z|^2 / 4}`,
//! which are orthogonal in `L^2(C^n)` with
//! `||phi^lambda_k||^2 = (2 pi / |lambda|)^n binom(k + n - 1, k)`.

use super::field::RadialProfile;
use super::sphere::unit_sphere_area;
use crate::error::{param, Error, Result};
use crate::linalg::{frobenius_sq, CMat, C64};
use crate::quadrature::gauss_laguerre;
use crate::special_fn::laguerre::psi_unchecked;

/// Relative tail energy above which an analysis is rejected.
pub const TAIL_LIMIT: f64 = 1e-8;

pub(crate) fn binomial(k: usize, n: usize) -> f64 {
    // binom(k + n - 1, k)
    (1..n).fold(1.0, |acc, j| acc * (k + j) as f64 / j as f64)
}

/// `phi^lambda_k(rho)`.
pub fn laguerre_mode(lambda: f64, k: usize, n: usize, rho: f64) -> f64 {
    binomial(k, n) * psi_unchecked(k, C64::new((n - 1) as f64, 0.0), lambda.abs().sqrt() * rho).re
}

/// `||phi^lambda_k||^2_{L^2(C^n)}`.
pub fn laguerre_mode_norm_sq(lambda: f64, k: usize, n: usize) -> f64 {
    (std::f64::consts::TAU / lambda.abs()).powi(n as i32) * binomial(k, n)
}

/// Gauss-Laguerre analysis for a fixed `(lambda, n, K)`.
#[derive(Clone, Debug)]
pub struct LaguerreBasis {
    pub lambda: f64,
    pub n: usize,
    pub k_max: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    modes: Vec<Vec<f64>>,
}

impl LaguerreBasis {
    pub fn new(lambda: f64, n: usize, k_max: usize) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() || n == 0 {
            return Err(param(format!("Laguerre basis needs lambda != 0 and n >= 1 (got {lambda}, {n})")));
        }
        let rule = gauss_laguerre(2 * (k_max + 1), (n - 1) as f64)?;
        let l = lambda.abs();
        // rho^{2n-1} d rho = 2^{n-1} |lambda|^{-n} x^{n-1} dx with x = |lambda| rho^2 / 2
        let jac = unit_sphere_area(n) * 2f64.powi(n as i32 - 1) * l.powi(-(n as i32));
        let nodes: Vec<f64> = rule.nodes.iter().map(|&x| (2.0 * x / l).sqrt()).collect();
        let weights = rule.scaled_weights.iter().map(|w| w * jac).collect();
        let modes = (0..=k_max)
            .map(|k| nodes.iter().map(|&rho| laguerre_mode(lambda, k, n, rho)).collect())
            .collect();
        Ok(Self { lambda, n, k_max, nodes, weights, modes })
    }

    /// Coefficients `c_k = <f, phi_k> / ||phi_k||^2`, rejecting profiles whose
    /// energy outside the first `K + 1` modes exceeds [`TAIL_LIMIT`].
    pub fn analysis(&self, profile: &dyn RadialProfile) -> Result<LaguerreExpansion> {
        let d = profile.fiber_dim();
        let samples: Vec<CMat> = self.nodes.iter().map(|&rho| profile.eval(rho)).collect();
        let energy: f64 = samples.iter().zip(&self.weights).map(|(m, w)| w * frobenius_sq(m)).sum();
        let mut captured = 0.0;
        let coefficients: Vec<CMat> = self
            .modes
            .iter()
            .enumerate()
            .map(|(k, mode)| {
                let mut acc = CMat::zeros(d, d);
                for ((m, &w), &phi) in samples.iter().zip(&self.weights).zip(mode) {
                    acc += m * C64::new(w * phi, 0.0);
                }
                let norm = laguerre_mode_norm_sq(self.lambda, k, self.n);
                let c = acc / C64::new(norm, 0.0);
                captured += norm * frobenius_sq(&c);
                c
            })
            .collect();
        let tail = if energy > 0.0 { ((energy - captured) / energy).max(0.0) } else { 0.0 };
        if tail > TAIL_LIMIT {
            return Err(Error::TailEnergy { tail, limit: TAIL_LIMIT });
        }
        Ok(LaguerreExpansion { lambda: self.lambda, n: self.n, coefficients, tail_energy: tail })
    }
}

/// A finite Laguerre series `sum_k c_k phi^lambda_k`.
#[derive(Clone, Debug)]
pub struct LaguerreExpansion {
    pub lambda: f64,
    pub n: usize,
    pub coefficients: Vec<CMat>,
    pub tail_energy: f64,
}

impl LaguerreExpansion {
    /// `sum_k ||phi_k||^2 tr(c_k^* c_k)`.
    pub fn energy(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| laguerre_mode_norm_sq(self.lambda, k, self.n) * frobenius_sq(c))
            .sum()
    }
}

impl RadialProfile for LaguerreExpansion {
    fn fiber_dim(&self) -> usize {
        self.coefficients.first().map_or(0, |c| c.nrows())
    }

    fn eval(&self, rho: f64) -> CMat {
        let d = self.fiber_dim();
        let mut out = CMat::zeros(d, d);
        for (k, c) in self.coefficients.iter().enumerate() {
            let phi = laguerre_mode(self.lambda, k, self.n, rho);
            if phi != 0.0 {
                out += c * C64::new(phi, 0.0);
            }
        }
        out
    }
}

pub fn laguerre_analysis(profile: &dyn RadialProfile, lambda: f64, n: usize, k_max: usize) -> Result<Vec<CMat>> {
    Ok(LaguerreBasis::new(lambda, n, k_max)?.analysis(profile)?.coefficients)
}

pub fn laguerre_synthesis(coefficients: &[CMat], lambda: f64, n: usize) -> Result<LaguerreExpansion> {
    if lambda == 0.0 || !lambda.is_finite() || n == 0 {
        return Err(param(format!("Laguerre synthesis needs lambda != 0 and n >= 1 (got {lambda}, {n})")));
    }
    Ok(LaguerreExpansion { lambda, n, coefficients: coefficients.to_vec(), tail_energy: 0.0 })
}
