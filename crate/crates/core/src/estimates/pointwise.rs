//! The pointwise control `|F(t)|^2 <= 2 l^{-1} int_I |F|^2 + 2 l int_I |F'|^2` for
//! matrix-valued paths on an interval `I` and `l <= |I|`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{param, Result};
use crate::linalg::{min_eig, random_gaussian, CMat, C64};
use crate::quadrature::gauss_legendre;
use crate::spectral::MatrixPath;

/// Smallest eigenvalue of `2 l^{-1} int_I F^*F + 2 l int_I F'^*F' - F(t)^*F(t)`,
/// minimized over `ts`.
pub fn pointwise_control_slack(path: &dyn MatrixPath, interval: (f64, f64), ell: f64, ts: &[f64], nodes: usize) -> Result<f64> {
    let (a, b) = interval;
    if !(b > a) || !(ell > 0.0 && ell <= b - a) {
        return Err(param(format!("need a < b and 0 < l <= |I| (I = [{a}, {b}], l = {ell})")));
    }
    let d = path.fiber_dim();
    let rule = gauss_legendre(nodes).mapped(a, b);
    let mut mass = CMat::zeros(d, d);
    let mut energy = CMat::zeros(d, d);
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let f = path.eval(s);
        let df = path.derivative(s, 1)?;
        mass += f.adjoint() * &f * C64::new(w, 0.0);
        energy += df.adjoint() * &df * C64::new(w, 0.0);
    }
    let bound = mass * C64::new(2.0 / ell, 0.0) + energy * C64::new(2.0 * ell, 0.0);
    let mut worst = f64::INFINITY;
    for &t in ts {
        if t < a || t > b {
            return Err(param(format!("t = {t} outside I")));
        }
        let f = path.eval(t);
        worst = worst.min(min_eig(&(&bound - f.adjoint() * &f)));
    }
    Ok(worst)
}

/// `F(t) = sum_j A_j cos(w_j t) + B_j sin(w_j t)` with an exact derivative.
#[derive(Clone, Debug)]
pub struct TrigPath {
    pub dim: usize,
    pub terms: Vec<(f64, CMat, CMat)>,
}

impl TrigPath {
    /// Gaussian coefficients, frequencies uniform in `[0, max_freq]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, terms: usize, max_freq: f64) -> Self {
        let terms = (0..terms)
            .map(|_| {
                let w: f64 = rng.random::<f64>() * max_freq;
                let decay: f64 = rng.sample::<f64, _>(StandardNormal).abs() + 0.5;
                (w, random_gaussian(rng, dim) / C64::new(decay, 0.0), random_gaussian(rng, dim) / C64::new(decay, 0.0))
            })
            .collect();
        Self { dim, terms }
    }
}

impl MatrixPath for TrigPath {
    fn fiber_dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (w, a, b) in &self.terms {
            out += a * C64::new((w * t).cos(), 0.0) + b * C64::new((w * t).sin(), 0.0);
        }
        out
    }

    fn derivative(&self, t: f64, k: usize) -> Result<CMat> {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (w, a, b) in &self.terms {
            // d^k/dt^k of cos and sin: rotate the phase by k quarter turns
            let phase = w * t + k as f64 * std::f64::consts::FRAC_PI_2;
            let s = w.powi(k as i32);
            out += a * C64::new(s * phase.cos(), 0.0) + b * C64::new(s * phase.sin(), 0.0);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_derivative_matches_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = TrigPath::random(&mut rng, 2, 4, 3.0);
        let exact = p.derivative(0.7, 1).unwrap();
        let approx = crate::spectral::richardson_derivative(&|t| p.eval(t), 0.7, 1, 1e-2).unwrap();
        assert!(crate::linalg::max_abs(&(exact - approx)) < 1e-7);
    }

    #[test]
    fn constant_path_slack() {
        let x = CMat::identity(2, 2);
        let p = crate::spectral::FnPath { dim: 2, f: move |_| x.clone() };
        // 2/l * |I| - 1 with l = |I| = 2
        let s = pointwise_control_slack(&p, (0.0, 2.0), 2.0, &[0.0, 1.0, 2.0], 16).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(pointwise_control_slack(&p, (0.0, 2.0), 3.0, &[1.0], 16).is_err());
    }
}
