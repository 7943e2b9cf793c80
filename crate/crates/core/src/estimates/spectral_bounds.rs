//! Uniform bounds over samples of the spectrum.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Result};
use crate::special_fn::{bessel_eta, ln_abs_psi, ComplexOrder, SpectralPoint};
use crate::spectral::scalar_g_integral;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralIntegralReport {
    pub m: usize,
    pub n: usize,
    pub values: Vec<(SpectralPoint, f64)>,
    pub sup: f64,
    pub argmax: Option<SpectralPoint>,
}

/// `int_0^inf |d^m/dr^m phi_zeta(r)|^2 r^{2m-1} dr` for every sampled point, and its sup.
pub fn check_spectral_integral(m: usize, zeta_sample: &[SpectralPoint], n: usize) -> Result<SpectralIntegralReport> {
    let values = zeta_sample
        .par_iter()
        .map(|z| Ok((*z, scalar_g_integral(*z, m, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut sup = 0.0;
    let mut argmax = None;
    for (z, v) in &values {
        if *v > sup || argmax.is_none() {
            sup = *v;
            argmax = Some(*z);
        }
    }
    Ok(SpectralIntegralReport { m, n, values, sup, argmax })
}

/// A deterministic sample of `count` points: alternating Laguerre points with
/// `|lambda|` in `[0.1, 64]` and `k <= 128`, and Bessel points with `u` in `[0.1, 64]`.
/// The first `count` points of a larger sample are the smaller sample.
pub fn spectrum_sample(count: usize) -> Vec<SpectralPoint> {
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    (0..count)
        .map(|i| {
            let s = ((i / 2) as f64 * golden + 0.5).fract();
            let x = 0.1 * 640f64.powf(s);
            if i % 2 == 0 {
                let k = ((i / 2) * 37 + (i / 2) / 129) % 129;
                let sign = if (i / 2) % 3 == 0 { -1.0 } else { 1.0 };
                SpectralPoint::Laguerre { lambda: sign * x, k }
            } else {
                SpectralPoint::Bessel { u: x }
            }
        })
        .collect()
}

/// Relative growth of the sup allowed when the sample is doubled.
pub const DOUBLING_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct PointwiseSphericalReport {
    pub epsilon: f64,
    pub big_n: usize,
    pub n: usize,
    /// `(r, ln sup_{Sigma_{eps,N}} |phi|, sup_{Sigma'_eps} |phi|)`.
    pub rows: Vec<(f64, f64, f64)>,
    pub laguerre_constant: f64,
    pub laguerre_gamma: f64,
    /// `sup_r eps^3 r^{n-1/2} sup_{Sigma'_eps} |phi(r)|`.
    pub bessel_constant: f64,
    pub pass: bool,
}

/// Fits `sup_{Sigma_{eps,N}} |phi(r)| <= C e^{-gamma eps r^2}` and
/// `sup_{Sigma'_eps} |phi(r)| <= (C / eps^3) r^{-n+1/2}` on `r_grid`.
pub fn check_pointwise_spherical(epsilon: f64, big_n: usize, r_grid: &[f64], n: usize) -> Result<PointwiseSphericalReport> {
    if !(epsilon > 0.0 && epsilon <= 1.0) || big_n == 0 {
        return Err(param("pointwise spherical bounds need 0 < eps <= 1 and N >= 1"));
    }
    if r_grid.len() < 2 || r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(param("pointwise spherical bounds need at least two positive radii"));
    }
    let top = big_n as f64;
    let lambdas: Vec<f64> = if top > epsilon {
        (0..64).map(|i| epsilon * (top / epsilon).powf(i as f64 / 63.0)).collect()
    } else {
        vec![epsilon]
    };
    let us: Vec<f64> = (0..256).map(|i| epsilon * epsilon.powf(-2.0 * i as f64 / 255.0)).collect();
    let order = ComplexOrder::real((n - 1) as f64);
    let rows = r_grid
        .par_iter()
        .map(|&r| {
            let mut ln_sup = f64::NEG_INFINITY;
            for &l in &lambdas {
                for k in 0..=big_n {
                    ln_sup = ln_sup.max(ln_abs_psi(k, order, l.sqrt() * r)?);
                }
            }
            let mut b_sup = 0.0f64;
            for &u in &us {
                b_sup = b_sup.max(bessel_eta(u, r, n)?.abs());
            }
            Ok((r, ln_sup, b_sup))
        })
        .collect::<Result<Vec<_>>>()?;
    // least squares of ln sup against eps r^2
    let pts: Vec<(f64, f64)> = rows.iter().filter(|x| x.1.is_finite()).map(|x| (epsilon * x.0 * x.0, x.1)).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 * p.0, a.1 + p.0 * p.1));
    let gamma = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    let laguerre_constant = pts.iter().map(|&(x, y)| (y + gamma * x).exp()).fold(0.0, f64::max);
    let half = n as f64 - 0.5;
    let bessel_constant = rows.iter().map(|x| epsilon.powi(3) * x.0.powf(half) * x.2).fold(0.0, f64::max);
    let pass = pts.len() >= 2 && gamma > 0.0 && laguerre_constant.is_finite() && bessel_constant.is_finite();
    Ok(PointwiseSphericalReport {
        epsilon,
        big_n,
        n,
        rows,
        laguerre_constant,
        laguerre_gamma: gamma,
        bessel_constant,
        pass,
    })
}
