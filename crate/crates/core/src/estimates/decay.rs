//! The tail integrals `A^2(b, k, eta) = int_1^inf |psi^b_k(sqrt(eta) r)|^2 dr`,
//! `B^2(b, k, eta) = int_1^inf |d/dr psi^b_k(sqrt(eta) r)|^2 dr` and their decay in `eta k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::linalg::C64;
use crate::quadrature::adaptive_c_panels;
use crate::special_fn::{psi, psi_derivative, ComplexOrder};

/// Relative tail left beyond the integration cutoff.
pub const TAIL_LIMIT: f64 = 1e-10;

#[derive(Clone, Copy)]
enum Kind {
    Value,
    Slope,
}

/// `int_{sqrt eta}^inf |psi^b_k(s)|^2 ds` (or of `psi'`), with the cutoff pushed
/// out until the integrand there is below `TAIL_LIMIT` of the total.
fn tail_integral(b: ComplexOrder, k: usize, eta: f64, kind: Kind) -> Result<(f64, f64)> {
    if !(b.re > -1.0) {
        return Err(param(format!("A/B integrals need re(b) > -1, got {}", b.re)));
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(param(format!("eta must be positive, got {eta}")));
    }
    let f = |s: f64| -> f64 {
        let v = match kind {
            Kind::Value => psi(k, b, s),
            Kind::Slope => psi_derivative(k, b, s),
        };
        v.map(|z| z.norm_sqr()).unwrap_or(f64::NAN)
    };
    let lo = eta.sqrt();
    // turning point of L^b_k(s^2/2) e^{-s^2/4}
    let turn = (2.0 * (4.0 * k as f64 + 2.0 * b.re + 2.0)).sqrt();
    let mut hi = lo.max(turn) + 16.0;
    loop {
        let panels = 4 * k + 32;
        let breaks: Vec<f64> = (0..=panels).map(|i| lo + (hi - lo) * i as f64 / panels as f64).collect();
        let (total, _) = adaptive_c_panels(|s| C64::new(f(s), 0.0), &breaks, 0.0, 1e-12)?;
        let total = total.re;
        if !total.is_finite() {
            return Err(Error::Quadrature(format!("non-finite A/B integrand (k = {k}, eta = {eta})")));
        }
        // Gaussian tail: int_hi^inf g ~ g(hi) / (hi / 2)
        let tail = f(hi) / (0.5 * hi);
        let rel = if total > 0.0 { tail / total } else { 0.0 };
        if rel <= TAIL_LIMIT || total == 0.0 {
            return Ok((total, rel));
        }
        if hi > lo + 400.0 {
            return Err(Error::Quadrature(format!("A/B tail {rel:.2e} did not fall below {TAIL_LIMIT:.0e}")));
        }
        hi += 8.0;
    }
}

/// `A(b, k, eta)`.
pub fn compute_a(b: ComplexOrder, k: usize, eta: f64) -> Result<f64> {
    let (v, _) = tail_integral(b, k, eta, Kind::Value)?;
    Ok((v / eta.sqrt()).sqrt())
}

/// `B(b, k, eta)`.
pub fn compute_b(b: ComplexOrder, k: usize, eta: f64) -> Result<f64> {
    let (v, _) = tail_integral(b, k, eta, Kind::Slope)?;
    Ok((v * eta.sqrt()).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    /// `(eta k, value)`, increasing in `eta k`; equal products keep the largest value.
    pub samples: Vec<(f64, f64)>,
    pub fitted_constant: f64,
    pub fitted_exponent: f64,
    /// `sup value * (eta k)^{normalizing exponent}`.
    pub max_normalized_value: f64,
    pub normalizing_exponent: f64,
}

impl DecayFit {
    fn new(mut raw: Vec<(f64, f64)>, normalizing_exponent: f64) -> Result<Self> {
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut samples: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (x, v) in raw {
            match samples.last_mut() {
                Some(last) if last.0 == x => last.1 = last.1.max(v),
                _ => samples.push((x, v)),
            }
        }
        if samples.len() < 2 || samples.iter().any(|s| !(s.1 > 0.0)) {
            return Err(param("decay fit needs at least two positive samples"));
        }
        let m = samples.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(x, v) in &samples {
            let (lx, ly) = (x.ln(), v.ln());
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        let intercept = (sy - slope * sx) / m;
        let max_normalized_value = samples
            .iter()
            .map(|&(x, v)| v * x.powf(normalizing_exponent))
            .fold(0.0, f64::max);
        Ok(Self { samples, fitted_constant: intercept.exp(), fitted_exponent: slope, max_normalized_value, normalizing_exponent })
    }
}

/// Lowest and highest `eta k` admitted into a fit, and the minimum sample count.
pub const FIT_RANGE: (f64, f64) = (10.0, 1e4);
pub const MIN_FIT_SAMPLES: usize = 40;
/// Allowed deviation of the fitted `A^2` exponent from `-(delta' + 1/2)`.
pub const EXPONENT_TOLERANCE: f64 = 0.15;

#[derive(Clone, Debug, Serialize)]
pub struct DecayFitReport {
    pub delta_prime: f64,
    pub a_squared: DecayFit,
    pub b_squared: DecayFit,
    pub expected_exponent: f64,
    pub pass: bool,
}

/// Fits `A^2` and `B^2` against `eta k` over the cells of `k_grid x eta_grid`
/// with `eta k` in `FIT_RANGE`.
pub fn fit_decay(delta_prime: f64, k_grid: &[usize], eta_grid: &[f64]) -> Result<DecayFitReport> {
    if !(delta_prime > 0.0 && delta_prime <= 1.5) {
        return Err(param(format!("delta' must lie in (0, 1.5], got {delta_prime}")));
    }
    let cells: Vec<(usize, f64)> = k_grid
        .iter()
        .flat_map(|&k| eta_grid.iter().map(move |&e| (k, e)))
        .filter(|&(k, e)| {
            let x = e * k as f64;
            x >= FIT_RANGE.0 && x <= FIT_RANGE.1
        })
        .collect();
    if cells.len() < MIN_FIT_SAMPLES {
        return Err(param(format!(
            "decay fit needs at least {MIN_FIT_SAMPLES} cells with eta k in [{}, {}], got {}",
            FIT_RANGE.0,
            FIT_RANGE.1,
            cells.len()
        )));
    }
    let b = ComplexOrder::real(delta_prime);
    let values = cells
        .par_iter()
        .map(|&(k, e)| Ok((e * k as f64, compute_a(b, k, e)?.powi(2), compute_b(b, k, e)?.powi(2))))
        .collect::<Result<Vec<_>>>()?;
    let a_squared = DecayFit::new(values.iter().map(|v| (v.0, v.1)).collect(), delta_prime + 0.5)?;
    let b_squared = DecayFit::new(values.iter().map(|v| (v.0, v.2)).collect(), delta_prime - 0.5)?;
    let expected_exponent = -(delta_prime + 0.5);
    let pass = a_squared.max_normalized_value.is_finite()
        && b_squared.max_normalized_value.is_finite()
        && (a_squared.fitted_exponent - expected_exponent).abs() <= EXPONENT_TOLERANCE;
    Ok(DecayFitReport { delta_prime, a_squared, b_squared, expected_exponent, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_is_rejected() {
        assert!(fit_decay(0.5, &[10], &[2.0]).is_err());
        assert!(fit_decay(0.0, &[10, 11], &[2.0]).is_err());
    }

    #[test]
    fn ground_state_is_independent_of_imaginary_order() {
        let a = compute_a(ComplexOrder::real(0.5), 0, 2.0).unwrap();
        let b = compute_a(ComplexOrder::new(0.5, 3.0), 0, 2.0).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn decreasing_in_eta() {
        let b = ComplexOrder::real(0.5);
        assert!(compute_a(b, 10, 4.0).unwrap() > compute_a(b, 10, 8.0).unwrap());
    }
}
