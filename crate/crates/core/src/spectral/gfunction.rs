//! Littlewood-Paley square functions
//! `g_m(x)^2 = int_0^inf r^{2m-1} |d^m/dr^m alpha(sigma_r) x|^2 dr`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use super::field::SpectralField;
use crate::error::{param, Result};
use crate::heisenberg::geometry::eta_constant;
use crate::linalg::{CMat, C64};
use crate::quadrature::{adaptive_c_panels, gauss_laguerre};
use crate::special_fn::{bessel_j, psi_derivative, spherical_fn_derivative, ComplexOrder, SpectralPoint, MAX_DERIVATIVE};

/// Upper limit of the oscillatory Bessel integrals before the asymptotic tail takes over.
const BESSEL_CUTOFF: f64 = 1000.0 * PI;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Laguerre { k: usize, n: usize, m: usize },
    Bessel { n: usize, m: usize },
}

static CACHE: Mutex<Option<HashMap<Key, f64>>> = Mutex::new(None);

fn check_order(m: usize, n: usize) -> Result<()> {
    if m == 0 || m + 1 > n || m > MAX_DERIVATIVE {
        return Err(param(format!("g-function order m = {m} must lie in [1, n-1] = [1, {}]", n.saturating_sub(1))));
    }
    Ok(())
}

/// `int_0^inf r^{2m-1} |d^m/dr^m phi_zeta(r)|^2 dr`, which does not depend on
/// `|lambda|` or `u` (both are pure dilations of `r`).
pub fn scalar_g_integral(zeta: SpectralPoint, m: usize, n: usize) -> Result<f64> {
    check_order(m, n)?;
    let key = match zeta {
        SpectralPoint::Trivial => return Ok(0.0),
        SpectralPoint::Laguerre { k, .. } => Key::Laguerre { k, n, m },
        SpectralPoint::Bessel { .. } => Key::Bessel { n, m },
    };
    if let Some(v) = CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return Ok(*v);
    }
    let v = match key {
        Key::Laguerre { k, n, m } => laguerre_integral(k, n, m)?,
        Key::Bessel { n, m } => bessel_integral(n, m)?,
    };
    CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(key, v);
    Ok(v)
}

fn laguerre_integral(k: usize, n: usize, m: usize) -> Result<f64> {
    let a = ComplexOrder::real((n - 1) as f64);
    if m == 1 {
        // x = s^2 / 2 turns s |psi'(s)|^2 ds into 2 x |psi'(s) / s|^2 dx,
        // a polynomial of degree 2k against x e^{-x}.
        let rule = gauss_laguerre(k + 8, 1.0)?;
        let mut acc = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.scaled_weights) {
            let s = (2.0 * x).sqrt();
            let d = psi_derivative(k, a, s)?.norm() / s;
            acc += w * 2.0 * d * d;
        }
        return Ok(acc);
    }
    let zeta = SpectralPoint::laguerre(1.0, k)?;
    let s_max = (8.0 * (2 * k + n) as f64).sqrt() + 20.0;
    let panels = (4 * k + 16).min(4096);
    let breaks: Vec<f64> = (0..=panels).map(|i| s_max * i as f64 / panels as f64).collect();
    let f = |s: f64| {
        let d = spherical_fn_derivative(zeta, s, n, m).map(|z| z.norm_sqr()).unwrap_or(f64::NAN);
        C64::new(s.powi(2 * m as i32 - 1) * d, 0.0)
    };
    Ok(adaptive_c_panels(f, &breaks, 1e-14, 1e-11)?.0.re)
}

fn bessel_integral(n: usize, m: usize) -> Result<f64> {
    let c = eta_constant(n);
    let x_max = BESSEL_CUTOFF;
    let panels = (x_max / (0.5 * PI)).round() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|i| x_max * i as f64 / panels as f64).collect();
    let nf = n as f64;
    if m == 1 {
        // eta' = -u c J_n(ur) / (ur)^{n-1}
        let f = |x: f64| {
            let j = bessel_j(n, x);
            C64::new(c * c * j * j * x.powf(3.0 - 2.0 * nf), 0.0)
        };
        let head = adaptive_c_panels(f, &breaks, 1e-15, 1e-12)?.0.re;
        // J_n^2 ~ (1 + (4n^2-1)/(8x^2) + (-1)^n sin 2x) / (pi x) for large x.
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let x = x_max;
        let tail = c * c / PI
            * (x.powf(3.0 - 2.0 * nf) / (2.0 * nf - 3.0)
                + (4.0 * nf * nf - 1.0) / 8.0 * x.powf(1.0 - 2.0 * nf) / (2.0 * nf - 1.0)
                + sign * 0.5 * x.powf(2.0 - 2.0 * nf) * (2.0 * x).cos());
        return Ok(head + tail);
    }
    let zeta = SpectralPoint::bessel(1.0)?;
    let f = |x: f64| {
        let d = spherical_fn_derivative(zeta, x, n, m).map(|z| z.norm_sqr()).unwrap_or(f64::NAN);
        C64::new(x.powi(2 * m as i32 - 1) * d, 0.0)
    };
    let head = adaptive_c_panels(f, &breaks, 1e-15, 1e-10)?.0.re;
    let mf = m as f64;
    Ok(head + c * c * x_max.powf(2.0 * mf - 2.0 * nf + 1.0) / (PI * (2.0 * nf - 2.0 * mf - 1.0)))
}

/// One spectral point's share of `||g_m(f)||_2^2`.
#[derive(Clone, Debug)]
pub struct GTerm {
    pub zeta: SpectralPoint,
    pub weight: f64,
    pub integral: f64,
    pub energy: f64,
}

#[derive(Clone, Debug)]
pub struct GFunction {
    pub m: usize,
    /// `sum_zeta weight * integral * c_zeta^* c_zeta`, the fiber of `g_m(f)^2` integrated over the group.
    pub gram: CMat,
    pub norm: f64,
    pub breakdown: Vec<GTerm>,
}

pub fn g_function(f: &SpectralField, m: usize) -> Result<GFunction> {
    let n = f.geometry.n;
    check_order(m, n)?;
    let d = f.fiber_dim;
    let mut gram = CMat::zeros(d, d);
    let mut breakdown = Vec::with_capacity(f.len());
    for (zeta, c, w) in f.iter() {
        let integral = scalar_g_integral(*zeta, m, n)?;
        let cc = c.adjoint() * c;
        let energy = w * integral * cc.trace().re;
        gram += cc * C64::new(w * integral, 0.0);
        breakdown.push(GTerm { zeta: *zeta, weight: w, integral, energy });
    }
    let norm = breakdown.iter().map(|t| t.energy).sum::<f64>().max(0.0).sqrt();
    Ok(GFunction { m, gram, norm, breakdown })
}
