//! Laguerre polynomials of complex order, the normalized Laguerre functions
//! `psi^a_k(r) = [k! Gamma(a+1) / Gamma(k+a+1)] L^a_k(r^2/2) e^{-r^2/4}`
//! and the orthonormal Laguerre functions `script_l`.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma_real, laguerre_norm_ratio};
use crate::error::{param, Result};
use crate::linalg::C64;

/// Largest degree accepted by the evaluators.
pub const K_MAX: usize = 1024;

/// A complex order `a = re + i im`; each consumer states its own bound on `re`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexOrder {
    pub re: f64,
    pub im: f64,
}

impl ComplexOrder {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn c64(self) -> C64 {
        C64::new(self.re, self.im)
    }
}

impl From<f64> for ComplexOrder {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl From<C64> for ComplexOrder {
    fn from(z: C64) -> Self {
        Self::new(z.re, z.im)
    }
}

fn check(k: usize, a: ComplexOrder, r: f64) -> Result<()> {
    if a.re <= -1.0 {
        return Err(param(format!("Laguerre order needs re(a) > -1, got {}", a.re)));
    }
    if k > K_MAX {
        return Err(param(format!("degree {k} exceeds K_MAX = {K_MAX}")));
    }
    if !r.is_finite() {
        return Err(param("non-finite argument"));
    }
    Ok(())
}

/// `L^a_k(x) = value * exp(log_scale)`; rescales to stay inside f64 range.
pub(crate) fn laguerre_scaled(k: usize, a: C64, x: f64) -> (C64, f64) {
    let one = C64::new(1.0, 0.0);
    if k == 0 {
        return (one, 0.0);
    }
    let mut scale = 0.0;
    let mut prev = one;
    let mut cur = a + 1.0 - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((a + (2.0 * jf + 1.0 - x)) * cur - (a + jf) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.norm();
        if m > 1e120 {
            cur /= 1e120;
            prev /= 1e120;
            scale += 120.0 * std::f64::consts::LN_10;
        }
    }
    (cur, scale)
}

/// `L^a_k(r)` by the upward three-term recurrence.
pub fn laguerre_poly(k: usize, a: ComplexOrder, r: f64) -> Result<C64> {
    check(k, a, r)?;
    let (v, s) = laguerre_scaled(k, a.c64(), r);
    Ok(v * s.exp())
}

/// `d/dr L^a_k(r) = -L^{a+1}_{k-1}(r)`.
pub fn laguerre_poly_derivative(k: usize, a: ComplexOrder, r: f64) -> Result<C64> {
    check(k, a, r)?;
    if k == 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let (v, s) = laguerre_scaled(k - 1, a.c64() + 1.0, r);
    Ok(-v * s.exp())
}

/// Normalized Laguerre function `psi^a_k(r)`, equal to one at the origin.
pub fn psi(k: usize, a: ComplexOrder, r: f64) -> Result<C64> {
    check(k, a, r)?;
    Ok(psi_unchecked(k, a.c64(), r))
}

pub(crate) fn psi_unchecked(k: usize, a: C64, r: f64) -> C64 {
    if r == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let x = 0.5 * r * r;
    let (v, s) = laguerre_scaled(k, a, x);
    laguerre_norm_ratio(k, a) * v * (s - 0.5 * x).exp()
}

/// `ln |psi^a_k(r)|`, finite where `psi` itself would underflow.
pub fn ln_abs_psi(k: usize, a: ComplexOrder, r: f64) -> Result<f64> {
    check(k, a, r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let x = 0.5 * r * r;
    let (v, s) = laguerre_scaled(k, a.c64(), x);
    Ok(laguerre_norm_ratio(k, a.c64()).norm().ln() + v.norm().ln() + s - 0.5 * x)
}

/// `d/dr psi^a_k(r)`.
pub fn psi_derivative(k: usize, a: ComplexOrder, r: f64) -> Result<C64> {
    check(k, a, r)?;
    Ok(psi_derivative_unchecked(k, a.c64(), r))
}

pub(crate) fn psi_derivative_unchecked(k: usize, a: C64, r: f64) -> C64 {
    let x = 0.5 * r * r;
    let ratio = laguerre_norm_ratio(k, a);
    let (l, sl) = laguerre_scaled(k, a, x);
    let mut out = -l * (0.5 * r) * (sl - 0.5 * x).exp();
    if k > 0 {
        let (lp, sp) = laguerre_scaled(k - 1, a + 1.0, x);
        out -= lp * r * (sp - 0.5 * x).exp();
    }
    ratio * out
}

/// `script_l^delta_k(r) = (k!/Gamma(k+delta+1))^{1/2} e^{-r/2} r^{delta/2} L^delta_k(r)`.
pub fn script_l(k: usize, delta: f64, r: f64) -> Result<f64> {
    if delta < 0.0 {
        return Err(param(format!("script_l needs delta >= 0, got {delta}")));
    }
    if r < 0.0 {
        return Err(param(format!("script_l needs r >= 0, got {r}")));
    }
    check(k, ComplexOrder::real(delta), r)?;
    let norm = (laguerre_norm_ratio(k, C64::new(delta, 0.0)).re / gamma_real(delta + 1.0)).sqrt();
    if r == 0.0 {
        return Ok(if delta == 0.0 { norm * laguerre_scaled(k, C64::new(0.0, 0.0), 0.0).0.re } else { 0.0 });
    }
    let (v, s) = laguerre_scaled(k, C64::new(delta, 0.0), r);
    Ok(norm * v.re * (s - 0.5 * r + 0.5 * delta * r.ln()).exp())
}
