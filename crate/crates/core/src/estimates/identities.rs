//! Scalar identities used in the proofs, checked by quadrature.

use crate::error::{param, Result};
use crate::linalg::C64;
use crate::quadrature::{adaptive_c, singular_beta_integral};
use crate::special_fn::{gamma, laguerre_poly, psi, spherical_fn, spherical_fn_derivative, ComplexOrder, SpectralPoint};
use crate::spectral::uniform_multiplier;

/// Agreement between successive node doublings.
const TOL: f64 = 1e-12;

/// `|L^a_k(r) - Gamma(k+a+1)/(Gamma(a-b) Gamma(k+b+1)) int_0^1 s^b (1-s)^{a-b-1} L^b_k(rs) ds|`.
pub fn laguerre_connection_residual(a: ComplexOrder, b: ComplexOrder, k: usize, r: f64) -> Result<f64> {
    if !(a.re > b.re) || !(b.re > -1.0) {
        return Err(param("connection formula needs re(a) > re(b) > -1"));
    }
    if b.im != 0.0 {
        return Err(param("connection formula quadrature takes a real lower order b"));
    }
    let kk = k as f64;
    let c = gamma(a.c64() + kk + 1.0) / (gamma(a.c64() - b.c64()) * gamma(b.c64() + kk + 1.0));
    let integral = singular_beta_integral(
        b.re,
        a.c64() - b.c64(),
        |s| laguerre_poly(k, b, r * s).unwrap_or(C64::new(f64::NAN, 0.0)),
        TOL,
    )?;
    Ok((laguerre_poly(k, a, r)? - c * integral).norm())
}

#[derive(Clone, Copy, Debug)]
pub struct SubordinationResidual {
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
}

/// `psi^{delta+i gamma}_k(sqrt|lambda| r)` against
/// `C int_0^1 s^{delta'} (1-s)^{delta-delta'+i gamma-1} e^{|lambda| r^2 (s-1)/4} psi^{delta'}_k(sqrt(|lambda| s) r) ds`
/// with `C = Gamma(delta+i gamma+1) / (Gamma(delta-delta'+i gamma) Gamma(delta'+1))`.
pub fn check_psi_subordination(
    k: usize,
    delta: f64,
    gamma_im: f64,
    delta_prime: f64,
    lambda: f64,
    r: f64,
) -> Result<SubordinationResidual> {
    if !(delta_prime > 0.0 && delta_prime < delta) {
        return Err(param(format!("need 0 < delta' < delta, got delta' = {delta_prime}, delta = {delta}")));
    }
    if lambda == 0.0 || !lambda.is_finite() || !(r >= 0.0) {
        return Err(param("need lambda != 0 and r >= 0"));
    }
    let l = lambda.abs();
    let a = C64::new(delta, gamma_im);
    let lhs = psi(k, ComplexOrder::new(delta, gamma_im), l.sqrt() * r)?;
    let c = gamma(a + 1.0) / (gamma(a - delta_prime) * gamma(C64::new(delta_prime + 1.0, 0.0)));
    let lower = ComplexOrder::real(delta_prime);
    let integral = singular_beta_integral(
        delta_prime,
        a - delta_prime,
        |s| {
            let g = (0.25 * l * r * r * (s - 1.0)).exp();
            psi(k, lower, (l * s).sqrt() * r).unwrap_or(C64::new(f64::NAN, 0.0)) * g
        },
        TOL,
    )?;
    let rhs = c * integral;
    Ok(SubordinationResidual { lhs, rhs, residual: (lhs - rhs).norm() })
}

/// Per spectral point, `phi(r) - (1/r) int_0^r phi(s) ds - (1/r) int_0^r s phi'(s) ds`, which vanishes
/// by integration by parts.
pub fn comparison_residual(zeta: SpectralPoint, r: f64, n: usize) -> Result<f64> {
    if !(r > 0.0) {
        return Err(param(format!("comparison needs r > 0, got {r}")));
    }
    let sigma = spherical_fn(zeta, r, n)?;
    let mu = uniform_multiplier(zeta, r, n)?;
    let (v, _) = adaptive_c(
        |s| {
            if s <= 0.0 {
                return C64::new(0.0, 0.0);
            }
            spherical_fn_derivative(zeta, s, n, 1).unwrap_or(C64::new(f64::NAN, 0.0)) * s
        },
        0.0,
        r,
        1e-13 * r,
        1e-13,
    )?;
    Ok((sigma - mu - v / r).norm())
}
