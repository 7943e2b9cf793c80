//! Riemann-Liouville integrals `I^a F(r) = (1/Gamma(a)) int_0^r (r-s)^{a-1} F(s) ds`
//! and their normalized form `M^a F(r) = r^{-a} I^a F(r)`, continued to
//! `M^{-k} F(r) = r^k F^{(k)}(r)`.

use super::field::SpectralField;
use super::path::MatrixPath;
use crate::error::{param, Result};
use crate::linalg::{CMat, C64};
use crate::quadrature::singular_beta_integral_vec;
use crate::special_fn::{gamma, spherical_fn, spherical_fn_derivative, ComplexOrder, SpectralPoint};

const TOL: f64 = 1e-12;

/// Negative integer order `-k`, if `a` is one.
fn negative_integer(a: ComplexOrder) -> Option<usize> {
    (a.im == 0.0 && a.re < 0.0 && a.re.fract() == 0.0).then_some((-a.re) as usize)
}

/// `int_0^1 (1-u)^{a-1} F(r u) du` entrywise, with `s = r u`.
fn beta_part(path: &dyn MatrixPath, a: ComplexOrder, r: f64) -> Result<CMat> {
    let d = path.fiber_dim();
    let v = singular_beta_integral_vec(0.0, a.c64(), |u| path.eval(r * u).as_slice().to_vec(), TOL)?;
    Ok(CMat::from_column_slice(d, d, &v))
}

pub fn fractional_integral(path: &dyn MatrixPath, a: ComplexOrder, r: f64) -> Result<CMat> {
    if !(a.re > 0.0) {
        return Err(param(format!("fractional integral needs re(a) > 0, got {}", a.re)));
    }
    if !(r > 0.0) {
        return Err(param(format!("fractional integral needs r > 0, got {r}")));
    }
    let factor = C64::new(r, 0.0).powc(a.c64()) / gamma(a.c64());
    Ok(beta_part(path, a, r)? * factor)
}

pub fn normalized_fractional(path: &dyn MatrixPath, a: ComplexOrder, r: f64) -> Result<CMat> {
    if let Some(k) = negative_integer(a) {
        return Ok(path.derivative(r, k)? * C64::new(r.powi(k as i32), 0.0));
    }
    if !(a.re > 0.0) {
        return Err(param(format!("normalized fractional integral needs re(a) > 0 or a = -k, got {}", a.re)));
    }
    if !(r > 0.0) {
        return Err(param(format!("fractional integral needs r > 0, got {r}")));
    }
    Ok(beta_part(path, a, r)? / gamma(a.c64()))
}

/// `M^a` applied to the multiplier path `r -> phi_zeta(r)` of the spherical means.
pub fn normalized_fractional_multiplier(zeta: SpectralPoint, a: ComplexOrder, r: f64, n: usize) -> Result<C64> {
    if let Some(k) = negative_integer(a) {
        return Ok(spherical_fn_derivative(zeta, r, n, k)? * r.powi(k as i32));
    }
    if !(a.re > 0.0) || !(r > 0.0) {
        return Err(param("normalized fractional multiplier needs re(a) > 0 or a = -k, and r > 0"));
    }
    let v = singular_beta_integral_vec(
        0.0,
        a.c64(),
        |u| vec![spherical_fn(zeta, r * u, n).unwrap_or(C64::new(f64::NAN, 0.0))],
        TOL,
    )?;
    Ok(v[0] / gamma(a.c64()))
}

/// `M^a F_x(r)` for the spherical-mean path `F_x(r) = alpha(sigma_r) x`, computed per spectral point.
pub fn spectral_normalized_fractional(f: &SpectralField, a: ComplexOrder, r: f64) -> Result<SpectralField> {
    let n = f.geometry.n;
    f.map_multiplier(|z| normalized_fractional_multiplier(*z, a, r, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::special_fn::gamma_real;
    use crate::spectral::path::FnPath;

    fn x() -> CMat {
        CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.5, -1.0), C64::new(0.5, 1.0), C64::new(2.0, 0.0)])
    }

    #[test]
    fn constant_and_power_paths() {
        let x = x();
        for a in [0.3, 1.0, 2.5] {
            let r = 1.7;
            let path = FnPath { dim: 2, f: |_| x.clone() };
            let got = fractional_integral(&path, ComplexOrder::real(a), r).unwrap();
            let expect = &x * C64::new(r.powf(a) / gamma_real(a + 1.0), 0.0);
            assert!(max_abs(&(got - &expect)) <= 1e-10 * max_abs(&expect));
            for m in [1, 3] {
                let path = FnPath { dim: 2, f: |s: f64| &x * C64::new(s.powi(m), 0.0) };
                let got = fractional_integral(&path, ComplexOrder::real(a), r).unwrap();
                let c = gamma_real(m as f64 + 1.0) / gamma_real(m as f64 + a + 1.0) * r.powf(m as f64 + a);
                assert!(max_abs(&(got - &x * C64::new(c, 0.0))) <= 1e-10 * c * max_abs(&x));
            }
        }
    }

    #[test]
    fn complex_order_constant_path() {
        let a = ComplexOrder::new(0.8, 0.6);
        let path = FnPath { dim: 1, f: |_| CMat::identity(1, 1) };
        let got = fractional_integral(&path, a, 2.0).unwrap()[(0, 0)];
        let expect = C64::new(2.0, 0.0).powc(a.c64()) / gamma(a.c64() + 1.0);
        assert!((got - expect).norm() < 1e-10 * expect.norm());
    }

    #[test]
    fn negative_order_is_a_derivative() {
        let path = FnPath { dim: 1, f: |s: f64| CMat::from_element(1, 1, C64::new((-s).exp(), 0.0)) };
        let got = normalized_fractional(&path, ComplexOrder::real(-1.0), 0.9).unwrap()[(0, 0)].re;
        assert!((got + 0.9 * (-0.9f64).exp()).abs() < 1e-8);
        assert!(normalized_fractional(&path, ComplexOrder::real(-0.5), 0.9).is_err());
        assert!(fractional_integral(&path, ComplexOrder::real(0.0), 0.9).is_err());
    }
}
