//! Points of the Gelfand spectrum and the bounded spherical functions
//! `phi_zeta(r)` attached to them.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::bessel::{bessel_eta, bessel_eta_derivative};
use super::laguerre::{psi, psi_derivative, ComplexOrder};
use crate::error::{param, Result};
use crate::linalg::C64;

/// A point of the spectrum: Laguerre `(lambda, k)`, Bessel `u`, or the
/// trivial character. Equality and ordering are bitwise on the parameters.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpectralPoint {
    Trivial,
    Bessel { u: f64 },
    Laguerre { lambda: f64, k: usize },
}

impl SpectralPoint {
    pub fn laguerre(lambda: f64, k: usize) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(param(format!("Laguerre point needs finite lambda != 0, got {lambda}")));
        }
        Ok(Self::Laguerre { lambda, k })
    }

    pub fn bessel(u: f64) -> Result<Self> {
        if !(u > 0.0) || !u.is_finite() {
            return Err(param(format!("Bessel point needs u > 0, got {u}")));
        }
        Ok(Self::Bessel { u })
    }

    pub fn is_laguerre(&self) -> bool {
        matches!(self, Self::Laguerre { .. })
    }

    pub fn is_bessel(&self) -> bool {
        matches!(self, Self::Bessel { .. })
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Self::Trivial)
    }

    fn key(&self) -> (u8, u64, u64) {
        match *self {
            Self::Trivial => (0, 0, 0),
            Self::Bessel { u } => (1, u.to_bits(), 0),
            Self::Laguerre { lambda, k } => (2, lambda.to_bits(), k as u64),
        }
    }
}

impl PartialEq for SpectralPoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for SpectralPoint {}

impl Hash for SpectralPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl Ord for SpectralPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Bessel { u: a }, Self::Bessel { u: b }) => a.total_cmp(b),
            (Self::Laguerre { lambda: la, k: ka }, Self::Laguerre { lambda: lb, k: kb }) => {
                la.total_cmp(lb).then(ka.cmp(kb))
            }
            _ => self.key().0.cmp(&other.key().0),
        }
    }
}

impl PartialOrd for SpectralPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for SpectralPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Trivial => write!(f, "trivial"),
            Self::Bessel { u } => write!(f, "bessel(u={u})"),
            Self::Laguerre { lambda, k } => write!(f, "laguerre(lambda={lambda},k={k})"),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(param("dimension n must be at least 1"));
    }
    Ok(())
}

/// `phi_zeta(r)`: `psi^{n-1}_k(sqrt|lambda| r)`, `eta_u(r)` or `1`.
pub fn spherical_fn(zeta: SpectralPoint, r: f64, n: usize) -> Result<C64> {
    check_n(n)?;
    if r.is_nan() || r < 0.0 {
        return Err(param(format!("radius must be nonnegative, got {r}")));
    }
    match zeta {
        SpectralPoint::Trivial => Ok(C64::new(1.0, 0.0)),
        SpectralPoint::Bessel { u } => Ok(C64::new(bessel_eta(u, r, n)?, 0.0)),
        SpectralPoint::Laguerre { lambda, k } => {
            psi(k, ComplexOrder::real((n - 1) as f64), lambda.abs().sqrt() * r)
        }
    }
}

fn first_derivative(zeta: SpectralPoint, r: f64, n: usize) -> Result<C64> {
    // phi is even in r, so its derivative is odd.
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = match zeta {
        SpectralPoint::Trivial => C64::new(0.0, 0.0),
        SpectralPoint::Bessel { u } => C64::new(bessel_eta_derivative(u, r, n)?, 0.0),
        SpectralPoint::Laguerre { lambda, k } => {
            let s = lambda.abs().sqrt();
            psi_derivative(k, ComplexOrder::real((n - 1) as f64), s * r)? * s
        }
    };
    Ok(v * sign)
}

/// Characteristic oscillation length of `phi_zeta`, used to size difference steps.
fn length_scale(zeta: SpectralPoint, n: usize) -> f64 {
    match zeta {
        SpectralPoint::Trivial => 1.0,
        SpectralPoint::Bessel { u } => 1.0 / u,
        SpectralPoint::Laguerre { lambda, k } => 1.0 / (lambda.abs() * (2 * k + n) as f64).sqrt(),
    }
}

/// Largest derivative order supported by [`spherical_fn_derivative`].
pub const MAX_DERIVATIVE: usize = 4;

/// `d^m/dr^m phi_zeta(r)`: analytic for `m = 1`, Richardson-extrapolated
/// central differences of the analytic first derivative for `m = 2..=4`.
pub fn spherical_fn_derivative(zeta: SpectralPoint, r: f64, n: usize, m: usize) -> Result<C64> {
    check_n(n)?;
    if m == 0 || m > MAX_DERIVATIVE {
        return Err(param(format!("derivative order must be in 1..={MAX_DERIVATIVE}, got {m}")));
    }
    if !(r > 0.0) {
        return Err(param(format!("derivative needs r > 0, got {r}")));
    }
    if m == 1 || zeta.is_trivial() {
        return first_derivative(zeta, r, n);
    }
    let h = if m == 2 {
        (1e-4f64).max(1e-3 * r)
    } else {
        0.02 * length_scale(zeta, n).min(1.0)
    };
    let g = |x: f64| first_derivative(zeta, x, n);
    let diff = |h: f64| -> Result<C64> {
        Ok(match m - 1 {
            1 => (g(r + h)? - g(r - h)?) / (2.0 * h),
            2 => (g(r + h)? - g(r)? * 2.0 + g(r - h)?) / (h * h),
            _ => (g(r + 2.0 * h)? - g(r + h)? * 2.0 + g(r - h)? * 2.0 - g(r - 2.0 * h)?) / (2.0 * h * h * h),
        })
    };
    let coarse = diff(h)?;
    let fine = diff(0.5 * h)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_origin_values() {
        assert_eq!(spherical_fn(SpectralPoint::Trivial, 17.3, 2).unwrap(), C64::new(1.0, 0.0));
        for z in [
            SpectralPoint::laguerre(-3.0, 4).unwrap(),
            SpectralPoint::bessel(2.5).unwrap(),
            SpectralPoint::Trivial,
        ] {
            assert_eq!(spherical_fn(z, 0.0, 2).unwrap(), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn laguerre_ground_state() {
        let z = SpectralPoint::laguerre(4.0, 0).unwrap();
        for &r in &[0.2, 1.0, 2.5] {
            let v = spherical_fn(z, r, 2).unwrap();
            assert!((v.re - (-r * r as f64).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn first_derivatives() {
        let z = SpectralPoint::laguerre(1.0, 0).unwrap();
        for &r in &[0.3, 1.1, 4.0] {
            let d = spherical_fn_derivative(z, r, 2, 1).unwrap();
            assert!((d.re + 0.5 * r * (-r * r / 4.0f64).exp()).abs() < 1e-15);
        }
        assert_eq!(spherical_fn_derivative(SpectralPoint::Trivial, 2.0, 2, 1).unwrap(), C64::new(0.0, 0.0));
        let z = SpectralPoint::laguerre(2.0, 6).unwrap();
        let h = 1e-5;
        let fd = (spherical_fn(z, 1.5 + h, 2).unwrap() - spherical_fn(z, 1.5 - h, 2).unwrap()) / (2.0 * h);
        let an = spherical_fn_derivative(z, 1.5, 2, 1).unwrap();
        assert!((fd - an).norm() / an.norm() < 1e-6);
    }

    #[test]
    fn higher_derivatives_of_gaussian() {
        // phi = exp(-a r^2) with a = |lambda| / 4
        let lambda = 3.0;
        let a = lambda / 4.0;
        let z = SpectralPoint::laguerre(lambda, 0).unwrap();
        for &r in &[0.05, 0.7, 1.9] {
            let e = (-a * r * r).exp();
            let exact = [
                (4.0 * a * a * r * r - 2.0 * a) * e,
                (-8.0 * a.powi(3) * r.powi(3) + 12.0 * a * a * r) * e,
                (16.0 * a.powi(4) * r.powi(4) - 48.0 * a.powi(3) * r * r + 12.0 * a * a) * e,
            ];
            for m in 2..=4 {
                let d = spherical_fn_derivative(z, r, 2, m).unwrap().re;
                assert!((d - exact[m - 2]).abs() < 1e-6, "m {m} r {r}: {d} vs {}", exact[m - 2]);
            }
        }
        assert!(spherical_fn_derivative(z, 1.0, 2, 5).is_err());
    }

    #[test]
    fn ordering_and_equality_are_bitwise() {
        let a = SpectralPoint::laguerre(1.0, 2).unwrap();
        let b = SpectralPoint::laguerre(1.0, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(SpectralPoint::bessel(0.5).unwrap(), SpectralPoint::bessel(0.5 + 1e-16).unwrap());
        assert!(SpectralPoint::Trivial < SpectralPoint::bessel(1.0).unwrap());
        assert!(SpectralPoint::laguerre(0.0, 1).is_err());
        assert!(SpectralPoint::bessel(-1.0).is_err());
    }
}
