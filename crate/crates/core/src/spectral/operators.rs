use super::field::SpectralField;
use crate::error::{param, Error, Result};
use crate::linalg::C64;
use crate::quadrature::{adaptive_c, singular_beta_integral};
use crate::special_fn::{gamma, psi, spherical_fn, ComplexOrder, SpectralPoint};

/// `alpha(sigma_r)`: `c_zeta -> phi_zeta(r) c_zeta`.
pub fn spherical_mean(f: &SpectralField, r: f64) -> Result<SpectralField> {
    let n = f.geometry.n;
    let out = f.map_multiplier(|z| spherical_fn(*z, r, n))?;
    let (a, b) = (out.l2_norm(), f.l2_norm());
    if a > b * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("spherical mean expanded the L2 norm: {a} > {b}")));
    }
    Ok(out)
}

/// `(1/r) int_0^r phi_zeta(s) ds`.
pub fn uniform_multiplier(zeta: SpectralPoint, r: f64, n: usize) -> Result<C64> {
    if !(r > 0.0) {
        return Err(param(format!("uniform average needs r > 0, got {r}")));
    }
    if zeta.is_trivial() {
        return Ok(C64::new(1.0, 0.0));
    }
    let (v, _) = adaptive_c(|s| spherical_fn(zeta, s, n).unwrap_or(C64::new(f64::NAN, 0.0)), 0.0, r, 1e-10 * r, 1e-12)?;
    if !v.re.is_finite() {
        return Err(param(format!("spherical function undefined on [0, {r}] for {zeta}")));
    }
    Ok(v / r)
}

/// `alpha(mu_r)` with `mu_r = (1/r) int_0^r sigma_s ds`.
pub fn uniform_average(f: &SpectralField, r: f64) -> Result<SpectralField> {
    let n = f.geometry.n;
    f.map_multiplier(|z| uniform_multiplier(*z, r, n))
}

/// Poisson multiplier `e^{-|lambda| r / 4}` on Laguerre mass.
pub fn poisson_multiplier(zeta: &SpectralPoint, r: f64) -> C64 {
    match *zeta {
        SpectralPoint::Laguerre { lambda, .. } => C64::new((-0.25 * lambda.abs() * r).exp(), 0.0),
        _ => C64::new(1.0, 0.0),
    }
}

pub fn poisson(f: &SpectralField, r: f64) -> Result<SpectralField> {
    if !(r >= 0.0) {
        return Err(param(format!("Poisson parameter must be nonnegative, got {r}")));
    }
    f.map_multiplier(|z| Ok(poisson_multiplier(z, r)))
}

/// Lower bound on `re(a)` for the analytic family, `-n + 1 - 1/3`.
pub fn szego_threshold(n: usize) -> f64 {
    -(n as f64) + 1.0 - 1.0 / 3.0
}

/// Multiplier `psi^{n-1+a}_k(sqrt|lambda| r)` of the analytic family.
pub fn analytic_multiplier(zeta: &SpectralPoint, a: ComplexOrder, r: f64, n: usize) -> Result<C64> {
    match *zeta {
        SpectralPoint::Laguerre { lambda, k } => {
            psi(k, ComplexOrder::new((n - 1) as f64 + a.re, a.im), lambda.abs().sqrt() * r)
        }
        _ => Err(Error::Domain(format!("the analytic family acts on Laguerre mass only, found {zeta}"))),
    }
}

/// `bar M^a_r` on fields without Bessel or trivial mass.
pub fn analytic_family(f: &SpectralField, a: ComplexOrder, r: f64) -> Result<SpectralField> {
    let n = f.geometry.n;
    if !(a.re > szego_threshold(n)) {
        return Err(param(format!("analytic family needs re(a) > {}, got {}", szego_threshold(n), a.re)));
    }
    if !(r >= 0.0) {
        return Err(param(format!("radius must be nonnegative, got {r}")));
    }
    f.map_multiplier(|z| analytic_multiplier(z, a, r, n))
}

/// `L(a, b) = 2 Gamma(a + n) / (Gamma(a - b) Gamma(b + n))`.
pub fn subordination_constant(a: ComplexOrder, b: ComplexOrder, n: usize) -> C64 {
    let nn = n as f64;
    gamma(a.c64() + nn) * 2.0 / (gamma(a.c64() - b.c64()) * gamma(b.c64() + nn))
}

/// The right side of the subordination identity
/// `bar M^a_r f = L(a, b) int_0^1 s^{2n+2b-1} (1-s^2)^{a-b-1} P_{r^2(1-s^2)} bar M^b_{rs} f ds`,
/// assembled as a quadrature sum of operators (`v = s^2`, Jacobi-type rule in `v`).
pub fn subordinated_analytic_family(f: &SpectralField, a: ComplexOrder, b: ComplexOrder, r: f64, tol: f64) -> Result<SpectralField> {
    let n = f.geometry.n;
    if !(a.re > b.re) || !(b.re > szego_threshold(n)) {
        return Err(param("subordination needs re(a) > re(b) > -n + 1 - 1/3"));
    }
    let beta = n as f64 + b.re - 1.0;
    let c = a.c64() - b.c64();
    let lc = subordination_constant(a, b, n) * 0.5;
    // each coefficient is a scalar integral; the operator sum is assembled per point
    f.map_multiplier(|z| {
        let g = |v: f64| -> C64 {
            let s = v.sqrt();
            let extra = if b.im == 0.0 || v == 0.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, b.im * v.ln()).exp() };
            let pm = poisson_multiplier(z, r * r * (1.0 - v));
            let mb = analytic_multiplier(z, b, r * s, n).unwrap_or(C64::new(f64::NAN, 0.0));
            extra * pm * mb
        };
        let v = singular_beta_integral(beta, c, g, tol)?;
        if !v.re.is_finite() {
            return Err(Error::Domain(format!("subordination undefined at {z}")));
        }
        Ok(lc * v)
    })
}

/// Dyadic block of a Laguerre point: `-1` for `k = 0`, else `j` with
/// `|lambda| k in [2^j, 2^{j+1})`; products below one fall into block `0`.
pub fn dyadic_block(zeta: &SpectralPoint) -> Option<i32> {
    match *zeta {
        SpectralPoint::Laguerre { k: 0, .. } => Some(-1),
        SpectralPoint::Laguerre { lambda, k } => {
            let x = lambda.abs() * k as f64;
            if x < 1.0 {
                return Some(0);
            }
            let mut j = x.log2().floor() as i32;
            while 2f64.powi(j) > x {
                j -= 1;
            }
            while 2f64.powi(j + 1) <= x {
                j += 1;
            }
            Some(j)
        }
        _ => None,
    }
}

/// Restriction of the Laguerre mass to `Sigma_j`.
pub fn dyadic_projection(f: &SpectralField, j: i32) -> Result<SpectralField> {
    if j < -1 {
        return Err(param(format!("dyadic index must be >= -1, got {j}")));
    }
    Ok(f.filter(|z| dyadic_block(z) == Some(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::GeometryConfig;
    use crate::linalg::CMat;

    fn field() -> SpectralField {
        let g = GeometryConfig::default();
        let mut f = SpectralField::zero(g, 1);
        for (l, k) in [(1.0, 0), (-1.0, 2), (2.0, 5), (-2.0, 1)] {
            f.insert(SpectralPoint::laguerre(l, k).unwrap(), CMat::from_element(1, 1, C64::new(k as f64 + 1.0, l))).unwrap();
        }
        f
    }

    #[test]
    fn dyadic_membership() {
        assert_eq!(dyadic_block(&SpectralPoint::laguerre(1.0, 1).unwrap()), Some(0));
        assert_eq!(dyadic_block(&SpectralPoint::laguerre(3.0, 1).unwrap()), Some(1));
        assert_eq!(dyadic_block(&SpectralPoint::laguerre(-4.0, 2).unwrap()), Some(3));
        assert_eq!(dyadic_block(&SpectralPoint::laguerre(0.25, 2).unwrap()), Some(0));
        assert_eq!(dyadic_block(&SpectralPoint::laguerre(7.0, 0).unwrap()), Some(-1));
        assert_eq!(dyadic_block(&SpectralPoint::Trivial), None);
        let f = field();
        let mut total = SpectralField::zero(f.geometry.clone(), 1);
        for j in -1..8 {
            total = total.axpy(C64::new(1.0, 0.0), &dyadic_projection(&f, j).unwrap()).unwrap();
        }
        assert!(total.sub(&f).unwrap().l2_norm() == 0.0);
    }

    #[test]
    fn poisson_semigroup_and_commutation() {
        let f = field();
        let a = poisson(&poisson(&f, 0.3).unwrap(), 0.9).unwrap();
        let b = poisson(&f, 1.2).unwrap();
        assert!(a.relative_error(&b).unwrap() < 1e-13);
        let b = ComplexOrder::new(0.5, 0.3);
        let x = poisson(&analytic_family(&f, b, 1.3).unwrap(), 0.7).unwrap();
        let y = analytic_family(&poisson(&f, 0.7).unwrap(), b, 1.3).unwrap();
        assert!(x.relative_error(&y).unwrap() < 1e-12);
    }

    #[test]
    fn analytic_family_domain() {
        let f = field();
        let m0 = analytic_family(&f, ComplexOrder::real(0.0), 0.8).unwrap();
        assert!(m0.relative_error(&spherical_mean(&f, 0.8).unwrap()).unwrap() < 1e-12);
        assert!(analytic_family(&f, ComplexOrder::real(-1.34), 0.8).is_err());
        let g = f.clone().with(SpectralPoint::Trivial, CMat::identity(1, 1)).unwrap();
        assert!(matches!(analytic_family(&g, ComplexOrder::real(0.0), 0.8), Err(Error::Domain(_))));
    }

    #[test]
    fn uniform_average_of_gaussian_mode() {
        // (1/r) int_0^r e^{-s^2/4} ds = (sqrt(pi)/r) erf(r/2)
        let z = SpectralPoint::laguerre(1.0, 0).unwrap();
        for r in [0.5, 2.0, 7.0] {
            let v = uniform_multiplier(z, r, 2).unwrap();
            let exact = std::f64::consts::PI.sqrt() / r * statrs::function::erf::erf(r / 2.0);
            assert!((v.re - exact).abs() < 1e-10);
        }
        assert!((uniform_multiplier(z, 1e-3, 2).unwrap().re - 1.0).abs() < 1e-6);
    }
}
