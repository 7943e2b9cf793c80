//! Gamma function on the complex plane (Lanczos, g = 7, nine terms) with
//! reflection for `re(z) < 1/2`.

use std::f64::consts::PI;

use crate::linalg::C64;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

fn lanczos_ln(z: C64) -> C64 {
    // valid for re(z) >= 1/2
    let z = z - 1.0;
    let mut acc = C64::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (z + 0.5) * t.ln() - t + LN_SQRT_2PI + acc.ln()
}

/// Principal-branch-free log-gamma: `exp(ln_gamma(z)) == gamma(z)`; the
/// imaginary part is not normalized to any particular branch.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        C64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - lanczos_ln(1.0 - z)
    } else {
        lanczos_ln(z)
    }
}

pub fn gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return C64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        PI / ((z * PI).sin() * gamma(1.0 - z))
    } else {
        lanczos_ln(z).exp()
    }
}

pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(C64::new(x, 0.0)).re
}

pub fn gamma_real(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).re
}

/// `Gamma(k+1) Gamma(a+1) / Gamma(k+a+1) = prod_{j=1}^k j / (j + a)`.
pub fn laguerre_norm_ratio(k: usize, a: C64) -> C64 {
    let mut r = C64::new(1.0, 0.0);
    for j in 1..=k {
        r *= j as f64 / (a + j as f64);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half_integers() {
        let mut f = 1.0;
        for n in 1..20 {
            f *= n as f64;
            let g = gamma_real(n as f64 + 1.0);
            assert!((g / f - 1.0).abs() < 1e-13, "n = {n}");
        }
        assert!((gamma_real(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn complex_recurrence_and_reflection() {
        for &z in &[C64::new(0.3, 1.7), C64::new(2.5, -3.0), C64::new(-0.7, 0.4)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-13, "{z}");
            let refl = gamma(z) * gamma(1.0 - z) * (z * PI).sin();
            assert!((refl - PI).norm() < 1e-12);
        }
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        let y = 1.3;
        let g = gamma(C64::new(0.0, y));
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() < 1e-13);
    }

    #[test]
    fn norm_ratio_matches_gamma() {
        let a = C64::new(1.0, 2.0);
        let r = laguerre_norm_ratio(12, a);
        let direct = (ln_gamma(C64::new(13.0, 0.0)) + ln_gamma(a + 1.0) - ln_gamma(a + 13.0)).exp();
        assert!((r - direct).norm() / r.norm() < 1e-12);
    }
}
