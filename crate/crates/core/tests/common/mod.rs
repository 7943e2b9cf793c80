//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use heisenberg_lab::linalg::{CMat, C64};
use nalgebra::Matrix2;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Gaussian rationals, enough arithmetic for the Laguerre series.
#[derive(Clone, Debug)]
pub struct QC {
    pub re: BigRational,
    pub im: BigRational,
}

impl QC {
    pub fn real(x: BigRational) -> Self {
        Self { re: x, im: BigRational::zero() }
    }

    pub fn mul(&self, o: &QC) -> QC {
        QC { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn scale(&self, s: &BigRational) -> QC {
        QC { re: &self.re * s, im: &self.im * s }
    }

    pub fn div(&self, o: &QC) -> QC {
        let den = &o.re * &o.re + &o.im * &o.im;
        let num = self.mul(&QC { re: o.re.clone(), im: -o.im.clone() });
        QC { re: num.re / &den, im: num.im / den }
    }

    pub fn add(&self, o: &QC) -> QC {
        QC { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `psi^a_k(r)` from the exact hypergeometric series
/// `L^a_k(x) / L^a_k(0) = sum_j (-x)^j / j! * k! / (k-j)! / prod_{i<=j} (a + i)`, `x = r^2 / 2`.
/// `r` must be exactly representable so that `x` is rational.
pub fn psi_series(k: usize, a_re: f64, a_im: f64, r: f64) -> C64 {
    let x = rational(r) * rational(r) / BigRational::from_integer(BigInt::from(2));
    let a = QC { re: rational(a_re), im: rational(a_im) };
    let mut term = QC::real(BigRational::one());
    let mut sum = term.clone();
    for j in 1..=k {
        let factor = -&x * BigRational::from_integer(BigInt::from(k - j + 1)) / BigRational::from_integer(BigInt::from(j));
        let shift = a.add(&QC::real(BigRational::from_integer(BigInt::from(j))));
        term = term.scale(&factor).div(&shift);
        sum = sum.add(&term);
    }
    sum.to_c64() * (-(r * r) / 4.0).exp()
}

fn eig2(m: &Matrix2<C64>) -> (f64, f64) {
    // closed form for Hermitian 2 x 2
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + m[(0, 1)].norm_sqr()).sqrt();
    (mid - rad, mid + rad)
}

/// Golden-section minimum of a unimodal function on `[lo, hi]`.
fn golden(f: &mut dyn FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Maximal norm of a self-adjoint `2 x 2` family under the standard trace,
/// `min ||a||_p` over `a >= +-x_i`, by exhaustive nested golden-section search
/// over the four real parameters of `a` on an exact convex penalty.
pub fn brute_force_maximal_2x2(xs: &[CMat], p: f64, iters: usize) -> f64 {
    let xs2: Vec<Matrix2<C64>> = xs.iter().map(|x| Matrix2::new(x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)])).collect();
    let bound: f64 = xs2.iter().map(|x| { let (l, h) = eig2(x); l.abs().max(h.abs()) }).sum::<f64>() * 1.01;
    let penalty = 100.0;
    let objective = |a: &Matrix2<C64>| -> f64 {
        let (l1, l2) = eig2(a);
        let norm = if p.is_infinite() {
            l1.abs().max(l2.abs())
        } else {
            (l1.abs().powf(p) + l2.abs().powf(p)).powf(1.0 / p)
        };
        let mut viol = 0.0;
        for x in &xs2 {
            viol += (-eig2(&(a - x)).0).max(0.0) + (-eig2(&(a + x)).0).max(0.0);
        }
        norm + penalty * viol
    };
    let mut over_alpha = |alpha: f64| {
        golden(
            &mut |delta: f64| {
                golden(
                    &mut |beta: f64| {
                        golden(
                            &mut |gamma: f64| {
                                let off = C64::new(beta, gamma);
                                objective(&Matrix2::new(C64::new(alpha, 0.0), off, off.conj(), C64::new(delta, 0.0)))
                            },
                            -bound,
                            bound,
                            iters,
                        )
                    },
                    -bound,
                    bound,
                    iters,
                )
            },
            0.0,
            bound,
            iters,
        )
    };
    golden(&mut over_alpha, 0.0, bound, iters)
}
