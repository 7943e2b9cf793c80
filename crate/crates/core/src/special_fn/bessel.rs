//! Integer-order Bessel functions `J_nu` and the Bessel spherical kernel
//! `eta_u(r) = 2^{n-1} (n-1)! J_{n-1}(ur) / (ur)^{n-1}`.
//!
//! Branches: power series for `x < 8`, normalized Miller backward
//! recurrence on `[8, 20)`, and the Hankel asymptotic expansion for
//! `x >= ASYMPTOTIC_SWITCH`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{param, Result};

/// Argument at which evaluation switches to the large-argument expansion.
pub const ASYMPTOTIC_SWITCH: f64 = 20.0;
const SERIES_LIMIT: f64 = 8.0;
/// Largest `u r` accepted by [`bessel_eta`].
pub const MAX_ARGUMENT: f64 = 1e6;

/// `J_nu(x) / x^nu` by its power series.
fn series_scaled(nu: usize, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    for j in 1..=nu {
        term /= 2.0 * j as f64;
    }
    let mut sum = term;
    for m in 1..200 {
        term *= -q / (m as f64 * (m + nu) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `J_0..=J_nu_max` at `x > 0` by Miller's algorithm.
fn miller(nu_max: usize, x: f64) -> Vec<f64> {
    let start = 2 * ((nu_max + (x as usize) + 30) / 2 + 10);
    let mut out = vec![0.0; nu_max + 1];
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
        let idx = k - 1;
        if idx <= nu_max {
            out[idx] = j;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * j;
        }
    }
    norm += j;
    out.iter().map(|v| v / norm).collect()
}

fn asymptotic(nu: usize, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if term.abs() > last || term.abs() < 1e-18 {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = x - nu as f64 * FRAC_PI_2 - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `J_nu(x)` for integer `nu >= 0` and `x >= 0`.
pub fn bessel_j(nu: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        series_scaled(nu, x) * x.powi(nu as i32)
    } else if x < ASYMPTOTIC_SWITCH {
        miller(nu, x)[nu]
    } else {
        asymptotic(nu, x)
    }
}

/// `J_nu(x) / x^nu`, continuous at zero.
pub fn bessel_j_scaled(nu: usize, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        series_scaled(nu, x)
    } else {
        bessel_j(nu, x) / x.powi(nu as i32)
    }
}

fn eta_constant(n: usize) -> f64 {
    let mut c = 2f64.powi(n as i32 - 1);
    for j in 1..n {
        c *= j as f64;
    }
    c
}

fn check(u: f64, r: f64, n: usize) -> Result<()> {
    if u.is_nan() || u <= 0.0 {
        return Err(param(format!("Bessel parameter u must be positive, got {u}")));
    }
    if r.is_nan() || r < 0.0 {
        return Err(param(format!("radius must be nonnegative, got {r}")));
    }
    if n == 0 {
        return Err(param("dimension n must be at least 1"));
    }
    if u * r > MAX_ARGUMENT {
        return Err(param(format!("u r = {} exceeds {MAX_ARGUMENT}", u * r)));
    }
    Ok(())
}

/// Bessel spherical function `eta_u` at `|z| = r` on `H^n`.
pub fn bessel_eta(u: f64, r: f64, n: usize) -> Result<f64> {
    check(u, r, n)?;
    Ok(eta_constant(n) * bessel_j_scaled(n - 1, u * r))
}

/// `d/dr eta_u(r) = -c_n u^2 r J_n(ur) / (ur)^n`.
pub fn bessel_eta_derivative(u: f64, r: f64, n: usize) -> Result<f64> {
    check(u, r, n)?;
    let x = u * r;
    Ok(-eta_constant(n) * u * x * bessel_j_scaled(n, x))
}

/// First `count` positive zeros of `J_nu` (McMahon start, Newton polish).
pub fn bessel_zeros(nu: usize, count: usize) -> Vec<f64> {
    let mu = 4.0 * (nu * nu) as f64;
    let mut zeros = Vec::with_capacity(count);
    for s in 1..=count {
        let beta = (s as f64 + 0.5 * nu as f64 - 0.25) * PI;
        let mut x = beta - (mu - 1.0) / (8.0 * beta) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta).powi(3));
        if s == 1 && nu > 0 {
            // McMahon is poor for the first zero of higher orders.
            x = x.max(nu as f64 + 1.8557 * (nu as f64).powf(1.0 / 3.0));
        }
        for _ in 0..50 {
            let j = bessel_j(nu, x);
            let dj = nu as f64 / x * j - bessel_j(nu + 1, x);
            let dx = j / dj;
            x -= dx;
            if dx.abs() < 1e-15 * x {
                break;
            }
        }
        zeros.push(x);
    }
    zeros
}
