//! Product Gauss rules for the normalized surface measure on
//! `S^n_r = {(w, 0) : |w| = r}` in `C^n`, `n in {1, 2}`.
//!
//! For `n = 2` the sphere is parametrized by `w = r (sqrt(1-u) e^{i a}, sqrt(u) e^{i b})`;
//! the normalized measure is `du da db / (4 pi^2)`, so Gauss-Legendre in `u`
//! and equispaced angles integrate `z^alpha conj(z)^beta` exactly up to the order.

use std::f64::consts::TAU;

use super::group::GroupElement;
use crate::error::{param, Result};
use crate::linalg::C64;
use crate::quadrature::gauss_legendre;

#[derive(Clone, Debug)]
pub struct SphereRule {
    pub points: Vec<Vec<C64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn sphere_rule(n: usize, r: f64, order: usize) -> Result<SphereRule> {
    if order < 8 {
        return Err(param(format!("sphere quadrature order must be >= 8, got {order}")));
    }
    if !(r > 0.0) {
        return Err(param(format!("sphere radius must be positive, got {r}")));
    }
    // even count keeps the rule antipodally symmetric
    let m = (order + 2).next_multiple_of(2);
    let angles: Vec<f64> = (0..m).map(|j| TAU * j as f64 / m as f64).collect();
    match n {
        1 => Ok(SphereRule {
            points: angles.iter().map(|&a| vec![C64::from_polar(r, a)]).collect(),
            weights: vec![1.0 / m as f64; m],
        }),
        2 => {
            let gl = gauss_legendre(order / 4 + 2).mapped(0.0, 1.0);
            let mut points = Vec::with_capacity(gl.len() * m * m);
            let mut weights = Vec::with_capacity(gl.len() * m * m);
            for (&u, &wu) in gl.nodes.iter().zip(&gl.weights) {
                let (c1, c2) = ((1.0 - u).sqrt() * r, u.sqrt() * r);
                for &a in &angles {
                    for &b in &angles {
                        points.push(vec![C64::from_polar(c1, a), C64::from_polar(c2, b)]);
                        weights.push(wu / (m * m) as f64);
                    }
                }
            }
            Ok(SphereRule { points, weights })
        }
        _ => Err(param(format!("sphere quadrature supports n in {{1, 2}}, got {n}"))),
    }
}

/// Pushforward of the product rule onto the first coordinate `w_1`.
///
/// Integrands that depend on `w` only through `w_1` (everything evaluated at
/// `z = rho e_1` for radial data) see the same sum with the redundant angle
/// already collapsed.
pub(crate) fn first_coordinate_rule(n: usize, r: f64, order: usize) -> Result<SphereRule> {
    if n == 1 {
        return sphere_rule(1, r, order);
    }
    let full = sphere_rule(n, r, order)?;
    let m = (order + 2).next_multiple_of(2);
    let points = full.points.iter().step_by(m).map(|w| vec![w[0]]).collect();
    let weights = full.weights.chunks(m).map(|c| c.iter().sum()).collect();
    Ok(SphereRule { points, weights })
}

/// Nodes `(w, 0)` on the sphere of radius `r` with positive weights summing to one.
pub fn sphere_quadrature(n: usize, r: f64, order: usize) -> Result<Vec<(GroupElement, f64)>> {
    let rule = sphere_rule(n, r, order)?;
    Ok(rule
        .points
        .into_iter()
        .zip(rule.weights)
        .map(|(w, wt)| (GroupElement::new(w, 0.0), wt))
        .collect())
}

/// Surface area of the unit sphere `S^{2n-1}` in `C^n = R^{2n}`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let mut fact = 1.0;
    for j in 1..n {
        fact *= j as f64;
    }
    2.0 * std::f64::consts::PI.powi(n as i32) / fact
}
