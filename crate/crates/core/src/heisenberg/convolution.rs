use rayon::prelude::*;

use super::field::{partial_fourier, resolved_frequencies, MatrixProfile, PhysicalField, RadialProfile};
use super::sphere::first_coordinate_rule;
use crate::error::{param, Error, Result};
use crate::linalg::{max_abs, CMat, C64};
use crate::quadrature::gauss_legendre;

pub const DEFAULT_SPHERE_ORDER: usize = 64;

/// Relative size below which a profile counts as vanished at the grid edge.
pub const DECAY_THRESHOLD: f64 = 1e-10;

fn decayed(prof: &MatrixProfile, scale: f64) -> bool {
    prof.values.last().map_or(true, |m| max_abs(m) <= DECAY_THRESHOLD * scale)
}

/// Accumulates `c * prof(rho)` into the column-major buffer `acc`; zero
/// beyond the last sample.
fn add_interpolated(prof: &MatrixProfile, rho: f64, c: C64, acc: &mut [C64]) {
    if rho > prof.grid[prof.len() - 1] {
        return;
    }
    let (s, w) = prof.stencil(rho);
    for (j, wj) in w.iter().enumerate() {
        let cw = c * wj;
        let m = prof.values[prof.index(s + j as isize)].as_slice();
        for (a, v) in acc.iter_mut().zip(m) {
            *a += cw * v;
        }
    }
}

/// `(f * sigma_r)(z, t) = int f((z, t)(w, 0)^{-1}) d sigma_r(w)` evaluated at
/// every grid node by product quadrature on the sphere, cubic interpolation in
/// `|z|` and trigonometric interpolation in `t`.
///
/// When the field has not decayed at the grid edge the output only covers the
/// radial nodes `rho` with `rho + r` inside the sampled range.
pub fn convolve_sigma_direct(f: &PhysicalField, r: f64, order: usize) -> Result<PhysicalField> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(param(format!("sphere radius must be positive, got {r}")));
    }
    let geom = &f.geometry;
    let rule = first_coordinate_rule(geom.n, r, order)?;
    let scale = f.max_abs().max(f64::MIN_POSITIVE);
    let mut blocks = Vec::new();
    for lambda in resolved_frequencies(geom.center_samples) {
        let prof = partial_fourier(f, lambda)?;
        if prof.max_abs() > 0.0 {
            blocks.push((lambda, prof));
        }
    }
    let nodes = &geom.radial_grid.nodes;
    let last = nodes[nodes.len() - 1];
    let count = if blocks.iter().all(|(_, p)| decayed(p, scale)) {
        nodes.len()
    } else {
        nodes.partition_point(|&rho| rho + r <= last)
    };
    if count == 0 {
        return Err(Error::OutOfRange { radius: r, limit: last - nodes[0] });
    }
    let d = f.fiber_dim;
    let t_len = geom.center_samples;
    let times = geom.center_times();
    let rows: Vec<Vec<CMat>> = nodes[..count]
        .par_iter()
        .map(|&rho| {
            let mut out = vec![CMat::zeros(d, d); t_len];
            let mut acc = vec![C64::new(0.0, 0.0); d * d];
            for (lambda, prof) in &blocks {
                acc.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
                let lam = *lambda as f64;
                for (w, &wt) in rule.points.iter().zip(&rule.weights) {
                    let w1 = w[0];
                    let dist = (rho * rho - 2.0 * rho * w1.re + r * r).max(0.0).sqrt();
                    let phase = C64::from_polar(wt, -lam * 0.5 * rho * w1.im);
                    add_interpolated(prof, dist, phase, &mut acc);
                }
                let block = CMat::from_column_slice(d, d, &acc);
                for (j, &t) in times.iter().enumerate() {
                    out[j] += &block * C64::from_polar(1.0, -lam * t);
                }
            }
            out
        })
        .collect();
    let mut geometry = geom.clone();
    geometry.radial_grid = geometry.radial_grid.truncated(count);
    let values: Vec<CMat> = rows.into_iter().flatten().collect();
    let out = PhysicalField::from_parts(geometry, d, values, false);
    if f.is_hermitian() {
        out.with_hermitian(true)
    } else {
        Ok(out)
    }
}

/// Quadrature resolution for [`twisted_convolve`].
#[derive(Clone, Copy, Debug)]
pub struct TwistedQuadrature {
    /// Truncation radius of the `omega` integral.
    pub radius: f64,
    pub radial_nodes: usize,
    pub sphere_order: usize,
}

impl Default for TwistedQuadrature {
    fn default() -> Self {
        Self { radius: 14.0, radial_nodes: 128, sphere_order: 64 }
    }
}

/// `(g *_lambda h)(z) = int_{C^n} g(z - w) h(w) e^{i (lambda/2) Im(z . conj(w))} dw`
/// at `|z| = rho` for each `rho` in `out_grid`, by direct polar quadrature.
pub fn twisted_convolve(
    g: &dyn RadialProfile,
    h: &dyn RadialProfile,
    lambda: f64,
    n: usize,
    out_grid: &[f64],
    quad: TwistedQuadrature,
) -> Result<MatrixProfile> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(param(format!("twisted convolution needs finite lambda != 0, got {lambda}")));
    }
    if g.fiber_dim() != h.fiber_dim() {
        return Err(Error::DimensionMismatch { expected: g.fiber_dim(), got: h.fiber_dim() });
    }
    let radial = gauss_legendre(quad.radial_nodes).mapped(0.0, quad.radius);
    let area = super::sphere::unit_sphere_area(n);
    let rule = first_coordinate_rule(n, 1.0, quad.sphere_order)?;
    let h_vals: Vec<CMat> = radial.nodes.iter().map(|&s| h.eval(s)).collect();
    let scale_of = |p: &dyn RadialProfile| radial.nodes.iter().map(|&s| max_abs(&p.eval(s))).fold(0.0, f64::max);
    for p in [g, h] {
        let edge = max_abs(&p.eval(quad.radius));
        if edge > DECAY_THRESHOLD * scale_of(p).max(f64::MIN_POSITIVE) {
            return Err(Error::InsufficientDecay { value: edge, radius: quad.radius });
        }
    }
    let d = g.fiber_dim();
    let values = out_grid
        .par_iter()
        .map(|&rho| {
            let mut acc = CMat::zeros(d, d);
            for ((&s, &ws), hv) in radial.nodes.iter().zip(&radial.weights).zip(&h_vals) {
                let radial_w = ws * area * s.powi(2 * n as i32 - 1);
                let mut inner = CMat::zeros(d, d);
                for (theta, &wt) in rule.points.iter().zip(&rule.weights) {
                    let t1 = theta[0];
                    let dist = (rho * rho - 2.0 * rho * s * t1.re + s * s).max(0.0).sqrt();
                    // Im(z . conj(w)) = -rho s Im(theta_1) at z = rho e_1, w = s theta
                    let phase = C64::from_polar(wt, -0.5 * lambda * rho * s * t1.im);
                    inner += g.eval(dist) * phase;
                }
                acc += inner * hv * C64::new(radial_w, 0.0);
            }
            acc
        })
        .collect();
    MatrixProfile::new(out_grid.to_vec(), values)
}

/// Ordinary convolution of radial profiles on `R^{2n}`, the `lambda -> 0` limit
/// of [`twisted_convolve`].
pub fn euclidean_convolve(
    g: &dyn RadialProfile,
    h: &dyn RadialProfile,
    n: usize,
    out_grid: &[f64],
    quad: TwistedQuadrature,
) -> Result<MatrixProfile> {
    twisted_convolve(g, h, f64::MIN_POSITIVE, n, out_grid, quad)
}
