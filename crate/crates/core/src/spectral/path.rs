use crate::error::{param, Result};
use crate::linalg::{CMat, C64};
use crate::quadrature::cubic_weights;

/// A smooth map `r -> d x d` matrix on `r > 0`.
pub trait MatrixPath: Sync {
    fn fiber_dim(&self) -> usize;
    fn eval(&self, r: f64) -> CMat;

    /// `d^k/dr^k` at `r`; by default Richardson-extrapolated central
    /// differences with step `0.02 r`.
    fn derivative(&self, r: f64, k: usize) -> Result<CMat> {
        richardson_derivative(&|s| self.eval(s), r, k, 0.02 * r)
    }
}

const STENCILS: [&[f64]; 5] = [
    &[1.0],
    &[-0.5, 0.0, 0.5],
    &[1.0, -2.0, 1.0],
    &[-0.5, 1.0, 0.0, -1.0, 0.5],
    &[1.0, -4.0, 6.0, -4.0, 1.0],
];

fn central(f: &dyn Fn(f64) -> CMat, r: f64, k: usize, h: f64) -> CMat {
    let st = STENCILS[k];
    let half = (st.len() / 2) as f64;
    let mut acc = f(r) * C64::new(0.0, 0.0);
    for (i, &c) in st.iter().enumerate() {
        if c != 0.0 {
            acc += f(r + (i as f64 - half) * h) * C64::new(c, 0.0);
        }
    }
    acc / C64::new(h.powi(k as i32), 0.0)
}

/// Central difference of order `k <= 4` at steps `h` and `h/2`, combined to cancel the `h^2` error.
pub fn richardson_derivative(f: &dyn Fn(f64) -> CMat, r: f64, k: usize, h: f64) -> Result<CMat> {
    if k == 0 {
        return Ok(f(r));
    }
    if k >= STENCILS.len() {
        return Err(param(format!("derivative order {k} exceeds 4")));
    }
    if !(h > 0.0) {
        return Err(param("difference step must be positive"));
    }
    let coarse = central(f, r, k, h);
    let fine = central(f, r, k, 0.5 * h);
    Ok((fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0))
}

/// Samples on an increasing radial grid with piecewise-cubic interpolation.
#[derive(Clone, Debug)]
pub struct OperatorPath {
    pub r_grid: Vec<f64>,
    pub values: Vec<CMat>,
}

/// `count` geometrically spaced radii on `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(param(format!("geometric grid needs 0 < lo < hi and count >= 2 (got {lo}, {hi}, {count})")));
    }
    let q = (hi / lo).ln() / (count - 1) as f64;
    let mut g: Vec<f64> = (0..count).map(|i| lo * (q * i as f64).exp()).collect();
    g[count - 1] = hi;
    Ok(g)
}

/// The default path grid: 256 geometric nodes on `[1e-3, 50]`.
pub fn default_r_grid() -> Vec<f64> {
    geometric_grid(1e-3, 50.0, 256).expect("valid default grid")
}

impl OperatorPath {
    pub fn new(r_grid: Vec<f64>, values: Vec<CMat>) -> Result<Self> {
        if r_grid.len() != values.len() || r_grid.len() < 4 {
            return Err(param("operator path needs at least 4 samples matching its grid"));
        }
        if !(r_grid[0] > 0.0) || r_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(param("operator path grid must be positive and strictly increasing"));
        }
        if values.iter().any(|m| m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
            return Err(param("operator path values must be finite"));
        }
        Ok(Self { r_grid, values })
    }

    pub fn sample(path: &dyn MatrixPath, r_grid: Vec<f64>) -> Result<Self> {
        let values = r_grid.iter().map(|&r| path.eval(r)).collect();
        Self::new(r_grid, values)
    }

    pub fn max_r(&self) -> f64 {
        self.r_grid[self.r_grid.len() - 1]
    }
}

impl MatrixPath for OperatorPath {
    fn fiber_dim(&self) -> usize {
        self.values[0].nrows()
    }

    fn eval(&self, r: f64) -> CMat {
        let (s, w) = cubic_weights(&self.r_grid, r);
        let mut out = &self.values[s] * C64::new(w[0], 0.0);
        for j in 1..4 {
            out += &self.values[s + j] * C64::new(w[j], 0.0);
        }
        out
    }
}

/// A path given by a closure.
pub struct FnPath<F> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(f64) -> CMat + Sync> MatrixPath for FnPath<F> {
    fn fiber_dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, r: f64) -> CMat {
        (self.f)(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn grid_and_interpolation() {
        let g = default_r_grid();
        assert_eq!(g.len(), 256);
        assert!((g[0] - 1e-3).abs() < 1e-18 && g[255] == 50.0);
        let cubic = |r: f64| CMat::from_element(1, 1, C64::new(r * r * r - 2.0 * r + 1.0, 0.0));
        let p = OperatorPath::sample(&FnPath { dim: 1, f: cubic }, g).unwrap();
        for r in [0.0105, 0.77, 13.3, 49.0] {
            assert!(max_abs(&(p.eval(r) - cubic(r))) < 1e-9 * (1.0 + r.powi(3)));
        }
        assert!(OperatorPath::new(vec![1.0, 0.5, 2.0, 3.0], vec![CMat::zeros(1, 1); 4]).is_err());
    }

    #[test]
    fn finite_differences_of_smooth_paths() {
        let f = |r: f64| CMat::from_element(1, 1, C64::new((0.7 * r).sin(), r.ln()));
        let p = FnPath { dim: 1, f };
        let r = 1.9;
        let d1 = p.derivative(r, 1).unwrap()[(0, 0)];
        assert!((d1 - C64::new(0.7 * (0.7 * r).cos(), 1.0 / r)).norm() < 1e-8);
        let d2 = p.derivative(r, 2).unwrap()[(0, 0)];
        assert!((d2 - C64::new(-0.49 * (0.7 * r).sin(), -1.0 / (r * r))).norm() < 1e-7);
    }
}
