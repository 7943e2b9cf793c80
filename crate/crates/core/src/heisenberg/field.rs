use std::f64::consts::TAU;

use super::geometry::GeometryConfig;
use crate::error::{param, Error, Result};
use crate::linalg::{hermitian_defect, max_abs, CMat, C64};
use crate::quadrature::cubic_weights;

/// A `d x d` matrix-valued function of `|z|`.
pub trait RadialProfile: Sync {
    fn fiber_dim(&self) -> usize;
    fn eval(&self, rho: f64) -> CMat;
}

impl<F: Fn(f64) -> CMat + Sync> RadialProfile for (usize, F) {
    fn fiber_dim(&self) -> usize {
        self.0
    }

    fn eval(&self, rho: f64) -> CMat {
        (self.1)(rho)
    }
}

/// Samples of a radial profile on an increasing grid, interpolated by local
/// cubics on the even extension through the origin.
#[derive(Clone, Debug)]
pub struct MatrixProfile {
    pub grid: Vec<f64>,
    pub values: Vec<CMat>,
    ext_grid: Vec<f64>,
}

const REFLECT: usize = 3;

impl MatrixProfile {
    pub fn new(grid: Vec<f64>, values: Vec<CMat>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 4 {
            return Err(param("profile needs at least 4 samples matching its grid"));
        }
        let mut ext_grid: Vec<f64> = grid[..REFLECT].iter().rev().map(|r| -r).collect();
        ext_grid.extend_from_slice(&grid);
        Ok(Self { grid, values, ext_grid })
    }

    pub fn sample(profile: &dyn RadialProfile, grid: &[f64]) -> Result<Self> {
        Self::new(grid.to_vec(), grid.iter().map(|&r| profile.eval(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, |m| m.nrows())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Stencil start in the unreflected sample list (may be negative) and the
    /// cubic weights at `|rho|`.
    pub(crate) fn stencil(&self, rho: f64) -> (isize, [f64; 4]) {
        let (s, w) = cubic_weights(&self.ext_grid, rho.abs());
        (s as isize - REFLECT as isize, w)
    }

    pub(crate) fn index(&self, i: isize) -> usize {
        // sample -1 - j is the mirror image of sample j
        if i < 0 {
            (-1 - i) as usize
        } else {
            i as usize
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|m| m * c).collect(), ext_grid: self.ext_grid.clone() }
    }
}

impl RadialProfile for MatrixProfile {
    fn fiber_dim(&self) -> usize {
        self.dim()
    }

    /// Zero beyond the last sample.
    fn eval(&self, rho: f64) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        if rho.abs() > self.grid[self.len() - 1] {
            return out;
        }
        let (s, w) = self.stencil(rho);
        for (j, wj) in w.iter().enumerate() {
            out += &self.values[self.index(s + j as isize)] * C64::new(*wj, 0.0);
        }
        out
    }
}

/// A radial matrix field on `H^n_reduced` sampled at (radial node, center node).
#[derive(Clone, Debug)]
pub struct PhysicalField {
    pub geometry: GeometryConfig,
    pub fiber_dim: usize,
    values: Vec<CMat>,
    hermitian: bool,
}

impl PhysicalField {
    /// `values[p * T + j]` is the fiber at radial node `p` and center sample `j`.
    pub fn new(geometry: GeometryConfig, fiber_dim: usize, values: Vec<CMat>) -> Result<Self> {
        geometry.validate()?;
        let expected = geometry.radial_grid.len() * geometry.center_samples;
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: values.len() });
        }
        if let Some(m) = values.iter().find(|m| m.nrows() != fiber_dim || m.ncols() != fiber_dim) {
            return Err(Error::DimensionMismatch { expected: fiber_dim, got: m.nrows() });
        }
        Ok(Self { geometry, fiber_dim, values, hermitian: false })
    }

    pub fn from_fn(geometry: GeometryConfig, fiber_dim: usize, f: impl Fn(f64, f64) -> CMat) -> Result<Self> {
        let times = geometry.center_times();
        let values = geometry
            .radial_grid
            .nodes
            .iter()
            .flat_map(|&rho| times.iter().map(move |&t| (rho, t)))
            .map(|(rho, t)| f(rho, t))
            .collect();
        Self::new(geometry, fiber_dim, values)
    }

    pub fn constant(geometry: GeometryConfig, x: &CMat) -> Result<Self> {
        Self::from_fn(geometry, x.nrows(), |_, _| x.clone())
    }

    /// Sets the Hermitian flag after checking every fiber.
    pub fn with_hermitian(mut self, flag: bool) -> Result<Self> {
        if flag {
            for (i, m) in self.values.iter().enumerate() {
                let defect = hermitian_defect(m);
                if defect > 1e-12 * max_abs(m).max(1.0) {
                    return Err(Error::Domain(format!("fiber {i} is not Hermitian (defect {defect:.3e})")));
                }
            }
        }
        self.hermitian = flag;
        Ok(self)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn values(&self) -> &[CMat] {
        &self.values
    }

    pub fn into_values(self) -> Vec<CMat> {
        self.values
    }

    pub fn at(&self, p: usize, j: usize) -> &CMat {
        &self.values[p * self.geometry.center_samples + j]
    }

    pub fn radial_len(&self) -> usize {
        self.geometry.radial_grid.len()
    }

    pub fn center_len(&self) -> usize {
        self.geometry.center_samples
    }

    /// Grid weight of the cell at radial node `p`, center measure normalized.
    pub fn cell_weight(&self, p: usize) -> f64 {
        self.geometry.radial_grid.weights[p] / self.geometry.center_samples as f64
    }

    /// `||f||_2` under the grid trace `sum_p w_p (1/T) sum_j tr|f|^2`.
    pub fn l2_norm(&self) -> f64 {
        let t = self.center_len();
        let mut acc = 0.0;
        for p in 0..self.radial_len() {
            let s: f64 = (0..t).map(|j| crate::linalg::frobenius_sq(self.at(p, j))).sum();
            acc += self.cell_weight(p) * s;
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(max_abs).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, values: self.values.iter().map(f).collect(), hermitian: false }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, values, hermitian: self.hermitian && other.hermitian })
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<()> {
        if self.geometry.radial_grid != other.geometry.radial_grid || self.geometry.center_samples != other.geometry.center_samples {
            return Err(param("fields live on different grids"));
        }
        if self.fiber_dim != other.fiber_dim {
            return Err(Error::DimensionMismatch { expected: self.fiber_dim, got: other.fiber_dim });
        }
        Ok(())
    }

    /// Relative discrete L2 distance `||self - other|| / ||other||`.
    pub fn relative_l2_error(&self, reference: &Self) -> Result<f64> {
        let diff = self.sub(reference)?;
        Ok(diff.l2_norm() / reference.l2_norm().max(f64::MIN_POSITIVE))
    }

    /// Keeps the first `count` radial nodes.
    pub fn truncated(&self, count: usize) -> Self {
        let mut geometry = self.geometry.clone();
        geometry.radial_grid = geometry.radial_grid.truncated(count);
        let t = self.center_len();
        Self { geometry, fiber_dim: self.fiber_dim, values: self.values[..count * t].to_vec(), hermitian: self.hermitian }
    }

    pub(crate) fn from_parts(geometry: GeometryConfig, fiber_dim: usize, values: Vec<CMat>, hermitian: bool) -> Self {
        Self { geometry, fiber_dim, values, hermitian }
    }
}

/// `f^lambda(rho) = (1/2pi) int_0^{2pi} f(rho, t) e^{i lambda t} dt` by the
/// rectangle rule on the center samples.
pub fn partial_fourier(f: &PhysicalField, lambda: i64) -> Result<MatrixProfile> {
    let t = f.center_len();
    let needed = 2 * lambda.unsigned_abs() as usize + 1;
    if needed > t {
        return Err(Error::Aliasing { lambda, needed, have: t });
    }
    let chars: Vec<C64> = (0..t)
        .map(|j| C64::from_polar(1.0 / t as f64, TAU * (lambda * j as i64).rem_euclid(t as i64) as f64 / t as f64))
        .collect();
    let d = f.fiber_dim;
    let values = (0..f.radial_len())
        .map(|p| {
            let mut acc = CMat::zeros(d, d);
            for (j, c) in chars.iter().enumerate() {
                acc += f.at(p, j) * *c;
            }
            acc
        })
        .collect();
    MatrixProfile::new(f.geometry.radial_grid.nodes.clone(), values)
}

/// Frequencies `-(T-1)/2 ..= (T-1)/2` resolved by `T` center samples.
pub fn resolved_frequencies(center_samples: usize) -> std::ops::RangeInclusive<i64> {
    let m = ((center_samples - 1) / 2) as i64;
    -m..=m
}

/// Inverse of [`partial_fourier`]: `f(rho, t) = sum_lambda f^lambda(rho) e^{-i lambda t}`.
pub fn center_synthesis(geometry: GeometryConfig, blocks: &[(i64, MatrixProfile)]) -> Result<PhysicalField> {
    let d = blocks.first().map_or(1, |b| b.1.dim());
    let t = geometry.center_samples;
    let p_len = geometry.radial_grid.len();
    for (lambda, prof) in blocks {
        let needed = 2 * lambda.unsigned_abs() as usize + 1;
        if needed > t {
            return Err(Error::Aliasing { lambda: *lambda, needed, have: t });
        }
        if prof.len() != p_len {
            return Err(Error::DimensionMismatch { expected: p_len, got: prof.len() });
        }
    }
    let mut values = vec![CMat::zeros(d, d); p_len * t];
    for (lambda, prof) in blocks {
        for j in 0..t {
            let c = C64::from_polar(1.0, -TAU * (lambda * j as i64).rem_euclid(t as i64) as f64 / t as f64);
            for p in 0..p_len {
                values[p * t + j] += &prof.values[p] * c;
            }
        }
    }
    PhysicalField::new(geometry, d, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_gaussian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn geometry() -> GeometryConfig {
        let mut g = GeometryConfig::new(2, &[-2, -1, 1, 2], 4, 8.0, 40).unwrap();
        g.center_samples = 7;
        g
    }

    #[test]
    fn single_character_is_isolated() {
        let g = geometry();
        let x = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 2.0), C64::new(-1.0, 0.5), C64::new(3.0, 0.0)]);
        let f = PhysicalField::from_fn(g, 2, |rho, t| &x * C64::from_polar((-rho * rho).exp(), -2.0 * t)).unwrap();
        for lambda in resolved_frequencies(7) {
            let prof = partial_fourier(&f, lambda).unwrap();
            for (rho, v) in prof.grid.iter().zip(&prof.values) {
                let expect = if lambda == 2 { &x * C64::new((-rho * rho).exp(), 0.0) } else { CMat::zeros(2, 2) };
                assert!(max_abs(&(v - expect)) < 1e-13);
            }
        }
        assert!(matches!(partial_fourier(&f, 4), Err(Error::Aliasing { needed: 9, have: 7, .. })));
    }

    #[test]
    fn center_independent_field() {
        let x = CMat::identity(2, 2);
        let f = PhysicalField::constant(geometry(), &x).unwrap();
        assert!(max_abs(&(partial_fourier(&f, 0).unwrap().values[5].clone() - &x)) < 1e-15);
        assert!(max_abs(&partial_fourier(&f, 1).unwrap().values[5]) < 1e-15);
    }

    #[test]
    fn parseval_on_band_limited_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = geometry();
        let blocks: Vec<(i64, MatrixProfile)> = resolved_frequencies(7)
            .map(|l| {
                let vals = (0..g.radial_grid.len()).map(|_| random_gaussian(&mut rng, 2)).collect();
                (l, MatrixProfile::new(g.radial_grid.nodes.clone(), vals).unwrap())
            })
            .collect();
        let f = center_synthesis(g.clone(), &blocks).unwrap();
        for p in [0, 17, 39] {
            let lhs: f64 = resolved_frequencies(7)
                .map(|l| crate::linalg::frobenius_sq(&partial_fourier(&f, l).unwrap().values[p]))
                .sum();
            let rhs: f64 = (0..7).map(|j| crate::linalg::frobenius_sq(f.at(p, j))).sum::<f64>() / 7.0;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
        for (l, prof) in &blocks {
            let back = partial_fourier(&f, *l).unwrap();
            for (a, b) in back.values.iter().zip(&prof.values) {
                assert!(max_abs(&(a - b)) < 1e-13);
            }
        }
    }

    #[test]
    fn profile_interpolation_is_even_and_cubic_exact() {
        let grid: Vec<f64> = (0..20).map(|p| 0.25 * (p as f64 + 0.5)).collect();
        let vals = grid.iter().map(|r| CMat::from_element(1, 1, C64::new(1.0 + r * r - 0.1 * r.powi(4), 0.0))).collect();
        let prof = MatrixProfile::new(grid, vals).unwrap();
        // even quartics are not cubic-exact, so only compare to interpolation accuracy
        for rho in [0.0f64, 0.07, 1.33, 4.1] {
            let exact = 1.0 + rho * rho - 0.1 * rho.powi(4);
            assert!((prof.eval(rho)[(0, 0)].re - exact).abs() < 2e-3);
            assert_eq!(prof.eval(rho), prof.eval(-rho));
        }
    }

    #[test]
    fn hermitian_flag_is_verified() {
        let x = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 1.0), C64::new(1.0, 0.0)]);
        assert!(PhysicalField::constant(geometry(), &x).unwrap().with_hermitian(true).is_err());
        let h = crate::linalg::hermitian_part(&x);
        assert!(PhysicalField::constant(geometry(), &h).unwrap().with_hermitian(true).is_ok());
    }
}
