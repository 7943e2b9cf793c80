use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::sphere::unit_sphere_area;
use crate::error::{param, Result};
use crate::special_fn::{bessel_j, bessel_zeros};

/// Radial nodes in `|z|` with weights of the measure `|S^{2n-1}| rho^{2n-1} d rho`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialGrid {
    /// Midpoint rule on `[0, rho_max]`.
    pub fn uniform(n: usize, rho_max: f64, count: usize) -> Result<Self> {
        if count < 4 || !(rho_max > 0.0) {
            return Err(param(format!(
                "radial grid needs at least 4 nodes and rho_max > 0 (got {count}, {rho_max})"
            )));
        }
        let h = rho_max / count as f64;
        let area = unit_sphere_area(n);
        let nodes: Vec<f64> = (0..count).map(|p| (p as f64 + 0.5) * h).collect();
        let weights = nodes.iter().map(|&r| area * r.powi(2 * n as i32 - 1) * h).collect();
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0)
    }

    /// Nominal right end of the interpolable range.
    pub fn edge(&self) -> f64 {
        match self.nodes.len() {
            0 => 0.0,
            1 => self.nodes[0],
            p => self.nodes[p - 1] + 0.5 * (self.nodes[p - 1] - self.nodes[p - 2]),
        }
    }

    pub fn truncated(&self, count: usize) -> Self {
        Self {
            nodes: self.nodes[..count].to_vec(),
            weights: self.weights[..count].to_vec(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.nodes.len() != self.weights.len() || self.nodes.len() < 4 {
            return Err(param("radial grid needs matching nodes/weights and at least 4 nodes"));
        }
        if !(self.nodes[0] > 0.0) || self.nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(param("radial nodes must be positive and strictly increasing"));
        }
        if self.weights.iter().any(|&w| !(w > 0.0)) {
            return Err(param("radial weights must be positive"));
        }
        Ok(())
    }
}

/// Fourier-Bessel frequencies `u_k = j_{n-1,k} / R` on the disc of radius `R`
/// with the Plancherel weights `||eta_{u_k}||^2` on that disc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselGrid {
    pub radius: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl BesselGrid {
    pub fn fourier_bessel(n: usize, radius: f64, count: usize) -> Result<Self> {
        if n == 0 || count == 0 || !(radius > 0.0) {
            return Err(param("Bessel grid needs n >= 1, count >= 1 and radius > 0"));
        }
        let nu = n - 1;
        let cn = eta_constant(n);
        let area = unit_sphere_area(n);
        let zeros = bessel_zeros(nu, count);
        let nodes: Vec<f64> = zeros.iter().map(|j| j / radius).collect();
        let weights = zeros
            .iter()
            .zip(&nodes)
            .map(|(&j, &u)| {
                let jp = bessel_j(nu + 1, j);
                area * cn * cn * u.powi(-2 * nu as i32) * radius * radius * jp * jp / 2.0
            })
            .collect();
        Ok(Self { radius, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `2^{n-1} (n-1)!`, the normalization making `eta_u(0) = 1`.
pub(crate) fn eta_constant(n: usize) -> f64 {
    (1..n).fold(2f64.powi(n as i32 - 1), |acc, j| acc * j as f64)
}

/// Discretization of `L_infty(H^n_reduced)` for radial fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub n: usize,
    pub center_period: f64,
    pub radial_grid: RadialGrid,
    pub center_samples: usize,
    pub lambda_set: Vec<i64>,
    pub k_max: usize,
    pub bessel_grid: BesselGrid,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self::new(2, &[-2, -1, 1, 2], 8, 16.0, 160).expect("default geometry is valid")
    }
}

impl GeometryConfig {
    /// Uniform radial grid on `[0, rho_max]`, the minimal odd number of center
    /// samples for `lambda_set`, and a 32-point Fourier-Bessel grid on radius 40.
    pub fn new(n: usize, lambda_set: &[i64], k_max: usize, rho_max: f64, radial_nodes: usize) -> Result<Self> {
        let top = lambda_set.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        let g = Self {
            n,
            center_period: TAU,
            radial_grid: RadialGrid::uniform(n, rho_max, radial_nodes)?,
            center_samples: 2 * top + 1,
            lambda_set: lambda_set.to_vec(),
            k_max,
            bessel_grid: BesselGrid::fourier_bessel(n, 40.0, 32)?,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(param("n must be at least 1"));
        }
        if self.center_period != TAU {
            return Err(param(format!("center period is fixed at 2 pi, got {}", self.center_period)));
        }
        self.radial_grid.validate()?;
        if self.lambda_set.contains(&0) {
            return Err(param("lambda_set must not contain 0"));
        }
        let top = self.max_lambda();
        if self.center_samples < 2 * top + 1 {
            return Err(param(format!(
                "center_samples = {} < 2 max|lambda| + 1 = {}",
                self.center_samples,
                2 * top + 1
            )));
        }
        if self.bessel_grid.nodes.len() != self.bessel_grid.weights.len()
            || self.bessel_grid.nodes.iter().any(|&u| !(u > 0.0))
            || self.bessel_grid.weights.iter().any(|&w| !(w > 0.0))
        {
            return Err(param("Bessel grid needs positive nodes with positive weights"));
        }
        Ok(())
    }

    pub fn max_lambda(&self) -> usize {
        self.lambda_set.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn center_times(&self) -> Vec<f64> {
        let t = self.center_samples;
        (0..t).map(|j| TAU * j as f64 / t as f64).collect()
    }

    /// Same geometry with the radial grid refined by `factor` and the range kept.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let mut g = self.clone();
        g.radial_grid = RadialGrid::uniform(self.n, self.radial_grid.edge(), self.radial_grid.len() * factor)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_integrates_gaussian() {
        // int_{C^2} e^{-|z|^2} dz = pi^2
        let g = RadialGrid::uniform(2, 12.0, 600).unwrap();
        let v: f64 = g.nodes.iter().zip(&g.weights).map(|(r, w)| w * (-r * r).exp()).sum();
        assert!((v - std::f64::consts::PI.powi(2)).abs() < 1e-5);
    }

    #[test]
    fn default_is_valid() {
        let g = GeometryConfig::default();
        assert_eq!(g.center_samples, 5);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_bad_center_sampling() {
        let mut g = GeometryConfig::default();
        g.center_samples = 3;
        assert!(g.validate().is_err());
        g.center_samples = 5;
        g.lambda_set.push(0);
        assert!(g.validate().is_err());
    }
}
