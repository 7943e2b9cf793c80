use std::collections::BTreeMap;

use crate::heisenberg::field::{center_synthesis, MatrixProfile, PhysicalField};
use crate::error::{param, Error, Result};
use crate::heisenberg::{laguerre_mode, laguerre_mode_norm_sq, GeometryConfig};
use crate::linalg::{frobenius_sq, hermitian_part, max_abs, CMat, C64};
use crate::nc_lp::CenterAverage;
use crate::special_fn::{bessel_eta, SpectralPoint};

/// A finitely supported spectral representation `zeta -> c_zeta` with
/// Plancherel weights, so that `||f||_2^2 = sum_zeta w_zeta tr(c_zeta^* c_zeta)`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    pub geometry: GeometryConfig,
    pub fiber_dim: usize,
    entries: BTreeMap<SpectralPoint, (CMat, f64)>,
}

/// Plancherel weight of `zeta`: `||phi^lambda_k||^2` for Laguerre points, the
/// Fourier-Bessel weight for points of the Bessel grid and `1` for the trivial
/// character.
pub fn plancherel_weight(zeta: &SpectralPoint, geometry: &GeometryConfig) -> Result<f64> {
    match *zeta {
        SpectralPoint::Trivial => Ok(1.0),
        SpectralPoint::Laguerre { lambda, k } => Ok(laguerre_mode_norm_sq(lambda, k, geometry.n)),
        SpectralPoint::Bessel { u } => {
            let grid = &geometry.bessel_grid;
            grid.nodes
                .iter()
                .position(|&v| v.to_bits() == u.to_bits())
                .map(|i| grid.weights[i])
                .ok_or_else(|| param(format!("Bessel point u = {u} is not on the geometry's Bessel grid")))
        }
    }
}

impl SpectralField {
    pub fn zero(geometry: GeometryConfig, fiber_dim: usize) -> Self {
        Self { geometry, fiber_dim, entries: BTreeMap::new() }
    }

    /// Sets `c_zeta` with the geometry's Plancherel weight.
    pub fn insert(&mut self, zeta: SpectralPoint, c: CMat) -> Result<()> {
        let w = plancherel_weight(&zeta, &self.geometry)?;
        self.insert_weighted(zeta, c, w)
    }

    pub fn insert_weighted(&mut self, zeta: SpectralPoint, c: CMat, weight: f64) -> Result<()> {
        if c.nrows() != self.fiber_dim || c.ncols() != self.fiber_dim {
            return Err(Error::DimensionMismatch { expected: self.fiber_dim, got: c.nrows() });
        }
        if !(weight > 0.0) {
            return Err(param("Plancherel weights must be positive"));
        }
        self.entries.insert(zeta, (c, weight));
        Ok(())
    }

    pub fn with(mut self, zeta: SpectralPoint, c: CMat) -> Result<Self> {
        self.insert(zeta, c)?;
        Ok(self)
    }

    pub fn get(&self, zeta: &SpectralPoint) -> Option<&CMat> {
        self.entries.get(zeta).map(|e| &e.0)
    }

    pub fn weight(&self, zeta: &SpectralPoint) -> Option<f64> {
        self.entries.get(zeta).map(|e| e.1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SpectralPoint, &CMat, f64)> {
        self.entries.iter().map(|(z, (c, w))| (z, c, *w))
    }

    pub fn support(&self) -> Vec<SpectralPoint> {
        self.entries.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.values().map(|(c, w)| w * frobenius_sq(c)).sum::<f64>().sqrt()
    }

    /// Multiplies every coefficient by `m(zeta)`; points are kept even when the
    /// multiplier vanishes.
    pub fn map_multiplier(&self, m: impl Fn(&SpectralPoint) -> Result<C64>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (z, (c, w)) in &self.entries {
            entries.insert(*z, (c * m(z)?, *w));
        }
        Ok(Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, entries })
    }

    pub fn filter(&self, keep: impl Fn(&SpectralPoint) -> bool) -> Self {
        let entries = self.entries.iter().filter(|(z, _)| keep(z)).map(|(z, e)| (*z, e.clone())).collect();
        Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, entries }
    }

    pub fn scale(&self, s: C64) -> Self {
        let entries = self.entries.iter().map(|(z, (c, w))| (*z, (c * s, *w))).collect();
        Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, entries }
    }

    /// `self + s * other`; weights of shared points must agree.
    pub fn axpy(&self, s: C64, other: &Self) -> Result<Self> {
        if other.fiber_dim != self.fiber_dim {
            return Err(Error::DimensionMismatch { expected: self.fiber_dim, got: other.fiber_dim });
        }
        let mut entries = self.entries.clone();
        for (z, (c, w)) in &other.entries {
            match entries.get_mut(z) {
                Some((mine, wm)) => {
                    if (*wm - w).abs() > 1e-12 * wm.abs() {
                        return Err(param(format!("Plancherel weights disagree at {z}")));
                    }
                    *mine += c * s;
                }
                None => {
                    entries.insert(*z, (c * s, *w));
                }
            }
        }
        Ok(Self { geometry: self.geometry.clone(), fiber_dim: self.fiber_dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// Relative distance `||self - other||_2 / ||other||_2`.
    pub fn relative_error(&self, reference: &Self) -> Result<f64> {
        Ok(self.sub(reference)?.l2_norm() / reference.l2_norm().max(f64::MIN_POSITIVE))
    }

    /// Largest deviation from the symmetry `c_{-lambda,k} = c_{lambda,k}^*`
    /// (and `c = c^*` off the Laguerre part) of self-adjoint physical fields.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (z, (c, _)) in &self.entries {
            let partner = match *z {
                SpectralPoint::Laguerre { lambda, k } => SpectralPoint::Laguerre { lambda: -lambda, k },
                other => other,
            };
            let adj = c.adjoint();
            let d = match self.entries.get(&partner) {
                Some((pc, _)) => max_abs(&(pc - adj)),
                None => max_abs(c),
            };
            worst = worst.max(d);
        }
        worst
    }

    /// Projects onto spectral data of self-adjoint fields, adding the partner
    /// points `(-lambda, k)` where needed.
    pub fn hermitian_symmetrized(&self) -> Result<Self> {
        let mut out = Self::zero(self.geometry.clone(), self.fiber_dim);
        for (z, (c, w)) in &self.entries {
            match *z {
                SpectralPoint::Laguerre { lambda, k } => {
                    let partner = SpectralPoint::Laguerre { lambda: -lambda, k };
                    let pc = self.get(&partner).cloned().unwrap_or_else(|| CMat::zeros(self.fiber_dim, self.fiber_dim));
                    let sym = (c + pc.adjoint()) * C64::new(0.5, 0.0);
                    out.entries.insert(*z, (sym.clone(), *w));
                    out.entries.insert(partner, (sym.adjoint(), plancherel_weight(&partner, &self.geometry)?));
                }
                _ => {
                    out.entries.insert(*z, (hermitian_part(c), *w));
                }
            }
        }
        Ok(out)
    }

    pub fn has_bessel_mass(&self) -> bool {
        self.entries.keys().any(|z| z.is_bessel())
    }

    pub fn has_trivial_mass(&self) -> bool {
        self.entries.keys().any(|z| z.is_trivial())
    }

    /// Physical field on the geometry's grid,
    /// `f(rho, t) = sum_{lambda,k} c phi^lambda_k(rho) e^{-i lambda t} + sum_u c eta_u(rho) + c_trivial`.
    /// Requires integer `lambda` resolved by the center sampling.
    pub fn synthesize(&self) -> Result<PhysicalField> {
        let g = &self.geometry;
        let d = self.fiber_dim;
        let nodes = &g.radial_grid.nodes;
        let mut blocks: BTreeMap<i64, Vec<CMat>> = BTreeMap::new();
        for (z, (c, _)) in &self.entries {
            let (lambda, shape): (i64, Box<dyn Fn(f64) -> f64>) = match *z {
                SpectralPoint::Trivial => (0, Box::new(|_| 1.0)),
                SpectralPoint::Bessel { u } => (0, Box::new(move |r| bessel_eta(u, r, g.n).expect("u > 0"))),
                SpectralPoint::Laguerre { lambda, k } => {
                    if lambda.fract() != 0.0 {
                        return Err(Error::Domain(format!(
                            "physical synthesis needs integer lambda on the reduced group, got {lambda}"
                        )));
                    }
                    (lambda as i64, Box::new(move |r| laguerre_mode(lambda, k, g.n, r)))
                }
            };
            let block = blocks.entry(lambda).or_insert_with(|| vec![CMat::zeros(d, d); nodes.len()]);
            for (slot, &r) in block.iter_mut().zip(nodes) {
                let s = shape(r);
                if s != 0.0 {
                    *slot += c * C64::new(s, 0.0);
                }
            }
        }
        let profiles = blocks
            .into_iter()
            .map(|(l, v)| Ok((l, MatrixProfile::new(nodes.clone(), v)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut f = center_synthesis(g.clone(), &profiles)?;
        if f.fiber_dim != d {
            f = PhysicalField::constant(g.clone(), &CMat::zeros(d, d))?;
        }
        let scale = self.entries.values().map(|(c, _)| max_abs(c)).fold(0.0, f64::max);
        if self.hermitian_defect() <= 1e-13 * scale.max(1.0) {
            return f.with_hermitian(true);
        }
        Ok(f)
    }
}

impl CenterAverage for SpectralField {
    /// Keeps the center-independent (Bessel and trivial) mass.
    fn center_average(&self) -> Self {
        self.filter(|z| !z.is_laguerre())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::partial_fourier;

    fn geometry() -> GeometryConfig {
        GeometryConfig::new(2, &[-2, -1, 1, 2], 6, 16.0, 160).unwrap()
    }

    #[test]
    fn plancherel_matches_physical_norm() {
        let g = geometry();
        let x = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.3, -0.2), C64::new(0.3, 0.2), C64::new(-0.5, 0.0)]);
        let f = SpectralField::zero(g.clone(), 2)
            .with(SpectralPoint::laguerre(1.0, 2).unwrap(), x.clone())
            .unwrap()
            .with(SpectralPoint::laguerre(-2.0, 0).unwrap(), x.clone() * C64::new(0.0, 0.5))
            .unwrap();
        let phys = f.synthesize().unwrap();
        let rel = (phys.l2_norm() - f.l2_norm()).abs() / f.l2_norm();
        assert!(rel < 1e-6, "{rel}");
    }

    #[test]
    fn synthesis_respects_center_convention() {
        let g = geometry();
        let zeta = SpectralPoint::laguerre(-1.0, 1).unwrap();
        let f = SpectralField::zero(g.clone(), 1).with(zeta, CMat::identity(1, 1)).unwrap();
        let phys = f.synthesize().unwrap();
        let prof = partial_fourier(&phys, -1).unwrap();
        for (r, v) in prof.grid.iter().zip(&prof.values) {
            assert!((v[(0, 0)].re - laguerre_mode(-1.0, 1, 2, *r)).abs() < 1e-13);
        }
    }

    #[test]
    fn symmetrized_fields_synthesize_hermitian() {
        let g = geometry();
        let c = CMat::from_row_slice(2, 2, &[C64::new(1.0, 2.0), C64::new(0.0, 1.0), C64::new(3.0, 0.0), C64::new(0.0, -1.0)]);
        let f = SpectralField::zero(g.clone(), 2)
            .with(SpectralPoint::laguerre(1.0, 3).unwrap(), c.clone())
            .unwrap()
            .with(SpectralPoint::bessel(g.bessel_grid.nodes[2]).unwrap(), c.clone())
            .unwrap()
            .with(SpectralPoint::Trivial, c)
            .unwrap()
            .hermitian_symmetrized()
            .unwrap();
        assert!(f.hermitian_defect() < 1e-15);
        assert!(f.synthesize().unwrap().is_hermitian());
    }

    #[test]
    fn non_integer_lambda_has_no_physical_form() {
        let f = SpectralField::zero(geometry(), 1).with(SpectralPoint::laguerre(0.5, 1).unwrap(), CMat::identity(1, 1)).unwrap();
        assert!(matches!(f.synthesize(), Err(Error::Domain(_))));
        assert!(SpectralField::zero(geometry(), 1).with(SpectralPoint::bessel(0.123).unwrap(), CMat::identity(1, 1)).is_err());
    }
}
