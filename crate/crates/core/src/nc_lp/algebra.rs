use crate::error::{param, Error, Result};
use crate::heisenberg::PhysicalField;
use crate::linalg::{hermitian_defect, max_abs, CMat};

/// `L_infty(grid) (x) M_d` with trace `tau(x) = sum_g w_g tr(x_g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TracialAlgebra {
    pub fiber_dim: usize,
    pub weights: Vec<f64>,
}

impl TracialAlgebra {
    pub fn new(fiber_dim: usize, weights: Vec<f64>) -> Result<Self> {
        if fiber_dim == 0 || weights.is_empty() {
            return Err(param("algebra needs d >= 1 and at least one grid point"));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(param("algebra weights must be positive and finite"));
        }
        Ok(Self { fiber_dim, weights })
    }

    /// The bare matrix algebra `M_d` with its standard trace.
    pub fn matrices(fiber_dim: usize) -> Self {
        Self { fiber_dim, weights: vec![1.0] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn trace_of_identity(&self) -> f64 {
        self.fiber_dim as f64 * self.weights.iter().sum::<f64>()
    }
}

/// An element of a [`TracialAlgebra`], one `d x d` matrix per grid point.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub algebra: TracialAlgebra,
    pub fibers: Vec<CMat>,
    hermitian: bool,
}

impl AlgebraElement {
    pub fn new(algebra: TracialAlgebra, fibers: Vec<CMat>) -> Result<Self> {
        if fibers.len() != algebra.len() {
            return Err(Error::DimensionMismatch { expected: algebra.len(), got: fibers.len() });
        }
        let d = algebra.fiber_dim;
        if let Some(m) = fibers.iter().find(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: m.nrows() });
        }
        if fibers.iter().any(|m| m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
            return Err(param("algebra element has non-finite entries"));
        }
        Ok(Self { algebra, fibers, hermitian: false })
    }

    /// Builds a self-adjoint element, checking `||x - x*|| <= 1e-12 ||x||`.
    pub fn hermitian(algebra: TracialAlgebra, fibers: Vec<CMat>) -> Result<Self> {
        let mut x = Self::new(algebra, fibers)?;
        let scale = x.fibers.iter().map(max_abs).fold(0.0, f64::max);
        let defect = x.fibers.iter().map(hermitian_defect).fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(Error::Domain(format!("element is not self-adjoint (defect {defect:.3e})")));
        }
        x.hermitian = true;
        Ok(x)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn single(x: CMat) -> Result<Self> {
        Self::new(TracialAlgebra::matrices(x.nrows()), vec![x])
    }

    pub fn single_hermitian(x: CMat) -> Result<Self> {
        Self::hermitian(TracialAlgebra::matrices(x.nrows()), vec![x])
    }

    /// The grid element of a physical field, with cell weights as trace weights.
    pub fn from_physical(f: &PhysicalField) -> Result<Self> {
        let t = f.center_len();
        let weights = (0..f.radial_len() * t).map(|i| f.cell_weight(i / t)).collect();
        let algebra = TracialAlgebra::new(f.fiber_dim, weights)?;
        if f.is_hermitian() {
            Self::hermitian(algebra, f.values().to_vec())
        } else {
            Self::new(algebra, f.values().to_vec())
        }
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self { algebra: self.algebra.clone(), fibers: self.fibers.iter().map(f).collect(), hermitian: false }
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.map(|m| m * crate::linalg::C64::new(c, 0.0));
        out.hermitian = self.hermitian;
        out
    }

    pub fn sup_norm(&self) -> f64 {
        self.fibers.iter().map(crate::linalg::op_norm).fold(0.0, f64::max)
    }
}
