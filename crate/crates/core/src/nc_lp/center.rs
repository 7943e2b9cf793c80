use crate::heisenberg::PhysicalField;
use crate::linalg::{CMat, C64};
use crate::spectral::SpectralField;

/// The center average `E f(z, t) = (1/2pi) int_0^{2pi} f(z, s) ds`.
pub trait CenterAverage: Sized {
    fn center_average(&self) -> Self;
}

pub fn center_average<T: CenterAverage>(f: &T) -> T {
    f.center_average()
}

/// Projection onto invariant vectors: the mass at the trivial character.
pub fn fixed_point_part(f: &SpectralField) -> SpectralField {
    f.filter(|z| z.is_trivial())
}

impl CenterAverage for PhysicalField {
    fn center_average(&self) -> Self {
        let t = self.center_len();
        let d = self.fiber_dim;
        let mut values = Vec::with_capacity(self.values().len());
        for p in 0..self.radial_len() {
            let mut acc = CMat::zeros(d, d);
            for j in 0..t {
                acc += self.at(p, j);
            }
            let mean = acc / C64::new(t as f64, 0.0);
            values.extend(std::iter::repeat_n(mean, t));
        }
        PhysicalField::from_parts(self.geometry.clone(), d, values, self.is_hermitian())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::GeometryConfig;
    use crate::linalg::max_abs;

    #[test]
    fn kills_characters_and_is_idempotent() {
        let g = GeometryConfig::new(2, &[-2, -1, 1, 2], 4, 6.0, 12).unwrap();
        let f = PhysicalField::from_fn(g.clone(), 1, |rho, t| CMat::from_element(1, 1, C64::from_polar(rho, -t))).unwrap();
        assert!(f.center_average().values().iter().all(|m| max_abs(m) < 1e-15));
        let h = PhysicalField::from_fn(g, 1, |rho, t| CMat::from_element(1, 1, C64::new(rho + (2.0 * t).cos(), 0.0))).unwrap();
        let e = h.center_average();
        for p in 0..h.radial_len() {
            assert!((e.at(p, 3)[(0, 0)].re - h.geometry.radial_grid.nodes[p]).abs() < 1e-14);
        }
        let ee = e.center_average();
        assert!(ee.sub(&e).unwrap().max_abs() <= 1e-13);
    }
}
