use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Element `(z, t)` of `H^n`; on the reduced group `t` lives in `[0, 2 pi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub z: Vec<C64>,
    pub t: f64,
}

impl GroupElement {
    pub fn new(z: Vec<C64>, t: f64) -> Self {
        Self { z, t }
    }

    pub fn identity(n: usize) -> Self {
        Self { z: vec![C64::new(0.0, 0.0); n], t: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn norm_z(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn reduced(mut self) -> Self {
        self.t = wrap_center(self.t);
        self
    }
}

pub fn wrap_center(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Symplectic pairing `Im(z . conj(w))`.
pub fn symplectic(z: &[C64], w: &[C64]) -> f64 {
    z.iter().zip(w).map(|(a, b)| (a * b.conj()).im).sum()
}

/// `(z, t)(w, s) = (z + w, t + s + Im(z . conj(w)) / 2)`.
pub fn group_op(g: &GroupElement, h: &GroupElement, reduced: bool) -> Result<GroupElement> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: h.dim() });
    }
    let z = g.z.iter().zip(&h.z).map(|(a, b)| a + b).collect();
    let t = g.t + h.t + 0.5 * symplectic(&g.z, &h.z);
    let out = GroupElement { z, t };
    Ok(if reduced { out.reduced() } else { out })
}

pub fn group_inv(g: &GroupElement, reduced: bool) -> GroupElement {
    let out = GroupElement { z: g.z.iter().map(|c| -c).collect(), t: -g.t };
    if reduced {
        out.reduced()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn element(n: usize) -> impl Strategy<Value = GroupElement> {
        (prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n), -10.0f64..10.0)
            .prop_map(|(z, t)| GroupElement::new(z.into_iter().map(|(a, b)| C64::new(a, b)).collect(), t))
    }

    #[test]
    fn hand_evaluated_product() {
        let g = GroupElement::new(vec![C64::new(1.0, 0.0)], 0.0);
        let h = GroupElement::new(vec![C64::new(0.0, 1.0)], 0.0);
        let p = group_op(&g, &h, false).unwrap();
        assert_eq!(p.z, vec![C64::new(1.0, 1.0)]);
        assert!((p.t + 0.5).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let g = GroupElement::identity(2);
        let h = GroupElement::identity(1);
        assert!(matches!(group_op(&g, &h, false), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn inverse_gives_identity(g in element(2)) {
            let e = group_op(&g, &group_inv(&g, false), false).unwrap();
            prop_assert!(e.norm_z() < 1e-12 && e.t.abs() < 1e-12);
        }

        #[test]
        fn associativity(g in element(2), h in element(2), k in element(2)) {
            let l = group_op(&group_op(&g, &h, false).unwrap(), &k, false).unwrap();
            let r = group_op(&g, &group_op(&h, &k, false).unwrap(), false).unwrap();
            prop_assert!((l.t - r.t).abs() <= 1e-12 * (1.0 + l.t.abs()));
            for (a, b) in l.z.iter().zip(&r.z) {
                prop_assert!((a - b).norm() <= 1e-12);
            }
        }

        #[test]
        fn reduced_stays_in_period(g in element(1), h in element(1)) {
            let p = group_op(&g, &h, true).unwrap();
            prop_assert!(p.t >= 0.0 && p.t < TAU);
        }
    }
}
