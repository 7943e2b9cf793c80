use super::algebra::AlgebraElement;
use crate::error::{param, Error, Result};
use crate::linalg::{singular_values, C64};

/// `||x||_p = tau(|x|^p)^{1/p}`; `p = infinity` gives the largest fiber operator norm.
pub fn lp_norm(x: &AlgebraElement, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(param(format!("L_p norms need p >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(x.sup_norm());
    }
    let mut acc = 0.0;
    for (m, w) in x.fibers.iter().zip(&x.algebra.weights) {
        acc += w * singular_values(m).iter().map(|s| s.powf(p)).sum::<f64>();
    }
    Ok(acc.powf(1.0 / p))
}

/// `tau(x) = sum_g w_g tr(x_g)`.
pub fn trace(x: &AlgebraElement) -> C64 {
    x.fibers.iter().zip(&x.algebra.weights).map(|(m, w)| m.trace() * *w).sum()
}

/// `tau(x y)`.
pub fn trace_product(x: &AlgebraElement, y: &AlgebraElement) -> Result<C64> {
    if x.algebra != y.algebra {
        return Err(Error::DimensionMismatch { expected: x.algebra.len(), got: y.algebra.len() });
    }
    Ok(x.fibers.iter().zip(&y.fibers).zip(&x.algebra.weights).map(|((a, b), w)| (a * b).trace() * *w).sum())
}

/// Holder conjugate exponent.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{abs, random_gaussian, CMat};
    use crate::nc_lp::TracialAlgebra;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_projection() {
        let alg = TracialAlgebra::new(3, vec![0.5, 1.5, 2.0]).unwrap();
        let one = AlgebraElement::new(alg.clone(), vec![CMat::identity(3, 3); 3]).unwrap();
        for p in [1.0, 2.0, 3.5] {
            assert!((lp_norm(&one, p).unwrap() - (4.0f64 * 3.0).powf(1.0 / p)).abs() < 1e-12);
        }
        let mut e = vec![CMat::zeros(3, 3); 3];
        e[1][(2, 2)] = C64::new(1.0, 0.0);
        let e = AlgebraElement::new(alg, e).unwrap();
        assert!((lp_norm(&e, 3.0).unwrap() - 1.5f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!(lp_norm(&e, 0.5).is_err());
    }

    #[test]
    fn matches_eigenvalue_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = TracialAlgebra::new(3, vec![0.3, 0.9]).unwrap();
        let x = AlgebraElement::new(alg, vec![random_gaussian(&mut rng, 3), random_gaussian(&mut rng, 3)]).unwrap();
        // independent route: eigenvalues of |x| via (x* x)^{1/2}
        let p = 2.7;
        let mut acc = 0.0;
        for (m, w) in x.fibers.iter().zip(&x.algebra.weights) {
            let a = abs(m);
            let e = a.clone().symmetric_eigen();
            acc += w * e.eigenvalues.iter().map(|v| v.max(0.0).powf(p)).sum::<f64>();
        }
        let oracle = acc.powf(1.0 / p);
        assert!((lp_norm(&x, p).unwrap() - oracle).abs() <= 1e-10 * oracle);
    }
}
