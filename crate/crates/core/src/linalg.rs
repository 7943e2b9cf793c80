//! Small dense complex matrix helpers shared by the field and norm layers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn zeros(d: usize) -> CMat {
    CMat::zeros(d, d)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn scalar(d: usize, c: C64) -> CMat {
    CMat::identity(d, d) * c
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Largest entrywise deviation from self-adjointness.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn trace(m: &CMat) -> C64 {
    m.trace()
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `m`.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let h = hermitian_part(m);
    let eig = h.symmetric_eigen();
    let d = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(d, d);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    eigh(m).0
}

pub fn min_eig(m: &CMat) -> f64 {
    eigvalsh(m).first().copied().unwrap_or(0.0)
}

pub fn max_eig(m: &CMat) -> f64 {
    eigvalsh(m).last().copied().unwrap_or(0.0)
}

/// Spectral calculus `f(m)` for Hermitian `m`.
pub fn apply_fn(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = eigh(m);
    let d = vals.len();
    let mut scaled = vecs.clone();
    for (j, &v) in vals.iter().enumerate() {
        let fv = C64::new(f(v), 0.0);
        for i in 0..d {
            scaled[(i, j)] *= fv;
        }
    }
    scaled * vecs.adjoint()
}

/// `|m| = (m* m)^{1/2}`.
pub fn abs(m: &CMat) -> CMat {
    apply_fn(&(m.adjoint() * m), |v| v.max(0.0).sqrt())
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let mut s: Vec<f64> = eigvalsh(&(m.adjoint() * m))
        .into_iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    s.reverse();
    s
}

pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn frobenius_sq(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMat {
    CMat::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMat {
    hermitian_part(&random_gaussian(rng, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spectral_calculus_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = random_hermitian(&mut rng, 4);
        let back = apply_fn(&h, |v| v);
        assert!(max_abs(&(back - &h)) < 1e-12);
        let sq = apply_fn(&h, |v| v * v);
        assert!(max_abs(&(sq - &h * &h)) < 1e-11);
    }

    #[test]
    fn abs_squares_to_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_gaussian(&mut rng, 3);
        let a = abs(&m);
        assert!(max_abs(&(&a * &a - m.adjoint() * &m)) < 1e-10);
        assert!(min_eig(&a) > -1e-12);
    }
}
