//! Scalar special functions: Gamma, Laguerre polynomials and functions,
//! integer-order Bessel kernels and the spherical functions of the
//! Heisenberg group.

pub mod bessel;
pub mod gamma;
pub mod laguerre;
pub mod spherical;

pub use bessel::{bessel_eta, bessel_eta_derivative, bessel_j, bessel_j_scaled, bessel_zeros, ASYMPTOTIC_SWITCH};
pub use gamma::{gamma, gamma_real, laguerre_norm_ratio, ln_gamma, ln_gamma_real};
pub use laguerre::{
    laguerre_poly, laguerre_poly_derivative, ln_abs_psi, psi, psi_derivative, script_l, ComplexOrder, K_MAX,
};
pub use spherical::{spherical_fn, spherical_fn_derivative, SpectralPoint, MAX_DERIVATIVE};
