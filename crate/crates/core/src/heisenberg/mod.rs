//! Radial matrix fields on the reduced Heisenberg group `H^n_reduced`
//! (center period `2 pi`, normalized Haar measure on the center) and the
//! transforms between physical and spectral form.

pub mod convolution;
pub mod field;
pub mod geometry;
pub mod group;
pub mod hankel;
pub mod io;
pub mod laguerre_transform;
pub mod sphere;

pub use convolution::{convolve_sigma_direct, euclidean_convolve, twisted_convolve, TwistedQuadrature, DEFAULT_SPHERE_ORDER};
pub use field::{center_synthesis, partial_fourier, resolved_frequencies, MatrixProfile, PhysicalField, RadialProfile};
pub use geometry::{BesselGrid, GeometryConfig, RadialGrid};
pub use group::{group_inv, group_op, GroupElement};
pub use hankel::{hankel_analysis, hankel_synthesis, HankelExpansion};
pub use io::{load_field, save_field};
pub use laguerre_transform::{
    laguerre_analysis, laguerre_mode, laguerre_mode_norm_sq, laguerre_synthesis, LaguerreBasis, LaguerreExpansion,
};
pub use sphere::{sphere_quadrature, unit_sphere_area};
