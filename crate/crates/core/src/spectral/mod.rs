//! Spectral fields on the Gelfand spectrum and the operators acting on them.

pub mod field;
pub mod fractional;
pub mod gfunction;
pub mod operators;
pub mod path;

pub use field::{plancherel_weight, SpectralField};
pub use fractional::{fractional_integral, normalized_fractional, normalized_fractional_multiplier, spectral_normalized_fractional};
pub use gfunction::{g_function, scalar_g_integral, GFunction, GTerm};
pub use operators::{
    analytic_family, analytic_multiplier, dyadic_block, dyadic_projection, poisson, poisson_multiplier,
    spherical_mean, subordinated_analytic_family, subordination_constant, szego_threshold, uniform_average,
    uniform_multiplier,
};
pub use path::{default_r_grid, geometric_grid, richardson_derivative, FnPath, MatrixPath, OperatorPath};
