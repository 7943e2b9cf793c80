pub mod error;
pub mod estimates;
pub mod heisenberg;
pub mod lab;
pub mod linalg;
pub mod nc_lp;
pub mod quadrature;
pub mod special_fn;
pub mod spectral;
