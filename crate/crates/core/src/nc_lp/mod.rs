//! Noncommutative `L_p` spaces over weighted matrix algebras: norms, the
//! maximal norm `L_p(M; l_infty)` for self-adjoint families and the center
//! average.

pub mod algebra;
pub mod center;
pub mod maximal;
pub mod norms;

pub use algebra::{AlgebraElement, TracialAlgebra};
pub use center::{center_average, fixed_point_part, CenterAverage};
pub use maximal::{maximal_norm, maximal_norm_column, MaximalNormResult, MaximalNormSolver, SolverOptions, TraceRow};
pub use norms::{conjugate_exponent, lp_norm, trace, trace_product};
