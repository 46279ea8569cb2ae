//! The lattice graph `(Z^d, l1)` and finitely supported functions on it.

mod function;
pub mod io;
mod norms;
mod point;
mod scalar;

pub use function::LatticeFunction;
pub use norms::{
    coarea_check, coarea_check_exact, grad_lp, grad_pow_exact, grad_pow_sum, lp_norm, lp_pow_exact,
    support_edges, vertex_boundary, EdgeList,
};
pub use point::{neighbors, LatticePoint};
pub use scalar::{Exponent, Scalar};
