//! Primal-dual splitting methods for bilinear saddle-point problems
//! `min_x max_y f(x) + yᵀAx − g(y)`, with contraction-rate certificates and an
//! empirical verification harness.

pub mod cli;
pub mod error;
mod ext_real;
pub mod linalg;
pub mod oracle;
pub mod precond;
pub mod problem;
pub mod rates;
pub mod sampling;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
