//! Exact-arithmetic laboratory for separating modules.
//!
//! The crate builds rank-based complexity measures of polynomials (dimension
//! of partial derivatives, shifted partials, Hessian rank), the induced action
//! of `GL_n`, `AGL_n` and `S_n` on coefficient spaces, samplers for easy
//! circuit classes, and test modules whose vanishing separates those classes
//! from hard polynomials. Everything is exact: rationals or prime fields.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability, and the `seplab` binary for batch runs.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod f2lab;
pub mod field;
pub mod functions;
pub mod group;
pub mod linalg;
pub mod measures;
pub mod poly;
pub mod seed;
pub mod sepmod;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, Subspace};
pub use poly::{Monomial, Poly, Target};
