//! Shared numerical kernels: Gauss-Legendre quadrature, composite Simpson
//! rules, and bracketing root finders.

pub mod quad;
pub mod roots;
pub mod simpson;

pub use quad::{adaptive_gauss_legendre, QuadError};
pub use roots::{bisect, expand_bracket, RootError};
pub use simpson::{simpson_fn, simpson_samples, simpson_tensor};
