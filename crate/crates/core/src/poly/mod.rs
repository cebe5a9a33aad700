//! Sparse multivariate polynomials and the kernels built on them.

pub mod factor;
pub mod gcd;
pub mod mratfunc;
pub mod multipoly;
pub mod resultant;
pub mod squarefree;

pub use factor::{factor_bivariate, Factorization};
pub use gcd::{content, poly_gcd, poly_lcm, primitive_part};
pub use mratfunc::MultiRatFunc;
pub use multipoly::{u_name, y_name, Mono, MultiPoly};
pub use resultant::resultant;
pub use squarefree::{squarefree_decomposition, squarefree_part, strip_univariate_factors, Stripped};
