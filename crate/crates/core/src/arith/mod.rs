//! Exact scalar and univariate arithmetic.

pub mod extension;
pub mod field;
pub mod linalg;
pub mod ratfunc;
pub mod roots;
pub mod upoly;
pub mod zassenhaus;

pub use extension::{AlgebraicNumber, BaseField, Extension, Modulus, NumberField, RootSelector};
pub use field::{q, qi, Field, Q};
pub use ratfunc::RatFunc;
pub use upoly::UPoly;
