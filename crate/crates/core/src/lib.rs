//! Exact construction of Laguerre-Gould Hopper based Appell polynomials.
//!
//! Every polynomial can be built four independent ways (explicit double
//! series, generating-function expansion, Hessenberg determinant and
//! exponential-operator action) and the crate checks that they agree exactly.

pub mod algebra;
pub mod appell;
pub mod cli;
pub mod determinant;
pub mod error;
pub mod lgh;
pub mod operators;
pub mod powerseries;
pub mod special_cases;

pub use algebra::{Monomial, Poly3, Rational, Var};
pub use appell::{make_family, AppellFamily, Normalization};
pub use error::{Error, Result};
pub use lgh::LghParams;
