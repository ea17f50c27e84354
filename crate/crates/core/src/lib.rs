//! Exact polynomial algebra on `C^{2p} = H^p` with Fischer decompositions,
//! both the classical harmonic one and its symplectic refinement.

pub mod error;
pub mod harmonic;
pub mod linalg;
pub mod ops;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod structures;
pub mod symplectic;
pub mod verify;

pub use error::{Error, ParseError, Result, ScalarError};
pub use ops::{OpExpr, OpMatrix};
pub use poly::{Bidegree, Context, Monomial, Poly, Var};
pub use scalar::Scalar;
