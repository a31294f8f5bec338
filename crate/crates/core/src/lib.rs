//! Exact construction and verification of isomorphisms between cylinders
//! over special Danielewski surfaces.

pub mod ambient;
pub mod cylinder;
pub mod error;
pub mod formula;
pub mod gaussian;
pub mod interpolation;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod surface;
pub mod syntax;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use laurent::XLaurent;
pub use poly::MultiPoly;
