//! Exact connections, D-modules, inverse and direct images on affine charts over Q.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod gaussmanin;
pub mod homalg;
pub mod io;
pub mod conn;
pub mod linalg;
pub mod locmat;
pub mod pullback;
pub mod random;
pub mod transfer;
pub mod weyl;

pub use error::{Error, Result};
