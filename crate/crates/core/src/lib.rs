//! Affine root systems, apartment geometry and type counting for toral
//! supercuspidal representations of `Sp_{2n}`, with a brute-force matrix
//! oracle over a truncated Laurent-series field.

pub mod apartment;
pub mod census;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod roots;
pub mod torus;

pub use error::{Error, Result};
