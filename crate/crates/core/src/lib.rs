pub mod barcomplex;
pub mod complex;
pub mod error;
pub mod exactmath;
pub mod galg;
pub mod groupprod;
pub mod homology;
pub mod linalg;
pub mod parallel;
pub mod torform;
pub mod trace;

pub use error::{Error, Result};
