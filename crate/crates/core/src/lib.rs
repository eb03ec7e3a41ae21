pub mod error;
pub mod hproduct;
pub mod kappa;
pub mod primetools;
pub mod quad;
pub mod rint;
pub mod sievesums;
pub mod zetafn;

pub use error::{Error, Result};
pub use rint::{Ball, ComplexBall, DEFAULT_PREC};
