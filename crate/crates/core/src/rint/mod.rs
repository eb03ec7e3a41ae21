//! Ball arithmetic: rigorous real and complex enclosures.
//!
//! Midpoints are MPFR floats at a configurable working precision and radii
//! are `f64` upper bounds rounded outward. All operations satisfy the
//! containment property: if the inputs contain `x` (and `y`), the output
//! contains `op(x, y)`.

mod ball;
mod complex;
mod jet;
mod tm;
pub mod mag;
mod serial;

pub use ball::{Ball, DEFAULT_PREC};
pub use complex::ComplexBall;
pub use jet::{CJet, Jet};
pub use tm::{taylor_term_upper, CTm, Tm};
pub use serial::BallRepr;
