//! Exact arithmetic for Drinfeld modules over `F_q[θ]`, their tensor, symmetric
//! and alternating squares, convolution L-series and rank-2 regulators.

pub mod algebra;
pub mod error;
pub mod frobenius;
pub mod lseries;
pub mod regulators;
pub mod symmetric;
pub mod tmodule;
pub mod twisted;

pub use error::{Error, Result};
