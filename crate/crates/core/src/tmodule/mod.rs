//! Drinfeld modules, t-modules and their exponential and logarithm.

pub mod drinfeld;
pub mod explog;
pub mod matrix_ops;
pub mod order;
#[allow(clippy::module_inception)]
pub mod tmodule;

pub use drinfeld::DrinfeldModule;
pub use explog::{exp_coeffs, log_coeffs, ExpLogCoeffs};
pub use matrix_ops::{matrix_t, TensorKind};
pub use order::{module_order_oracle, reduce_mod};
pub use tmodule::{Provenance, Purity, TModule};
