//! Logarithms of the rank-2 tensor, symmetric and alternating squares and the
//! regulators built from them.

pub mod bm;
pub mod logfamily;
pub mod reg;

pub use bm::BmSequence;
pub use logfamily::{assembled_log_coeff, lm_matrix, log_coeff_crosscheck, CrosscheckReport, LogFamily};
pub use reg::{laurent_det, reg_closed_form, reg_via_basis, LogEvaluator, Regulator};
