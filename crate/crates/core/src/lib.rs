pub mod bessel_eval;
pub mod decimal;
pub mod errfloat;
pub mod exact_algebra;
pub mod four_form;
pub mod series_verify;
pub mod spectrum;

pub use bessel_eval::{BesselKind, EvalConfig, EvalError};
pub use errfloat::ErrFloat;
