//! Exact polynomials and rational functions, derivatives of log-rational
//! expressions, Taylor shifts, and positivity certificates on a ray.

mod certify;
mod logexpr;
mod polynomial;
mod ratfunc;

pub use certify::{
    certify_negative_on_ray, positivity_on_ray, Positivity, RayCertificate, ShiftCheck, Verdict,
};
pub use logexpr::{Limit, LogRationalExpr, LogTerm};
pub use polynomial::Polynomial;
pub use ratfunc::RationalFunction;
