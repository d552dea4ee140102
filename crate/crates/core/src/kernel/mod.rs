//! Exact rationals, intervals with rational endpoints, and rigorous
//! enclosures of the elementary functions everything else is built from.

pub mod elementary;
pub mod interval;
pub mod rational;

pub use elementary::{iv_exp, iv_ln, iv_ln2, iv_pi, iv_sinh, GUARD_BITS};
pub use interval::{iv_arith, ArithOp, Interval, Operand};
pub use rational::Rational;
