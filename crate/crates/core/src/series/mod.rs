//! Bernoulli numbers and exact algebra on truncated asymptotic expansions.

pub mod bernoulli;
pub mod expansion;
pub mod named;

pub use bernoulli::{bernoulli, BernoulliTable};
pub use expansion::AsymptoticExpansion;
pub use named::{
    digamma_expansion, product_expansion, reciprocal_shift_expansion, theta_expansion,
    trigamma_expansion,
};
