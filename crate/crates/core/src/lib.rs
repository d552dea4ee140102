//! Certified enclosures of the digamma and trigamma functions, exact
//! asymptotic-series algebra, and certificates for double inequalities
//! bounding `ψ′(x+1)` through `e^{−2ψ(x+1)}`.
//!
//! ```
//! use psibound::kernel::rational::{int, parse};
//! use psibound::polygamma::euler_gamma_enclosure;
//!
//! let gamma = euler_gamma_enclosure(&int(10)).unwrap();
//! assert!(gamma.contains(&parse("0.5772156649").unwrap()));
//! ```

pub mod error;
pub mod kernel;
pub mod polycert;
pub mod polygamma;
pub mod series;
pub mod theorems;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/enclosures.md")]
    mod enclosures {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
