//! Certified enclosures of `ψ` and `ψ′` at positive rational arguments.
//!
//! The argument is pushed up by the recurrences
//!
//! ```text
//! ψ(y) = ψ(y+1) − 1/y        ψ′(y) = ψ′(y+1) + 1/y²
//! ```
//!
//! until it exceeds the shift target, where truncated asymptotic series
//! with alternating remainders give two-sided bounds:
//!
//! ```text
//! ln y + 1/(2y) − 1/(12y²) + 1/(120y⁴) − 1/(252y⁶) < ψ(y+1) < ln y + 1/(2y) − 1/(12y²) + 1/(120y⁴)
//! T(y) − 1/(30y⁹) < ψ′(y+1) < T(y),   T(y) = 1/y − 1/(2y²) + 1/(6y³) − 1/(30y⁵) + 1/(42y⁷)
//! ```

mod constants;

pub use constants::{batir_bstar_enclosure, digamma_zero, euler_gamma_enclosure};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, ratio, Rational};
use crate::kernel::{iv_ln, Interval, GUARD_BITS};

/// Default shift target.
pub const DEFAULT_SHIFT: i64 = 10;

/// A validated request: `x > 0` and a shift target of at least 10.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnclosureRequest {
    x: Rational,
    shift_target: Rational,
}

impl EnclosureRequest {
    pub fn new(x: Rational, shift_target: Rational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::Domain(format!(
                "polygamma argument must be positive, got {}",
                rational::format(&x)
            )));
        }
        if shift_target < int(DEFAULT_SHIFT) {
            return Err(Error::Argument(format!(
                "shift target must be at least {DEFAULT_SHIFT}, got {}",
                rational::format(&shift_target)
            )));
        }
        Ok(Self { x, shift_target })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn shift_target(&self) -> &Rational {
        &self.shift_target
    }

    /// Smallest `n ≥ 0` with `x + n − 1 ≥ shift_target`.
    pub fn steps(&self) -> u64 {
        let need = (&self.shift_target + int(1) - &self.x).ceil();
        if need.is_positive() {
            need.to_integer().to_u64().expect("shift count fits in u64")
        } else {
            0
        }
    }

    /// `ln`-precision used when none is given: `⌈log2 S⌉ + 40`.
    pub fn default_precision(&self) -> u32 {
        let s = &self.shift_target;
        let fl = rational::floor_log2(s);
        let ceil = if *s == rational::pow2(fl) { fl } else { fl + 1 };
        ceil.max(0) as u32 + 40
    }
}

/// Enclosure of `ψ(x)` at the default precision for the shift target.
pub fn digamma_enclosure(x: &Rational, shift_target: &Rational) -> Result<Interval> {
    let req = EnclosureRequest::new(x.clone(), shift_target.clone())?;
    let p = req.default_precision();
    Ok(digamma_request(&req, p))
}

/// Enclosure of `ψ(x)` with an explicit working precision for the `ln`
/// term and the recurrence sums.
pub fn digamma_enclosure_prec(
    x: &Rational,
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Interval> {
    let req = EnclosureRequest::new(x.clone(), shift_target.clone())?;
    Ok(digamma_request(&req, work_precision))
}

/// Enclosure of `ψ′(x)` at the default precision for the shift target.
pub fn trigamma_enclosure(x: &Rational, shift_target: &Rational) -> Result<Interval> {
    let req = EnclosureRequest::new(x.clone(), shift_target.clone())?;
    let p = req.default_precision();
    Ok(trigamma_request(&req, p))
}

/// Enclosure of `ψ′(x)` with an explicit working precision.
pub fn trigamma_enclosure_prec(
    x: &Rational,
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Interval> {
    let req = EnclosureRequest::new(x.clone(), shift_target.clone())?;
    Ok(trigamma_request(&req, work_precision))
}

/// `{ψ(t) : t ∈ a}` for a positive interval, using that `ψ` increases.
pub fn digamma_interval(
    a: &Interval,
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Interval> {
    let lo = digamma_enclosure_prec(a.lo(), shift_target, work_precision)?;
    if a.is_point() {
        return Ok(lo);
    }
    let hi = digamma_enclosure_prec(a.hi(), shift_target, work_precision)?;
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// `{ψ′(t) : t ∈ a}` for a positive interval, using that `ψ′` decreases.
pub fn trigamma_interval(
    a: &Interval,
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Interval> {
    let at_hi = trigamma_enclosure_prec(a.hi(), shift_target, work_precision)?;
    if a.is_point() {
        return Ok(at_hi);
    }
    let at_lo = trigamma_enclosure_prec(a.lo(), shift_target, work_precision)?;
    Interval::new(at_hi.lo().clone(), at_lo.hi().clone())
}

fn digamma_request(req: &EnclosureRequest, p: u32) -> Interval {
    let n = req.steps();
    let y = req.x() + int(n as i64) - int(1);
    let bits = p + GUARD_BITS;
    let tail = digamma_series_bounds(&y);
    let ln_y = iv_ln(&Interval::point(y), p).expect("y is positive");
    let mut acc = (&ln_y + &tail).round_outward(bits);
    for i in 0..n {
        let t = req.x() + int(i as i64);
        acc = (&acc - &Interval::point(t.recip())).round_outward(bits);
    }
    acc
}

fn trigamma_request(req: &EnclosureRequest, p: u32) -> Interval {
    let n = req.steps();
    let y = req.x() + int(n as i64) - int(1);
    let bits = p + GUARD_BITS;
    let mut acc = trigamma_series_bounds(&y).round_outward(bits);
    for i in 0..n {
        let t = req.x() + int(i as i64);
        acc = acc.add_rational(&(&t * &t).recip()).round_outward(bits);
    }
    acc
}

/// `ψ(y+1) − ln y` lies in this interval for `y > 0`.
fn digamma_series_bounds(y: &Rational) -> Interval {
    let inv = y.recip();
    let hi = horner(
        &inv,
        &[
            ratio(0, 1),
            ratio(1, 2),
            ratio(-1, 12),
            ratio(0, 1),
            ratio(1, 120),
        ],
    );
    let lo = &hi - ratio(1, 252) * rational::pow_int(&inv, 6);
    Interval::new(lo, hi).expect("remainder term is non-negative")
}

/// `ψ′(y+1)` lies in this interval for `y > 0`.
fn trigamma_series_bounds(y: &Rational) -> Interval {
    let inv = y.recip();
    let hi = horner(
        &inv,
        &[
            ratio(0, 1),
            ratio(1, 1),
            ratio(-1, 2),
            ratio(1, 6),
            ratio(0, 1),
            ratio(-1, 30),
            ratio(0, 1),
            ratio(1, 42),
        ],
    );
    let lo = &hi - ratio(1, 30) * rational::pow_int(&inv, 9);
    Interval::new(lo, hi).expect("remainder term is non-negative")
}

fn horner(t: &Rational, coeffs: &[Rational]) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s10() -> Rational {
        int(10)
    }

    #[test]
    fn steps_reach_the_target() {
        let r = EnclosureRequest::new(int(1), s10()).unwrap();
        assert_eq!(r.steps(), 10);
        let r = EnclosureRequest::new(ratio(1, 10), s10()).unwrap();
        assert_eq!(r.steps(), 11);
        let r = EnclosureRequest::new(int(25), s10()).unwrap();
        assert_eq!(r.steps(), 0);
        assert_eq!(r.default_precision(), 44);
        assert_eq!(
            EnclosureRequest::new(int(1), int(16))
                .unwrap()
                .default_precision(),
            44
        );
    }

    #[test]
    fn request_validation() {
        assert!(matches!(
            EnclosureRequest::new(int(0), s10()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            EnclosureRequest::new(int(-3), s10()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            EnclosureRequest::new(int(1), int(9)),
            Err(Error::Argument(_))
        ));
        assert!(digamma_enclosure(&int(0), &s10()).is_err());
        assert!(trigamma_enclosure(&ratio(-1, 2), &s10()).is_err());
    }

    #[test]
    fn psi_one_is_minus_gamma() {
        let e = digamma_enclosure(&int(1), &s10()).unwrap();
        assert!(e.contains(&rational::parse("-0.57721566490153286061").unwrap()));
        assert!(e.width() < ratio(1, 100_000_000));
    }

    #[test]
    fn psi_two_minus_psi_one() {
        let d = &digamma_enclosure(&int(2), &s10()).unwrap()
            - &digamma_enclosure(&int(1), &s10()).unwrap();
        assert!(d.contains(&int(1)));
    }

    #[test]
    fn trigamma_at_one_is_zeta_two() {
        // Σ_{n≤N} 1/n² + [1/(N+1), 1/N] encloses π²/6
        let n = 2000i64;
        let partial: Rational = (1..=n).map(|k| ratio(1, k * k)).sum();
        let oracle = Interval::new(&partial + ratio(1, n + 1), &partial + ratio(1, n)).unwrap();
        let e = trigamma_enclosure(&int(1), &s10()).unwrap();
        assert!(e.intersects(&oracle));
        assert!(e.contains(&rational::parse("1.64493406684822643647").unwrap()));
    }

    #[test]
    fn interval_arguments_follow_monotonicity() {
        let a = Interval::new(int(2), int(3)).unwrap();
        let psi = digamma_interval(&a, &s10(), 60).unwrap();
        assert!(psi.contains_interval(&digamma_enclosure_prec(&ratio(5, 2), &s10(), 60).unwrap()));
        let tri = trigamma_interval(&a, &s10(), 60).unwrap();
        assert!(tri.contains_interval(&trigamma_enclosure_prec(&ratio(5, 2), &s10(), 60).unwrap()));
    }
}
