use num_traits::Signed;

use super::{digamma_enclosure, digamma_enclosure_prec, EnclosureRequest, DEFAULT_SHIFT};
use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, Rational};
use crate::kernel::{iv_exp, iv_pi, Interval};

/// Enclosure of the Euler–Mascheroni constant `γ = −ψ(1)`.
pub fn euler_gamma_enclosure(shift_target: &Rational) -> Result<Interval> {
    Ok(-digamma_enclosure(&int(1), shift_target)?)
}

/// Enclosure of `b* = π²/(6e^{2γ})`.
pub fn batir_bstar_enclosure(shift_target: &Rational, work_precision: u32) -> Result<Interval> {
    let req = EnclosureRequest::new(int(1), shift_target.clone())?;
    let p = work_precision.max(req.default_precision());
    let gamma = -digamma_enclosure_prec(&int(1), shift_target, p)?;
    let pi = iv_pi(p);
    let e2g = iv_exp(&gamma.scale(&int(2)), p);
    pi.square().scale(&rational::ratio(1, 6)).div(&e2g)
}

/// Enclosure of width at most `tolerance` of the positive zero of `ψ`,
/// by bisection on `[1, 2]`.
///
/// Each probe is decided by the sign of a `ψ` enclosure; when that contains
/// zero the shift target is doubled (up to four times) and, failing that,
/// the probe moves to a third of the bracket instead of the midpoint.
pub fn digamma_zero(tolerance: &Rational) -> Result<Interval> {
    if !tolerance.is_positive() {
        return Err(Error::Argument(format!(
            "tolerance must be positive, got {}",
            rational::format(tolerance)
        )));
    }
    let tol_bits = (-rational::floor_log2(tolerance)).max(0) as u32;
    let p = 64u32.max(tol_bits + 16);
    // series remainder 1/(252 S⁶) well below the tolerance
    let needed = (16.0 / (252.0 * rational::to_f64(tolerance)))
        .powf(1.0 / 6.0)
        .ceil();
    let s0 = int((needed as i64).max(DEFAULT_SHIFT));

    let (mut lo, mut hi) = (int(1), int(2));
    while &hi - &lo > *tolerance {
        let w = &hi - &lo;
        let probes = [
            &lo + &w / int(2),
            &lo + &w / int(3),
            &lo + int(2) * &w / int(3),
        ];
        let mut decided = false;
        'probe: for t in probes {
            for attempt in 0..=4 {
                let s = &s0 * int(1 << attempt);
                let e = digamma_enclosure_prec(&t, &s, p + 8 * attempt)?;
                if e.is_negative() {
                    lo = t;
                    decided = true;
                    break 'probe;
                }
                if e.is_positive() {
                    hi = t;
                    decided = true;
                    break 'probe;
                }
            }
        }
        if !decided {
            return Err(Error::Unsupported(format!(
                "could not decide the sign of psi inside [{}, {}]",
                rational::format(&lo),
                rational::format(&hi)
            )));
        }
    }
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{parse, ratio};

    #[test]
    fn gamma_digits_and_refinement() {
        let g10 = euler_gamma_enclosure(&int(10)).unwrap();
        let g20 = euler_gamma_enclosure(&int(20)).unwrap();
        assert!(g10.contains(&parse("0.57721566490153286061").unwrap()));
        assert!(g20.width() <= g10.width());
        let g50 = euler_gamma_enclosure(&int(50)).unwrap();
        assert!(g50.contains(&parse("0.57721566490153286061").unwrap()));
    }

    #[test]
    fn bstar_above_one_half() {
        let b = batir_bstar_enclosure(&int(10), 64).unwrap();
        assert!(b.lo() > &ratio(1, 2));
        assert!(b.contains(&parse("0.51854367197283954293").unwrap()));
        assert!(b.width() < parse("1e-6").unwrap());
    }

    #[test]
    fn digamma_zero_brackets() {
        let tol = parse("1e-5").unwrap();
        let c = digamma_zero(&tol).unwrap();
        assert!(c.width() <= tol);
        assert!(c.contains(&parse("1.46163214496836234126").unwrap()));
        let s = int(10);
        assert!(digamma_enclosure(c.lo(), &s).unwrap().lo() <= &Rational::from_integer(0.into()));
        assert!(digamma_enclosure(c.hi(), &s).unwrap().hi() >= &Rational::from_integer(0.into()));
        assert!(digamma_zero(&int(0)).is_err());
    }
}
