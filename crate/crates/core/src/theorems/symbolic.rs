//! ψ-free comparison functions and their ray certificates.
//!
//! Each inequality is rewritten as `e(x) < 0` where `e` involves `ψ` or
//! `ψ′`; replacing those by one-sided truncated-series bounds gives a
//! larger, purely log-rational function whose negativity on the ray is
//! certified exactly.

use super::grid::{CertReport, Method, SymbolicStep, Verdict};
use crate::error::{Error, Result};
use crate::kernel::rational::{int, ratio, Rational};
use crate::polycert::{certify_negative_on_ray, LogRationalExpr, Polynomial, RationalFunction};

/// Ids accepted by [`certify_symbolic`].
pub const SYMBOLIC_IDS: [&str; 5] = ["THM1", "THM2", "THM3a-lower", "R1U", "THM1-AMENDED"];

fn laurent(terms: &[(i64, i64, i64)]) -> RationalFunction {
    let t: Vec<(i64, Rational)> = terms.iter().map(|&(k, n, d)| (k, ratio(n, d))).collect();
    RationalFunction::laurent(&t)
}

fn log(c: i64, arg: RationalFunction) -> LogRationalExpr {
    LogRationalExpr::log(int(c), arg).expect("argument positive at infinity")
}

fn rational(r: RationalFunction) -> LogRationalExpr {
    LogRationalExpr::rational(r)
}

fn ln_x() -> RationalFunction {
    RationalFunction::from_poly(Polynomial::x())
}

/// `ψ(x+1) − ln x` lower bound `1/(2x) − 1/(12x²) + 1/(120x⁴) − 1/(252x⁶)`.
pub fn digamma_tail_lower() -> RationalFunction {
    laurent(&[(1, 1, 2), (2, -1, 12), (4, 1, 120), (6, -1, 252)])
}

/// `ψ(x+1) − ln x` upper bound `1/(2x) − 1/(12x²) + 1/(120x⁴)`.
pub fn digamma_tail_upper() -> RationalFunction {
    laurent(&[(1, 1, 2), (2, -1, 12), (4, 1, 120)])
}

/// `ψ′(x+1)` lower bound `1/x − 1/(2x²) + 1/(6x³) − 1/(30x⁵) + 1/(42x⁷) − 1/(30x⁹)`.
pub fn trigamma_lower() -> RationalFunction {
    laurent(&[
        (1, 1, 1),
        (2, -1, 2),
        (3, 1, 6),
        (5, -1, 30),
        (7, 1, 42),
        (9, -1, 30),
    ])
}

/// `ψ′(x+1)` upper bound `1/x − 1/(2x²) + 1/(6x³) − 1/(30x⁵) + 1/(42x⁷)`.
pub fn trigamma_upper() -> RationalFunction {
    laurent(&[(1, 1, 1), (2, -1, 2), (3, 1, 6), (5, -1, 30), (7, 1, 42)])
}

/// `1 + ψ′(x)` lower bound, from the recurrence.
pub fn one_plus_trigamma_at_x_lower() -> RationalFunction {
    laurent(&[
        (0, 1, 1),
        (1, 1, 1),
        (2, 1, 2),
        (3, 1, 6),
        (5, -1, 30),
        (7, 1, 42),
        (9, -1, 30),
    ])
}

/// `1 + ψ′(x)` upper bound, one term further.
pub fn one_plus_trigamma_at_x_upper() -> RationalFunction {
    laurent(&[
        (0, 1, 1),
        (1, 1, 1),
        (2, 1, 2),
        (3, 1, 6),
        (5, -1, 30),
        (7, 1, 42),
        (9, -1, 30),
        (11, 5, 66),
    ])
}

/// `x + α(x)`.
pub fn x_plus_alpha() -> RationalFunction {
    laurent(&[(-1, 1, 1), (0, 1, 2), (3, 1, 90), (4, -1, 60)])
}

/// `x + β(x)`.
pub fn x_plus_beta() -> RationalFunction {
    laurent(&[(-1, 1, 1), (0, 1, 2), (3, 1, 90)])
}

fn inv_120_x4() -> RationalFunction {
    laurent(&[(4, 1, 120)])
}

/// Lower side of the first theorem, `F₁ ≥ ln(x+α) − 2ψ(x+1) − ln ψ′(x+1) [− 1/(120x⁴)]`.
/// `with_factor` keeps the extra `exp(−1/(120x⁴))` factor of the literal
/// statement.
pub fn thm1_lower_comparison(with_factor: bool) -> LogRationalExpr {
    let mut e = log(1, x_plus_alpha())
        .add(&log(-2, ln_x()))
        .add(&rational(digamma_tail_lower().scale(&int(-2))))
        .add(&log(-1, trigamma_lower()));
    if with_factor {
        e = e.sub(&rational(inv_120_x4()));
    }
    e
}

/// Upper side, `G₁ ≥ −ln(x+β) + ln ψ′(x+1) + 2ψ(x+1) [+ 1/(120x⁴)]`.
pub fn thm1_upper_comparison(with_factor: bool) -> LogRationalExpr {
    let mut e = log(-1, x_plus_beta())
        .add(&log(1, trigamma_upper()))
        .add(&log(2, ln_x()))
        .add(&rational(digamma_tail_upper().scale(&int(2))));
    if with_factor {
        e = e.add(&rational(inv_120_x4()));
    }
    e
}

fn small_m() -> RationalFunction {
    laurent(&[(1, 1, 1), (4, -1, 24), (6, 7, 360)])
}

/// `m₁ = m(x) − ln(lower bound of 1 + ψ′(x))`; `m₁ < 0` gives the lower side.
pub fn thm2_lower_comparison() -> LogRationalExpr {
    rational(small_m()).add(&log(-1, one_plus_trigamma_at_x_lower()))
}

/// `M₁ = M(x) − ln(upper bound of 1 + ψ′(x))`; `M₁ > 0` gives the upper side.
pub fn thm2_upper_comparison() -> LogRationalExpr {
    rational(&small_m() + &laurent(&[(7, 1, 90)])).add(&log(-1, one_plus_trigamma_at_x_upper()))
}

/// `P(x) = 5040x⁷·(Σ_{k≤7} (−1/x)^k/k! − 1/(12x⁵) + 5/(24x⁶) + 2T₅(x))`,
/// with `T₅` the four-term lower bound of `ψ′(x+1)`.
pub fn thm3_polynomial() -> Polynomial {
    let mut terms: Vec<(i64, Rational)> = (0..=7i64)
        .map(|k| {
            let f = Rational::from_integer(crate::kernel::rational::factorial(k as u32));
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            (k, sign / f)
        })
        .collect();
    terms.extend([
        (5, ratio(-1, 12)),
        (6, ratio(5, 24)),
        (1, int(2)),
        (2, int(-1)),
        (3, ratio(1, 3)),
        (5, ratio(-1, 15)),
    ]);
    let r = RationalFunction::laurent(&terms);
    let scaled = &r * &RationalFunction::from_poly(Polynomial::monomial(7, int(5040)));
    assert!(
        scaled.den().is_constant(),
        "5040 x^7 clears every denominator"
    );
    scaled.num().scale(&scaled.den().coeff(0).recip())
}

/// `c₁ = 1/(x+1) − ln(P(x)/(5040x⁷))`.
pub fn thm3_lower_comparison() -> LogRationalExpr {
    let arg = RationalFunction::new(thm3_polynomial(), Polynomial::monomial(7, int(5040)))
        .expect("nonzero denominator");
    let inv =
        RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 1])).expect("nonzero");
    rational(inv).add(&log(-1, arg))
}

/// `u(x) = ln(x + α(x)) − ln(x + 1/2) − 1/(120x⁴)`.
pub fn remark_u() -> LogRationalExpr {
    log(1, x_plus_alpha())
        .add(&log(-1, laurent(&[(-1, 1, 1), (0, 1, 2)])))
        .sub(&rational(inv_120_x4()))
}

fn step(name: &str, e: &LogRationalExpr, s: i64) -> SymbolicStep {
    let certificate = certify_negative_on_ray(e, &int(s));
    let verdict = if certificate.certified() {
        Verdict::Holds
    } else {
        Verdict::Undecided
    };
    SymbolicStep {
        name: name.to_string(),
        verdict,
        certificate,
    }
}

/// Replays the exact proof of a supported inequality.
pub fn certify_symbolic(id: &str) -> Result<CertReport> {
    let canonical = SYMBOLIC_IDS
        .iter()
        .find(|k| {
            k.eq_ignore_ascii_case(id)
                || (k.eq_ignore_ascii_case("THM3a-lower") && id.eq_ignore_ascii_case("THM3a"))
        })
        .ok_or_else(|| {
            Error::Argument(format!(
                "no symbolic replay for {id:?}; supported: {}",
                SYMBOLIC_IDS.join(", ")
            ))
        })?;
    let steps = match *canonical {
        "THM1" => vec![
            step(
                "F1: lower side, increasing to 0",
                &thm1_lower_comparison(true),
                3,
            ),
            step(
                "G1: upper side, increasing to 0",
                &thm1_upper_comparison(true),
                3,
            ),
        ],
        "THM1-AMENDED" => vec![
            step(
                "F1: lower side, increasing to 0",
                &thm1_lower_comparison(false),
                3,
            ),
            step(
                "G1: upper side, increasing to 0",
                &thm1_upper_comparison(false),
                3,
            ),
        ],
        "THM2" => vec![
            step("m1: increasing to 0", &thm2_lower_comparison(), 3),
            step("-M1: M1 decreasing to 0", &thm2_upper_comparison().neg(), 3),
        ],
        "THM3a-lower" => vec![step("c1: increasing to 0", &thm3_lower_comparison(), 1)],
        "R1U" => vec![step("u: increasing to 0", &remark_u(), 1)],
        _ => unreachable!(),
    };
    let verdict = if steps.iter().all(|s| s.verdict == Verdict::Holds) {
        Verdict::Holds
    } else {
        Verdict::Undecided
    };
    Ok(CertReport {
        id: canonical.to_string(),
        method: Method::Symbolic,
        points: Vec::new(),
        steps,
        verdict,
    })
}
