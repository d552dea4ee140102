use serde::Serialize;

use super::logexpr::{Limit, LogRationalExpr};
use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use crate::kernel::rational::{self, Rational};

/// Outcome of the coefficient-sign test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    CertifiedPositive,
    Inconclusive,
}

/// Outcome of a ray certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
}

/// `p(x) > 0` for all `x > s` whenever `p(x + s)` has nonnegative, not all
/// zero, coefficients. Failure of the test proves nothing.
pub fn positivity_on_ray(p: &Polynomial, s: &Rational) -> Positivity {
    if p.taylor_shift(s).has_nonnegative_coeffs() {
        Positivity::CertifiedPositive
    } else {
        Positivity::Inconclusive
    }
}

/// One coefficient-sign check inside a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub label: String,
    pub polynomial: Polynomial,
    pub shifted: Polynomial,
    pub verdict: Positivity,
}

impl ShiftCheck {
    pub fn run(label: impl Into<String>, p: &Polynomial, s: &Rational) -> Self {
        let shifted = p.taylor_shift(s);
        let verdict = if shifted.has_nonnegative_coeffs() {
            Positivity::CertifiedPositive
        } else {
            Positivity::Inconclusive
        };
        Self {
            label: label.into(),
            polynomial: p.clone(),
            shifted,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Positivity::CertifiedPositive
    }
}

/// Transcript of an attempt to show `e(x) < 0` on `x > s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayCertificate {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub shift: Rational,
    pub expression: String,
    pub derivative: RationalFunction,
    pub checks: Vec<ShiftCheck>,
    pub limit: Limit,
    pub verdict: Verdict,
}

impl RayCertificate {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Certifies `e(x) < 0` for every `x > s`: `e` is defined there (log
/// arguments and the rational part's denominator are positive), strictly
/// increasing (derivative numerator and denominator positive), and tends
/// to zero.
pub fn certify_negative_on_ray(e: &LogRationalExpr, s: &Rational) -> RayCertificate {
    let derivative = e.derivative();
    let mut checks = vec![
        ShiftCheck::run("derivative numerator", derivative.num(), s),
        ShiftCheck::run("derivative denominator", derivative.den(), s),
    ];
    for (i, t) in e.log_terms().iter().enumerate() {
        checks.push(ShiftCheck::run(
            format!("log argument {} numerator", i + 1),
            t.arg.num(),
            s,
        ));
        checks.push(ShiftCheck::run(
            format!("log argument {} denominator", i + 1),
            t.arg.den(),
            s,
        ));
    }
    checks.push(ShiftCheck::run(
        "rational part denominator",
        e.rational_part().den(),
        s,
    ));
    let limit = e.limit_at_infinity();
    let verdict = if limit == Limit::Zero && checks.iter().all(ShiftCheck::passed) {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    RayCertificate {
        shift: s.clone(),
        expression: e.to_string(),
        derivative,
        checks,
        limit,
        verdict,
    }
}
