use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, Rational};
use crate::kernel::{iv_ln, Interval};

/// `coeff · ln(arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogTerm {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub coeff: Rational,
    pub arg: RationalFunction,
}

/// `Σ cᵢ ln(argᵢ(x)) + r(x)` with rational functions `argᵢ`, `r`.
///
/// Every argument must have a positive leading ratio, i.e. be positive for
/// large `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogRationalExpr {
    log_terms: Vec<LogTerm>,
    rational_part: RationalFunction,
}

/// Behaviour of an expression as `x → ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Limit {
    Zero,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    Value(Rational),
    /// Unbounded, or a constant that is not known to be rational.
    Diverges,
}

impl LogRationalExpr {
    pub fn new(log_terms: Vec<LogTerm>, rational_part: RationalFunction) -> Result<Self> {
        for t in &log_terms {
            if !t.arg.leading_ratio().is_positive() {
                return Err(Error::Argument(format!(
                    "log argument {} is not positive for large x",
                    t.arg
                )));
            }
        }
        let log_terms = log_terms
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Ok(Self {
            log_terms,
            rational_part,
        })
    }

    pub fn rational(r: RationalFunction) -> Self {
        Self {
            log_terms: Vec::new(),
            rational_part: r,
        }
    }

    /// `c · ln(arg)`.
    pub fn log(c: Rational, arg: RationalFunction) -> Result<Self> {
        Self::new(vec![LogTerm { coeff: c, arg }], RationalFunction::zero())
    }

    pub fn log_terms(&self) -> &[LogTerm] {
        &self.log_terms
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational_part
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut log_terms = self.log_terms.clone();
        log_terms.extend(other.log_terms.iter().cloned());
        Self {
            log_terms,
            rational_part: &self.rational_part + &other.rational_part,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let log_terms = self
            .log_terms
            .iter()
            .filter(|_| !c.is_zero())
            .map(|t| LogTerm {
                coeff: &t.coeff * c,
                arg: t.arg.clone(),
            })
            .collect();
        Self {
            log_terms,
            rational_part: self.rational_part.scale(c),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact derivative `Σ cᵢ argᵢ′/argᵢ + r′`, in normal form.
    pub fn derivative(&self) -> RationalFunction {
        self.log_terms
            .iter()
            .fold(self.rational_part.derivative(), |acc, t| {
                let q = t
                    .arg
                    .derivative()
                    .div(&t.arg)
                    .expect("log argument is nonzero");
                &acc + &q.scale(&t.coeff)
            })
    }

    /// Interval enclosure at `x`; fails if a log argument is not certainly
    /// positive there.
    pub fn eval_interval(&self, x: &Interval, work_precision: u32) -> Result<Interval> {
        let mut acc = self.rational_part.eval_interval(x)?;
        for t in &self.log_terms {
            let a = t.arg.eval_interval(x)?;
            acc = &acc + &iv_ln(&a, work_precision)?.scale(&t.coeff);
        }
        Ok(acc)
    }

    /// Classifies `lim_{x→∞}`.
    ///
    /// `Σ cᵢ ln argᵢ = (Σ cᵢδᵢ) ln x + Σ cᵢ ln ρᵢ + o(1)` where `δᵢ` is the
    /// degree and `ρᵢ` the leading ratio of `argᵢ`. The log part tends to zero
    /// iff `Σ cᵢδᵢ = 0` and `Π ρᵢ^{D·cᵢ} = 1` for a common denominator `D`.
    /// Any other finite log constant is irrational in general and reported
    /// as divergent.
    pub fn limit_at_infinity(&self) -> Limit {
        let slope: Rational = self
            .log_terms
            .iter()
            .map(|t| &t.coeff * int(t.arg.degree()))
            .sum();
        if !slope.is_zero() {
            return Limit::Diverges;
        }
        let d = self
            .log_terms
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));
        let mut prod = Rational::one();
        for t in &self.log_terms {
            let e = (&t.coeff * Rational::from_integer(d.clone())).to_integer();
            let Some(e) = e.to_i32() else {
                return Limit::Diverges;
            };
            prod *= rational::pow_int(&t.arg.leading_ratio(), e);
        }
        if !prod.is_one() {
            return Limit::Diverges;
        }
        let r = &self.rational_part;
        match r.degree() {
            i64::MIN => Limit::Zero,
            k if k < 0 => Limit::Zero,
            0 => Limit::Value(r.leading_ratio()),
            _ => Limit::Diverges,
        }
    }
}

impl fmt::Display for LogRationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .log_terms
            .iter()
            .map(|t| format!("{}*ln({})", rational::format(&t.coeff), t.arg))
            .collect();
        if !self.rational_part.is_zero() || parts.is_empty() {
            parts.push(self.rational_part.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}
