use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// Every operation returns an interval that contains the exact image of its
/// inputs. Field operations on rationals are exact, so no rounding is ever
/// needed for `+ - × ÷`; the transcendental enclosures in
/// [`super::elementary`] round outward to keep endpoint sizes bounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    #[serde(with = "rational::serde_str")]
    lo: Rational,
    #[serde(with = "rational::serde_str")]
    hi: Rational,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl From<Interval> for RawInterval {
    fn from(iv: Interval) -> Self {
        RawInterval {
            lo: iv.lo,
            hi: iv.hi,
        }
    }
}

/// Field operation selector for [`iv_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt,
}

/// Right-hand operand for [`iv_arith`].
#[derive(Clone, Debug)]
pub enum Operand {
    Interval(Interval),
    Integer(i32),
    None,
}

/// Dispatches a field operation by name. `Neg` ignores its operand,
/// `PowInt` requires an integer one.
pub fn iv_arith(op: ArithOp, a: &Interval, b: &Operand) -> Result<Interval> {
    match (op, b) {
        (ArithOp::Neg, _) => Ok(-a),
        (ArithOp::PowInt, Operand::Integer(e)) => a.pow_int(*e),
        (ArithOp::Add, Operand::Interval(b)) => Ok(a + b),
        (ArithOp::Sub, Operand::Interval(b)) => Ok(a - b),
        (ArithOp::Mul, Operand::Interval(b)) => Ok(a * b),
        (ArithOp::Div, Operand::Interval(b)) => a.div(b),
        (op, b) => Err(Error::Argument(format!(
            "{op:?} does not take operand {b:?}"
        ))),
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Argument(format!(
                "empty interval [{}, {}]",
                rational::format(&lo),
                rational::format(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Builds `[a, b]` or `[b, a]`, whichever is ordered.
    pub fn hull_of(a: Rational, b: Rational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn point(q: Rational) -> Self {
        Self {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(rational::int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Every element of `self` is strictly below every element of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn add_rational(&self, c: &Rational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::Domain(format!(
                "reciprocal of {self}, which contains 0"
            )));
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self * &other.recip()?)
    }

    pub fn square(&self) -> Interval {
        self.pow_int(2).expect("even power never fails")
    }

    /// `self^e`; negative `e` requires `0 ∉ self`.
    pub fn pow_int(&self, e: i32) -> Result<Interval> {
        if e < 0 {
            return self.recip()?.pow_int(-e);
        }
        if e == 0 {
            return Ok(Interval::one());
        }
        let a = rational::pow_int(&self.lo, e);
        let b = rational::pow_int(&self.hi, e);
        if e % 2 == 1 || !self.lo.is_negative() {
            return Ok(Interval::hull_of(a, b));
        }
        if !self.hi.is_positive() {
            return Ok(Interval { lo: b, hi: a });
        }
        Ok(Interval {
            lo: Rational::zero(),
            hi: a.max(b),
        })
    }

    /// Widens the endpoints to dyadic rationals. Endpoints of magnitude at
    /// least one land on the grid `2^-bits`; smaller endpoints keep `bits`
    /// significant bits. The result always contains `self`.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let grid = |q: &Rational| -> u32 {
            if q.is_zero() {
                return bits;
            }
            let e = rational::floor_log2(q);
            bits + (-e).max(0) as u32
        };
        let lo = if self.lo.is_zero() {
            self.lo.clone()
        } else {
            rational::round_down(&self.lo, grid(&self.lo))
        };
        let hi = if self.hi.is_zero() {
            self.hi.clone()
        } else {
            rational::round_up(&self.hi, grid(&self.hi))
        };
        Interval { lo, hi }
    }

    /// `[lo, hi]` in decimal with outward rounding, so the printed interval
    /// still encloses this one.
    pub fn format_decimal(&self, digits: u32) -> String {
        format!(
            "[{}, {}]",
            rational::format_decimal(&self.lo, digits, false),
            rational::format_decimal(&self.hi, digits, true)
        )
    }

    /// Midpoint and radius as `f64`s, for display.
    pub fn approx(&self) -> (f64, f64) {
        let mid = rational::to_f64(&self.mid());
        let rad = rational::to_f64(&(self.width() / rational::int(2)));
        (mid, rad)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format(&self.lo),
            rational::format(&self.hi)
        )
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    /// Sign-case product: two endpoint products unless both factors
    /// straddle zero.
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            return Interval::point(&self.lo * &rhs.lo);
        }
        let (a, b) = (self, rhs);
        let sign = |x: &Interval| {
            if !x.lo.is_negative() {
                1
            } else if !x.hi.is_positive() {
                -1
            } else {
                0
            }
        };
        let (lo, hi) = match (sign(a), sign(b)) {
            (1, 1) => (&a.lo * &b.lo, &a.hi * &b.hi),
            (1, -1) => (&a.hi * &b.lo, &a.lo * &b.hi),
            (1, 0) => (&a.hi * &b.lo, &a.hi * &b.hi),
            (-1, 1) => (&a.lo * &b.hi, &a.hi * &b.lo),
            (-1, -1) => (&a.hi * &b.hi, &a.lo * &b.lo),
            (-1, 0) => (&a.lo * &b.hi, &a.lo * &b.lo),
            (0, 1) => (&a.lo * &b.hi, &a.hi * &b.hi),
            (0, -1) => (&a.hi * &b.lo, &a.lo * &b.lo),
            _ => {
                let lo = (&a.lo * &b.hi).min(&a.hi * &b.lo);
                let hi = (&a.lo * &b.lo).max(&a.hi * &b.hi);
                (lo, hi)
            }
        };
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { (&self).$m(&rhs) }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}
