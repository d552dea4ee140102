use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::kernel::rational::{self, Rational};
use crate::kernel::Interval;

/// `num/den` in lowest terms with integer coefficients of content one and
/// a positive leading denominator coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRationalFunction")]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Deserialize)]
struct RawRationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl TryFrom<RawRationalFunction> for RationalFunction {
    type Error = Error;
    fn try_from(r: RawRationalFunction) -> Result<Self> {
        RationalFunction::new(r.num, r.den)
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).expect("gcd is nonzero").0;
        let den = den.div_rem(&g).expect("gcd is nonzero").0;

        let l = rational::denominator_lcm(num.coeffs().iter().chain(den.coeffs()));
        let content = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
        let mut factor = Rational::new(l, content);
        if den.leading().is_negative() {
            factor = -factor;
        }
        Self {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::normalize(p, Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    /// `Σ c_k x^{−k}`; negative `k` gives positive powers.
    pub fn laurent(terms: &[(i64, Rational)]) -> Self {
        let top = terms.iter().map(|(k, _)| *k).max().unwrap_or(0).max(0);
        let bottom = terms.iter().map(|(k, _)| *k).min().unwrap_or(0).min(0);
        let mut coeffs = vec![Rational::zero(); (top - bottom + 1) as usize];
        for (k, c) in terms {
            coeffs[(top - k) as usize] += c;
        }
        Self::normalize(
            Polynomial::new(coeffs),
            Polynomial::monomial(top as usize, Rational::one()),
        )
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num − deg den` (zero function reported as `i64::MIN`).
    pub fn degree(&self) -> i64 {
        match (self.num.degree(), self.den.degree()) {
            (Some(n), Some(d)) => n as i64 - d as i64,
            _ => i64::MIN,
        }
    }

    /// Ratio of leading coefficients.
    pub fn leading_ratio(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        self.num.leading() / self.den.leading()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize(n, &self.den * &self.den)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Domain(format!(
                "pole at x = {}",
                rational::format(x)
            )));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_interval(&self, x: &Interval) -> Result<Interval> {
        if x.is_point() {
            return Ok(Interval::point(self.eval(x.lo())?));
        }
        self.num.eval_interval(x).div(&self.den.eval_interval(x))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant()
            .then(|| self.num.coeff(0) / self.den.coeff(0))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalize(n, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, ratio};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn normal_form() {
        let r = RationalFunction::new(p(&[-2, 0, 2]), p(&[-3, -3])).unwrap();
        // 2(x−1)(x+1) / (−3(x+1)) = (2 − 2x)/3
        assert_eq!(r.num(), &p(&[2, -2]));
        assert_eq!(r.den(), &p(&[3]));
        let h = RationalFunction::new(
            Polynomial::new(vec![ratio(1, 2)]),
            Polynomial::new(vec![int(0), ratio(1, 3)]),
        )
        .unwrap();
        assert_eq!(h.num(), &p(&[3]));
        assert_eq!(h.den(), &p(&[0, 2]));
        assert!(RationalFunction::new(p(&[1]), Polynomial::zero()).is_err());
    }

    #[test]
    fn laurent_builder() {
        let r = RationalFunction::laurent(&[(-1, int(1)), (0, ratio(1, 2)), (3, ratio(1, 90))]);
        assert_eq!(
            r.eval(&int(3)).unwrap(),
            int(3) + ratio(1, 2) + ratio(1, 90 * 27)
        );
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::laurent(&[(1, int(1))]);
        let b = RationalFunction::laurent(&[(0, int(1))]);
        let s = &a + &b;
        assert_eq!(s.eval(&int(4)).unwrap(), ratio(5, 4));
        assert!((&a - &a).is_zero());
        assert_eq!(
            (&a * &a.recip().unwrap()),
            RationalFunction::constant(int(1))
        );
        assert!(RationalFunction::zero().recip().is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dx x/(x+1) = 1/(x+1)²
        let r = RationalFunction::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(
            r.derivative(),
            RationalFunction::new(p(&[1]), p(&[1, 2, 1])).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let r = RationalFunction::new(p(&[1, 2]), p(&[0, 0, 3])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":["1","2"],"den":["0","0","3"]}"#);
        assert_eq!(serde_json::from_str::<RationalFunction>(&s).unwrap(), r);
    }
}
