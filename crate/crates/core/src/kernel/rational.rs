//! Exact rationals and the handful of helpers the rest of the crate needs
//! on top of [`num_rational::BigRational`].

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Integer power, negative exponents allowed for nonzero `q`.
pub fn pow_int(q: &Rational, e: i32) -> Rational {
    num_traits::pow::Pow::pow(q, e)
}

/// `⌊log2 |q|⌋` for nonzero `q`.
pub fn floor_log2(q: &Rational) -> i64 {
    debug_assert!(!q.is_zero());
    let n = q.numer().abs();
    let d = q.denom();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // 2^e ≤ |q| < 2^(e+1) after at most one correction
    if q.abs() < pow2(e) {
        e -= 1;
    }
    e
}

/// `n · 2^-bits` in lowest terms, built without a gcd.
pub fn dyadic(n: BigInt, bits: u32) -> Rational {
    if n.is_zero() {
        return Rational::zero();
    }
    let tz = n.trailing_zeros().unwrap_or(0).min(bits as u64);
    Rational::new_raw(n >> tz, BigInt::one() << (bits as u64 - tz))
}

/// `Some(m)` when the denominator of `q` is `2^m`.
fn dyadic_exponent(q: &Rational) -> Option<u64> {
    let d = q.denom();
    let tz = d.trailing_zeros().unwrap_or(0);
    (d.bits() == tz + 1).then_some(tz)
}

/// Largest multiple of `2^-bits` that is `≤ q`.
pub fn round_down(q: &Rational, bits: u32) -> Rational {
    if let Some(m) = dyadic_exponent(q) {
        if m <= bits as u64 {
            return q.clone();
        }
        // arithmetic shift floors
        return dyadic(q.numer() >> (m - bits as u64), bits);
    }
    dyadic((q.numer() << bits).div_floor(q.denom()), bits)
}

/// Smallest multiple of `2^-bits` that is `≥ q`.
pub fn round_up(q: &Rational, bits: u32) -> Rational {
    -round_down(&-q, bits)
}

/// Nearest `f64`, for display and diagnostics only.
pub fn to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // huge numerator/denominator: scale through the exponent
    let e = floor_log2(q);
    let m = q / pow2(e);
    m.to_f64().unwrap_or(f64::NAN) * 2f64.powi(e as i32)
}

/// Fixed-point decimal with `digits` fractional digits, rounded toward
/// `+∞` when `round_up` and toward `−∞` otherwise.
pub fn format_decimal(q: &Rational, digits: u32, round_up: bool) -> String {
    let scaled = q * Rational::from_integer(BigInt::from(10).pow(digits));
    let n = if round_up {
        scaled.ceil()
    } else {
        scaled.floor()
    }
    .to_integer();
    let mut body = n.abs().to_string();
    let d = digits as usize;
    if body.len() <= d {
        body = format!("{}{body}", "0".repeat(d + 1 - body.len()));
    }
    let (whole, frac) = body.split_at(body.len() - d);
    let sign = if n.is_negative() { "-" } else { "" };
    if d == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `-1.25` or
/// `1e-5`. Decimals are converted exactly.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut q = Rational::from_integer(all) * pow_int(&ten, scale as i32);
    if negative {
        q = -q;
    }
    Ok(q)
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Least common multiple of the denominators of `qs` (1 when empty).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Sign of `q` as -1, 0 or 1.
pub fn signum(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Serde adapter storing a [`Rational`] as its canonical `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding_is_directed() {
        assert_eq!(format_decimal(&ratio(1, 3), 4, false), "0.3333");
        assert_eq!(format_decimal(&ratio(1, 3), 4, true), "0.3334");
        assert_eq!(format_decimal(&ratio(-1, 3), 4, false), "-0.3334");
        assert_eq!(format_decimal(&ratio(-1, 3), 4, true), "-0.3333");
        assert_eq!(format_decimal(&ratio(1, 1000), 2, true), "0.01");
        assert_eq!(format_decimal(&int(12), 0, false), "12");
        assert_eq!(format_decimal(&ratio(5, 4), 3, false), "1.250");
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse("1e-5").unwrap(), ratio(1, 100_000));
        assert_eq!(parse("2.5E2").unwrap(), int(250));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.2.3").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn format_round_trips() {
        for q in [ratio(-43, 2268), int(0), int(12), ratio(1, 3)] {
            assert_eq!(parse(&format(&q)).unwrap(), q);
        }
        assert_eq!(format(&ratio(4, 2)), "2");
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let third = ratio(1, 3);
        let lo = round_down(&third, 10);
        let hi = round_up(&third, 10);
        assert!(lo < third && third < hi);
        assert_eq!(&hi - &lo, pow2(-10));
        assert_eq!(round_down(&ratio(-1, 3), 4), ratio(-6, 16));
    }

    #[test]
    fn floor_log2_exact_on_powers() {
        assert_eq!(floor_log2(&int(1)), 0);
        assert_eq!(floor_log2(&int(8)), 3);
        assert_eq!(floor_log2(&ratio(7, 8)), -1);
        assert_eq!(floor_log2(&ratio(1, 1024)), -10);
        assert_eq!(floor_log2(&int(-9)), 3);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(7), BigInt::from(5040));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
