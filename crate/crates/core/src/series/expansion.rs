use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, Rational};
use crate::kernel::Interval;

/// A truncated asymptotic expansion
///
/// ```text
/// λ·ln x + Σ_{k=−d}^{K} a_k x^{−k} + O(x^{−K−1})
/// ```
///
/// with exact rational coefficients. `d` is the highest positive power of
/// `x` present and `K` the truncation order; coefficients beyond `K` are
/// unknown, and every operation tracks how far its result can be trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticExpansion {
    log_coeff: Rational,
    low_degree: u32,
    order: i64,
    /// `coeffs[i]` is the coefficient of `x^{−(i − d)}`.
    coeffs: Vec<Rational>,
}

fn slot_count(low_degree: u32, order: i64) -> usize {
    (order + low_degree as i64 + 1).max(0) as usize
}

impl AsymptoticExpansion {
    /// Builds an expansion from a sparse map `k ↦ a_k`; keys must lie in
    /// `[−low_degree, order]`.
    pub fn new(
        log_coeff: Rational,
        low_degree: u32,
        order: i64,
        coeffs: &BTreeMap<i64, Rational>,
    ) -> Result<Self> {
        let mut out = Self {
            log_coeff,
            low_degree,
            order,
            coeffs: vec![Rational::zero(); slot_count(low_degree, order)],
        };
        for (&k, c) in coeffs {
            if k < -(low_degree as i64) || k > order {
                return Err(Error::Argument(format!(
                    "coefficient index {k} outside [-{low_degree}, {order}]"
                )));
            }
            out.coeffs[(k + low_degree as i64) as usize] = c.clone();
        }
        Ok(out.normalized())
    }

    /// `Σ c_k x^{−k}` from `(k, c_k)` pairs, truncated at `order`. Terms past
    /// the order are dropped.
    pub fn from_terms(order: i64, terms: &[(i64, Rational)]) -> Self {
        let low_degree = terms.iter().map(|(k, _)| (-k).max(0)).max().unwrap_or(0) as u32;
        let mut out = Self::zero_with(low_degree, order);
        for (k, c) in terms {
            if *k <= order {
                out.coeffs[(k + low_degree as i64) as usize] += c;
            }
        }
        out.normalized()
    }

    pub fn zero(order: i64) -> Self {
        Self::zero_with(0, order)
    }

    fn zero_with(low_degree: u32, order: i64) -> Self {
        Self {
            log_coeff: Rational::zero(),
            low_degree,
            order,
            coeffs: vec![Rational::zero(); slot_count(low_degree, order)],
        }
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::from_terms(order, &[(0, c)])
    }

    /// `c · x^{−k}`.
    pub fn monomial(k: i64, c: Rational, order: i64) -> Self {
        Self::from_terms(order, &[(k, c)])
    }

    /// `λ·ln x` with no other terms.
    pub fn log(lambda: Rational, order: i64) -> Self {
        Self {
            log_coeff: lambda,
            ..Self::zero(order)
        }
    }

    pub fn log_coeff(&self) -> &Rational {
        &self.log_coeff
    }

    pub fn low_degree(&self) -> u32 {
        self.low_degree
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `x^{−k}`; `None` past the truncation order.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k > self.order {
            return None;
        }
        let i = k + self.low_degree as i64;
        if i < 0 {
            return Some(Rational::zero());
        }
        Some(self.coeffs[i as usize].clone())
    }

    /// `(k, a_k)` for every known index `k ∈ [−d, K]`, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        let d = self.low_degree as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (i as i64 - d, c))
    }

    /// Smallest `k` with a nonzero known coefficient.
    pub fn leading_index(&self) -> Option<i64> {
        self.terms().find(|(_, c)| !c.is_zero()).map(|(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.log_coeff.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    fn normalized(mut self) -> Self {
        let zeros = self
            .coeffs
            .iter()
            .take(self.low_degree as usize)
            .take_while(|c| c.is_zero())
            .count();
        self.coeffs.drain(..zeros);
        self.low_degree -= zeros as u32;
        self
    }

    /// Drops everything past `x^{−order}` (no-op if already shorter).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut out = self.clone();
        out.coeffs.truncate(slot_count(self.low_degree, order));
        out.order = order;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let low_degree = self.low_degree.max(other.low_degree);
        let mut out = Self::zero_with(low_degree, order);
        out.log_coeff = &self.log_coeff + &other.log_coeff;
        for e in [self, other] {
            for (k, c) in e.terms().take_while(|(k, _)| *k <= order) {
                out.coeffs[(k + low_degree as i64) as usize] += c;
            }
        }
        out.normalized()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let out = Self {
            log_coeff: &self.log_coeff * c,
            low_degree: self.low_degree,
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        out.normalized()
    }

    /// Cauchy product `r_k = Σ_{i+j=k} p_i q_j`.
    ///
    /// Unknown terms of `self` (index `> K_u`) meet terms of `other` down to
    /// index `−d_v`, so the product is trustworthy only through
    /// `min(K_u − d_v, K_v − d_u)`. Expansions carrying `ln x` are rejected.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.log_coeff.is_zero() || !other.log_coeff.is_zero() {
            return Err(Error::Unsupported(
                "product of expansions with a ln x term".into(),
            ));
        }
        let (du, dv) = (self.low_degree as i64, other.low_degree as i64);
        let order = (self.order - dv).min(other.order - du);
        let low_degree = (du + dv) as u32;
        let mut out = Self::zero_with(low_degree, order);
        for (i, p) in self.terms() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.terms() {
                if i + j > order {
                    break;
                }
                out.coeffs[(i + j + du + dv) as usize] += p * q;
            }
        }
        Ok(out.normalized())
    }

    /// `exp` of an expansion `λ·ln x + Σ_{k≥1} a_k x^{−k}`.
    ///
    /// Coefficients come from `α_0 = 1`, `α_k = (1/k) Σ_{j=1}^{k} j·a_j·α_{k−j}`,
    /// and `exp(λ ln x) = x^λ` shifts them up by `λ`, so the result is known
    /// through `x^{−(K−λ)}`. Requires no positive powers, `a_0 = 0`, and a
    /// non-negative integer `λ`.
    pub fn exp(&self) -> Result<Self> {
        if self.low_degree != 0 {
            return Err(Error::Unsupported(
                "exp of an expansion with positive powers of x".into(),
            ));
        }
        if !self.coeff(0).unwrap_or_default().is_zero() {
            return Err(Error::Unsupported(
                "exp of an expansion with nonzero constant term (result not rational)".into(),
            ));
        }
        if !self.log_coeff.is_integer() || self.log_coeff.is_negative() {
            return Err(Error::Unsupported(format!(
                "exp needs a non-negative integer ln x coefficient, got {}",
                rational::format(&self.log_coeff)
            )));
        }
        let shift: i64 = self
            .log_coeff
            .to_integer()
            .try_into()
            .map_err(|_| Error::Unsupported("ln x coefficient too large".into()))?;

        let order = self.order.max(0);
        let a: Vec<Rational> = (0..=order).map(|k| self.coeff(k).unwrap()).collect();
        let mut alpha = vec![Rational::one()];
        for k in 1..=order as usize {
            let s: Rational = (1..=k).map(|j| int(j as i64) * &a[j] * &alpha[k - j]).sum();
            alpha.push(s / int(k as i64));
        }

        let terms: Vec<(i64, Rational)> = alpha
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64 - shift, c))
            .collect();
        let mut out = Self::zero_with(shift as u32, self.order - shift);
        for (k, c) in terms {
            if k <= out.order {
                out.coeffs[(k + shift) as usize] = c;
            }
        }
        Ok(out.normalized())
    }

    /// Termwise derivative: `λ/x + Σ −k·a_k x^{−k−1}`, known through
    /// `x^{−(K+1)}`.
    pub fn derivative(&self) -> Self {
        let order = self.order + 1;
        let mut terms: Vec<(i64, Rational)> =
            self.terms().map(|(k, c)| (k + 1, -(int(k) * c))).collect();
        terms.push((1, self.log_coeff.clone()));
        Self::from_terms(order, &terms)
    }

    /// Evaluates the truncated sum at a rational point. Only for expansions
    /// without a `ln x` term.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.require_no_log("evaluation")?;
        let inv = x.recip();
        Ok(self
            .terms()
            .map(|(k, c)| c * rational::pow_int(&inv, k as i32))
            .sum())
    }

    /// Interval evaluation of the truncated sum.
    pub fn eval_interval(&self, x: &Interval) -> Result<Interval> {
        self.require_no_log("evaluation")?;
        let inv = x.recip()?;
        let mut acc = Interval::zero();
        for (k, c) in self.terms() {
            if !c.is_zero() {
                acc = &acc + &inv.pow_int(k as i32)?.scale(c);
            }
        }
        Ok(acc)
    }

    fn require_no_log(&self, what: &str) -> Result<()> {
        if self.log_coeff.is_zero() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} of an expansion with a ln x term"
            )))
        }
    }
}

impl fmt::Display for AsymptoticExpansion {
    /// Renders e.g. `ln x + 1/(2x) - 1/(12x^2) + O(x^-3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.log_coeff.is_zero() {
            parts.push(signed_term(&self.log_coeff, "", "ln x"));
        }
        for (k, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            parts.push(match k {
                0 => signed_term(c, "", ""),
                -1 => signed_term(c, "", "x"),
                k if k < 0 => signed_term(c, "", &format!("x^{}", -k)),
                1 => signed_term(c, "x", ""),
                k => signed_term(c, &format!("x^{k}"), ""),
            });
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} + O(x^-{})", self.order + 1)
    }
}

/// Sign and magnitude text of `c·num/den`, where `num` multiplies and
/// `den` divides.
fn signed_term(c: &Rational, den: &str, num: &str) -> (bool, String) {
    let a = c.abs();
    let (p, q) = (a.numer().to_string(), a.denom().to_string());
    let body = match (num.is_empty(), den.is_empty()) {
        (true, true) => rational::format(&a),
        (false, true) if a.is_one() => num.to_string(),
        (false, true) if a.is_integer() => format!("{p}{num}"),
        (false, true) => format!("({p}/{q}){num}"),
        (true, false) if a.is_integer() => format!("{p}/{den}"),
        (true, false) => format!("{p}/({q}{den})"),
        (false, false) => unreachable!("a term has either a numerator or a denominator power"),
    };
    (c.is_negative(), body)
}

struct OrderedCoeffs<'a>(&'a AsymptoticExpansion);

impl Serialize for OrderedCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.coeffs.len()))?;
        for (k, c) in self.0.terms() {
            map.serialize_entry(&k.to_string(), &rational::format(c))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct ExpansionDocOut<'a> {
    log_coeff: String,
    low_degree: u32,
    order: i64,
    coeffs: OrderedCoeffs<'a>,
}

#[derive(Deserialize)]
struct ExpansionDocIn {
    log_coeff: String,
    low_degree: u32,
    order: i64,
    coeffs: BTreeMap<String, String>,
}

impl Serialize for AsymptoticExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionDocOut {
            log_coeff: rational::format(&self.log_coeff),
            low_degree: self.low_degree,
            order: self.order,
            coeffs: OrderedCoeffs(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AsymptoticExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = ExpansionDocIn::deserialize(d)?;
        let log_coeff = rational::parse(&doc.log_coeff).map_err(D::Error::custom)?;
        let mut coeffs = BTreeMap::new();
        for (k, v) in &doc.coeffs {
            let k: i64 = k.parse().map_err(D::Error::custom)?;
            coeffs.insert(k, rational::parse(v).map_err(D::Error::custom)?);
        }
        let e = AsymptoticExpansion::new(log_coeff, doc.low_degree, doc.order, &coeffs)
            .map_err(D::Error::custom)?;
        if e.low_degree != doc.low_degree {
            return Err(D::Error::custom(
                "low_degree does not match the highest nonzero power",
            ));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::ratio;

    fn inv_x(order: i64) -> AsymptoticExpansion {
        AsymptoticExpansion::monomial(1, ratio(1, 1), order)
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let u = AsymptoticExpansion::from_terms(5, &[(1, ratio(1, 2)), (3, ratio(-2, 7))]);
        assert_eq!(u.add(&AsymptoticExpansion::zero(5)), u);
        let z = inv_x(4).add(&inv_x(4).neg());
        assert!(z.is_zero());
        assert_eq!(z.order(), 4);
    }

    #[test]
    fn add_truncates_to_smaller_order() {
        let s = inv_x(3).add(&inv_x(7));
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeff(1), Some(ratio(2, 1)));
        assert_eq!(s.coeff(4), None);
    }

    #[test]
    fn product_basics() {
        let one = AsymptoticExpansion::constant(ratio(1, 1), 6);
        let u = AsymptoticExpansion::from_terms(6, &[(1, ratio(3, 1)), (2, ratio(-1, 5))]);
        assert_eq!(u.mul(&one).unwrap(), u);
        let sq = inv_x(6).mul(&inv_x(6)).unwrap();
        assert_eq!(sq.leading_index(), Some(2));
        assert_eq!(sq.coeff(2), Some(ratio(1, 1)));
        assert_eq!(sq.order(), 6);
    }

    #[test]
    fn product_order_accounts_for_positive_powers() {
        // (x + 1)·(1/x + O(x^-4)) is known only through x^-3
        let p = AsymptoticExpansion::from_terms(4, &[(-1, ratio(1, 1)), (0, ratio(1, 1))]);
        let r = p.mul(&inv_x(4)).unwrap();
        assert_eq!(r.order(), 3);
        assert_eq!(r.coeff(0), Some(ratio(1, 1)));
        assert_eq!(r.coeff(1), Some(ratio(1, 1)));
    }

    #[test]
    fn product_rejects_log_terms() {
        let l = AsymptoticExpansion::log(ratio(1, 1), 3);
        assert!(matches!(l.mul(&inv_x(3)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn exp_examples() {
        let e0 = AsymptoticExpansion::zero(5).exp().unwrap();
        assert_eq!(e0, AsymptoticExpansion::constant(ratio(1, 1), 5));
        let e = inv_x(3).exp().unwrap();
        let expect = AsymptoticExpansion::from_terms(
            3,
            &[
                (0, ratio(1, 1)),
                (1, ratio(1, 1)),
                (2, ratio(1, 2)),
                (3, ratio(1, 6)),
            ],
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn exp_with_log_shifts_and_loses_order() {
        let f = AsymptoticExpansion::log(ratio(2, 1), 5).add(&inv_x(5));
        let e = f.exp().unwrap();
        assert_eq!(e.low_degree(), 2);
        assert_eq!(e.order(), 3);
        assert_eq!(e.coeff(-2), Some(ratio(1, 1)));
        assert_eq!(e.coeff(-1), Some(ratio(1, 1)));
        assert_eq!(e.coeff(0), Some(ratio(1, 2)));
    }

    #[test]
    fn exp_preconditions() {
        let c = AsymptoticExpansion::constant(ratio(1, 1), 3);
        assert!(matches!(c.exp(), Err(Error::Unsupported(_))));
        let half_log = AsymptoticExpansion::log(ratio(1, 2), 3);
        assert!(matches!(half_log.exp(), Err(Error::Unsupported(_))));
        let neg_log = AsymptoticExpansion::log(ratio(-1, 1), 3);
        assert!(neg_log.exp().is_err());
        let poly = AsymptoticExpansion::monomial(-1, ratio(1, 1), 3);
        assert!(poly.exp().is_err());
    }

    #[test]
    fn derivative_of_log_and_powers() {
        let f = AsymptoticExpansion::log(ratio(1, 1), 3).add(&AsymptoticExpansion::from_terms(
            3,
            &[(-2, ratio(1, 1)), (2, ratio(1, 1))],
        ));
        let d = f.derivative();
        // d/dx (ln x + x² + x^-2) = 2x + 1/x − 2/x³
        assert_eq!(d.log_coeff(), &Rational::zero());
        assert_eq!(d.coeff(-1), Some(ratio(2, 1)));
        assert_eq!(d.coeff(1), Some(ratio(1, 1)));
        assert_eq!(d.coeff(3), Some(ratio(-2, 1)));
        assert_eq!(d.order(), 4);
    }

    #[test]
    fn new_validates_keys() {
        let mut m = BTreeMap::new();
        m.insert(5, ratio(1, 1));
        assert!(AsymptoticExpansion::new(Rational::zero(), 0, 3, &m).is_err());
        m.clear();
        m.insert(-2, ratio(1, 1));
        assert!(AsymptoticExpansion::new(Rational::zero(), 1, 3, &m).is_err());
    }

    #[test]
    fn json_document_shape() {
        let e = AsymptoticExpansion::log(ratio(1, 1), 2).add(&AsymptoticExpansion::from_terms(
            2,
            &[(-1, ratio(1, 1)), (2, ratio(-1, 12))],
        ));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"log_coeff":"1","low_degree":1,"order":2,"coeffs":{"-1":"1","0":"0","1":"0","2":"-1/12"}}"#
        );
        let back: AsymptoticExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn display_form() {
        let e = AsymptoticExpansion::log(ratio(1, 1), 4).add(&AsymptoticExpansion::from_terms(
            4,
            &[
                (-2, ratio(3, 1)),
                (-1, ratio(-1, 2)),
                (0, ratio(5, 1)),
                (1, ratio(1, 2)),
                (2, ratio(-1, 12)),
                (4, ratio(3, 1)),
            ],
        ));
        assert_eq!(
            e.to_string(),
            "ln x + 3x^2 - (1/2)x + 5 + 1/(2x) - 1/(12x^2) + 3/x^4 + O(x^-5)"
        );
        assert_eq!(AsymptoticExpansion::zero(2).to_string(), "0 + O(x^-3)");
    }

    #[test]
    fn eval_matches_sum() {
        let e = AsymptoticExpansion::from_terms(3, &[(1, ratio(1, 1)), (3, ratio(-1, 2))]);
        assert_eq!(e.eval(&ratio(2, 1)).unwrap(), ratio(1, 2) - ratio(1, 16));
        let iv = e.eval_interval(&Interval::point(ratio(2, 1))).unwrap();
        assert!(iv.is_point());
        assert!(AsymptoticExpansion::log(ratio(1, 1), 2)
            .eval(&ratio(2, 1))
            .is_err());
    }
}
