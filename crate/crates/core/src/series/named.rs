//! Named expansions in powers of `1/x`.

use num_traits::{One, Zero};

use super::bernoulli::BernoulliTable;
use super::expansion::AsymptoticExpansion;
use crate::error::{Error, Result};
use crate::kernel::rational::{int, pow_int, ratio, Rational};

fn require_order(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::Argument(format!(
            "expansion order must be at least 1, got {k}"
        )));
    }
    Ok(())
}

/// `1/(x + a) = Σ_{k≥1} (−a)^{k−1} x^{−k}` through `x^{−order}`.
pub fn reciprocal_shift_expansion(a: &Rational, order: i64) -> AsymptoticExpansion {
    let terms: Vec<(i64, Rational)> = (1..=order)
        .map(|k| (k, pow_int(&-a, (k - 1) as i32)))
        .collect();
    AsymptoticExpansion::from_terms(order, &terms)
}

/// `ψ(x+1) ∼ ln x + 1/(2x) − Σ_{k≥2} B_k/(k x^k)`.
pub fn digamma_expansion(order: i64) -> Result<AsymptoticExpansion> {
    require_order(order)?;
    let b = BernoulliTable::up_to(order as usize);
    let mut terms = vec![(1, ratio(1, 2))];
    terms.extend((2..=order).map(|k| (k, -b.get(k as usize) / int(k))));
    Ok(AsymptoticExpansion::log(Rational::one(), order)
        .add(&AsymptoticExpansion::from_terms(order, &terms)))
}

/// `ψ′(x+1) ∼ Σ_{k≥1} B_{k−1} x^{−k}` with `B_1 = −1/2`.
pub fn trigamma_expansion(order: i64) -> Result<AsymptoticExpansion> {
    require_order(order)?;
    let b = BernoulliTable::up_to(order as usize - 1);
    let terms: Vec<(i64, Rational)> = (1..=order)
        .map(|k| (k, b.get(k as usize - 1).clone()))
        .collect();
    Ok(AsymptoticExpansion::from_terms(order, &terms))
}

/// `θ(x, m) = (e^{m/(x+1)} − e^{−m/x})/(2m)`.
pub fn theta_expansion(m: &Rational, order: i64) -> Result<AsymptoticExpansion> {
    if m.is_zero() {
        return Err(Error::Argument("theta expansion needs m != 0".into()));
    }
    require_order(order)?;
    let plus = reciprocal_shift_expansion(&Rational::one(), order)
        .scale(m)
        .exp()?;
    let minus = AsymptoticExpansion::monomial(1, -m.clone(), order).exp()?;
    Ok(plus.sub(&minus).scale(&(Rational::one() / (int(2) * m))))
}

/// `ψ′(x+1)·e^{2ψ(x+1)}` through `x^{−order}`, obtained by exponentiating
/// twice the digamma expansion and multiplying by the trigamma expansion.
pub fn product_expansion(order: i64) -> Result<AsymptoticExpansion> {
    if order < 0 {
        return Err(Error::Argument(format!(
            "expansion order must be non-negative, got {order}"
        )));
    }
    let e2psi = digamma_expansion(order + 2)?.scale(&int(2)).exp()?;
    trigamma_expansion(order + 2)?.mul(&e2psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::bernoulli::bernoulli;

    fn coeffs(e: &AsymptoticExpansion, from: i64, to: i64) -> Vec<Rational> {
        (from..=to).map(|k| e.coeff(k).unwrap()).collect()
    }

    #[test]
    fn reciprocal_shift_cases() {
        assert_eq!(
            reciprocal_shift_expansion(&Rational::zero(), 4),
            AsymptoticExpansion::monomial(1, ratio(1, 1), 4)
        );
        let e = reciprocal_shift_expansion(&ratio(1, 1), 3);
        assert_eq!(
            coeffs(&e, 1, 3),
            vec![ratio(1, 1), ratio(-1, 1), ratio(1, 1)]
        );
        let e = reciprocal_shift_expansion(&ratio(1, 2), 2);
        assert_eq!(
            coeffs(&e, 0, 2),
            vec![ratio(0, 1), ratio(1, 1), ratio(-1, 2)]
        );
    }

    #[test]
    fn digamma_coefficients() {
        let e = digamma_expansion(10).unwrap();
        assert_eq!(e.log_coeff(), &ratio(1, 1));
        assert_eq!(
            coeffs(&e, 0, 10),
            vec![
                ratio(0, 1),
                ratio(1, 2),
                ratio(-1, 12),
                ratio(0, 1),
                ratio(1, 120),
                ratio(0, 1),
                ratio(-1, 252),
                ratio(0, 1),
                ratio(1, 240),
                ratio(0, 1),
                ratio(-1, 132),
            ]
        );
        assert_eq!(e.coeff(2).unwrap(), -bernoulli(2) / int(2));
    }

    #[test]
    fn trigamma_coefficients() {
        let e = trigamma_expansion(11).unwrap();
        assert_eq!(
            coeffs(&e, 1, 11),
            vec![
                ratio(1, 1),
                ratio(-1, 2),
                ratio(1, 6),
                ratio(0, 1),
                ratio(-1, 30),
                ratio(0, 1),
                ratio(1, 42),
                ratio(0, 1),
                ratio(-1, 30),
                ratio(0, 1),
                ratio(5, 66),
            ]
        );
    }

    #[test]
    fn trigamma_is_termwise_derivative_of_digamma() {
        for k in 1..=16 {
            let d = digamma_expansion(k).unwrap().derivative();
            assert_eq!(d, trigamma_expansion(k + 1).unwrap(), "order {k}");
        }
    }

    #[test]
    fn log_coefficient_adds() {
        let s = digamma_expansion(6)
            .unwrap()
            .add(&trigamma_expansion(6).unwrap());
        assert_eq!(s.log_coeff(), &ratio(1, 1));
    }

    #[test]
    fn theta_gaps() {
        let t = trigamma_expansion(10).unwrap();
        let g1 = t.sub(&theta_expansion(&ratio(1, 1), 10).unwrap());
        assert_eq!(g1.leading_index(), Some(5));
        assert_eq!(g1.coeff(5), Some(ratio(1, 24)));
        let g2 = t.sub(&theta_expansion(&ratio(2, 1), 10).unwrap());
        assert_eq!(g2.leading_index(), Some(7));
        assert_eq!(g2.coeff(7), Some(ratio(-1, 45)));
        for m in [ratio(1, 3), ratio(-5, 2), ratio(7, 1)] {
            let th = theta_expansion(&m, 4).unwrap();
            assert_eq!(
                coeffs(&th, 0, 2),
                vec![ratio(0, 1), ratio(1, 1), ratio(-1, 2)]
            );
        }
        assert!(theta_expansion(&Rational::zero(), 4).is_err());
    }

    #[test]
    fn product_reproduces_known_terms() {
        let p = product_expansion(6).unwrap();
        assert_eq!(p.low_degree(), 1);
        assert_eq!(p.order(), 6);
        assert_eq!(
            coeffs(&p, -1, 6),
            vec![
                ratio(1, 1),
                ratio(1, 2),
                ratio(0, 1),
                ratio(0, 1),
                ratio(1, 90),
                ratio(-1, 60),
                ratio(2, 567),
                ratio(43, 2268),
            ]
        );
        // x² term of exp(2 ln x + …) cancels against the leading x^-1 of ψ′
        assert_eq!(p.coeff(-2), Some(Rational::zero()));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(digamma_expansion(0).is_err());
        assert!(trigamma_expansion(0).is_err());
        assert!(product_expansion(-1).is_err());
    }

    /// `α_k = Σ_{j=1}^{k} (1/j!) Σ_{i_1+…+i_j=k, i_ℓ≥1} Π a_{i_ℓ}`.
    fn multi_index_alpha(a: &[Rational], k: usize) -> Rational {
        fn compositions(n: usize, parts: usize, a: &[Rational]) -> Rational {
            if parts == 0 {
                return if n == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                };
            }
            (1..=n)
                .map(|first| &a[first] * compositions(n - first, parts - 1, a))
                .sum()
        }
        (1..=k)
            .map(|j| {
                compositions(k, j, a)
                    / Rational::from_integer(crate::kernel::rational::factorial(j as u32))
            })
            .sum()
    }

    #[test]
    fn exp_matches_multi_index_formula() {
        let a = vec![
            ratio(0, 1),
            ratio(3, 2),
            ratio(-1, 7),
            ratio(2, 5),
            ratio(0, 1),
            ratio(-9, 4),
            ratio(1, 3),
        ];
        let terms: Vec<(i64, Rational)> = a
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, c)| (k as i64, c))
            .collect();
        let e = AsymptoticExpansion::from_terms(6, &terms).exp().unwrap();
        for k in 1..=6 {
            assert_eq!(
                e.coeff(k as i64).unwrap(),
                multi_index_alpha(&a, k),
                "k = {k}"
            );
        }
        let d = digamma_expansion(6).unwrap();
        let f = AsymptoticExpansion::from_terms(
            6,
            &d.terms().map(|(k, c)| (k, int(2) * c)).collect::<Vec<_>>(),
        );
        let ef = f.exp().unwrap();
        let a: Vec<Rational> = (0..=6).map(|k| f.coeff(k).unwrap()).collect();
        for k in 1..=6 {
            assert_eq!(ef.coeff(k as i64).unwrap(), multi_index_alpha(&a, k));
        }
    }
}
