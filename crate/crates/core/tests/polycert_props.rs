use num_traits::{One, Signed};
use proptest::prelude::*;
use psibound::kernel::rational::{int, ratio};
use psibound::kernel::{Interval, Rational};
use psibound::polycert::{
    certify_negative_on_ray, positivity_on_ray, LogRationalExpr, LogTerm, Polynomial, Positivity,
    RationalFunction,
};

const PREC: u32 = 80;

fn rat(max: i64) -> impl Strategy<Value = Rational> + Clone {
    (-max * 8..=max * 8, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn nonneg(max: i64) -> impl Strategy<Value = Rational> + Clone {
    (0..=max * 8, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn pos(max: i64) -> impl Strategy<Value = Rational> + Clone {
    (1..=max * 8, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn poly(deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rat(10), 0..=deg + 1).prop_map(Polynomial::new)
}

/// `q(x − s)` for `q` with nonnegative coefficients, so shifting by `s`
/// always certifies; mixed with arbitrary polynomials.
fn ray_poly() -> impl Strategy<Value = (Polynomial, Rational)> {
    let built = (prop::collection::vec(nonneg(10), 1..=7), rat(5))
        .prop_map(|(cs, s)| (Polynomial::new(cs).taylor_shift(&-s.clone()), s));
    prop_oneof![built, (poly(6), rat(5))]
}

/// `x + a` with `a ≥ 0`.
fn linear(a: Rational) -> Polynomial {
    Polynomial::new(vec![a, Rational::one()])
}

/// `c ln((x + a)/(x + b))` plus `Σ c_k (x + a_k)^{−k}` with random signs.
fn log_expr() -> impl Strategy<Value = LogRationalExpr> {
    (
        prop::collection::vec((rat(4), nonneg(4), nonneg(4)), 0..=2),
        prop::collection::vec((rat(4), nonneg(4), 1u32..=3), 0..=3),
    )
        .prop_map(|(logs, parts)| {
            let terms = logs
                .into_iter()
                .map(|(c, a, b)| LogTerm {
                    coeff: c,
                    arg: RationalFunction::new(linear(a), linear(b)).unwrap(),
                })
                .collect();
            let rational = parts
                .into_iter()
                .fold(RationalFunction::zero(), |acc, (c, a, k)| {
                    let t =
                        RationalFunction::new(Polynomial::constant(c), linear(a).pow(k)).unwrap();
                    &acc + &t
                });
            LogRationalExpr::new(terms, rational).unwrap()
        })
}

/// Expressions that are negative and increasing to zero on `x > 0`:
/// `Σ c ln((x + a)/(x + a + δ)) − Σ c_k (x + a_k)^{−k}` with `c ≥ 0`, `c_k > 0`.
fn negative_expr() -> impl Strategy<Value = LogRationalExpr> {
    (
        prop::collection::vec((nonneg(4), nonneg(4), 1i64..=8), 0..=2),
        prop::collection::vec((pos(4), nonneg(4), 1u32..=3), 1..=3),
    )
        .prop_map(|(logs, parts)| {
            let terms = logs
                .into_iter()
                .map(|(c, a, d)| LogTerm {
                    coeff: c,
                    arg: RationalFunction::new(linear(a.clone()), linear(a + int(d))).unwrap(),
                })
                .collect();
            let rational = parts
                .into_iter()
                .fold(RationalFunction::zero(), |acc, (c, a, k)| {
                    let t =
                        RationalFunction::new(Polynomial::constant(-c), linear(a).pow(k)).unwrap();
                    &acc + &t
                });
            LogRationalExpr::new(terms, rational).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn taylor_shift_is_a_ring_homomorphism(p in poly(6), q in poly(6), s in rat(5)) {
        prop_assert_eq!((&p * &q).taylor_shift(&s), &p.taylor_shift(&s) * &q.taylor_shift(&s));
        prop_assert_eq!((&p + &q).taylor_shift(&s), &p.taylor_shift(&s) + &q.taylor_shift(&s));
        prop_assert_eq!(p.taylor_shift(&s).taylor_shift(&-s.clone()), p.clone());
        prop_assert_eq!(p.taylor_shift(&int(0)), p.clone());
    }

    #[test]
    fn taylor_shift_evaluates_exactly(p in poly(6), s in rat(5), x in rat(20)) {
        prop_assert_eq!(p.taylor_shift(&s).eval(&x), p.eval(&(&x + &s)));
    }

    #[test]
    fn certified_positivity_is_sound(
        (p, s) in ray_poly(),
        points in prop::collection::vec((1i64..=100_000, 1i64..=1000), 100),
    ) {
        if positivity_on_ray(&p, &s) == Positivity::CertifiedPositive {
            for (n, d) in points {
                let x = &s + ratio(n, d);
                prop_assert!(p.eval(&x).is_positive(), "p({}) <= 0", x);
            }
        }
    }

    #[test]
    fn derivative_brackets_central_difference(
        e in log_expr(),
        x in (8i64..=400).prop_map(|n| ratio(n, 8)),
        h in (1i64..=16).prop_map(|n| ratio(n, 64)),
    ) {
        // mean value theorem: the difference quotient is e′(ξ) for some ξ in [x − h, x + h]
        let hi = e.eval_interval(&Interval::point(&x + &h), PREC).unwrap();
        let lo = e.eval_interval(&Interval::point(&x - &h), PREC).unwrap();
        let quotient = (&hi - &lo).scale(&(int(2) * &h).recip());
        let span = Interval::new(&x - &h, &x + &h).unwrap();
        let range = e.derivative().eval_interval(&span).unwrap();
        prop_assert!(range.intersects(&quotient));
    }

    #[test]
    fn certified_negative_is_sound(
        e in negative_expr(),
        s in (0i64..=24).prop_map(|n| ratio(n, 8)),
        points in prop::collection::vec((1i64..=800, 1i64..=8), 20),
    ) {
        let cert = certify_negative_on_ray(&e, &s);
        prop_assert!(cert.certified(), "{}", e);
        for (n, d) in points {
            let x = &s + ratio(n, d).min(int(100));
            prop_assert!(e.eval_interval(&Interval::point(x), PREC).unwrap().is_negative());
        }
    }

    #[test]
    fn certificates_never_cover_positive_values(e in log_expr(), s in (0i64..=24).prop_map(|n| ratio(n, 8))) {
        if certify_negative_on_ray(&e, &s).certified() {
            for k in 1..=20 {
                let x = &s + ratio(k * k, 4);
                prop_assert!(!e.eval_interval(&Interval::point(x), PREC).unwrap().is_positive());
            }
        }
    }
}

#[test]
fn positive_expression_is_not_certified() {
    // ln((x + 1)/x) > 0 and decreasing
    let arg = RationalFunction::new(linear(int(1)), Polynomial::x()).unwrap();
    let e = LogRationalExpr::log(int(1), arg).unwrap();
    assert!(!certify_negative_on_ray(&e, &int(1)).certified());
}
