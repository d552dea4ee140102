use num_traits::Signed;
use proptest::prelude::*;
use psibound::kernel::rational::{int, ratio};
use psibound::kernel::{iv_arith, iv_exp, iv_ln, iv_sinh, ArithOp, Interval, Operand, Rational};

const ORACLE_BITS: u32 = 256;

fn rat(max: i64) -> impl Strategy<Value = Rational> + Clone {
    (-max * 64..=max * 64, 1i64..=64).prop_map(|(n, d)| ratio(n, d))
}

fn pos_rat(max: i64) -> impl Strategy<Value = Rational> + Clone {
    (1..=max * 64, 1i64..=64).prop_map(|(n, d)| ratio(n, d))
}

fn interval(s: impl Strategy<Value = Rational> + Clone) -> impl Strategy<Value = Interval> {
    (s.clone(), s).prop_map(|(a, b)| Interval::hull_of(a, b))
}

/// An interval and a point inside it, `lo + t·(hi − lo)` with `t ∈ [0, 1]`.
fn interval_with_point(
    s: impl Strategy<Value = Rational> + Clone,
) -> impl Strategy<Value = (Interval, Rational)> {
    (interval(s), 0i64..=16).prop_map(|(a, t)| {
        let p = a.lo() + a.width() * ratio(t, 16);
        (a, p)
    })
}

/// `a ⊆ b`, built by widening `a` on both sides.
fn nested(
    s: impl Strategy<Value = Rational> + Clone,
) -> impl Strategy<Value = (Interval, Interval)> {
    (interval(s), 0i64..=8, 0i64..=8).prop_map(|(a, l, r)| {
        let b = Interval::new(a.lo() - ratio(l, 4), a.hi() + ratio(r, 4)).unwrap();
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exp_is_sound((a, x) in interval_with_point(rat(20)), p in 8u32..96) {
        let truth = iv_exp(&Interval::point(x), ORACLE_BITS);
        prop_assert!(iv_exp(&a, p).contains_interval(&truth));
    }

    #[test]
    fn ln_is_sound((a, x) in interval_with_point(pos_rat(1000)), p in 8u32..96) {
        let truth = iv_ln(&Interval::point(x), ORACLE_BITS).unwrap();
        prop_assert!(iv_ln(&a, p).unwrap().contains_interval(&truth));
    }

    #[test]
    fn sinh_is_sound((a, x) in interval_with_point(rat(20)), p in 8u32..96) {
        let truth = iv_sinh(&Interval::point(x), ORACLE_BITS);
        prop_assert!(iv_sinh(&a, p).contains_interval(&truth));
    }

    #[test]
    fn field_ops_are_sound(
        (a, x) in interval_with_point(rat(100)),
        (b, y) in interval_with_point(rat(100)),
    ) {
        prop_assert!((&a + &b).contains(&(&x + &y)));
        prop_assert!((&a - &b).contains(&(&x - &y)));
        prop_assert!((&a * &b).contains(&(&x * &y)));
        if !b.contains_zero() {
            prop_assert!(a.div(&b).unwrap().contains(&(&x / &y)));
        }
        prop_assert!(a.pow_int(3).unwrap().contains(&(&x * &x * &x)));
        prop_assert!(a.square().contains(&(&x * &x)));
    }

    #[test]
    fn refinement_never_widens(a in interval(rat(20)), p in 8u32..120, extra in 1u32..64) {
        let q = p + extra;
        prop_assert!(iv_exp(&a, q).width() <= iv_exp(&a, p).width());
        prop_assert!(iv_sinh(&a, q).width() <= iv_sinh(&a, p).width());
        let pos = Interval::new(a.lo().abs() + int(1), a.lo().abs() + a.width() + int(1)).unwrap();
        prop_assert!(iv_ln(&pos, q).unwrap().width() <= iv_ln(&pos, p).unwrap().width());
    }

    #[test]
    fn inclusion_monotone((a, b) in nested(rat(20)), (c, d) in nested(rat(20)), p in 8u32..96) {
        prop_assert!((&b + &d).contains_interval(&(&a + &c)));
        prop_assert!((&b - &d).contains_interval(&(&a - &c)));
        prop_assert!((&b * &d).contains_interval(&(&a * &c)));
        if !d.contains_zero() {
            prop_assert!(b.div(&d).unwrap().contains_interval(&a.div(&c).unwrap()));
        }
        prop_assert!(iv_exp(&b, p).contains_interval(&iv_exp(&a, p)));
        prop_assert!(iv_sinh(&b, p).contains_interval(&iv_sinh(&a, p)));
        if b.is_positive() {
            prop_assert!(iv_ln(&b, p).unwrap().contains_interval(&iv_ln(&a, p).unwrap()));
        }
    }

    #[test]
    fn point_field_ops_are_exact(x in rat(1000), y in rat(1000), e in -4i32..=4) {
        let (a, b) = (Interval::point(x.clone()), Interval::point(y.clone()));
        for (op, expect) in [
            (ArithOp::Add, &x + &y),
            (ArithOp::Sub, &x - &y),
            (ArithOp::Mul, &x * &y),
        ] {
            let r = iv_arith(op, &a, &Operand::Interval(b.clone())).unwrap();
            prop_assert_eq!(r, Interval::point(expect));
        }
        if y != int(0) {
            let r = iv_arith(ArithOp::Div, &a, &Operand::Interval(b.clone())).unwrap();
            prop_assert_eq!(r, Interval::point(&x / &y));
        }
        if x != int(0) {
            let r = iv_arith(ArithOp::PowInt, &a, &Operand::Integer(e)).unwrap();
            prop_assert!(r.is_point());
        }
    }
}
