//! Rigorous enclosures of `exp`, `ln`, `sinh` and `π`.
//!
//! All routines follow the same pattern: reduce the argument exactly, sum a
//! convergent series in outward-rounded interval arithmetic, add an explicit
//! bound on the discarded tail, undo the reduction. `work_precision = p`
//! targets a width of about `2^-p` for point arguments of moderate size;
//! for wide arguments the only promise is containment.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::rational::{self, int, pow2, Rational};
use crate::error::{Error, Result};

/// Extra bits carried beyond the requested precision.
pub const GUARD_BITS: u32 = 32;

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// Enclosure of `{e^x : x ∈ a}`.
pub fn iv_exp(a: &Interval, work_precision: u32) -> Interval {
    if a.is_point() {
        return exp_point(a.lo(), work_precision);
    }
    let lo = exp_point(a.lo(), work_precision);
    let hi = exp_point(a.hi(), work_precision);
    Interval::new(lo.lo().clone(), hi.hi().clone()).expect("exp is increasing")
}

/// Enclosure of `{ln x : x ∈ a}`; `a` must be strictly positive.
pub fn iv_ln(a: &Interval, work_precision: u32) -> Result<Interval> {
    if !a.is_positive() {
        return Err(Error::Domain(format!("ln of {a}, which is not positive")));
    }
    if a.is_point() {
        return Ok(ln_point(a.lo(), work_precision));
    }
    let lo = ln_point(a.lo(), work_precision);
    let hi = ln_point(a.hi(), work_precision);
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()).expect("ln is increasing"))
}

/// Enclosure of `{sinh x : x ∈ a}`, computed as `(e^x − e^{−x})/2` at each
/// endpoint. The result is exactly odd: `iv_sinh(−a) = −iv_sinh(a)`.
pub fn iv_sinh(a: &Interval, work_precision: u32) -> Interval {
    let lo = sinh_point(a.lo(), work_precision);
    if a.is_point() {
        return lo;
    }
    let hi = sinh_point(a.hi(), work_precision);
    Interval::new(lo.lo().clone(), hi.hi().clone()).expect("sinh is increasing")
}

/// Enclosure of `π` with width at most `2^-work_precision`, via Machin's
/// formula `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn iv_pi(work_precision: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    memoized(&CACHE, work_precision, || {
        let w = work_precision + GUARD_BITS + 8;
        let a = atan_inv(5, w).scale(&int(16));
        let b = atan_inv(239, w).scale(&int(4));
        (&a - &b).round_outward(work_precision + GUARD_BITS)
    })
}

/// Enclosure of `ln 2` with width at most `2^-work_precision`.
pub fn iv_ln2(work_precision: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    memoized(&CACHE, work_precision, || {
        let w = work_precision + 8;
        atanh_series(&rational::ratio(1, 3), w)
            .scale(&int(2))
            .round_outward(work_precision)
    })
}

fn memoized(
    cache: &'static OnceLock<Mutex<HashMap<u32, Interval>>>,
    key: u32,
    compute: impl FnOnce() -> Interval,
) -> Interval {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    // computed outside the lock; racing threads produce identical values
    let v = compute();
    map.lock().unwrap().entry(key).or_insert(v).clone()
}

fn exp_point(t: &Rational, p: u32) -> Interval {
    if t.is_zero() {
        return Interval::one();
    }
    // t / 2^j with |t / 2^j| ≤ 1/2
    let half = rational::ratio(1, 2);
    let mut j = 0u32;
    let mut r = t.clone();
    while r.abs() > half {
        r /= int(2);
        j += 1;
    }
    let magnitude = if t.is_positive() {
        (rational::to_f64(t) * LOG2_E).ceil().max(0.0) as u32 + 1
    } else {
        0
    };
    let w = p + GUARD_BITS + j + 8 + magnitude;

    let mut e = exp_taylor(&r, w);
    for _ in 0..j {
        e = e.square().round_outward(w);
    }
    e.round_outward(p + GUARD_BITS)
}

/// `e^r` for `|r| ≤ 1/2` in fixed point with `w` fractional bits.
///
/// Terms follow `t_k = ⌊t_{k−1}·r/k⌋`. Each floor loses less than one unit
/// and the recurrence contracts by `|r|/k ≤ 1/2`, so every computed term is
/// within two units of the true one. Summation stops once a term is at most
/// one unit; the remaining tail is then below three units.
fn exp_taylor(r: &Rational, w: u32) -> Interval {
    debug_assert!(r.abs() <= rational::ratio(1, 2));
    let (n, d) = (r.numer(), r.denom());
    let mut term = BigInt::one() << w;
    let mut sum = term.clone();
    let mut k = 0u64;
    loop {
        k += 1;
        term = (&term * n).div_floor(&(d * BigInt::from(k)));
        sum += &term;
        if term.abs() <= BigInt::one() {
            break;
        }
    }
    let radius = BigInt::from(2 * (k + 1) + 3);
    fixed_point_enclosure(sum, radius, w)
}

/// `[(c − r)·2^-w, (c + r)·2^-w]`.
fn fixed_point_enclosure(center: BigInt, radius: BigInt, w: u32) -> Interval {
    Interval::new(
        rational::dyadic(&center - &radius, w),
        rational::dyadic(center + radius, w),
    )
    .expect("radius is nonnegative")
}

fn ln_point(y: &Rational, p: u32) -> Interval {
    debug_assert!(y.is_positive());
    if y.is_one() {
        return Interval::zero();
    }
    // y = 2^k · z with z ∈ [3/4, 3/2]
    let mut k = rational::floor_log2(y);
    let mut z = y / pow2(k);
    if z > rational::ratio(3, 2) {
        z /= int(2);
        k += 1;
    }
    let extra = 64 - k.unsigned_abs().leading_zeros();
    let w = p + GUARD_BITS + 8 + extra;
    let s = (&z - Rational::one()) / (&z + Rational::one());
    let mut ln = atanh_series(&s, w).scale(&int(2));
    if k != 0 {
        ln = &ln + &iv_ln2(w).scale(&int(k));
    }
    ln.round_outward(p + GUARD_BITS)
}

/// `atanh(s) = Σ s^{2i+1}/(2i+1)` for `|s| ≤ 1/2`, in fixed point with `w`
/// fractional bits.
///
/// Powers follow `P_i = ⌊P_{i−1}·s²⌋` and stay within two units of
/// `s^{2i+1}`; each term `⌊P_i/(2i+1)⌋` is within three. Once `|P_i|` is at
/// most one unit the tail is below one unit.
fn atanh_series(s: &Rational, w: u32) -> Interval {
    debug_assert!(s.abs() <= rational::ratio(1, 2));
    if s.is_zero() {
        return Interval::zero();
    }
    let (n, d) = (s.numer(), s.denom());
    let (n2, d2) = (n * n, d * d);
    let mut power = (n << w).div_floor(d);
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    loop {
        sum += power.div_floor(&BigInt::from(2 * i + 1));
        if power.abs() <= BigInt::one() {
            break;
        }
        power = (&power * &n2).div_floor(&d2);
        i += 1;
    }
    let radius = BigInt::from(3 * (i + 1) + 1);
    fixed_point_enclosure(sum, radius, w)
}

/// `atan(1/n)` by its alternating series; the first omitted term bounds
/// the error.
fn atan_inv(n: i64, w: u32) -> Interval {
    let tol = pow2(-(w as i64));
    let n2 = int(n * n);
    let mut denom_power = int(n);
    let mut sum = Interval::zero();
    let mut i = 0i64;
    loop {
        let term = (denom_power.clone() * int(2 * i + 1)).recip();
        if term <= tol {
            let widened = Interval::new(sum.lo() - &term, sum.hi() + &term).unwrap();
            return widened.round_abs(w);
        }
        let term = Interval::point(if i % 2 == 0 { term } else { -term }).round_abs(w + 8);
        sum = &sum + &term;
        denom_power *= &n2;
        i += 1;
    }
}

fn sinh_point(t: &Rational, p: u32) -> Interval {
    if t.is_negative() {
        return -sinh_point(&-t, p);
    }
    if t.is_zero() {
        return Interval::zero();
    }
    let e = exp_point(t, p);
    let inv = exp_point(&-t, p);
    let half = rational::ratio(1, 2);
    let lo = ((e.lo() - inv.hi()) * &half).max(Rational::zero());
    let hi = (e.hi() - inv.lo()) * &half;
    Interval::new(lo, hi).unwrap().round_outward(p + GUARD_BITS)
}

impl Interval {
    /// Widens both endpoints to the absolute grid `2^-bits`.
    pub fn round_abs(&self, bits: u32) -> Interval {
        Interval::new(
            rational::round_down(self.lo(), bits),
            rational::round_up(self.hi(), bits),
        )
        .unwrap()
    }
}
