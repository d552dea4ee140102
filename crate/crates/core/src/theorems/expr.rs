use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::kernel::rational::{self, int, pow2, Rational};
use crate::kernel::{iv_exp, iv_ln, iv_pi, iv_sinh, Interval};
use crate::polygamma::{batir_bstar_enclosure, digamma_interval, digamma_zero, trigamma_interval};

/// Transcendental constants an expression may mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    /// Euler–Mascheroni `γ`.
    Gamma,
    Pi,
    E,
    /// `π²/(6e^{2γ})`.
    BStar,
    /// The positive zero of `ψ`.
    DigammaZero,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Gamma => "gamma",
            Constant::Pi => "pi",
            Constant::E => "e",
            Constant::BStar => "bstar",
            Constant::DigammaZero => "c",
        }
    }
}

/// An expression in one real variable `x`, evaluated with interval
/// arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    X,
    Rat(Rational),
    Const(Constant),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Pow(Arc<Expr>, i32),
    Exp(Arc<Expr>),
    Ln(Arc<Expr>),
    Sinh(Arc<Expr>),
    Digamma(Arc<Expr>),
    Trigamma(Arc<Expr>),
}

pub fn x() -> Expr {
    Expr::X
}

pub fn rat(q: Rational) -> Expr {
    Expr::Rat(q)
}

/// `n/d` as an expression.
pub fn q(n: i64, d: i64) -> Expr {
    Expr::Rat(rational::ratio(n, d))
}

pub fn constant(c: Constant) -> Expr {
    Expr::Const(c)
}

pub fn exp(e: Expr) -> Expr {
    Expr::Exp(Arc::new(e))
}

pub fn ln(e: Expr) -> Expr {
    Expr::Ln(Arc::new(e))
}

pub fn sinh(e: Expr) -> Expr {
    Expr::Sinh(Arc::new(e))
}

pub fn psi(e: Expr) -> Expr {
    Expr::Digamma(Arc::new(e))
}

pub fn psi1(e: Expr) -> Expr {
    Expr::Trigamma(Arc::new(e))
}

/// `c / x^k`.
pub fn over_x_pow(c: Rational, k: i32) -> Expr {
    Expr::Rat(c) * Expr::Pow(Arc::new(Expr::X), -k)
}

impl Expr {
    pub fn pow(self, k: i32) -> Expr {
        Expr::Pow(Arc::new(self), k)
    }

    /// Enclosure of the expression at `x = at`.
    pub fn eval(&self, at: &Rational, ctx: &EvalContext) -> Result<Interval> {
        self.eval_interval(&Interval::point(at.clone()), ctx)
    }

    pub fn eval_interval(&self, x: &Interval, ctx: &EvalContext) -> Result<Interval> {
        let p = ctx.precision;
        let ev = |e: &Expr| e.eval_interval(x, ctx);
        Ok(match self {
            Expr::X => x.clone(),
            Expr::Rat(q) => Interval::point(q.clone()),
            Expr::Const(c) => ctx.constant(*c)?,
            Expr::Add(a, b) => &ev(a)? + &ev(b)?,
            Expr::Sub(a, b) => &ev(a)? - &ev(b)?,
            Expr::Mul(a, b) => &ev(a)? * &ev(b)?,
            Expr::Div(a, b) => ev(a)?.div(&ev(b)?)?,
            Expr::Neg(a) => -ev(a)?,
            Expr::Pow(a, k) => ev(a)?.pow_int(*k)?,
            Expr::Exp(a) => iv_exp(&ev(a)?, p),
            Expr::Ln(a) => iv_ln(&ev(a)?, p)?,
            Expr::Sinh(a) => iv_sinh(&ev(a)?, p),
            Expr::Digamma(a) => digamma_interval(&ev(a)?, &ctx.shift, p)?,
            Expr::Trigamma(a) => trigamma_interval(&ev(a)?, &ctx.shift, p)?,
        })
    }
}

/// Shift target, working precision, and lazily computed constants for one
/// evaluation pass.
#[derive(Debug)]
pub struct EvalContext {
    shift: Rational,
    precision: u32,
    gamma: OnceLock<Interval>,
    bstar: OnceLock<Interval>,
    zero: OnceLock<Interval>,
}

impl EvalContext {
    pub fn new(shift: Rational, precision: u32) -> Self {
        Self {
            shift,
            precision,
            gamma: OnceLock::new(),
            bstar: OnceLock::new(),
            zero: OnceLock::new(),
        }
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    fn constant(&self, c: Constant) -> Result<Interval> {
        let p = self.precision;
        let cached =
            |cell: &OnceLock<Interval>, f: &dyn Fn() -> Result<Interval>| -> Result<Interval> {
                if let Some(v) = cell.get() {
                    return Ok(v.clone());
                }
                let v = f()?;
                Ok(cell.get_or_init(|| v).clone())
            };
        match c {
            Constant::Pi => Ok(iv_pi(p)),
            Constant::E => Ok(iv_exp(&Interval::one(), p)),
            Constant::Gamma => cached(&self.gamma, &|| {
                Ok(-digamma_interval(&Interval::one(), &self.shift, p)?)
            }),
            Constant::BStar => cached(&self.bstar, &|| batir_bstar_enclosure(&self.shift, p)),
            Constant::DigammaZero => cached(&self.zero, &|| digamma_zero(&pow2(-(p as i64)))),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $var:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$var(Arc::new(self), Arc::new(rhs))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self))
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::Rat(int(n))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X => write!(f, "x"),
            Expr::Rat(q) => write!(f, "{}", rational::format(q)),
            Expr::Const(c) => write!(f, "{}", c.name()),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Pow(a, k) => write!(f, "{a}^({k})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Sinh(a) => write!(f, "sinh({a})"),
            Expr::Digamma(a) => write!(f, "psi({a})"),
            Expr::Trigamma(a) => write!(f, "psi1({a})"),
        }
    }
}
