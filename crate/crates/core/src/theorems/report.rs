use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{alpha, beta, big_m, small_m, theta};
use super::expr::{constant, exp, over_x_pow, psi, psi1, x, Constant, EvalContext, Expr};
use super::grid::{Verdict, RETRY_BUDGET};
use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, ratio, Rational};
use crate::kernel::Interval;

/// Working precision actually used at `x`: `p` plus eight bits per binary
/// order of magnitude of `x`, since the quantities of interest shrink like
/// powers of `1/x`.
pub fn scaled_precision(x: &Rational, p: u32) -> u32 {
    if x <= &int(1) {
        return p;
    }
    let e = rational::floor_log2(x) + 1;
    p + 8 * e as u32
}

/// One row of the approximation-rate table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessRow {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    /// `ψ′(x+1) − θ(x,1)`.
    pub gap_theta1: Interval,
    /// `ψ′(x+1) − θ(x,2)`.
    pub gap_theta2: Interval,
    /// `x⁵·(ψ′(x+1) − θ(x,1))`.
    pub scaled_theta1: Interval,
    /// `x⁷·(ψ′(x+1) − θ(x,2))`.
    pub scaled_theta2: Interval,
    /// Upper minus lower bound in the first theorem.
    pub thm1_gap: Interval,
    /// `e^{M(x)} − e^{m(x)}`.
    pub thm2_gap: Interval,
    /// `5/(48x⁶)`, exact.
    pub thm3a_gap: Interval,
    /// `7/(90x⁸)`, exact.
    pub thm3b_gap: Interval,
}

/// Approximation-rate table over a grid of points `x ≥ 1`.
pub fn tightness_report(
    grid: &[Rational],
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Vec<TightnessRow>> {
    if let Some(bad) = grid.iter().find(|t| *t < &int(1)) {
        return Err(Error::Argument(format!(
            "tightness grid points must be >= 1, got {}",
            rational::format(bad)
        )));
    }
    let x1 = || x() + Expr::from(1);
    let d1 = psi1(x1()) - theta(1);
    let d2 = psi1(x1()) - theta(2);
    let w = exp(-(Expr::from(2) * psi(x1())) - over_x_pow(ratio(1, 120), 4));
    let thm1 = (beta() - alpha()) * w;
    let thm2 = exp(big_m()) - exp(small_m());
    grid.par_iter()
        .map(|t| {
            let ctx = EvalContext::new(shift_target.clone(), scaled_precision(t, work_precision));
            let g1 = d1.eval(t, &ctx)?;
            let g2 = d2.eval(t, &ctx)?;
            Ok(TightnessRow {
                x: t.clone(),
                scaled_theta1: g1.scale(&rational::pow_int(t, 5)),
                scaled_theta2: g2.scale(&rational::pow_int(t, 7)),
                gap_theta1: g1,
                gap_theta2: g2,
                thm1_gap: thm1.eval(t, &ctx)?,
                thm2_gap: thm2.eval(t, &ctx)?,
                thm3a_gap: Interval::point(ratio(5, 48) / rational::pow_int(t, 6)),
                thm3b_gap: Interval::point(ratio(7, 90) / rational::pow_int(t, 8)),
            })
        })
        .collect()
}

/// Which function a bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    /// `ψ′(x+1)`.
    #[serde(rename = "psi1(x+1)")]
    TrigammaShifted,
    /// `ψ′(x)`.
    #[serde(rename = "psi1(x)")]
    Trigamma,
}

/// A named bound evaluated at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub target: Target,
    pub enclosure: Interval,
}

/// Status of a dominance claim `smaller < larger`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceClaim {
    pub claim: &'static str,
    pub smaller: &'static str,
    pub larger: &'static str,
    pub verdict: Verdict,
    /// The two enclosures separate the other way.
    pub refuted: bool,
    pub precision: u32,
}

/// Every bound at one point, sorted per target by enclosure midpoint, and
/// the dominance claims between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    pub bounds: Vec<BoundRow>,
    pub claims: Vec<DominanceClaim>,
}

fn bound_exprs() -> Vec<(&'static str, Target, Expr)> {
    use Target::*;
    let x1 = || x() + Expr::from(1);
    let w1 = || exp(-(Expr::from(2) * psi(x1())) - over_x_pow(ratio(1, 120), 4));
    let wb = || exp(-(Expr::from(2) * psi(x1())));
    vec![
        ("psi1(x+1)", TrigammaShifted, psi1(x1())),
        ("THM1-lower", TrigammaShifted, (x() + alpha()) * w1()),
        ("THM1-upper", TrigammaShifted, (x() + beta()) * w1()),
        (
            "BATIR-lower",
            TrigammaShifted,
            (x() + Expr::from(1) / Expr::from(2)) * wb(),
        ),
        (
            "BATIR-upper",
            TrigammaShifted,
            (x() + constant(Constant::BStar)) * wb(),
        ),
        ("YCT-lower", TrigammaShifted, theta(1)),
        ("YCT-upper", TrigammaShifted, theta(2)),
        (
            "THM3a-lower",
            TrigammaShifted,
            theta(1) + over_x_pow(ratio(1, 24), 5) - over_x_pow(ratio(5, 48), 6),
        ),
        (
            "THM3a-upper",
            TrigammaShifted,
            theta(1) + over_x_pow(ratio(1, 24), 5),
        ),
        (
            "THM3b-lower",
            TrigammaShifted,
            theta(2) - over_x_pow(ratio(1, 45), 7),
        ),
        (
            "THM3b-upper",
            TrigammaShifted,
            theta(2) - over_x_pow(ratio(1, 45), 7) + over_x_pow(ratio(7, 90), 8),
        ),
        (
            "XP1-lower",
            TrigammaShifted,
            exp(Expr::from(1) / x1()) - constant(Constant::E) + psi1(Expr::from(1)),
        ),
        (
            "XP1-upper",
            TrigammaShifted,
            exp(Expr::from(1) / x1()) - Expr::from(1),
        ),
        ("psi1(x)", Trigamma, psi1(x())),
        ("THM2-lower", Trigamma, exp(small_m()) - Expr::from(1)),
        ("THM2-upper", Trigamma, exp(big_m()) - Expr::from(1)),
        (
            "GUO-QI-upper",
            Trigamma,
            exp(Expr::from(1) / x()) - Expr::from(1),
        ),
        ("ELE-upper", Trigamma, exp(-psi(x()))),
        ("THETA2-upper", Trigamma, x().pow(-2) + theta(2)),
    ]
}

const CLAIMS: [(&str, &str, &str); 3] = [
    ("THM1-upper < BATIR-upper", "THM1-upper", "BATIR-upper"),
    ("BATIR-lower > THM1-lower", "THM1-lower", "BATIR-lower"),
    (
        "1/x^2 + theta(x,2) < e^(1/x) - 1",
        "THETA2-upper",
        "GUO-QI-upper",
    ),
];

/// Evaluates every bound at `x ≥ 1` and checks the dominance claims,
/// refining precision up to the retry budget for undecided ones.
pub fn compare_bounds(
    at: &Rational,
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Comparison> {
    if at < &int(1) {
        return Err(Error::Argument(format!(
            "comparison point must be >= 1, got {}",
            rational::format(at)
        )));
    }
    let exprs = bound_exprs();
    let eval_all = |p: u32, s: &Rational| -> Result<Vec<Interval>> {
        let ctx = EvalContext::new(s.clone(), p);
        exprs.iter().map(|(_, _, e)| e.eval(at, &ctx)).collect()
    };
    let index = |name: &str| {
        exprs
            .iter()
            .position(|(n, _, _)| *n == name)
            .expect("known bound")
    };

    let base = eval_all(work_precision, shift_target)?;
    let mut claims = Vec::new();
    for (claim, smaller, larger) in CLAIMS {
        let (i, j) = (index(smaller), index(larger));
        let mut encl = (base[i].clone(), base[j].clone());
        let mut p = work_precision;
        for k in 1..=RETRY_BUDGET {
            if encl.0.certainly_lt(&encl.1) || encl.1.certainly_lt(&encl.0) {
                break;
            }
            p = work_precision << k;
            let ctx = EvalContext::new(shift_target * int(1 << k), p);
            encl = (exprs[i].2.eval(at, &ctx)?, exprs[j].2.eval(at, &ctx)?);
        }
        let holds = encl.0.certainly_lt(&encl.1);
        claims.push(DominanceClaim {
            claim,
            smaller,
            larger,
            verdict: if holds {
                Verdict::Holds
            } else {
                Verdict::Undecided
            },
            refuted: encl.1.certainly_lt(&encl.0),
            precision: p,
        });
    }

    let mut bounds: Vec<BoundRow> = exprs
        .iter()
        .zip(base)
        .map(|((name, target, _), enclosure)| BoundRow {
            name,
            target: *target,
            enclosure,
        })
        .collect();
    bounds.sort_by(|a, b| {
        (a.target as u8)
            .cmp(&(b.target as u8))
            .then_with(|| a.enclosure.mid().cmp(&b.enclosure.mid()))
    });
    Ok(Comparison {
        x: at.clone(),
        bounds,
        claims,
    })
}

/// Values of the two functions in the complete-monotonicity conjecture and
/// of a third one claimed decreasing and positive, with finite
/// differences. Nothing is asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    /// `e^{M(x)} − ψ′(x) − 1`.
    pub upper_excess: Interval,
    /// `ψ′(x) − e^{m(x)} + 1`.
    pub lower_excess: Interval,
    /// `ψ′(x)e^{2ψ(x)} − x + 1/2`.
    pub big_theta: Interval,
    /// First and second forward differences of `upper_excess` (absent at
    /// the end of the grid).
    pub upper_diffs: Vec<Interval>,
    pub lower_diffs: Vec<Interval>,
}

/// Samples the conjectured completely monotonic functions on a grid.
pub fn conjecture_probe(
    grid: &[Rational],
    shift_target: &Rational,
    work_precision: u32,
) -> Result<Vec<ProbeRow>> {
    let upper = exp(big_m()) - psi1(x()) - Expr::from(1);
    let lower = psi1(x()) - exp(small_m()) + Expr::from(1);
    let big_theta = psi1(x()) * exp(Expr::from(2) * psi(x())) - x() + Expr::from(1) / Expr::from(2);
    let values: Vec<(Interval, Interval, Interval)> = grid
        .par_iter()
        .map(|t| {
            let ctx = EvalContext::new(shift_target.clone(), scaled_precision(t, work_precision));
            Ok((
                upper.eval(t, &ctx)?,
                lower.eval(t, &ctx)?,
                big_theta.eval(t, &ctx)?,
            ))
        })
        .collect::<Result<_>>()?;
    let diffs = |f: &dyn Fn(usize) -> Interval, i: usize| -> Vec<Interval> {
        let mut out = Vec::new();
        if i + 1 < values.len() {
            out.push(&f(i + 1) - &f(i));
        }
        if i + 2 < values.len() {
            out.push(&(&f(i + 2) - &(f(i + 1).scale(&int(2)))) + &f(i));
        }
        out
    };
    Ok((0..values.len())
        .map(|i| ProbeRow {
            x: grid[i].clone(),
            upper_excess: values[i].0.clone(),
            lower_excess: values[i].1.clone(),
            big_theta: values[i].2.clone(),
            upper_diffs: diffs(&|j| values[j].0.clone(), i),
            lower_diffs: diffs(&|j| values[j].1.clone(), i),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_rows_respect_bounds() {
        let grid = [int(1), int(4), int(32)];
        let rows = tightness_report(&grid, &int(10), 96).unwrap();
        for r in &rows {
            let lo1 = ratio(1, 24) - ratio(5, 48) / &r.x;
            assert!(r.scaled_theta1.lo() >= &lo1 && r.scaled_theta1.hi() <= &ratio(1, 24));
            let hi2 = ratio(-1, 45) + ratio(7, 90) / &r.x;
            assert!(r.scaled_theta2.lo() >= &ratio(-1, 45) && r.scaled_theta2.hi() <= &hi2);
            assert!(r.thm2_gap.is_positive());
        }
        assert!(tightness_report(&[ratio(1, 2)], &int(10), 64).is_err());
    }

    #[test]
    fn comparison_at_two() {
        let c = compare_bounds(&int(2), &int(10), 64).unwrap();
        assert!(c.claims.iter().all(|k| k.verdict == Verdict::Holds));
        assert_eq!(c.bounds.len(), 19);
        assert!(compare_bounds(&ratio(1, 2), &int(10), 64).is_err());
    }

    #[test]
    fn probe_shapes() {
        let rows = conjecture_probe(&[int(1), int(2), int(3)], &int(10), 64).unwrap();
        assert_eq!(rows[0].upper_diffs.len(), 2);
        assert_eq!(rows[2].upper_diffs.len(), 0);
        assert!(rows.iter().all(|r| r.big_theta.is_positive()));
    }

    #[test]
    fn precision_scaling() {
        assert_eq!(scaled_precision(&int(1), 64), 64);
        assert_eq!(scaled_precision(&int(1024), 64), 64 + 88);
    }
}
