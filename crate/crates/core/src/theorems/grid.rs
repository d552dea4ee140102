use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{Claim, InequalityEntry};
use super::expr::{EvalContext, Expr};
use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, Rational};
use crate::kernel::Interval;
use crate::polycert::RayCertificate;

/// Number of refinement rounds after the first attempt.
pub const RETRY_BUDGET: u32 = 4;

/// Default grid size.
pub const DEFAULT_GRID_POINTS: usize = 40;

/// Verdict for a point, a step, or a whole report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Grid,
    Symbolic,
}

/// Result at one grid point (or one consecutive pair for monotonicity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointResult {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    /// Second point of the pair for monotonicity claims.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_rational"
    )]
    pub next: Option<Rational>,
    pub verdict: Verdict,
    /// Some link separated in the reverse direction: the claim is false here.
    pub refuted: bool,
    /// Enclosures of the chain terms, or of the function at `x` and `next`.
    pub enclosures: Vec<Interval>,
    pub precision: u32,
    #[serde(with = "rational::serde_str")]
    pub shift: Rational,
}

fn opt_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&rational::format(q)),
        None => s.serialize_none(),
    }
}

/// One named branch of a symbolic replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicStep {
    pub name: String,
    pub verdict: Verdict,
    pub certificate: RayCertificate,
}

/// Machine-readable outcome of a grid check or a symbolic replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub id: String,
    pub method: Method,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<SymbolicStep>,
    pub verdict: Verdict,
}

impl CertReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Points whose verdict is not `holds`.
    pub fn failures(&self) -> impl Iterator<Item = &PointResult> {
        self.points.iter().filter(|p| p.verdict != Verdict::Holds)
    }

    pub fn refuted_count(&self) -> usize {
        self.points.iter().filter(|p| p.refuted).count()
    }
}

/// `count` points from `start` to `stop` in geometric progression, each
/// rounded to four significant decimal digits; the end points are exact.
pub fn geometric_grid(start: &Rational, stop: &Rational, count: usize) -> Result<Vec<Rational>> {
    if start <= &Rational::from_integer(0.into()) || stop < start {
        return Err(Error::Argument(format!(
            "grid needs 0 < start <= stop, got {}..{}",
            rational::format(start),
            rational::format(stop)
        )));
    }
    if count == 0 {
        return Err(Error::Argument("grid needs at least one point".into()));
    }
    if count == 1 {
        return Ok(vec![start.clone()]);
    }
    let (a, b) = (rational::to_f64(start), rational::to_f64(stop));
    let ratio = (b / a).powf(1.0 / (count - 1) as f64);
    let mut out = Vec::with_capacity(count);
    out.push(start.clone());
    for i in 1..count - 1 {
        let v = a * ratio.powi(i as i32);
        let q = round_significant(v, 4);
        if q > *out.last().unwrap() && &q < stop {
            out.push(q);
        }
    }
    if stop > out.last().unwrap() {
        out.push(stop.clone());
    }
    Ok(out)
}

fn round_significant(v: f64, digits: i32) -> Rational {
    let e = v.abs().log10().floor() as i32 - (digits - 1);
    let m = (v / 10f64.powi(e)).round() as i64;
    let ten = int(10);
    int(m) * rational::pow_int(&ten, e)
}

/// The forty-point geometric grid from the entry's grid start to 10⁴.
pub fn default_grid(entry: &InequalityEntry) -> Vec<Rational> {
    geometric_grid(&entry.grid_start(), &int(10_000), DEFAULT_GRID_POINTS)
        .expect("valid default grid")
}

enum Outcome {
    Holds,
    Refuted,
    Undecided,
}

fn chain_outcome(encl: &[Interval]) -> Outcome {
    let mut all = true;
    for w in encl.windows(2) {
        if w[1].certainly_lt(&w[0]) {
            return Outcome::Refuted;
        }
        all &= w[0].certainly_lt(&w[1]);
    }
    if all {
        Outcome::Holds
    } else {
        Outcome::Undecided
    }
}

fn evaluate_all(terms: &[&Expr], points: &[&Rational], ctx: &EvalContext) -> Result<Vec<Interval>> {
    let mut out = Vec::new();
    for t in points {
        for e in terms {
            out.push(e.eval(t, ctx)?);
        }
    }
    Ok(out)
}

/// Evaluates at increasing precision and shift until the outcome is
/// decided or the retry budget is spent.
fn refine(
    terms: &[&Expr],
    points: &[&Rational],
    shift: &Rational,
    precision: u32,
    decide: impl Fn(&[Interval]) -> Outcome,
) -> Result<(Outcome, Vec<Interval>, u32, Rational)> {
    let mut last = None;
    for k in 0..=RETRY_BUDGET {
        let p = precision << k;
        let s = shift * int(1 << k);
        let ctx = EvalContext::new(s.clone(), p);
        let encl = evaluate_all(terms, points, &ctx)?;
        match decide(&encl) {
            Outcome::Undecided => last = Some((encl, p, s)),
            o => return Ok((o, encl, p, s)),
        }
    }
    let (encl, p, s) = last.expect("at least one attempt");
    Ok((Outcome::Undecided, encl, p, s))
}

fn point_result(
    x: &Rational,
    next: Option<&Rational>,
    (outcome, enclosures, precision, shift): (Outcome, Vec<Interval>, u32, Rational),
) -> PointResult {
    PointResult {
        x: x.clone(),
        next: next.cloned(),
        verdict: if matches!(outcome, Outcome::Holds) {
            Verdict::Holds
        } else {
            Verdict::Undecided
        },
        refuted: matches!(outcome, Outcome::Refuted),
        enclosures,
        precision,
        shift,
    }
}

/// Checks an entry at every grid point with certified enclosures.
///
/// Points are evaluated in parallel and reported in grid order. A point
/// holds only when every link separates; otherwise precision and shift
/// target are doubled up to [`RETRY_BUDGET`] times.
pub fn check_grid(
    entry: &InequalityEntry,
    grid: &[Rational],
    shift_target: &Rational,
    work_precision: u32,
) -> Result<CertReport> {
    if let Some(bad) = grid.iter().find(|t| !entry.admits(t)) {
        return Err(Error::Argument(format!(
            "grid point {} is outside the domain {} of {}",
            rational::format(bad),
            entry.domain_description(),
            entry.id
        )));
    }
    if grid.is_empty() {
        return Err(Error::Argument("empty grid".into()));
    }
    let points: Vec<PointResult> = match &entry.claim {
        Claim::Chain { terms, .. } => {
            let refs: Vec<&Expr> = terms.iter().collect();
            grid.par_iter()
                .map(|t| {
                    let r = refine(&refs, &[t], shift_target, work_precision, chain_outcome)?;
                    Ok(point_result(t, None, r))
                })
                .collect::<Result<_>>()?
        }
        Claim::Decreasing(f) => grid
            .par_windows(2)
            .map(|w| {
                let r = refine(
                    &[f],
                    &[&w[0], &w[1]],
                    shift_target,
                    work_precision,
                    chain_outcome_reversed,
                )?;
                Ok(point_result(&w[0], Some(&w[1]), r))
            })
            .collect::<Result<_>>()?,
    };
    let verdict = if points.iter().all(|p| p.verdict == Verdict::Holds) {
        Verdict::Holds
    } else {
        Verdict::Undecided
    };
    Ok(CertReport {
        id: entry.id.to_string(),
        method: Method::Grid,
        points,
        steps: Vec::new(),
        verdict,
    })
}

/// `f(x) > f(next)` is the chain `f(next) < f(x)`.
fn chain_outcome_reversed(encl: &[Interval]) -> Outcome {
    chain_outcome(&[encl[1].clone(), encl[0].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::ratio;
    use crate::theorems::catalog::entry;

    #[test]
    fn geometric_grid_shape() {
        let g = geometric_grid(&int(3), &int(10_000), 40).unwrap();
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], int(3));
        assert_eq!(g[39], int(10_000));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let h = geometric_grid(&ratio(1, 10), &int(10_000), 40).unwrap();
        assert_eq!(h[0], ratio(1, 10));
        assert_eq!(h.len(), 40);
        assert!(geometric_grid(&int(0), &int(1), 3).is_err());
        assert!(geometric_grid(&int(2), &int(1), 3).is_err());
        assert_eq!(geometric_grid(&int(5), &int(5), 1).unwrap(), vec![int(5)]);
    }

    #[test]
    fn rejects_points_outside_domain() {
        let e = entry("THM2").unwrap();
        assert!(matches!(
            check_grid(&e, &[int(2)], &int(10), 64),
            Err(Error::Argument(_))
        ));
        let e = entry("ELE").unwrap();
        assert!(check_grid(&e, &[int(0)], &int(10), 64).is_err());
    }

    #[test]
    fn guo_qi_small_grid() {
        let e = entry("GUO-QI").unwrap();
        let grid = [ratio(1, 2), int(1), int(2), int(10)];
        let r = check_grid(&e, &grid, &int(10), 64).unwrap();
        assert!(r.holds());
        assert_eq!(r.points.len(), 4);
        assert_eq!(r.points[1].x, int(1));
    }

    #[test]
    fn batir_theta_pairs() {
        let e = entry("BATIR-THETA").unwrap();
        let r = check_grid(&e, &[int(1), int(2), int(4), int(8)], &int(10), 64).unwrap();
        assert!(r.holds());
        assert_eq!(r.points.len(), 3);
        assert_eq!(r.points[2].next, Some(int(8)));
    }

    #[test]
    fn false_claim_is_refuted_not_held() {
        let e = entry("R1U").unwrap();
        let r = check_grid(&e, &[int(2), int(10)], &int(10), 64).unwrap();
        assert!(!r.holds());
        assert_eq!(r.points[0].verdict, Verdict::Holds);
        assert!(r.points[1].refuted);
        assert_eq!(r.points[1].verdict, Verdict::Undecided);
    }
}
