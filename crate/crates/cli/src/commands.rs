use std::fmt::Write as _;

use psibound::kernel::rational::{self, int};
use psibound::kernel::{iv_pi, Interval, Rational};
use psibound::polycert::{Limit, Positivity, RayCertificate};
use psibound::polygamma::{
    batir_bstar_enclosure, digamma_enclosure_prec, digamma_zero, euler_gamma_enclosure,
    trigamma_enclosure_prec, EnclosureRequest,
};
use psibound::series::{
    digamma_expansion, product_expansion, theta_expansion, trigamma_expansion, AsymptoticExpansion,
    BernoulliTable,
};
use psibound::theorems::csv::{comparisons_to_csv, probe_to_csv, reports_to_csv, tightness_to_csv};
use psibound::theorems::{
    certify_symbolic, check_grid, compare_bounds, conjecture_probe, default_grid, entry,
    tightness_report, CertReport, Method, Verdict,
};
use psibound::{Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::args::{
    CliConfig, Command, ConstName, Format, Function, GridSpec, Group, ReportKind, SeriesKind,
};

/// Decimal digits shown in text output.
const TEXT_DIGITS: u32 = 20;

/// Failing grid points listed per report in text output.
const TEXT_FAILURES: usize = 5;

/// Rendered output and whether every verdict in it holds.
pub struct Output {
    pub body: String,
    pub all_hold: bool,
}

impl Output {
    fn info(body: String) -> Self {
        Output {
            body,
            all_hold: true,
        }
    }
}

pub fn run(config: &CliConfig, command: &Command) -> Result<Output> {
    match command {
        Command::Bern { n } => Ok(Output::info(bern(config.format, *n))),
        Command::Series { kind, m, order } => series(config.format, *kind, m.as_ref(), *order),
        Command::Enclose { function, x } => enclose(config, *function, x),
        Command::Const { name, tol } => constant(config, *name, tol),
        Command::Certify {
            group,
            symbolic,
            grid,
        } => certify(config, *group, *symbolic, grid.as_ref()),
        Command::Report { kind, grid } => report(config, *kind, grid),
    }
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn csv_rows<const N: usize>(header: [&str; N], rows: Vec<[String; N]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn bern(format: Format, n: u32) -> String {
    let table = BernoulliTable::up_to(n as usize);
    let values: Vec<String> = table.values().iter().map(rational::format).collect();
    match format {
        Format::Json => to_json(&values),
        Format::Csv => csv_rows(
            ["n", "value"],
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| [i.to_string(), v])
                .collect(),
        ),
        Format::Text => values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("B_{i} = {v}\n"))
            .collect(),
    }
}

fn series(format: Format, kind: SeriesKind, m: Option<&Rational>, order: i64) -> Result<Output> {
    if m.is_some() && kind != SeriesKind::Theta {
        return Err(Error::Argument(
            "--m only applies to the theta expansion".into(),
        ));
    }
    let e = match kind {
        SeriesKind::Digamma => digamma_expansion(order)?,
        SeriesKind::Trigamma => trigamma_expansion(order)?,
        SeriesKind::Theta => {
            let m = m.ok_or_else(|| Error::Argument("theta needs --m".into()))?;
            theta_expansion(m, order)?
        }
        SeriesKind::Product => product_expansion(order)?,
    };
    Ok(Output::info(render_expansion(format, &e)))
}

fn render_expansion(format: Format, e: &AsymptoticExpansion) -> String {
    match format {
        Format::Json => to_json(e),
        Format::Csv => {
            let mut rows = Vec::new();
            if *e.log_coeff() != int(0) {
                rows.push(["ln".to_string(), rational::format(e.log_coeff())]);
            }
            for (k, c) in e.terms() {
                rows.push([k.to_string(), rational::format(c)]);
            }
            csv_rows(["power", "coeff"], rows)
        }
        Format::Text => format!("{e}\n"),
    }
}

fn interval_text(name: &str, iv: &Interval) -> String {
    format!(
        "{name} in {}\n  width {:.3e}\n",
        iv.format_decimal(TEXT_DIGITS),
        rational::to_f64(&iv.width())
    )
}

fn render_interval(format: Format, name: &str, iv: &Interval, extra: serde_json::Value) -> String {
    match format {
        Format::Json => {
            let mut doc = json!({ "name": name, "enclosure": iv });
            if let (Some(d), Some(x)) = (doc.as_object_mut(), extra.as_object()) {
                d.extend(x.clone());
            }
            to_json(&doc)
        }
        Format::Csv => csv_rows(
            ["name", "lo", "hi"],
            vec![[
                name.to_string(),
                rational::format(iv.lo()),
                rational::format(iv.hi()),
            ]],
        ),
        Format::Text => interval_text(name, iv),
    }
}

fn enclose(config: &CliConfig, function: Function, x: &Rational) -> Result<Output> {
    EnclosureRequest::new(x.clone(), config.shift.clone())?;
    let (name, iv) = match function {
        Function::Digamma => (
            "psi",
            digamma_enclosure_prec(x, &config.shift, config.precision)?,
        ),
        Function::Trigamma => (
            "psi1",
            trigamma_enclosure_prec(x, &config.shift, config.precision)?,
        ),
    };
    let label = format!("{name}({})", rational::format(x));
    let extra = json!({
        "x": rational::format(x),
        "shift": rational::format(&config.shift),
        "precision": config.precision,
    });
    Ok(Output::info(render_interval(
        config.format,
        &label,
        &iv,
        extra,
    )))
}

fn constant(config: &CliConfig, name: ConstName, tol: &Rational) -> Result<Output> {
    let (label, iv) = match name {
        ConstName::Gamma => ("gamma", euler_gamma_enclosure(&config.shift)?),
        ConstName::Bstar => (
            "bstar",
            batir_bstar_enclosure(&config.shift, config.precision)?,
        ),
        ConstName::Pi => ("pi", iv_pi(config.precision)),
        ConstName::DigammaZero => ("digamma_zero", digamma_zero(tol)?),
    };
    let extra = match name {
        ConstName::DigammaZero => json!({ "tolerance": rational::format(tol) }),
        _ => json!({ "shift": rational::format(&config.shift), "precision": config.precision }),
    };
    Ok(Output::info(render_interval(
        config.format,
        label,
        &iv,
        extra,
    )))
}

fn certify(
    config: &CliConfig,
    group: Group,
    symbolic: bool,
    grid: Option<&GridSpec>,
) -> Result<Output> {
    let reports = if symbolic {
        let ids = group.symbolic_ids();
        if ids.is_empty() {
            return Err(Error::Argument(format!(
                "no symbolic replay for group {group:?}; use a grid"
            )));
        }
        ids.iter()
            .map(|id| certify_symbolic(id))
            .collect::<Result<Vec<_>>>()?
    } else {
        let points = grid.map(GridSpec::points).transpose()?;
        let entries = group
            .grid_ids()
            .iter()
            .map(|id| entry(id))
            .collect::<Result<Vec<_>>>()?;
        // every grid is validated before any evaluation starts
        let mut plans = Vec::new();
        for e in entries {
            let g = match &points {
                Some(p) => p.clone(),
                None => default_grid(&e),
            };
            if let Some(bad) = g.iter().find(|t| !e.admits(t)) {
                return Err(Error::Argument(format!(
                    "grid point {} is outside the domain {} of {}",
                    rational::format(bad),
                    e.domain_description(),
                    e.id
                )));
            }
            plans.push((e, g));
        }
        plans
            .iter()
            .map(|(e, g)| check_grid(e, g, &config.shift, config.precision))
            .collect::<Result<Vec<_>>>()?
    };
    let all_hold = reports.iter().all(CertReport::holds);
    let body = match config.format {
        Format::Json => to_json(&reports),
        Format::Csv => reports_to_csv(&reports),
        Format::Text => reports.iter().map(report_text).collect(),
    };
    Ok(Output { body, all_hold })
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Undecided => "undecided",
    }
}

fn report_text(r: &CertReport) -> String {
    let mut s = String::new();
    match r.method {
        Method::Grid => {
            let ok = r.points.len() - r.failures().count();
            let _ = writeln!(
                s,
                "{}: {} on grid ({ok}/{} points, {} refuted)",
                r.id,
                verdict_word(r.verdict),
                r.points.len(),
                r.refuted_count()
            );
            let failures: Vec<_> = r.failures().collect();
            for p in failures.iter().take(TEXT_FAILURES) {
                let at = match &p.next {
                    Some(n) => format!("x = {} .. {}", rational::format(&p.x), rational::format(n)),
                    None => format!("x = {}", rational::format(&p.x)),
                };
                let tag = if p.refuted { "refuted" } else { "undecided" };
                let _ = writeln!(
                    s,
                    "  {at}: {tag} at {} bits, S = {}",
                    p.precision,
                    rational::format(&p.shift)
                );
                for (i, e) in p.enclosures.iter().enumerate() {
                    let (mid, rad) = e.approx();
                    let _ = writeln!(s, "    term {i}: {mid:.15e} +- {rad:.1e}");
                }
            }
            if failures.len() > TEXT_FAILURES {
                let _ = writeln!(
                    s,
                    "  ... {} more (see --format json)",
                    failures.len() - TEXT_FAILURES
                );
            }
        }
        Method::Symbolic => {
            let _ = writeln!(s, "{}: {} by exact replay", r.id, verdict_word(r.verdict));
            for step in &r.steps {
                let _ = writeln!(s, "  step {}: {}", step.name, verdict_word(step.verdict));
                certificate_text(&mut s, &step.certificate);
            }
        }
    }
    s
}

fn certificate_text(s: &mut String, c: &RayCertificate) {
    let _ = writeln!(s, "    expression: {}", c.expression);
    let _ = writeln!(s, "    derivative: {}", c.derivative);
    for k in &c.checks {
        let mark = match k.verdict {
            Positivity::CertifiedPositive => "nonnegative coefficients",
            Positivity::Inconclusive => "sign change, inconclusive",
        };
        let _ = writeln!(
            s,
            "    {} at x + {}: {mark}",
            k.label,
            rational::format(&c.shift)
        );
        let _ = writeln!(s, "      {}", k.shifted);
    }
    let limit = match &c.limit {
        Limit::Zero => "0".to_string(),
        Limit::Value(q) => rational::format(q),
        Limit::Diverges => "not zero".to_string(),
    };
    let _ = writeln!(s, "    limit at infinity: {limit}");
}

fn report(config: &CliConfig, kind: ReportKind, grid: &GridSpec) -> Result<Output> {
    let points = grid.points()?;
    let (s, p) = (&config.shift, config.precision);
    match kind {
        ReportKind::Tightness => {
            let rows = tightness_report(&points, s, p)?;
            let body = match config.format {
                Format::Json => to_json(&rows),
                Format::Csv => tightness_to_csv(&rows),
                Format::Text => {
                    let mut t = format!(
                        "{:>10}  {:>22}  {:>22}  {:>12}  {:>12}\n",
                        "x", "x^5 (psi1 - theta1)", "x^7 (psi1 - theta2)", "thm1 gap", "thm2 gap"
                    );
                    for r in &rows {
                        let _ = writeln!(
                            t,
                            "{:>10}  {:>22.15e}  {:>22.15e}  {:>12.4e}  {:>12.4e}",
                            rational::format(&r.x),
                            r.scaled_theta1.approx().0,
                            r.scaled_theta2.approx().0,
                            r.thm1_gap.approx().0,
                            r.thm2_gap.approx().0
                        );
                    }
                    t
                }
            };
            Ok(Output::info(body))
        }
        ReportKind::Compare => {
            if let Some(bad) = points.iter().find(|t| *t < &int(1)) {
                return Err(Error::Argument(format!(
                    "comparison points must be >= 1, got {}",
                    rational::format(bad)
                )));
            }
            let items = points
                .iter()
                .map(|t| compare_bounds(t, s, p))
                .collect::<Result<Vec<_>>>()?;
            let all_hold = items
                .iter()
                .all(|c| c.claims.iter().all(|k| k.verdict == Verdict::Holds));
            let body = match config.format {
                Format::Json => to_json(&items),
                Format::Csv => comparisons_to_csv(&items),
                Format::Text => {
                    let mut t = String::new();
                    for c in &items {
                        let _ = writeln!(t, "x = {}", rational::format(&c.x));
                        for b in &c.bounds {
                            let (mid, rad) = b.enclosure.approx();
                            let target = serde_json::to_value(b.target).expect("plain enum");
                            let _ = writeln!(
                                t,
                                "  {:<28} {:<10} {mid:.15e} +- {rad:.1e}",
                                b.name,
                                target.as_str().unwrap_or_default()
                            );
                        }
                        for k in &c.claims {
                            let tag = if k.refuted {
                                "refuted"
                            } else {
                                verdict_word(k.verdict)
                            };
                            let _ = writeln!(t, "  claim {}: {tag}", k.claim);
                        }
                    }
                    t
                }
            };
            Ok(Output { body, all_hold })
        }
        ReportKind::Probe => {
            let rows = conjecture_probe(&points, s, p)?;
            let body = match config.format {
                Format::Json => to_json(&rows),
                Format::Csv => probe_to_csv(&rows),
                Format::Text => {
                    let mut t = format!(
                        "{:>10}  {:>22}  {:>22}  {:>22}\n",
                        "x", "e^M - psi1 - 1", "psi1 - e^m + 1", "Theta"
                    );
                    for r in &rows {
                        let _ = writeln!(
                            t,
                            "{:>10}  {:>22.15e}  {:>22.15e}  {:>22.15e}",
                            rational::format(&r.x),
                            r.upper_excess.approx().0,
                            r.lower_excess.approx().0,
                            r.big_theta.approx().0
                        );
                    }
                    t
                }
            };
            Ok(Output::info(body))
        }
    }
}
