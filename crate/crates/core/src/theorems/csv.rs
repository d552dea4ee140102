//! Flat CSV renderings of reports. Rationals are written as `p/q`.

use super::grid::{CertReport, Method, Verdict};
use super::report::{Comparison, ProbeRow, TightnessRow};
use crate::kernel::rational;
use crate::kernel::Interval;

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Undecided => "undecided",
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

/// One row per enclosure of each grid point, one row per symbolic step.
///
/// Columns: `id, method, x, next, verdict, refuted, precision, shift,
/// term, lo, hi`. Symbolic rows put the step name in `term` and leave the
/// numeric columns empty.
pub fn reports_to_csv(reports: &[CertReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "id",
        "method",
        "x",
        "next",
        "verdict",
        "refuted",
        "precision",
        "shift",
        "term",
        "lo",
        "hi",
    ])
    .expect("in-memory write");
    for r in reports {
        match r.method {
            Method::Grid => {
                for p in &r.points {
                    for (i, e) in p.enclosures.iter().enumerate() {
                        let next = p.next.as_ref().map(rational::format).unwrap_or_default();
                        w.write_record([
                            r.id.as_str(),
                            "grid",
                            &rational::format(&p.x),
                            &next,
                            verdict(p.verdict),
                            if p.refuted { "true" } else { "false" },
                            &p.precision.to_string(),
                            &rational::format(&p.shift),
                            &i.to_string(),
                            &rational::format(e.lo()),
                            &rational::format(e.hi()),
                        ])
                        .expect("in-memory write");
                    }
                }
            }
            Method::Symbolic => {
                for s in &r.steps {
                    w.write_record([
                        r.id.as_str(),
                        "symbolic",
                        "",
                        "",
                        verdict(s.verdict),
                        "false",
                        "",
                        &rational::format(&s.certificate.shift),
                        &s.name,
                        "",
                        "",
                    ])
                    .expect("in-memory write");
                }
            }
        }
    }
    finish(w)
}

fn push_interval(rec: &mut Vec<String>, e: &Interval) {
    rec.push(rational::format(e.lo()));
    rec.push(rational::format(e.hi()));
}

/// One row per grid point; each quantity contributes `_lo` and `_hi`
/// columns.
pub fn tightness_to_csv(rows: &[TightnessRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let names = [
        "gap_theta1",
        "gap_theta2",
        "scaled_theta1",
        "scaled_theta2",
        "thm1_gap",
        "thm2_gap",
        "thm3a_gap",
        "thm3b_gap",
    ];
    let mut header = vec!["x".to_string()];
    for n in names {
        header.push(format!("{n}_lo"));
        header.push(format!("{n}_hi"));
    }
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        let mut rec = vec![rational::format(&r.x)];
        for e in [
            &r.gap_theta1,
            &r.gap_theta2,
            &r.scaled_theta1,
            &r.scaled_theta2,
            &r.thm1_gap,
            &r.thm2_gap,
            &r.thm3a_gap,
            &r.thm3b_gap,
        ] {
            push_interval(&mut rec, e);
        }
        w.write_record(&rec).expect("in-memory write");
    }
    finish(w)
}

/// Bound rows (`kind = bound`) followed by claim rows (`kind = claim`).
pub fn comparisons_to_csv(items: &[Comparison]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "x", "kind", "name", "target", "lo", "hi", "verdict", "refuted",
    ])
    .expect("in-memory write");
    for c in items {
        let x = rational::format(&c.x);
        for b in &c.bounds {
            let target = serde_json::to_value(b.target).expect("plain enum");
            w.write_record([
                x.as_str(),
                "bound",
                b.name,
                target.as_str().unwrap_or_default(),
                &rational::format(b.enclosure.lo()),
                &rational::format(b.enclosure.hi()),
                "",
                "",
            ])
            .expect("in-memory write");
        }
        for k in &c.claims {
            w.write_record([
                x.as_str(),
                "claim",
                k.claim,
                "",
                "",
                "",
                verdict(k.verdict),
                if k.refuted { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
    }
    finish(w)
}

/// One row per grid point; missing differences leave empty cells.
pub fn probe_to_csv(rows: &[ProbeRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let names = [
        "upper_excess",
        "lower_excess",
        "big_theta",
        "upper_d1",
        "upper_d2",
        "lower_d1",
        "lower_d2",
    ];
    let mut header = vec!["x".to_string()];
    for n in names {
        header.push(format!("{n}_lo"));
        header.push(format!("{n}_hi"));
    }
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        let mut rec = vec![rational::format(&r.x)];
        for e in [&r.upper_excess, &r.lower_excess, &r.big_theta] {
            push_interval(&mut rec, e);
        }
        for diffs in [&r.upper_diffs, &r.lower_diffs] {
            for i in 0..2 {
                match diffs.get(i) {
                    Some(e) => push_interval(&mut rec, e),
                    None => rec.extend([String::new(), String::new()]),
                }
            }
        }
        w.write_record(&rec).expect("in-memory write");
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, ratio};
    use crate::theorems::{certify_symbolic, check_grid, entry};

    #[test]
    fn grid_rows_are_flat() {
        let r = check_grid(
            &entry("GUO-QI").unwrap(),
            &[ratio(1, 2), int(2)],
            &int(10),
            64,
        )
        .unwrap();
        let s = reports_to_csv(&[r]);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(
            lines[0],
            "id,method,x,next,verdict,refuted,precision,shift,term,lo,hi"
        );
        assert_eq!(lines.len(), 1 + 2 * 2);
        assert!(lines[1].starts_with("GUO-QI,grid,1/2,,holds,false,64,10,0,"));
    }

    #[test]
    fn probe_rows_have_fixed_width() {
        let rows = crate::theorems::conjecture_probe(&[int(1), int(2)], &int(10), 64).unwrap();
        let s = probe_to_csv(&rows);
        let widths: Vec<usize> = s.lines().map(|l| l.split(',').count()).collect();
        assert_eq!(widths, vec![15, 15, 15]);
        assert!(s.lines().nth(2).unwrap().ends_with(",,,,,,,"));
    }

    #[test]
    fn symbolic_rows() {
        let s = reports_to_csv(&[certify_symbolic("THM2").unwrap()]);
        assert_eq!(s.lines().count(), 3);
        assert!(s.contains("THM2,symbolic,,,holds,false,,3,m1: increasing to 0,,"));
    }
}
