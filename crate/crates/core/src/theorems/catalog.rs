use serde::Serialize;

use super::expr::{constant, exp, ln, over_x_pow, psi, psi1, q, sinh, x, Constant, Expr};
use crate::error::{Error, Result};
use crate::kernel::rational::{self, int, ratio, Rational};

/// Whether a link `a < b` or `a ≤ b` is claimed strictly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    NonStrict,
}

/// What is being claimed about the expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `terms[0] (<|≤) terms[1] (<|≤) …`; `links[i]` relates `terms[i]` and
    /// `terms[i+1]`.
    Chain {
        terms: Vec<Expr>,
        links: Vec<Strictness>,
    },
    /// The expression is strictly decreasing.
    Decreasing(Expr),
}

/// One inequality with its validity domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityEntry {
    pub id: &'static str,
    /// Left end of the validity domain.
    pub domain_start: Rational,
    /// `true` for `x > domain_start`, `false` for `x ≥ domain_start`.
    pub open: bool,
    pub claim: Claim,
    pub provenance: &'static str,
}

impl InequalityEntry {
    pub fn admits(&self, t: &Rational) -> bool {
        if self.open {
            t > &self.domain_start
        } else {
            t >= &self.domain_start
        }
    }

    /// First point of the default grid: the domain start, or `1/10` past an
    /// open end at zero.
    pub fn grid_start(&self) -> Rational {
        if self.open {
            &self.domain_start + ratio(1, 10)
        } else {
            self.domain_start.clone()
        }
    }

    pub fn domain_description(&self) -> String {
        let op = if self.open { ">" } else { ">=" };
        format!("x {op} {}", rational::format(&self.domain_start))
    }
}

/// Ids of the twelve catalog entries, in catalog order.
pub const CATALOG_IDS: [&str; 12] = [
    "THM1",
    "THM2",
    "THM3a",
    "THM3b",
    "ELE",
    "GUO-QI",
    "BATIR",
    "YCT",
    "XP1",
    "R1U",
    "R1V",
    "BATIR-THETA",
];

/// Id of the corrected form of the first theorem, kept outside the catalog.
pub const AMENDED_THM1: &str = "THM1-AMENDED";

fn chain(terms: Vec<Expr>, links: &[Strictness]) -> Claim {
    debug_assert_eq!(terms.len(), links.len() + 1);
    Claim::Chain {
        terms,
        links: links.to_vec(),
    }
}

fn r(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

fn x1() -> Expr {
    x() + Expr::from(1)
}

/// `α(x) = 1/2 + 1/(90x³) − 1/(60x⁴)`.
pub fn alpha() -> Expr {
    q(1, 2) + over_x_pow(r(1, 90), 3) - over_x_pow(r(1, 60), 4)
}

/// `β(x) = 1/2 + 1/(90x³)`.
pub fn beta() -> Expr {
    q(1, 2) + over_x_pow(r(1, 90), 3)
}

/// `m(x) = 1/x − 1/(24x⁴) + 7/(360x⁶)`.
pub fn small_m() -> Expr {
    over_x_pow(r(1, 1), 1) - over_x_pow(r(1, 24), 4) + over_x_pow(r(7, 360), 6)
}

/// `M(x) = m(x) + 1/(90x⁷)`.
pub fn big_m() -> Expr {
    small_m() + over_x_pow(r(1, 90), 7)
}

/// `θ(x, m) = (e^{m/(x+1)} − e^{−m/x})/(2m)`.
pub fn theta(m: i64) -> Expr {
    (exp(Expr::from(m) / x1()) - exp(-(Expr::from(m) / x()))) / Expr::from(2 * m)
}

/// `ψ′(x+1)·e^{2ψ(x+1)} − x`.
pub fn batir_theta() -> Expr {
    psi1(x1()) * exp(Expr::from(2) * psi(x1())) - x()
}

/// `u(x) = ln(x + α(x)) − ln(x + 1/2) − 1/(120x⁴)`.
pub fn u_fn() -> Expr {
    ln(x() + alpha()) - ln(x() + q(1, 2)) - over_x_pow(r(1, 120), 4)
}

/// `v(x) = ln(x + β(x)) − 1/(120x⁴) − ln(x + b*)`.
pub fn v_fn() -> Expr {
    ln(x() + beta()) - over_x_pow(r(1, 120), 4) - ln(x() + constant(Constant::BStar))
}

fn thm1_weight() -> Expr {
    exp(-(Expr::from(2) * psi(x1())) - over_x_pow(r(1, 120), 4))
}

fn batir_weight() -> Expr {
    exp(-(Expr::from(2) * psi(x1())))
}

use Strictness::{NonStrict, Strict};

/// The twelve inequalities, in the order of [`CATALOG_IDS`].
pub fn catalog() -> Vec<InequalityEntry> {
    let zero = Rational::from_integer(0.into());
    vec![
        InequalityEntry {
            id: "THM1",
            domain_start: int(3),
            open: false,
            claim: chain(
                vec![(x() + alpha()) * thm1_weight(), psi1(x1()), (x() + beta()) * thm1_weight()],
                &[NonStrict, NonStrict],
            ),
            provenance: "first main theorem: (x+alpha)exp(-2psi(x+1)-1/(120x^4)) <= psi'(x+1) <= (x+beta)exp(-2psi(x+1)-1/(120x^4)), x >= 3",
        },
        InequalityEntry {
            id: "THM2",
            domain_start: int(3),
            open: false,
            claim: chain(
                vec![exp(small_m()) - Expr::from(1), psi1(x()), exp(big_m()) - Expr::from(1)],
                &[Strict, Strict],
            ),
            provenance: "second main theorem: e^m(x) - 1 < psi'(x) < e^M(x) - 1, x >= 3",
        },
        InequalityEntry {
            id: "THM3a",
            domain_start: int(1),
            open: false,
            claim: chain(
                vec![
                    theta(1) + over_x_pow(r(1, 24), 5) - over_x_pow(r(5, 48), 6),
                    psi1(x1()),
                    theta(1) + over_x_pow(r(1, 24), 5),
                ],
                &[Strict, Strict],
            ),
            provenance: "third main theorem, first pair: theta(x,1) + 1/(24x^5) - 5/(48x^6) < psi'(x+1) < theta(x,1) + 1/(24x^5), x >= 1",
        },
        InequalityEntry {
            id: "THM3b",
            domain_start: int(1),
            open: false,
            claim: chain(
                vec![
                    theta(2) - over_x_pow(r(1, 45), 7),
                    psi1(x1()),
                    theta(2) - over_x_pow(r(1, 45), 7) + over_x_pow(r(7, 90), 8),
                ],
                &[Strict, Strict],
            ),
            provenance: "third main theorem, second pair: theta(x,2) - 1/(45x^7) < psi'(x+1) < theta(x,2) - 1/(45x^7) + 7/(90x^8), x >= 1",
        },
        InequalityEntry {
            id: "ELE",
            domain_start: zero.clone(),
            open: true,
            claim: chain(vec![psi1(x()), exp(-psi(x()))], &[Strict]),
            provenance: "Elezovic-Giordano-Pecaric: psi'(x) < e^(-psi(x)), x > 0",
        },
        InequalityEntry {
            id: "GUO-QI",
            domain_start: zero.clone(),
            open: true,
            claim: chain(vec![psi1(x()), exp(over_x_pow(r(1, 1), 1)) - Expr::from(1)], &[Strict]),
            provenance: "Guo-Qi: psi'(x) < e^(1/x) - 1, x > 0",
        },
        InequalityEntry {
            id: "BATIR",
            domain_start: zero.clone(),
            open: true,
            claim: chain(
                vec![
                    (x() + q(1, 2)) * batir_weight(),
                    psi1(x1()),
                    (x() + constant(Constant::BStar)) * batir_weight(),
                ],
                &[Strict, NonStrict],
            ),
            provenance: "Batir: (x+1/2)e^(-2psi(x+1)) < psi'(x+1) <= (x+b*)e^(-2psi(x+1)), x > 0",
        },
        InequalityEntry {
            id: "YCT",
            domain_start: zero.clone(),
            open: true,
            claim: chain(vec![theta(1), psi1(x1()), theta(2)], &[Strict, Strict]),
            provenance: "Yang-Chu-Tao: theta(x,1) < psi'(x+1) < theta(x,2), x > 0",
        },
        InequalityEntry {
            id: "XP1",
            domain_start: zero.clone(),
            open: true,
            claim: chain(
                vec![
                    exp(Expr::from(1) / x1()) - constant(Constant::E) + psi1(Expr::from(1)),
                    psi1(x1()),
                    exp(Expr::from(1) / x1()) - Expr::from(1),
                    q(1, 2) * sinh(Expr::from(2) / x()),
                ],
                &[Strict, Strict, Strict],
            ),
            provenance: "complete monotonicity consequence: e^(1/(x+1)) - e + psi'(1) < psi'(x+1) < e^(1/(x+1)) - 1 < sinh(2/x)/2, x > 0",
        },
        InequalityEntry {
            id: "R1U",
            domain_start: int(1),
            open: false,
            claim: chain(vec![u_fn(), Expr::from(0)], &[Strict]),
            provenance: "first remark, lower comparison: u(x) = ln(x+alpha(x)) - ln(x+1/2) - 1/(120x^4) < 0, x >= 1",
        },
        InequalityEntry {
            id: "R1V",
            domain_start: int(1),
            open: false,
            claim: chain(vec![v_fn(), Expr::from(0)], &[Strict]),
            provenance: "first remark, upper comparison: v(x) = ln(x+beta(x)) - 1/(120x^4) - ln(x+b*) < 0, x >= 1",
        },
        InequalityEntry {
            id: "BATIR-THETA",
            domain_start: zero,
            open: true,
            claim: Claim::Decreasing(batir_theta()),
            provenance: "Batir: psi'(x+1)e^(2psi(x+1)) - x is decreasing on x > 0, from b* to 1/2",
        },
    ]
}

/// `(x+α)e^{−2ψ(x+1)} ≤ ψ′(x+1) ≤ (x+β)e^{−2ψ(x+1)}` for `x ≥ 3`.
pub fn amended_thm1() -> InequalityEntry {
    InequalityEntry {
        id: AMENDED_THM1,
        domain_start: int(3),
        open: false,
        claim: chain(
            vec![(x() + alpha()) * batir_weight(), psi1(x1()), (x() + beta()) * batir_weight()],
            &[NonStrict, NonStrict],
        ),
        provenance: "first main theorem without the exp(-1/(120x^4)) factor: (x+alpha)e^(-2psi(x+1)) <= psi'(x+1) <= (x+beta)e^(-2psi(x+1)), x >= 3",
    }
}

/// Looks up a catalog entry or the amended first theorem, ignoring case.
pub fn entry(id: &str) -> Result<InequalityEntry> {
    if id.eq_ignore_ascii_case(AMENDED_THM1) {
        return Ok(amended_thm1());
    }
    catalog()
        .into_iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Argument(format!("unknown inequality id {id:?}")))
}
