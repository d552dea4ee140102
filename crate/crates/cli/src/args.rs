use clap::{Args, Parser, Subcommand, ValueEnum};
use psibound::kernel::rational;
use psibound::kernel::Rational;
use psibound::theorems::geometric_grid;

/// Certified enclosures, asymptotic series and inequality checks for the
/// digamma and trigamma functions.
#[derive(Parser, Debug)]
#[command(name = "psibound", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Working precision in bits (at least 8)
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..))]
    pub precision: u32,

    /// Shift target S for the polygamma recurrence (p/q or decimal, at least 10)
    #[arg(long, global = true, default_value = "10", value_parser = parse_rational)]
    pub shift: Rational,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the Bernoulli numbers B_0..B_N
    Bern { n: u32 },

    /// Print an asymptotic expansion
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,

        /// Parameter m of theta(x, m)
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        m: Option<Rational>,

        /// Truncation order K: terms through x^-K
        #[arg(long)]
        order: i64,
    },

    /// Enclose psi(x) or psi'(x)
    Enclose {
        #[arg(value_enum)]
        function: Function,

        #[arg(value_parser = parse_rational, allow_hyphen_values = true)]
        x: Rational,
    },

    /// Enclose a constant
    Const {
        #[arg(value_enum)]
        name: ConstName,

        /// Width bound for the digamma zero
        #[arg(long, default_value = "1/1000000", value_parser = parse_rational)]
        tol: Rational,
    },

    /// Certify a group of inequalities
    Certify {
        #[arg(value_enum)]
        group: Group,

        /// Replay the exact monotonicity proofs instead of checking a grid
        #[arg(long, conflicts_with = "grid")]
        symbolic: bool,

        /// Grid as start:stop:count (geometric) or a comma-separated list;
        /// defaults to 40 points from each domain start to 10^4
        #[arg(long, value_parser = parse_grid)]
        grid: Option<GridSpec>,
    },

    /// Tabulate approximation rates, bound comparisons or conjecture probes
    Report {
        #[arg(value_enum)]
        kind: ReportKind,

        /// Grid as start:stop:count (geometric) or a comma-separated list
        #[arg(long, value_parser = parse_grid)]
        grid: GridSpec,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Digamma,
    Trigamma,
    Theta,
    Product,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Function {
    Digamma,
    Trigamma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstName {
    Gamma,
    Bstar,
    Pi,
    DigammaZero,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Thm1,
    Thm2,
    Thm3,
    Classical,
    Remark1,
    All,
    /// THM1 with the exponent of its weight corrected
    Amended,
}

impl Group {
    /// Catalog ids checked on a grid.
    pub fn grid_ids(self) -> &'static [&'static str] {
        match self {
            Group::Thm1 => &["THM1"],
            Group::Thm2 => &["THM2"],
            Group::Thm3 => &["THM3a", "THM3b"],
            Group::Classical => &["ELE", "GUO-QI", "BATIR", "YCT", "XP1", "BATIR-THETA"],
            Group::Remark1 => &["R1U", "R1V"],
            Group::All => &psibound::theorems::CATALOG_IDS,
            Group::Amended => &["THM1-AMENDED"],
        }
    }

    /// Ids with an exact proof replay.
    pub fn symbolic_ids(self) -> &'static [&'static str] {
        match self {
            Group::Thm1 => &["THM1"],
            Group::Thm2 => &["THM2"],
            Group::Thm3 => &["THM3a-lower"],
            Group::Classical => &[],
            Group::Remark1 => &["R1U"],
            Group::All => &["THM1", "THM2", "THM3a-lower", "R1U"],
            Group::Amended => &["THM1-AMENDED"],
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Tightness,
    Compare,
    Probe,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    Geometric {
        start: Rational,
        stop: Rational,
        count: usize,
    },
    List(Vec<Rational>),
}

impl GridSpec {
    pub fn points(&self) -> psibound::Result<Vec<Rational>> {
        match self {
            GridSpec::Geometric { start, stop, count } => geometric_grid(start, stop, *count),
            GridSpec::List(v) => Ok(v.clone()),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("grid count must be a positive integer, got {count:?}"))?;
            let spec = GridSpec::Geometric {
                start: parse_rational(start)?,
                stop: parse_rational(stop)?,
                count,
            };
            spec.points().map_err(|e| e.to_string())?;
            Ok(spec)
        }
        [list] => {
            let v = list
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            if v.windows(2).any(|w| w[0] >= w[1]) {
                return Err("grid list must be strictly increasing".into());
            }
            Ok(GridSpec::List(v))
        }
        _ => Err(format!(
            "expected start:stop:count or a comma-separated list, got {s:?}"
        )),
    }
}
