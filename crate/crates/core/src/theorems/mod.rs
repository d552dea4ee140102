//! The inequality catalog and its two certification backends: interval
//! checks on a grid and exact replay of the monotonicity proofs.

pub mod catalog;
pub mod csv;
pub mod expr;
pub mod grid;
pub mod report;
pub mod symbolic;

pub use catalog::{amended_thm1, catalog, entry, Claim, InequalityEntry, Strictness, CATALOG_IDS};
pub use grid::{
    check_grid, default_grid, geometric_grid, CertReport, Method, PointResult, Verdict,
};
pub use report::{
    compare_bounds, conjecture_probe, tightness_report, BoundRow, Comparison, DominanceClaim,
    ProbeRow, Target, TightnessRow,
};
pub use symbolic::{certify_symbolic, SYMBOLIC_IDS};
