//! Minimal graded free resolutions, Betti numbers, syzygy presentations,
//! and an independent linear-algebra Betti oracle.

mod compare;
mod linalg;
mod matrix;
mod oracle;
mod resolve;

pub use compare::{compare_with_oracle, Discrepancy, OracleComparison, OracleRow};
pub use matrix::{infer_row_degrees, minimalize_presentation, GradedMatrix, ModulePresentation};
pub use oracle::graded_betti_oracle;
pub use resolve::{
    betti_sequence, resolve, syzygy_presentation, BettiSequence, BettiTable, Resolution,
    ResolutionAudit,
};
