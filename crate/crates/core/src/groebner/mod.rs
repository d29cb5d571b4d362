//! Gröbner bases of ideals and submodules over `S` and over `R = S/I`,
//! normal forms, syzygies, and ideal operations built on them.

mod basis;
mod engine;
mod ideal;
mod quotient;
mod vector;

pub use basis::{buchberger, ideal_groebner, normal_form, GroebnerBasis};
pub use engine::{
    AuditCounts, Limits, PairAudit, DEFAULT_DEGREE_CAP, DEFAULT_MINOR_CAP, DEFAULT_PAIR_CAP,
};
pub use ideal::{
    annihilator_of_ideal_mod, ideal_intersection, ideal_membership, ideal_quotient,
    radical_membership, Ideal,
};
pub use quotient::{canonical_columns, column_degree, syzygy_basis, QuotientRing};
pub use vector::{ModuleOrder, ModuleOrderKind, SparseVec, Term};

pub(crate) use quotient::syzygy_step;
