//! Unbounded diagonal operators `T e_n = t_n e_n` on `ℓ²(A_v)` with
//! eventually power-law symbols.
//!
//! Domains are decided by the exponent of `|t_n x_n|²`; partial sums and
//! integral tail bounds are reported next to each verdict.

mod domain;
mod example52;
mod ops;
mod seq;

pub use domain::{
    domain_contains, domain_contains_with, naive_add_domain, naive_mul_domain, square_sum_verdict, CompositeVerdict,
    Crossing, DiagSymbol, DomainVerdict, PartialSum, PowerVector, CROSSING_BOUND, DEFAULT_HORIZON,
};
pub use example52::{example52_phases, example52_report, Example52Report, Membership, MIN_HORIZON};
pub use ops::{
    adjoint_laws_check, adjoint_symbol, bounding_sequence, hat_add, hat_mul, is_affiliated_normal, positive_sum_check,
    quasi_commutation_check, scalar_symbol, spectrum_closure, symbol_grade, symbol_polynomial, AdjointLawsReport,
    AffiliationReport, BoundingProjection, BoundingSequence, LawCheck, PositiveSumReport, ProjectionSupport,
    QuasiCommutationReport, ResidueTail, SpectrumClosure, SCAN_CAP,
};
pub use seq::{PowerSeq, PowerTerm, ResidueProfile, ALPHA_TOL, CANCEL_TOL, MAX_PERIOD};
