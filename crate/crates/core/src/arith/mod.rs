//! Arithmetic models: Dedekind domains with finite surrogate Galois data,
//! and unit groups of cyclotomic levels.

pub mod cyclotomic;
pub mod dedekind;

pub use cyclotomic::{
    cyclotomic_consistency, cyclotomic_quotient, unit_group_invariants, ConsistencyReport, ConsistencyRow,
    CyclicFactor, CyclotomicError, CyclotomicLevel,
};
pub use dedekind::{
    build_site, expected_pi1, verify_formula, DedekindModel, ModelError, Outcome, PrimeData, VerificationReport,
    VerifyError, GENERIC_POINT,
};
