//! Exact computations for bigraded Rees algebras of pairs of m-primary
//! monomial ideals: Bhattacharya polynomials, mixed multiplicities,
//! Ratliff-Rush closures, reductions, and the dimension-2 Cohen-Macaulay
//! criterion.

pub mod bhattacharya;
pub mod binomial;
pub mod closure;
pub mod cm;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod powers;
pub mod reductions;

pub use bhattacharya::{
    Bhattacharya, BhattacharyaTable, FitOptions, FitReport, HilbertFit, Window, bhattacharya, fit,
    hilbert_fit_single, hilbert_fit_single_with, mixed_multiplicities, table,
};
pub use binomial::{BinomialPolynomial2, HilbertPolynomial};
pub use closure::{
    ClosureConfig, ClosureResult, RrDefect, rr_closure, rr_closure_via_reduction, rr_component,
    rr_defect,
};
pub use cm::{
    CMOptions, CMReport, Cond3Witnesses, PairAnalysis, Verdict, difference_table, h2_length,
    jr_criterion_report,
};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, default_var_names};
pub use reductions::{
    CertificateKind, DecompositionTerm, ReductionCertificate, complete_reduction_check,
    is_reduction, joint_reduction_zero, verify_decomposition,
};
