//! Checks of every identity relating the trinomial series, run in exact
//! arithmetic where possible, plus regeneration of the reference coefficient
//! tables.
//!
//! Each formal check has an `*_on` form that takes its input series
//! explicitly, so tests can perturb a single coefficient and watch the check
//! fail at that order.

mod appendix;
mod branches;
mod formal;
mod properties;
mod report;

pub use appendix::{regenerate_appendix, AppendixRow, AppendixTable, AppendixTypo, RegeneratedFunction, APPENDIX_TYPOS};
pub use branches::{check_branch_relations, BRANCH_GUARD};
pub use formal::{
    check_inverse_relation, check_inverse_relation_on, check_lemma3, check_lemma3_on, check_lemma4, check_lemma4_on,
    check_lemma5, check_lemma5_eq52_on, check_lemma5_eq53_on, check_powers, check_powers_on, check_theorem1,
    check_theorem1_on, gaussian_moment, lemma4_expansion, Lemma5Identity,
};
pub use properties::{
    check_cancellation, check_cancellation_on, check_coefficient_formulas, check_coefficient_formulas_on,
    check_ode_residual, check_ode_residual_on, check_shift_consistency, check_shift_consistency_on,
};
pub use report::{CheckReport, CheckStatus, Witness};

mod suite;
pub use suite::{run_suite, Suite, SuiteParams};
