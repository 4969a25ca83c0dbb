//! Ring-theoretic properties of the function ring, computed through its
//! ideal structure and verified on explicit elements.

mod checks;
mod harness;
mod ideals;
mod report;

use thiserror::Error;

use crate::realfun::RealFunError;

pub use checks::{
    check_baer, check_continuity_completeness, check_cs, check_kasch, check_pp, check_regular, check_selfinjective,
    property_report, topoframe_flags, CardinalMode, CheckConfig, Samples,
};
pub use harness::{theorems_from_report, verify_theorems, TheoremReport, TheoremVerdict, Verdict};
pub use ideals::{
    annihilator, essential_counterexample, ideal_of, is_closed_ideal, is_essential, is_essential_in, is_summand,
    summand_complement, IdealHandle,
};
pub use report::{verify_witness, Flag, IdealPair, PropertyReport, View, Witness};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("operands live on different topoframes")]
    MixedTopoframes,
    #[error(transparent)]
    Construction(#[from] RealFunError),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
