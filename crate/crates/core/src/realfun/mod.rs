//! The ring of real-continuous functions on a finite topoframe, as exact
//! rational step functions.

mod constructions;
mod descriptor;
mod literal;
pub mod sampling;
mod step;

use thiserror::Error;

pub use constructions::{
    absorb_laws, characteristic, check_orthogonal, countable_coz_join, idempotent_normal_form, quasi_inverse,
    separating_element, separating_element_ed, unit_and_idempotent_from_regular, AbsorbReport,
};
pub use descriptor::{parse_rational, DescriptorError, Endpoint, SetDescriptor};
pub use literal::LiteralError;
pub use step::{Divisibility, Piece, RingOp, StepFunction};

/// Function values are exact rationals.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RealFunError {
    #[error("functions live on different topoframes")]
    MixedTopoframes,
    #[error("carrier does not belong to the topoframe's lattice")]
    ForeignElement,
    #[error("carriers `{0}` and `{1}` overlap")]
    OverlappingCarriers(String, String),
    #[error("carriers join to `{0}`, not ⊤")]
    NotCovering(String),
    #[error("carrier `{0}` is not open")]
    CarrierNotOpen(String),
    #[error("`{0}` is not clopen")]
    NotClopen(String),
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("`{0}` and `{1}` are not orthogonal")]
    NotOrthogonal(String, String),
    #[error("ambient frame is not extremally disconnected (witness `{0}`)")]
    EdHypothesisFailed(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

#[cfg(test)]
mod tests;
