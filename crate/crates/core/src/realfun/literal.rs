//! Function literals: `v1@SET ; v2@SET ; …`.

use std::sync::Arc;

use thiserror::Error;

use super::{parse_rational, RealFunError, StepFunction};
use crate::topoframe::Topoframe;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LiteralError {
    #[error("piece {piece}: expected `VALUE@ELEMENT`, found `{text}`")]
    Shape { piece: usize, text: String },
    #[error("piece {piece}: `{text}` is not a rational")]
    Value { piece: usize, text: String },
    #[error("piece {piece}: `{text}` is not an element of the lattice")]
    Element { piece: usize, text: String },
    #[error(transparent)]
    Invalid(#[from] RealFunError),
}

impl LiteralError {
    /// One-based index of the offending piece, when known.
    pub fn piece(&self) -> Option<usize> {
        match self {
            LiteralError::Shape { piece, .. }
            | LiteralError::Value { piece, .. }
            | LiteralError::Element { piece, .. } => Some(*piece),
            LiteralError::Invalid(_) => None,
        }
    }
}

impl StepFunction {
    pub fn from_literal(space: &Arc<Topoframe>, text: &str) -> Result<Self, LiteralError> {
        let l = space.lattice();
        let mut pieces = Vec::new();
        for (i, raw) in text.split(';').enumerate() {
            let piece = i + 1;
            let raw = raw.trim();
            let (value, element) = raw.split_once('@').ok_or_else(|| LiteralError::Shape {
                piece,
                text: raw.to_string(),
            })?;
            let value = parse_rational(value).ok_or_else(|| LiteralError::Value {
                piece,
                text: value.trim().to_string(),
            })?;
            let element = l.parse_element(element).ok_or_else(|| LiteralError::Element {
                piece,
                text: element.trim().to_string(),
            })?;
            pieces.push((value, element));
        }
        Ok(StepFunction::new(space, pieces)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn literal_round_trip() {
        let tf = Topoframe::discrete(Arc::new(Lattice::powerset(2).unwrap()));
        let f = StepFunction::from_literal(&tf, "2@{1} ; 0@{2}").unwrap();
        assert_eq!(f.to_literal(), "0@{2} ; 2@{1}");
        assert_eq!(StepFunction::from_literal(&tf, &f.to_literal()).unwrap(), f);
        let g = StepFunction::from_literal(&tf, " -1/2@{2,1} ").unwrap();
        assert_eq!(g.to_literal(), "-1/2@{1,2}");
    }

    #[test]
    fn literal_errors() {
        let tf = Topoframe::discrete(Arc::new(Lattice::powerset(2).unwrap()));
        assert!(matches!(
            StepFunction::from_literal(&tf, "2{1}"),
            Err(LiteralError::Shape { piece: 1, .. })
        ));
        assert!(matches!(
            StepFunction::from_literal(&tf, "1@{1} ; x@{2}"),
            Err(LiteralError::Value { piece: 2, .. })
        ));
        assert!(matches!(
            StepFunction::from_literal(&tf, "1@{3}"),
            Err(LiteralError::Element { piece: 1, .. })
        ));
        assert!(matches!(
            StepFunction::from_literal(&tf, "1@{1}"),
            Err(LiteralError::Invalid(RealFunError::NotCovering(_)))
        ));
    }
}
