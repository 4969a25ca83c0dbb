//! Documents, enumeration, reports and fuzzing: the user-facing surface.

pub mod document;
pub mod enumerate;
pub mod fuzz;
pub mod report;

pub use document::{parse, print, print_topoframe, same_document, Document, DocumentError};
pub use enumerate::{enumerate_subframes, enumerate_topoframes, EnumerationError, Instance};
pub use report::{build_report, to_json, ReportDocument};
