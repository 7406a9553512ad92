//! The formula language: set terms built from labels with complement and
//! intersection, and cardinality comparisons combined with Boolean
//! connectives.

mod ast;
mod dnf;
mod expand;
mod parser;
mod print;
pub mod schema;

pub use ast::{Formula, Label, Labels, Literal, SetTerm};
pub use dnf::{to_dnf, to_dnf_bounded};
pub use expand::{expand_abbreviations, expand_term, is_core};
pub use parser::{parse_formula, parse_formula_in, parse_term, parse_term_in};
pub use schema::{cgfc_schema, fc_schema, gfc_schema, TreeShape};
