//! Expression syntax: parsing, printing and evaluation against a presentation.

mod ast;
mod eval;
mod parse;

pub use ast::Ast;
pub use eval::{eval_element, eval_fraction, inverse_word, parse_element, parse_fraction};
pub use parse::parse_expression;
