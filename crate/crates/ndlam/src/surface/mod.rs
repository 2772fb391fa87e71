//! Human-readable syntax: lexer, parser, desugarer, and pretty-printer.
//!
//! The surface language is a thin named-variable notation over the core
//! calculus. Parsing produces a [`SourceTerm`] tree that still carries
//! names and source offsets; [`desugar`] resolves names to de Bruijn
//! indices and expands the sugar forms (`let`, `or`, `if`/`ifz`,
//! numerals, booleans, `fix`, `omega`) into core constructions. The
//! pretty-printer inverts this: it re-sugars what it can recognize and
//! invents fresh names, so `parse ∘ pretty` is the identity up to
//! α-equivalence (which for the core representation is plain equality).

mod desugar;
mod lexer;
mod parser;
mod pretty;

pub use desugar::{desugar, desugar_type, parse_context, term_from_source, DesugarError};
pub use lexer::{lex, LexError, Tok, Token};
pub use parser::{parse_term, parse_type, ParseError, SourceTerm, SourceType};
pub use pretty::{pretty_context, pretty_term, pretty_type, pretty_value};

use thiserror::Error;

/// Any error on the way from source text to a core term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Desugar(#[from] DesugarError),
}
