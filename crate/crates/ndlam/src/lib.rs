//! A call-by-value λ-calculus with a countable choice operator `?`,
//! recursive sum types, and impredicative polymorphism — plus the
//! machinery to decide what its programs can and must do.
//!
//! The pieces, bottom up:
//!
//! - [`syntax`]: nameless (de Bruijn) terms, values, types, and
//!   single-hole evaluation contexts, with substitution and shifting
//!   for the two independent binder namespaces.
//! - [`encodings`]: derived forms — numerals, booleans, `let`, `or`,
//!   `if`/`ifz`, a typed fixed-point combinator, a diverging term at
//!   every type — and the small bestiary of programs the test suites
//!   and demos revolve around.
//! - [`typing`]: bidirectional-enough type inference for the core
//!   language, with structured, path-addressed errors.
//! - [`reduction`]: the small-step relation. Deterministic everywhere
//!   except `?`, which fans out to every numeral; steps are labeled so
//!   reduction sequences can be classified by how many recursive-type
//!   unfoldings they perform.
//! - [`convergence`]: bounded exploration of the reduction graph,
//!   yielding three-valued verdicts for "can this converge" and "must
//!   this converge", with replayable witnesses: a terminating path, or
//!   a reachable cycle proving an infinite run exists.
//! - [`surface`]: a named, human-writable syntax with a parser,
//!   desugarer, and pretty-printer that round-trip.
//!
//! The choice operator makes the reduction graph of a single term
//! infinitely branching, so every analysis here is explicitly budgeted
//! (step fuel, choice bound, node budget) and every verdict is honest
//! about whether it is certified or merely "unknown within budget".

pub mod convergence;
pub mod encodings;
pub mod equivalence;
pub mod gen;
pub mod par;
pub mod reduction;
pub mod surface;
pub mod syntax;
pub mod typing;
