//! Contextual refinement and equivalence checking: evaluation-context
//! corpora, the sweep machinery that compares convergence verdicts across
//! them, an algebraic law suite, and guided demonstrations.

pub mod ciu;
pub mod corpus;
pub mod demos;
pub mod laws;

pub use ciu::{equivalent, refines, CiuOutcome, Counterexample, Mode};
pub use corpus::{discriminator_pool, gen_contexts, min_value, sample_values};
pub use laws::{run_law_suite, LawSuite};
