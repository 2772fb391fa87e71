//! Context-based refinement and equivalence checking.
//!
//! `refines(left, right, …)` asks: in every context of the corpus, does
//! the chosen convergence property of the plugged left term imply the
//! same property of the plugged right term? Verdicts are three-valued,
//! so each context yields one of: the implication certainly holds
//! (right certified positive, or left certified negative), a certified
//! counterexample (left certified positive and right certified
//! negative), or an unknown site where a budget ran out. The overall
//! outcome is a counterexample if any context certifies one (the first
//! by corpus order, deterministically), else inconclusive if any site
//! is unknown, else a pass over the whole corpus.
//!
//! Contexts are swept in parallel when the `parallel` feature is on.

use crate::convergence::{may_converges, must_converges, Budget, MayVerdict, MustVerdict};
use crate::par::par_map;
use crate::syntax::{plug, EvalContext, Term};
use std::fmt;

/// Which convergence property the refinement quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// "Can converge": left may-converges ⇒ right may-converges.
    May,
    /// "Must converge": left must-converges ⇒ right must-converges.
    Must,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::May => "may",
            Mode::Must => "must",
        })
    }
}

/// A context on which the implication certifiably fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Index into the corpus that was swept.
    pub index: usize,
    pub context: EvalContext,
    pub left_verdict: String,
    pub right_verdict: String,
}

/// Result of sweeping a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CiuOutcome {
    /// The implication held on every context, with certificates on both
    /// sides of each.
    Holds { contexts_tested: usize },
    /// Some context certifiably separates the two terms.
    Counterexample(Box<Counterexample>),
    /// No counterexample, but some contexts' verdicts hit a budget.
    Inconclusive {
        contexts_tested: usize,
        unknown_sites: usize,
    },
}

impl CiuOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CiuOutcome::Holds { .. })
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self, CiuOutcome::Counterexample(_))
    }
}

impl fmt::Display for CiuOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CiuOutcome::Holds { contexts_tested } => {
                write!(f, "holds on all {contexts_tested} contexts")
            }
            CiuOutcome::Counterexample(ce) => write!(
                f,
                "counterexample at context #{} `{}`: left {}, right {}",
                ce.index, ce.context, ce.left_verdict, ce.right_verdict
            ),
            CiuOutcome::Inconclusive {
                contexts_tested,
                unknown_sites,
            } => write!(
                f,
                "inconclusive: {unknown_sites} of {contexts_tested} contexts hit a budget"
            ),
        }
    }
}

enum SiteClass {
    Holds,
    Counterexample(String, String),
    Unknown,
}

fn classify_may(left: &MayVerdict, right: &MayVerdict) -> SiteClass {
    match (left, right) {
        // Right certified positive: implication true whatever left does.
        (_, MayVerdict::Converges { .. }) => SiteClass::Holds,
        // Left certified negative: implication vacuous.
        (MayVerdict::DivergesCertified { .. }, _) => SiteClass::Holds,
        (MayVerdict::Converges { .. }, MayVerdict::DivergesCertified { .. }) => {
            SiteClass::Counterexample("converges".into(), "diverges (certified)".into())
        }
        _ => SiteClass::Unknown,
    }
}

fn classify_must(left: &MustVerdict, right: &MustVerdict) -> SiteClass {
    let right_certified = matches!(right, MustVerdict::MustConverges { exact: true, .. });
    if right_certified {
        return SiteClass::Holds;
    }
    match (left, right) {
        (MustVerdict::Refuted { .. }, _) => SiteClass::Holds,
        (MustVerdict::MustConverges { exact: true, .. }, MustVerdict::Refuted { .. }) => {
            SiteClass::Counterexample(
                "must-converges (exact)".into(),
                "refuted by an infinite path".into(),
            )
        }
        _ => SiteClass::Unknown,
    }
}

/// Sweep the corpus asking whether `left` refines `right` in `mode`.
pub fn refines(
    left: &Term,
    right: &Term,
    contexts: &[EvalContext],
    mode: Mode,
    budget: &Budget,
) -> CiuOutcome {
    let classes = par_map(contexts, |ctx| {
        let l = plug(ctx, left);
        let r = plug(ctx, right);
        match mode {
            Mode::May => classify_may(&may_converges(&l, budget), &may_converges(&r, budget)),
            Mode::Must => {
                classify_must(&must_converges(&l, budget), &must_converges(&r, budget))
            }
        }
    });
    let mut unknown_sites = 0usize;
    for (index, class) in classes.iter().enumerate() {
        match class {
            SiteClass::Counterexample(lv, rv) => {
                return CiuOutcome::Counterexample(Box::new(Counterexample {
                    index,
                    context: contexts[index].clone(),
                    left_verdict: lv.clone(),
                    right_verdict: rv.clone(),
                }));
            }
            SiteClass::Unknown => unknown_sites += 1,
            SiteClass::Holds => {}
        }
    }
    if unknown_sites > 0 {
        CiuOutcome::Inconclusive {
            contexts_tested: contexts.len(),
            unknown_sites,
        }
    } else {
        CiuOutcome::Holds {
            contexts_tested: contexts.len(),
        }
    }
}

/// Both refinement directions; the first counterexample (either
/// direction) wins, inconclusiveness propagates, otherwise both hold.
pub fn equivalent(
    left: &Term,
    right: &Term,
    contexts: &[EvalContext],
    mode: Mode,
    budget: &Budget,
) -> CiuOutcome {
    let fwd = refines(left, right, contexts, mode, budget);
    if fwd.is_counterexample() {
        return fwd;
    }
    let bwd = refines(right, left, contexts, mode, budget);
    if bwd.is_counterexample() {
        return bwd;
    }
    match (&fwd, &bwd) {
        (CiuOutcome::Holds { contexts_tested }, CiuOutcome::Holds { .. }) => CiuOutcome::Holds {
            contexts_tested: *contexts_tested,
        },
        (CiuOutcome::Inconclusive { .. }, _) => fwd,
        _ => bwd,
    }
}
