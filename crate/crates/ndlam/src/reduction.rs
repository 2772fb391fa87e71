//! Small-step operational semantics.
//!
//! A closed non-value term has exactly one redex, found by descending the
//! argument spine of nested applications. Every redex is deterministic
//! except the choice constant `?`, which steps to any numeral; its fanout is
//! reported explicitly, truncated at a caller-chosen bound.
//!
//! Stepping a stuck non-value (projection of a non-pair, application of a
//! non-function, and so on) is impossible for well-typed closed terms, so it
//! is treated as an internal fault and panics rather than returning an
//! error.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encodings::numeral_term;
use crate::syntax::{subst_term, subst_type_in_term, term_eq, Proj, Term, Value};

/// How a single step rewrites: an unfold-fold contraction (case of an
/// injection), a resolution of `?` to the numeral `n`, or any of the
/// remaining deterministic contractions (beta, projection, type beta).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Other,
    UnfoldFold,
    Choice(u64),
}

impl StepKind {
    pub fn is_unfold(self) -> bool {
        matches!(self, StepKind::UnfoldFold)
    }

    pub fn is_choice(self) -> bool {
        matches!(self, StepKind::Choice(_))
    }
}

/// One reduction step, with the full source and target terms so that traces
/// are replayable and checkable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub source: Term,
    pub target: Term,
    pub kind: StepKind,
}

/// All one-step successors of a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Successors {
    /// The term is a value; no steps.
    Value,
    /// Exactly one successor.
    Deterministic(Step),
    /// The redex is `?`: one step per numeral `0 ..= bound`. The real fanout
    /// is infinite, so this listing is always a truncation.
    ChoiceFanout {
        steps: Vec<Step>,
        truncated: bool,
        bound: u64,
    },
}

fn stuck(e: &Term, why: &str) -> ! {
    panic!("stuck non-value term ({why}); impossible for well-typed closed terms: {e:?}")
}

/// Compute the one-step successors of a closed well-typed term, truncating
/// the choice fanout at `choice_bound`.
pub fn step_successors(e: &Term, choice_bound: u64) -> Successors {
    match e {
        Term::Val(_) => Successors::Value,
        Term::Choice => {
            let steps = (0..=choice_bound)
                .map(|n| Step {
                    source: e.clone(),
                    target: numeral_term(n),
                    kind: StepKind::Choice(n),
                })
                .collect();
            Successors::ChoiceFanout {
                steps,
                truncated: true,
                bound: choice_bound,
            }
        }
        Term::Proj { which, of } => match &**of {
            Value::Pair(a, b) => {
                let target = Term::Val(match which {
                    Proj::Fst => (**a).clone(),
                    Proj::Snd => (**b).clone(),
                });
                deterministic(e, target, StepKind::Other)
            }
            _ => stuck(e, "projection of a non-pair"),
        },
        Term::App { head, arg } => match &**arg {
            Term::Val(v) => match &**head {
                Value::Lam { body, .. } => {
                    deterministic(e, subst_term(body, v), StepKind::Other)
                }
                _ => stuck(e, "application of a non-function"),
            },
            _ => {
                // Congruence: the redex is inside the argument; rebuild each
                // successor under this frame.
                let wrap = |s: Step| Step {
                    source: e.clone(),
                    target: Term::App {
                        head: head.clone(),
                        arg: std::sync::Arc::new(s.target),
                    },
                    kind: s.kind,
                };
                match step_successors(arg, choice_bound) {
                    Successors::Value => unreachable!("non-value argument"),
                    Successors::Deterministic(s) => Successors::Deterministic(wrap(s)),
                    Successors::ChoiceFanout {
                        steps,
                        truncated,
                        bound,
                    } => Successors::ChoiceFanout {
                        steps: steps.into_iter().map(wrap).collect(),
                        truncated,
                        bound,
                    },
                }
            }
        },
        Term::Case {
            scrutinee,
            branches,
        } => match &**scrutinee {
            Value::Inj { arm, payload, .. } => {
                let branch = branches
                    .get(arm - 1)
                    .unwrap_or_else(|| stuck(e, "case arm out of range"));
                deterministic(e, subst_term(branch, payload), StepKind::UnfoldFold)
            }
            _ => stuck(e, "case of a non-injection"),
        },
        Term::TyApp { head, ty } => match &**head {
            Value::TyLam(body) => {
                deterministic(e, subst_type_in_term(body, ty), StepKind::Other)
            }
            _ => stuck(e, "type application of a non-type-lambda"),
        },
    }
}

fn deterministic(source: &Term, target: Term, kind: StepKind) -> Successors {
    Successors::Deterministic(Step {
        source: source.clone(),
        target,
        kind,
    })
}

/// How a trace resolves choice redexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// Always pick the same numeral.
    Fixed(u64),
    /// Pick uniformly from `0 ..= bound` with a seeded generator, so runs
    /// are reproducible.
    Random { seed: u64, bound: u64 },
    /// Prompt on stdin for each choice.
    Ask,
}

/// Why a trace stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEnd {
    Value,
    FuelExhausted,
}

/// A single reduction path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub end: Term,
    pub ended: TraceEnd,
}

/// Follow one reduction path for at most `fuel` steps, resolving each choice
/// with `policy`.
pub fn trace(e: &Term, fuel: usize, policy: &ChoicePolicy) -> Trace {
    let mut rng = match policy {
        ChoicePolicy::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let mut cur = e.clone();
    for _ in 0..fuel {
        // Resolve the next step. For a choice we re-derive the fanout at
        // exactly the chosen numeral so any natural is pickable, not just
        // those under some fixed bound.
        let step = match step_successors(&cur, 0) {
            Successors::Value => {
                return Trace {
                    steps,
                    end: cur,
                    ended: TraceEnd::Value,
                }
            }
            Successors::Deterministic(s) => s,
            Successors::ChoiceFanout { .. } => {
                let n = match policy {
                    ChoicePolicy::Fixed(n) => *n,
                    ChoicePolicy::Random { bound, .. } => {
                        rng.as_mut().expect("rng initialized").gen_range(0..=*bound)
                    }
                    ChoicePolicy::Ask => ask_for_numeral(steps.len()),
                };
                match step_successors(&cur, n) {
                    Successors::ChoiceFanout { mut steps, .. } => {
                        steps.pop().expect("fanout holds 0..=n")
                    }
                    _ => unreachable!("choice redex cannot change shape"),
                }
            }
        };
        cur = step.target.clone();
        steps.push(step);
    }
    Trace {
        steps,
        end: cur,
        ended: TraceEnd::FuelExhausted,
    }
}

fn ask_for_numeral(step_index: usize) -> u64 {
    use std::io::{BufRead, Write};
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout();
    loop {
        write!(stdout, "choice at step {step_index}: enter a natural> ").ok();
        stdout.flush().ok();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).unwrap_or(0) == 0 {
            // End of input: fall back to 0 rather than hanging.
            return 0;
        }
        match line.trim().parse::<u64>() {
            Ok(n) => return n,
            Err(_) => {
                writeln!(stdout, "not a natural, try again").ok();
            }
        }
    }
}

/// Summary of a reduction path's step kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    pub unfold_count: usize,
    pub choice_count: usize,
    /// No choice steps at all.
    pub pure: bool,
    /// No unfold-fold steps at all.
    pub zero_unfold: bool,
}

/// A path whose steps fail to chain (some step's target is not the next
/// step's source).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("steps do not chain at index {at}")]
pub struct BrokenPath {
    pub at: usize,
}

/// Classify a chained sequence of steps by its unfold and choice counts.
pub fn classify_path(steps: &[Step]) -> Result<PathClass, BrokenPath> {
    for (i, pair) in steps.windows(2).enumerate() {
        if !term_eq(&pair[0].target, &pair[1].source) {
            return Err(BrokenPath { at: i });
        }
    }
    let unfold_count = steps.iter().filter(|s| s.kind.is_unfold()).count();
    let choice_count = steps.iter().filter(|s| s.kind.is_choice()).count();
    Ok(PathClass {
        unfold_count,
        choice_count,
        pure: choice_count == 0,
        zero_unfold: unfold_count == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::*;
    use crate::syntax::Type;

    fn expect_det(e: &Term) -> Step {
        match step_successors(e, 8) {
            Successors::Deterministic(s) => s,
            other => panic!("expected a deterministic step, got {other:?}"),
        }
    }

    #[test]
    fn beta_projection_and_type_beta_are_plain_steps() {
        let beta = Term::app(id_value(nat()), numeral_term(3));
        let s = expect_det(&beta);
        assert_eq!(s.target, numeral_term(3));
        assert_eq!(s.kind, StepKind::Other);

        let proj = Term::proj(crate::syntax::Proj::Snd, Value::pair(tt(), ff()));
        let s = expect_det(&proj);
        assert_eq!(s.target, Term::Val(ff()));
        assert_eq!(s.kind, StepKind::Other);

        let tybeta = Term::ty_app(
            Value::ty_lam(Term::Val(id_value(Type::Var(0)))),
            nat(),
        );
        let s = expect_det(&tybeta);
        assert_eq!(s.target, Term::Val(id_value(nat())));
        assert_eq!(s.kind, StepKind::Other);
    }

    #[test]
    fn case_of_injection_is_the_only_unfold() {
        // Predecessor: case 2 of in1 _ => 0 | in2 y => y.
        let e = Term::case(
            numeral(2),
            vec![numeral_term(0), Term::Val(Value::Var(0))],
        );
        let s = expect_det(&e);
        assert_eq!(s.target, numeral_term(1));
        assert_eq!(s.kind, StepKind::UnfoldFold);
    }

    #[test]
    fn choice_fans_out_to_each_numeral() {
        match step_successors(&Term::Choice, 3) {
            Successors::ChoiceFanout {
                steps,
                truncated,
                bound,
            } => {
                assert!(truncated);
                assert_eq!(bound, 3);
                assert_eq!(steps.len(), 4);
                for (n, s) in steps.iter().enumerate() {
                    assert_eq!(s.kind, StepKind::Choice(n as u64));
                    assert_eq!(s.target, numeral_term(n as u64));
                }
            }
            other => panic!("expected fanout, got {other:?}"),
        }
    }

    #[test]
    fn congruence_steps_inside_the_argument() {
        // (fun x : nat => x) ((fun y : nat => y) 0): the inner beta fires
        // first, under the outer frame.
        let inner = Term::app(id_value(nat()), numeral_term(0));
        let e = Term::app(id_value(nat()), inner);
        let s = expect_det(&e);
        assert_eq!(s.source, e);
        assert_eq!(s.target, Term::app(id_value(nat()), numeral_term(0)));
        assert_eq!(s.kind, StepKind::Other);
    }

    #[test]
    fn or_steps_through_choice_then_case() {
        let e = or_term(numeral_term(0), numeral_term(1));
        let fan = match step_successors(&e, 2) {
            Successors::ChoiceFanout { steps, .. } => steps,
            other => panic!("expected fanout, got {other:?}"),
        };
        assert_eq!(fan.len(), 3);
        // Picking 0 leads to the left operand, anything else to the right.
        let t0 = trace(&fan[0].target, 10, &ChoicePolicy::Fixed(0));
        assert_eq!(t0.end, numeral_term(0));
        let t2 = trace(&fan[2].target, 10, &ChoicePolicy::Fixed(0));
        assert_eq!(t2.end, numeral_term(1));
    }

    #[test]
    fn traces_respect_the_fixed_policy() {
        let e = or_term(numeral_term(0), numeral_term(1));
        let t = trace(&e, 20, &ChoicePolicy::Fixed(0));
        assert_eq!(t.ended, TraceEnd::Value);
        assert_eq!(t.end, numeral_term(0));
        let c = classify_path(&t.steps).unwrap();
        assert_eq!(c.choice_count, 1);
        assert_eq!(c.unfold_count, 1);
        assert!(!c.pure);
        assert!(!c.zero_unfold);

        let t = trace(&e, 20, &ChoicePolicy::Fixed(5));
        assert_eq!(t.end, numeral_term(1));
    }

    #[test]
    fn random_traces_are_reproducible() {
        let e = or_term(or_term(numeral_term(0), numeral_term(1)), numeral_term(2));
        let p = ChoicePolicy::Random { seed: 42, bound: 8 };
        let a = trace(&e, 50, &p);
        let b = trace(&e, 50, &p);
        assert_eq!(a, b);
        assert_eq!(a.ended, TraceEnd::Value);
    }

    #[test]
    fn diverging_terms_exhaust_fuel_purely() {
        let t = trace(&omega_at(Type::Unit), 50, &ChoicePolicy::Fixed(0));
        assert_eq!(t.ended, TraceEnd::FuelExhausted);
        assert_eq!(t.steps.len(), 50);
        let c = classify_path(&t.steps).unwrap();
        assert!(c.pure);
        // The loop unfolds steadily: plenty of unfold steps in 50.
        assert!(c.unfold_count >= 5);
    }

    #[test]
    fn classify_rejects_broken_chains() {
        let e = Term::app(id_value(nat()), numeral_term(0));
        let s1 = expect_det(&e);
        let s2 = expect_det(&Term::app(id_value(nat()), numeral_term(1)));
        let err = classify_path(&[s1, s2]).unwrap_err();
        assert_eq!(err.at, 0);
    }

    #[test]
    fn fix_applied_unfolds_purely_to_a_value() {
        // let g = fix[nat] in let h = g[nat] in h (fun k => fun x => x):
        // instantiating the combinator and feeding it a functional reaches a
        // lambda value without choices.
        let f = Value::lam(
            Type::arrow(nat(), nat()),
            Term::Val(Value::lam(nat(), Term::Val(Value::Var(0)))),
        );
        let inst = let_in(
            Term::ty_app(fix_value(), nat()),
            let_in(
                Term::ty_app(Value::Var(0), nat()),
                Term::app(Value::Var(0), Term::Val(f)),
            ),
        );
        let t = trace(&inst, 100, &ChoicePolicy::Fixed(0));
        assert_eq!(t.ended, TraceEnd::Value);
        let c = classify_path(&t.steps).unwrap();
        assert!(c.pure);
    }
}
