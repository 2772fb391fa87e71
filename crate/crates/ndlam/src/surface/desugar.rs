//! Name resolution and sugar expansion: source trees to core terms.

use super::parser::{parse_term, parse_term_with_hole, SourceTerm, SourceType};
use super::SourceError;
use crate::encodings::{
    bool_value, cond, fix_value, let_in, letapp, numeral_term, omega_at, or_term,
};
use crate::syntax::{shift_term, shift_value, EvalContext, Term, Type, Value};
use thiserror::Error;

/// A failure while turning a parsed tree into a core term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesugarError {
    #[error("unbound name `{name}` at byte {offset}")]
    UnboundName { name: String, offset: usize },
    #[error("unbound type variable `'{name}` at byte {offset}")]
    UnboundTypeName { name: String, offset: usize },
    #[error("injection at byte {offset} needs a type annotation, like `in2[mu 'a. unit + 'a] x`")]
    InjectionNeedsAnnotation { offset: usize },
    #[error("case branches at byte {offset} must be tagged in1, in2, … in order, one per arm")]
    ArmsNotSequential { offset: usize },
    #[error("hole `[]` at byte {offset} is only meaningful in an evaluation context")]
    HoleOutsideContext { offset: usize },
    #[error("not an evaluation context: {reason}")]
    ContextShape { reason: String },
}

#[derive(Default)]
struct Scope {
    terms: Vec<String>,
    types: Vec<String>,
}

impl Scope {
    fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().rev().position(|n| n == name)
    }
}

fn go_type(st: &SourceType, types: &mut Vec<String>) -> Result<Type, DesugarError> {
    match st {
        SourceType::Var(name, offset) => {
            let depth_from_top = types
                .iter()
                .rev()
                .position(|n| n == name)
                .ok_or(DesugarError::UnboundTypeName {
                    name: name.clone(),
                    offset: *offset,
                })?;
            Ok(Type::Var(depth_from_top))
        }
        SourceType::Unit => Ok(Type::Unit),
        SourceType::Prod(a, b) => Ok(Type::prod(go_type(a, types)?, go_type(b, types)?)),
        SourceType::Arrow(a, b) => Ok(Type::arrow(go_type(a, types)?, go_type(b, types)?)),
        SourceType::Mu { name, arms } => {
            types.push(name.clone());
            let out: Result<Vec<_>, _> = arms.iter().map(|a| go_type(a, types)).collect();
            types.pop();
            Ok(Type::rec(out?))
        }
        SourceType::All { name, body } => {
            types.push(name.clone());
            let out = go_type(body, types);
            types.pop();
            Ok(Type::forall(out?))
        }
    }
}

/// Sequence a desugared subterm into value position: if it already is a
/// value, hand it to `build` directly; otherwise bind it with a `let`
/// and hand `build` the bound variable. `build` receives the value and
/// how many binders were inserted above the surrounding scope (0 or 1).
fn into_value(d: Term, build: impl FnOnce(Value, usize) -> Term) -> Term {
    match d.as_value() {
        Some(v) => build(v.clone(), 0),
        None => let_in(d, build(Value::Var(0), 1)),
    }
}

fn go(src: &SourceTerm, sc: &mut Scope) -> Result<Term, DesugarError> {
    match src {
        SourceTerm::Var(name, offset) => match sc.term_index(name) {
            Some(i) => Ok(Term::Val(Value::Var(i))),
            None => Err(DesugarError::UnboundName {
                name: name.clone(),
                offset: *offset,
            }),
        },
        SourceTerm::Unit => Ok(Term::Val(Value::Unit)),
        SourceTerm::Pair(a, b) => {
            let da = go(a, sc)?;
            let db = go(b, sc)?;
            // Evaluate left to right, binding whichever components are
            // not yet values.
            Ok(match (da.as_value(), db.as_value()) {
                (Some(va), Some(vb)) => Term::Val(Value::pair(va.clone(), vb.clone())),
                (Some(va), None) => {
                    let va = shift_value(va, 1, 0);
                    let_in(db, Term::Val(Value::pair(va, Value::Var(0))))
                }
                (None, Some(vb)) => {
                    let vb = shift_value(vb, 1, 0);
                    let_in(da, Term::Val(Value::pair(Value::Var(0), vb)))
                }
                (None, None) => let_in(
                    da,
                    let_in(
                        shift_term(&db, 1, 0),
                        Term::Val(Value::pair(Value::Var(1), Value::Var(0))),
                    ),
                ),
            })
        }
        SourceTerm::Fun { name, ann, body } => {
            let domain = match ann {
                Some(t) => Some(go_type(t, &mut sc.types)?),
                None => None,
            };
            sc.terms.push(name.clone());
            let db = go(body, sc);
            sc.terms.pop();
            let db = db?;
            Ok(Term::Val(match domain {
                Some(t) => Value::lam(t, db),
                None => Value::lam_unann(db),
            }))
        }
        SourceTerm::TyFun { name, body } => {
            sc.types.push(name.clone());
            let db = go(body, sc);
            sc.types.pop();
            Ok(Term::Val(Value::ty_lam(db?)))
        }
        SourceTerm::Let { name, bound, body } => {
            let dbound = go(bound, sc)?;
            sc.terms.push(name.clone());
            let dbody = go(body, sc);
            sc.terms.pop();
            Ok(let_in(dbound, dbody?))
        }
        SourceTerm::If {
            scrut, then, els, ..
        } => {
            let ds = go(scrut, sc)?;
            let dt = go(then, sc)?;
            let de = go(els, sc)?;
            Ok(cond(ds, dt, de))
        }
        SourceTerm::Case { scrut, arms } => {
            for (i, arm) in arms.iter().enumerate() {
                if arm.tag != i + 1 {
                    return Err(DesugarError::ArmsNotSequential { offset: arm.offset });
                }
            }
            let ds = go(scrut, sc)?;
            let mut branches = Vec::with_capacity(arms.len());
            for arm in arms {
                sc.terms.push(arm.name.clone());
                let db = go(&arm.body, sc);
                sc.terms.pop();
                branches.push(db?);
            }
            Ok(match ds.as_value() {
                Some(v) => Term::case(v.clone(), branches),
                None => {
                    // Binding the scrutinee inserts one binder between
                    // each branch body and its surroundings; the branch's
                    // own payload variable (index 0) stays put.
                    let branches = branches.iter().map(|b| shift_term(b, 1, 1)).collect();
                    let_in(ds, Term::case(Value::Var(0), branches))
                }
            })
        }
        SourceTerm::Or(a, b) => Ok(or_term(go(a, sc)?, go(b, sc)?)),
        SourceTerm::App(f, a) => {
            let df = go(f, sc)?;
            let da = go(a, sc)?;
            Ok(match df.as_value() {
                Some(vf) => Term::app(vf.clone(), da),
                None => letapp(df, da),
            })
        }
        SourceTerm::Proj { which, of } => {
            let d = go(of, sc)?;
            Ok(into_value(d, |v, _| Term::proj(*which, v)))
        }
        SourceTerm::Inj {
            arm,
            annot,
            payload,
            offset,
        } => {
            let ty = match annot {
                Some(t) => go_type(t, &mut sc.types)?,
                None => return Err(DesugarError::InjectionNeedsAnnotation { offset: *offset }),
            };
            let d = go(payload, sc)?;
            let arm = *arm;
            Ok(into_value(d, move |v, _| {
                Term::Val(Value::inj(arm, v, ty))
            }))
        }
        SourceTerm::TyApp(head, ty) => {
            let ty = go_type(ty, &mut sc.types)?;
            let d = go(head, sc)?;
            Ok(into_value(d, move |v, _| Term::ty_app(v, ty)))
        }
        SourceTerm::Choice => Ok(Term::Choice),
        SourceTerm::Numeral(n) => Ok(numeral_term(*n)),
        SourceTerm::True => Ok(Term::Val(bool_value(true))),
        SourceTerm::False => Ok(Term::Val(bool_value(false))),
        SourceTerm::Fix => Ok(Term::Val(fix_value())),
        SourceTerm::Omega(t) => {
            let ty = go_type(t, &mut sc.types)?;
            Ok(omega_at(ty))
        }
        SourceTerm::Hole(offset) => Err(DesugarError::HoleOutsideContext { offset: *offset }),
    }
}

/// Resolve names and expand sugar, producing a core term. The input is
/// treated as closed: any free name is an error.
pub fn desugar(src: &SourceTerm) -> Result<Term, DesugarError> {
    go(src, &mut Scope::default())
}

/// Resolve a closed source type.
pub fn desugar_type(st: &SourceType) -> Result<Type, DesugarError> {
    go_type(st, &mut Vec::new())
}

/// Parse and desugar in one step.
pub fn term_from_source(src: &str) -> Result<Term, SourceError> {
    let parsed = parse_term(src)?;
    Ok(desugar(&parsed)?)
}

fn collect_frames(src: &SourceTerm, frames: &mut Vec<Value>) -> Result<(), DesugarError> {
    match src {
        SourceTerm::Hole(_) => Ok(()),
        SourceTerm::App(f, a) => {
            let df = go(f, &mut Scope::default())?;
            let Some(vf) = df.as_value() else {
                return Err(DesugarError::ContextShape {
                    reason: "each frame applied to the hole must be a value".to_string(),
                });
            };
            collect_frames(a, frames)?;
            frames.push(vf.clone());
            Ok(())
        }
        _ => Err(DesugarError::ContextShape {
            reason: "write a hole under nested applications, like `f (g [])`".to_string(),
        }),
    }
}

/// Parse an evaluation context: a `[]` hole under zero or more nested
/// applications whose function positions are closed values, e.g.
/// `(fun x => x) (f [])`.
pub fn parse_context(src: &str) -> Result<EvalContext, SourceError> {
    let parsed = parse_term_with_hole(src)?;
    let mut frames = Vec::new();
    collect_frames(&parsed, &mut frames)?;
    Ok(EvalContext { frames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{ctx_xor_twice, nat, numeral, omega_value};
    use crate::syntax::{plug, term_eq, type_eq, Proj};
    use crate::typing::infer_closed;

    fn t(src: &str) -> Term {
        term_from_source(src).unwrap()
    }

    #[test]
    fn names_resolve_to_indices() {
        assert_eq!(
            t("fun x => fun y => x"),
            Term::Val(Value::lam_unann(Term::Val(Value::lam_unann(Term::Val(
                Value::Var(1)
            )))))
        );
    }

    #[test]
    fn shadowing_rebinds_the_nearer_binder() {
        assert_eq!(
            t("fun x => fun x => x"),
            Term::Val(Value::lam_unann(Term::Val(Value::lam_unann(Term::Val(
                Value::Var(0)
            )))))
        );
    }

    #[test]
    fn unbound_names_are_reported_with_offsets() {
        let err = term_from_source("fun x => y").unwrap_err();
        assert_eq!(
            err,
            SourceError::Desugar(DesugarError::UnboundName {
                name: "y".into(),
                offset: 9
            })
        );
    }

    #[test]
    fn type_names_resolve_independently_of_term_names() {
        let e = t("Lam 'a => fun a : 'a => a");
        let Term::Val(Value::TyLam(body)) = e else {
            panic!("expected type abstraction")
        };
        let Term::Val(Value::Lam { domain, body }) = body.as_ref() else {
            panic!("expected lambda")
        };
        assert!(type_eq(domain.as_ref().unwrap(), &Type::Var(0)));
        assert!(term_eq(body, &Term::Val(Value::Var(0))));
    }

    #[test]
    fn numerals_and_booleans_expand_to_tagged_values() {
        assert_eq!(t("3"), Term::Val(numeral(3)));
        assert_eq!(t("true"), Term::Val(bool_value(true)));
        let ty = infer_closed(&t("7")).unwrap();
        assert!(type_eq(&ty, &nat()));
    }

    #[test]
    fn let_expands_to_application_of_an_unannotated_lambda() {
        assert_eq!(
            t("let x = ? in x"),
            Term::app(Value::lam_unann(Term::Val(Value::Var(0))), Term::Choice)
        );
    }

    #[test]
    fn nonvalue_pair_components_are_sequenced_left_to_right() {
        // Both components are non-values, so the pair becomes two lets.
        let open = |s: &str| {
            let parsed = parse_term(&format!("fun p => {s}")).unwrap();
            desugar(&parsed).unwrap()
        };
        assert_eq!(
            open("(proj1 p, proj2 p)"),
            open("let a = proj1 p in let b = proj2 p in (a, b)")
        );
    }

    #[test]
    fn applications_with_nonvalue_heads_bind_the_head_first() {
        let open = |s: &str| {
            let parsed = parse_term(&format!("fun f => fun x => {s}")).unwrap();
            desugar(&parsed).unwrap()
        };
        assert_eq!(open("(f x) x"), open("let g = f x in g x"));
    }

    #[test]
    fn case_with_nonvalue_scrutinee_binds_it_without_capturing_payloads() {
        let open = |s: &str| {
            let parsed = parse_term(&format!("fun f => {s}")).unwrap();
            desugar(&parsed).unwrap()
        };
        let direct = open("case f () of in1 x => x | in2 y => f y");
        let via_let = open("let s = f () in case s of in1 x => x | in2 y => f y");
        assert_eq!(direct, via_let);
    }

    #[test]
    fn out_of_order_case_arms_are_rejected() {
        let parsed = parse_term("case x of in2 a => a | in1 b => b");
        let err = desugar(&parsed.unwrap()).unwrap_err();
        assert!(matches!(err, DesugarError::ArmsNotSequential { .. }));
    }

    #[test]
    fn injections_require_annotations() {
        let parsed = parse_term("in1 ()").unwrap();
        assert!(matches!(
            desugar(&parsed),
            Err(DesugarError::InjectionNeedsAnnotation { .. })
        ));
    }

    #[test]
    fn fix_and_omega_expand_to_the_canonical_values() {
        assert_eq!(t("fix"), Term::Val(fix_value()));
        assert_eq!(t("omega[unit]"), omega_at(Type::Unit));
        let spelled = t("Lam 'a => let g = fix[unit] in let h = g['a] in \
                         let k = h (fun f : unit -> 'a => f) in k ()");
        assert_eq!(spelled, Term::Val(omega_value()));
    }

    #[test]
    fn ifz_scrutinizes_a_numeral() {
        let e = t("ifz 0 then 1 else 2");
        let ty = infer_closed(&e).unwrap();
        assert!(type_eq(&ty, &nat()));
    }

    #[test]
    fn if_scrutinizes_a_boolean() {
        let e = t("if true then 1 else 2");
        assert!(type_eq(&infer_closed(&e).unwrap(), &nat()));
    }

    #[test]
    fn projection_sugar_produces_projection_terms() {
        let e = t("proj2 (fun x => x, ())");
        assert!(matches!(e, Term::Proj { which: Proj::Snd, .. }));
    }

    #[test]
    fn contexts_parse_into_frames_innermost_first() {
        let ctx = parse_context("(fun b => b) ((fun x => x) [])").unwrap();
        assert_eq!(ctx.depth(), 2);
        let plugged = plug(&ctx, &Term::Choice);
        let direct = t("(fun b => b) ((fun x => x) ?)");
        assert_eq!(plugged, direct);
    }

    #[test]
    fn bare_hole_is_the_empty_context() {
        let ctx = parse_context("[]").unwrap();
        assert_eq!(ctx.depth(), 0);
    }

    #[test]
    fn nonspine_holes_are_rejected() {
        assert!(matches!(
            parse_context("(fun x => x) ([], ())"),
            Err(SourceError::Desugar(DesugarError::ContextShape { .. }))
        ));
        assert!(matches!(
            parse_context("proj1 []"),
            Err(SourceError::Desugar(DesugarError::ContextShape { .. }))
        ));
    }

    #[test]
    fn single_value_frames_parse_to_singleton_contexts() {
        let ctx = parse_context("(fun x => ifz x then 0 else 1) []").unwrap();
        assert_eq!(ctx.depth(), 1);
        assert_eq!(ctx_xor_twice().depth(), 1);
    }
}
