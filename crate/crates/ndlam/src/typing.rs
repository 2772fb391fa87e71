//! Type synthesis for closed and open terms, evaluation-context checking,
//! and canonical-form classification.
//!
//! Synthesis is annotation-driven: every type is computed, never guessed.
//! The one deliberate wrinkle is lambdas without a domain annotation: they
//! synthesize only in the head position of an application, where the
//! argument's type supplies the domain. That is exactly the shape `let`
//! sugar produces, so `let x = e in b` types without annotating x while a
//! bare `fun x => x` is rejected with [`TypeErrorKind::LambdaNeedsAnnotation`].

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::encodings::nat;
use crate::syntax::{
    subst_type_in_type, shift_type, type_closed_at, EvalContext, Proj, Term, Type, Value,
};

/// Typing environment: the number of type variables in scope and a stack of
/// term-variable types (last entry is de Bruijn index 0).
///
/// Each entry remembers the type-binder depth at which it was pushed, so a
/// lookup that happens under later type lambdas can shift the stored type's
/// free type variables to the lookup site's depth.
#[derive(Debug, Clone, Default)]
pub struct TypeEnv {
    ty_depth: usize,
    vars: Vec<(Arc<Type>, usize)>,
}

impl TypeEnv {
    pub fn new() -> TypeEnv {
        TypeEnv::default()
    }

    pub fn ty_depth(&self) -> usize {
        self.ty_depth
    }

    pub fn push_term(&mut self, ty: Type) {
        self.vars.push((Arc::new(ty), self.ty_depth));
    }

    pub fn pop_term(&mut self) {
        self.vars.pop().expect("unbalanced term-variable stack");
    }

    pub fn push_ty(&mut self) {
        self.ty_depth += 1;
    }

    pub fn pop_ty(&mut self) {
        assert!(self.ty_depth > 0, "unbalanced type-variable stack");
        self.ty_depth -= 1;
    }

    /// Type of term variable `index`, shifted to the current type depth.
    pub fn lookup(&self, index: usize) -> Option<Type> {
        let pos = self.vars.len().checked_sub(index + 1)?;
        let (ty, at_depth) = &self.vars[pos];
        Some(shift_type(ty, self.ty_depth - at_depth, 0))
    }
}

/// What went wrong, with the two types in play where a comparison failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeErrorKind {
    #[error("term variable {index} is not in scope")]
    UnboundVar { index: usize },
    #[error("type {ty} mentions a type variable that is not in scope")]
    TypeOutOfScope { ty: Type },
    #[error("unannotated lambda outside application-head position; annotate its domain")]
    LambdaNeedsAnnotation,
    #[error("projection expects a product operand, found {found}")]
    ProjectionOfNonProduct { found: Type },
    #[error("application head has type {found}, which is not an arrow")]
    HeadNotArrow { found: Type },
    #[error("argument has type {actual}, but the head expects {expected}")]
    ArgMismatch { expected: Type, actual: Type },
    #[error("injection annotation {annot} is not a recursive sum")]
    AnnotationNotRecSum { annot: Type },
    #[error("injection arm {arm} is out of range for {annot}")]
    ArmOutOfRange { arm: usize, annot: Type },
    #[error("injection payload has type {actual}, but arm {arm} requires {expected}")]
    PayloadMismatch {
        arm: usize,
        expected: Type,
        actual: Type,
    },
    #[error("case scrutinee has type {found}, which is not a recursive sum")]
    ScrutineeNotRecSum { found: Type },
    #[error("case has {branches} branches but the scrutinee type has {arms} arms")]
    BranchCountMismatch { branches: usize, arms: usize },
    #[error("case branch {index} has type {actual}, but branch 0 has {expected}")]
    BranchTypesDiffer {
        index: usize,
        expected: Type,
        actual: Type,
    },
    #[error("type application head has type {found}, which is not universal")]
    HeadNotForall { found: Type },
    #[error("context frame has type {found}, which is not an arrow")]
    FrameNotArrow { found: Type },
    #[error("context frame expects {expected}, but the plugged type so far is {actual}")]
    FrameMismatch { expected: Type, actual: Type },
}

impl TypeErrorKind {
    /// Name of the typing rule the failure belongs to.
    pub fn rule(&self) -> &'static str {
        use TypeErrorKind::*;
        match self {
            UnboundVar { .. } => "variable",
            TypeOutOfScope { .. } => "type-scope",
            LambdaNeedsAnnotation => "lambda",
            ProjectionOfNonProduct { .. } => "projection",
            HeadNotArrow { .. } | ArgMismatch { .. } => "application",
            AnnotationNotRecSum { .. } | ArmOutOfRange { .. } | PayloadMismatch { .. } => {
                "injection"
            }
            ScrutineeNotRecSum { .. }
            | BranchCountMismatch { .. }
            | BranchTypesDiffer { .. } => "case",
            HeadNotForall { .. } => "type-application",
            FrameNotArrow { .. } | FrameMismatch { .. } => "context-frame",
        }
    }
}

/// A typing failure: which rule was violated, the types that disagree, and a
/// path to the offending subterm.
///
/// The path lists child indices from the root: an application's head is
/// child 0 and its argument child 1; a case's scrutinee is child 0 and
/// branch j child j+1; pairs number their components 0 and 1; every
/// single-child node (lambda body, injection payload, projection operand,
/// type-lambda body, type-application head) uses 0. For context checking the
/// first element is the frame index, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub path: Vec<usize>,
    pub kind: TypeErrorKind,
}

impl TypeError {
    fn here(kind: TypeErrorKind) -> TypeError {
        TypeError {
            path: Vec::new(),
            kind,
        }
    }

    fn inside(self, child: usize) -> TypeError {
        let mut e = self;
        e.path.push(child);
        e
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rule {}] at path {:?}: {}", self.kind.rule(), self.path, self.kind)
    }
}

impl std::error::Error for TypeError {}

fn at(child: usize) -> impl Fn(TypeError) -> TypeError {
    move |e| e.inside(child)
}

fn check_scope(ty: &Type, env: &TypeEnv) -> Result<(), TypeError> {
    if type_closed_at(ty, env.ty_depth) {
        Ok(())
    } else {
        Err(TypeError::here(TypeErrorKind::TypeOutOfScope {
            ty: ty.clone(),
        }))
    }
}

/// Synthesize the type of a term. See the module docs for the treatment of
/// unannotated lambdas.
pub fn infer(env: &TypeEnv, e: &Term) -> Result<Type, TypeError> {
    let mut env = env.clone();
    let mut err = infer_term(&mut env, e);
    if let Err(e) = &mut err {
        e.path.reverse();
    }
    err
}

/// Synthesize the type of a value.
pub fn infer_value(env: &TypeEnv, v: &Value) -> Result<Type, TypeError> {
    let mut env = env.clone();
    let mut err = infer_val(&mut env, v);
    if let Err(e) = &mut err {
        e.path.reverse();
    }
    err
}

/// Synthesize the type of a closed term under empty environments.
pub fn infer_closed(e: &Term) -> Result<Type, TypeError> {
    infer(&TypeEnv::new(), e)
}

fn infer_term(env: &mut TypeEnv, e: &Term) -> Result<Type, TypeError> {
    match e {
        Term::Val(v) => infer_val(env, v),
        Term::Choice => Ok(nat()),
        Term::Proj { which, of } => {
            let ty = infer_val(env, of).map_err(at(0))?;
            match ty {
                Type::Prod(a, b) => Ok(match which {
                    Proj::Fst => (*a).clone(),
                    Proj::Snd => (*b).clone(),
                }),
                found => Err(TypeError::here(TypeErrorKind::ProjectionOfNonProduct {
                    found,
                })),
            }
        }
        Term::App { head, arg } => {
            if let Value::Lam { domain: None, body } = &**head {
                // let-shaped redex: the argument's type is the domain.
                let arg_ty = infer_term(env, arg).map_err(at(1))?;
                env.push_term(arg_ty);
                let body_ty = infer_term(env, body);
                env.pop_term();
                body_ty.map_err(at(0)).map_err(at(0))
            } else {
                let head_ty = infer_val(env, head).map_err(at(0))?;
                match head_ty {
                    Type::Arrow(dom, cod) => {
                        let arg_ty = infer_term(env, arg).map_err(at(1))?;
                        if arg_ty == *dom {
                            Ok((*cod).clone())
                        } else {
                            Err(TypeError::here(TypeErrorKind::ArgMismatch {
                                expected: (*dom).clone(),
                                actual: arg_ty,
                            })
                            .inside(1))
                        }
                    }
                    found => {
                        Err(TypeError::here(TypeErrorKind::HeadNotArrow { found }).inside(0))
                    }
                }
            }
        }
        Term::Case {
            scrutinee,
            branches,
        } => {
            let scrut_ty = infer_val(env, scrutinee).map_err(at(0))?;
            let arms = match &scrut_ty {
                Type::Rec(arms) => arms.clone(),
                _ => {
                    return Err(TypeError::here(TypeErrorKind::ScrutineeNotRecSum {
                        found: scrut_ty,
                    })
                    .inside(0))
                }
            };
            if branches.len() != arms.len() {
                return Err(TypeError::here(TypeErrorKind::BranchCountMismatch {
                    branches: branches.len(),
                    arms: arms.len(),
                }));
            }
            let mut result: Option<Type> = None;
            for (j, branch) in branches.iter().enumerate() {
                let payload_ty = subst_type_in_type(&arms[j], &scrut_ty);
                env.push_term(payload_ty);
                let branch_ty = infer_term(env, branch);
                env.pop_term();
                let branch_ty = branch_ty.map_err(at(j + 1))?;
                match &result {
                    None => result = Some(branch_ty),
                    Some(expected) => {
                        if branch_ty != *expected {
                            return Err(TypeError::here(TypeErrorKind::BranchTypesDiffer {
                                index: j,
                                expected: expected.clone(),
                                actual: branch_ty,
                            })
                            .inside(j + 1));
                        }
                    }
                }
            }
            Ok(result.expect("recursive sums have at least one arm"))
        }
        Term::TyApp { head, ty } => {
            check_scope(ty, env)?;
            let head_ty = infer_val(env, head).map_err(at(0))?;
            match head_ty {
                Type::Forall(body) => Ok(subst_type_in_type(&body, ty)),
                found => Err(TypeError::here(TypeErrorKind::HeadNotForall { found }).inside(0)),
            }
        }
    }
}

fn infer_val(env: &mut TypeEnv, v: &Value) -> Result<Type, TypeError> {
    match v {
        Value::Var(i) => env
            .lookup(*i)
            .ok_or_else(|| TypeError::here(TypeErrorKind::UnboundVar { index: *i })),
        Value::Unit => Ok(Type::Unit),
        Value::Pair(a, b) => {
            let ta = infer_val(env, a).map_err(at(0))?;
            let tb = infer_val(env, b).map_err(at(1))?;
            Ok(Type::prod(ta, tb))
        }
        Value::Lam { domain, body } => match domain {
            Some(dom) => {
                check_scope(dom, env)?;
                env.push_term((**dom).clone());
                let body_ty = infer_term(env, body);
                env.pop_term();
                Ok(Type::arrow((**dom).clone(), body_ty.map_err(at(0))?))
            }
            None => Err(TypeError::here(TypeErrorKind::LambdaNeedsAnnotation)),
        },
        Value::Inj {
            arm,
            payload,
            annot,
        } => {
            check_scope(annot, env)?;
            let arms = match &**annot {
                Type::Rec(arms) => arms.clone(),
                _ => {
                    return Err(TypeError::here(TypeErrorKind::AnnotationNotRecSum {
                        annot: (**annot).clone(),
                    }))
                }
            };
            if *arm == 0 || *arm > arms.len() {
                return Err(TypeError::here(TypeErrorKind::ArmOutOfRange {
                    arm: *arm,
                    annot: (**annot).clone(),
                }));
            }
            let expected = subst_type_in_type(&arms[arm - 1], annot);
            let actual = infer_val(env, payload).map_err(at(0))?;
            if actual == expected {
                Ok((**annot).clone())
            } else {
                Err(TypeError::here(TypeErrorKind::PayloadMismatch {
                    arm: *arm,
                    expected,
                    actual,
                })
                .inside(0))
            }
        }
        Value::TyLam(body) => {
            env.push_ty();
            let body_ty = infer_term(env, body);
            env.pop_ty();
            Ok(Type::forall(body_ty.map_err(at(0))?))
        }
    }
}

/// Check an evaluation context against a hole type; returns the type of the
/// whole plugged term. Frames are checked innermost first, each must be a
/// closed arrow value, and each domain must match the type produced so far.
pub fn check_context(ctx: &EvalContext, hole: &Type) -> Result<Type, TypeError> {
    let env = TypeEnv::new();
    if !type_closed_at(hole, 0) {
        return Err(TypeError::here(TypeErrorKind::TypeOutOfScope {
            ty: hole.clone(),
        }));
    }
    let mut running = hole.clone();
    for (i, frame) in ctx.frames.iter().enumerate() {
        let frame_ty = infer_value(&env, frame).map_err(at_front(i))?;
        match frame_ty {
            Type::Arrow(dom, cod) => {
                if *dom == running {
                    running = (*cod).clone();
                } else {
                    return Err(TypeError {
                        path: vec![i],
                        kind: TypeErrorKind::FrameMismatch {
                            expected: (*dom).clone(),
                            actual: running,
                        },
                    });
                }
            }
            found => {
                return Err(TypeError {
                    path: vec![i],
                    kind: TypeErrorKind::FrameNotArrow { found },
                })
            }
        }
    }
    Ok(running)
}

fn at_front(i: usize) -> impl Fn(TypeError) -> TypeError {
    move |mut e| {
        e.path.insert(0, i);
        e
    }
}

/// Shape of a closed value, as the canonical-forms property classifies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalShape {
    Unit,
    Pair,
    Function,
    /// 1-based arm of the injection.
    Injection(usize),
    TypeAbstraction,
}

/// Classify a closed well-typed value by its outermost constructor and check
/// that the constructor agrees with the value's type. Callers must have
/// established `infer_value(v) == ty`; disagreement here is an internal
/// fault, not an input error.
pub fn canonical_form(v: &Value, ty: &Type) -> CanonicalShape {
    let shape = match v {
        Value::Unit => CanonicalShape::Unit,
        Value::Pair(_, _) => CanonicalShape::Pair,
        Value::Lam { .. } => CanonicalShape::Function,
        Value::Inj { arm, .. } => CanonicalShape::Injection(*arm),
        Value::TyLam(_) => CanonicalShape::TypeAbstraction,
        Value::Var(i) => panic!("canonical_form on open value: variable {i}"),
    };
    let agrees = matches!(
        (&shape, ty),
        (CanonicalShape::Unit, Type::Unit)
            | (CanonicalShape::Pair, Type::Prod(_, _))
            | (CanonicalShape::Function, Type::Arrow(_, _))
            | (CanonicalShape::Injection(_), Type::Rec(_))
            | (CanonicalShape::TypeAbstraction, Type::Forall(_))
    );
    assert!(
        agrees,
        "canonical_form: value constructor {shape:?} does not match type {ty:?}"
    );
    shape
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::*;
    use crate::syntax::{term_eq, EvalContext};

    fn ty_of(e: &Term) -> Type {
        infer_closed(e).expect("term should type")
    }

    fn err_of(e: &Term) -> TypeError {
        infer_closed(e).expect_err("term should be rejected")
    }

    #[test]
    fn base_values() {
        assert_eq!(ty_of(&Term::Val(Value::Unit)), Type::Unit);
        assert_eq!(ty_of(&Term::Choice), nat());
        assert_eq!(ty_of(&numeral_term(0)), nat());
        assert_eq!(ty_of(&numeral_term(7)), nat());
        assert_eq!(ty_of(&Term::Val(tt())), two());
        assert_eq!(ty_of(&Term::Val(ff())), two());
        assert_eq!(
            ty_of(&Term::Val(Value::pair(tt(), numeral(1)))),
            Type::prod(two(), nat())
        );
    }

    #[test]
    fn sugar_shapes_type() {
        // let x = 1 in x
        assert_eq!(
            ty_of(&let_in(numeral_term(1), Term::Val(Value::Var(0)))),
            nat()
        );
        // 0 or 1
        assert_eq!(ty_of(&or_term(numeral_term(0), numeral_term(1))), nat());
        // if true then 0 else 1 / ifz ? then true else false
        assert_eq!(
            ty_of(&cond(
                Term::Val(tt()),
                numeral_term(0),
                numeral_term(1)
            )),
            nat()
        );
        assert_eq!(
            ty_of(&cond(Term::Choice, Term::Val(tt()), Term::Val(ff()))),
            two()
        );
    }

    #[test]
    fn fix_has_its_famous_type() {
        let ab = Type::arrow(Type::Var(1), Type::Var(0));
        let expected = Type::forall(Type::forall(Type::arrow(
            Type::arrow(ab.clone(), ab.clone()),
            ab,
        )));
        assert_eq!(ty_of(&fix_term()), expected);
    }

    #[test]
    fn omega_inhabits_every_type() {
        assert_eq!(
            ty_of(&Term::Val(omega_value())),
            Type::forall(Type::Var(0))
        );
        assert_eq!(ty_of(&omega_at(two())), two());
        assert_eq!(ty_of(&omega_at(Type::Unit)), Type::Unit);
    }

    #[test]
    fn boolean_operators_and_choosers() {
        let bin = Type::arrow(two(), Type::arrow(two(), two()));
        assert_eq!(ty_of(&Term::Val(xor_value())), bin);
        assert_eq!(ty_of(&Term::Val(xnor_value())), bin);
        assert_eq!(ty_of(&Term::Val(chooser_per_call())), chooser_type());
        assert_eq!(ty_of(&chooser_once()), chooser_type());
    }

    #[test]
    fn discriminating_frames_check_as_contexts() {
        assert_eq!(
            check_context(&ctx_xor_twice(), &chooser_type()).unwrap(),
            two()
        );
        assert_eq!(
            check_context(&ctx_xnor_twice(), &chooser_type()).unwrap(),
            two()
        );
        assert_eq!(
            check_context(&EvalContext::hole(), &nat()).unwrap(),
            nat()
        );
    }

    #[test]
    fn structure_map_and_poly_values() {
        let t = wrap_type();
        let tt_ = Type::arrow(t.clone(), t.clone());
        assert_eq!(
            ty_of(&Term::Val(wrap_functional())),
            Type::arrow(tt_.clone(), tt_)
        );
        for v in [
            poly_diverge(),
            poly_diverge_applied(),
            poly_first(),
            poly_second(),
            poly_choose(),
            poly_choose_once(),
        ] {
            assert_eq!(ty_of(&Term::Val(v)), pair_chooser_type());
        }
        assert_eq!(
            ty_of(&Term::Val(poly_apply_frame())),
            Type::arrow(pair_chooser_type(), two())
        );
        assert_eq!(
            ty_of(&Term::Val(poly_frame(frame_xor_twice()))),
            Type::arrow(pair_chooser_type(), two())
        );
    }

    #[test]
    fn variable_types_shift_under_later_type_binders() {
        // Lam a => fun x : a => Lam b => fun y : b => x
        // : all a. a -> all b. b -> a
        let e = Term::Val(Value::ty_lam(Term::Val(Value::lam(
            Type::Var(0),
            Term::Val(Value::ty_lam(Term::Val(Value::lam(
                Type::Var(0),
                Term::Val(Value::Var(1)),
            )))),
        ))));
        let expected = Type::forall(Type::arrow(
            Type::Var(0),
            Type::forall(Type::arrow(Type::Var(0), Type::Var(1))),
        ));
        assert_eq!(ty_of(&e), expected);
    }

    #[test]
    fn let_typing_feeds_argument_type_to_the_body() {
        // let f = (fun n : nat => n) in f 3
        let e = let_in(
            Term::Val(id_value(nat())),
            Term::app(Value::Var(0), numeral_term(3)),
        );
        assert_eq!(ty_of(&e), nat());
    }

    #[test]
    fn unannotated_lambda_needs_head_position() {
        let bare = Term::Val(Value::lam_unann(Term::Val(Value::Var(0))));
        assert_eq!(err_of(&bare).kind, TypeErrorKind::LambdaNeedsAnnotation);

        // As an argument it is equally rejected.
        let as_arg = Term::app(id_value(Type::Unit), bare.clone());
        assert_eq!(
            err_of(&as_arg).kind,
            TypeErrorKind::LambdaNeedsAnnotation
        );
        assert_eq!(err_of(&as_arg).path, vec![1]);
    }

    #[test]
    fn rejection_catalogue() {
        // Projection of a non-pair.
        let e = Term::proj(Proj::Fst, numeral(2));
        assert!(matches!(
            err_of(&e).kind,
            TypeErrorKind::ProjectionOfNonProduct { .. }
        ));

        // Argument mismatch, located at the argument.
        let e = Term::app(id_value(nat()), Term::Val(tt()));
        let err = err_of(&e);
        assert!(matches!(err.kind, TypeErrorKind::ArgMismatch { .. }));
        assert_eq!(err.path, vec![1]);

        // Head not an arrow.
        let e = Term::app(numeral(0), numeral_term(0));
        assert!(matches!(err_of(&e).kind, TypeErrorKind::HeadNotArrow { .. }));

        // Case on a non-sum.
        let e = Term::case(Value::Unit, vec![numeral_term(0)]);
        assert!(matches!(
            err_of(&e).kind,
            TypeErrorKind::ScrutineeNotRecSum { .. }
        ));

        // Branch count mismatch.
        let e = Term::case(tt(), vec![numeral_term(0)]);
        assert!(matches!(
            err_of(&e).kind,
            TypeErrorKind::BranchCountMismatch { .. }
        ));

        // Branch types disagree.
        let e = Term::case(tt(), vec![numeral_term(0), Term::Val(ff())]);
        let err = err_of(&e);
        assert!(matches!(err.kind, TypeErrorKind::BranchTypesDiffer { .. }));
        assert_eq!(err.path, vec![2]);

        // Injection arm out of range.
        let e = Term::Val(Value::inj(3, Value::Unit, two()));
        assert!(matches!(err_of(&e).kind, TypeErrorKind::ArmOutOfRange { .. }));

        // Injection annotation must be a recursive sum.
        let e = Term::Val(Value::inj(1, Value::Unit, Type::Unit));
        assert!(matches!(
            err_of(&e).kind,
            TypeErrorKind::AnnotationNotRecSum { .. }
        ));

        // Injection payload at the wrong type.
        let e = Term::Val(Value::inj(1, tt(), nat()));
        assert!(matches!(
            err_of(&e).kind,
            TypeErrorKind::PayloadMismatch { .. }
        ));

        // Type application of a non-universal value.
        let e = Term::ty_app(numeral(0), nat());
        assert!(matches!(err_of(&e).kind, TypeErrorKind::HeadNotForall { .. }));

        // Unbound variable.
        let e = Term::Val(Value::Var(0));
        assert_eq!(err_of(&e).kind, TypeErrorKind::UnboundVar { index: 0 });

        // Out-of-scope type variable in an annotation.
        let e = Term::Val(Value::lam(Type::Var(0), Term::Val(Value::Var(0))));
        assert!(matches!(err_of(&e).kind, TypeErrorKind::TypeOutOfScope { .. }));
    }

    #[test]
    fn error_paths_descend_into_branches() {
        // case true of in1 _ => () | in2 _ => proj1 3: the fault is the
        // projection inside branch 2, i.e. path [2, ...].
        let e = Term::case(
            tt(),
            vec![
                Term::Val(Value::Unit),
                Term::proj(Proj::Fst, numeral(3)),
            ],
        );
        let err = err_of(&e);
        assert_eq!(err.path, vec![2]);
        assert!(matches!(
            err.kind,
            TypeErrorKind::ProjectionOfNonProduct { .. }
        ));
    }

    #[test]
    fn context_checking_reports_frame_indices() {
        // Innermost frame expects nat but the hole is 2.
        let ctx = EvalContext {
            frames: vec![id_value(nat()), id_value(nat())],
        };
        let err = check_context(&ctx, &two()).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert!(matches!(err.kind, TypeErrorKind::FrameMismatch { .. }));

        // Second frame rejects the first frame's output.
        let ctx = EvalContext {
            frames: vec![id_value(nat()), id_value(two())],
        };
        let err = check_context(&ctx, &nat()).unwrap_err();
        assert_eq!(err.path, vec![1]);
    }

    #[test]
    fn canonical_shapes() {
        assert_eq!(canonical_form(&Value::Unit, &Type::Unit), CanonicalShape::Unit);
        assert_eq!(
            canonical_form(&numeral(0), &nat()),
            CanonicalShape::Injection(1)
        );
        assert_eq!(
            canonical_form(&numeral(2), &nat()),
            CanonicalShape::Injection(2)
        );
        assert_eq!(
            canonical_form(&id_value(nat()), &Type::arrow(nat(), nat())),
            CanonicalShape::Function
        );
        assert_eq!(
            canonical_form(&omega_value(), &Type::forall(Type::Var(0))),
            CanonicalShape::TypeAbstraction
        );
        assert_eq!(
            canonical_form(
                &Value::pair(Value::Unit, Value::Unit),
                &Type::prod(Type::Unit, Type::Unit)
            ),
            CanonicalShape::Pair
        );
    }

    #[test]
    fn type_synthesis_is_deterministic_on_examples() {
        // Same term, same type, both paths through the public API.
        let e = let_in(Term::Choice, or_term(Term::Val(Value::Var(0)), numeral_term(0)));
        let t1 = ty_of(&e);
        let t2 = ty_of(&e);
        assert_eq!(t1, t2);
        assert!(term_eq(&e, &e));
    }
}
