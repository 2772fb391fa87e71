//! Nameless (de Bruijn) syntax for a call-by-value lambda calculus with a
//! countable-choice constant, n-ary recursive sums, and impredicative
//! polymorphism.
//!
//! Two independent index namespaces are in play: term variables (bound by
//! lambda bodies and case branches) and type variables (bound by `Rec`,
//! `Forall`, and type lambdas). Index 0 is always the innermost binder.
//! Structural equality on this representation *is* alpha-equivalence, so the
//! derived `PartialEq`/`Eq`/`Hash` are the semantic ones.
//!
//! Values and general terms are separate syntactic categories: elimination
//! forms (`App`, `Proj`, `Case`, `TyApp`) take value operands everywhere the
//! operational semantics requires a value, which makes "exactly one redex per
//! non-value term" a structural fact rather than a side condition.

use std::sync::Arc;

/// Types: variables, `unit`, products, arrows, n-ary recursive sums
/// `mu a. t1 + ... + tn`, and universal types `all a. t`.
///
/// `Rec` and `Forall` each bind one type variable. A `Rec` must have at
/// least one arm; the binder scopes over every arm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Var(usize),
    Unit,
    Prod(Arc<Type>, Arc<Type>),
    Arrow(Arc<Type>, Arc<Type>),
    Rec(Vec<Arc<Type>>),
    Forall(Arc<Type>),
}

impl Type {
    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Arc::new(a), Arc::new(b))
    }

    pub fn rec(arms: Vec<Type>) -> Type {
        assert!(!arms.is_empty(), "recursive sum needs at least one arm");
        Type::Rec(arms.into_iter().map(Arc::new).collect())
    }

    pub fn forall(body: Type) -> Type {
        Type::Forall(Arc::new(body))
    }
}

/// Which component a projection extracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Proj {
    Fst,
    Snd,
}

impl Proj {
    /// 1-based component index, matching the concrete syntax `proj1`/`proj2`.
    pub fn index(self) -> usize {
        match self {
            Proj::Fst => 1,
            Proj::Snd => 2,
        }
    }
}

/// Values: variables, unit, pairs of values, lambdas, injections into a
/// recursive sum, and type lambdas.
///
/// A lambda's domain annotation is optional. Unannotated lambdas only type
/// in the head position of an application (the shape `let` sugar desugars
/// to); everywhere else the checker demands an annotation.
///
/// An injection's `arm` is 1-based and its `annot` must be the full
/// recursive-sum type being injected into.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Var(usize),
    Unit,
    Pair(Arc<Value>, Arc<Value>),
    Lam {
        domain: Option<Arc<Type>>,
        body: Arc<Term>,
    },
    Inj {
        arm: usize,
        payload: Arc<Value>,
        annot: Arc<Type>,
    },
    TyLam(Arc<Term>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn lam(domain: Type, body: Term) -> Value {
        Value::Lam {
            domain: Some(Arc::new(domain)),
            body: Arc::new(body),
        }
    }

    /// Lambda without a domain annotation; types only as an application head.
    pub fn lam_unann(body: Term) -> Value {
        Value::Lam {
            domain: None,
            body: Arc::new(body),
        }
    }

    pub fn inj(arm: usize, payload: Value, annot: Type) -> Value {
        assert!(arm >= 1, "injection arms are 1-based");
        Value::Inj {
            arm,
            payload: Arc::new(payload),
            annot: Arc::new(annot),
        }
    }

    pub fn ty_lam(body: Term) -> Value {
        Value::TyLam(Arc::new(body))
    }
}

/// Terms: values plus the countable-choice constant `?`, projections,
/// applications, case analysis, and type application.
///
/// Elimination positions that the operational semantics requires to be
/// values (projection operand, application head, case scrutinee, type
/// application head) hold a `Value` directly; only an application's
/// *argument* may be an arbitrary term. Consequently every closed non-value
/// term has exactly one redex position, found by descending argument spines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Val(Value),
    /// The countable-choice constant `?`; steps to any numeral.
    Choice,
    Proj {
        which: Proj,
        of: Arc<Value>,
    },
    App {
        head: Arc<Value>,
        arg: Arc<Term>,
    },
    Case {
        scrutinee: Arc<Value>,
        /// One branch per arm of the scrutinee's recursive-sum type, in arm
        /// order; each branch binds the injection payload at index 0.
        branches: Vec<Arc<Term>>,
    },
    TyApp {
        head: Arc<Value>,
        ty: Arc<Type>,
    },
}

impl Term {
    pub fn proj(which: Proj, of: Value) -> Term {
        Term::Proj {
            which,
            of: Arc::new(of),
        }
    }

    pub fn app(head: Value, arg: Term) -> Term {
        Term::App {
            head: Arc::new(head),
            arg: Arc::new(arg),
        }
    }

    pub fn case(scrutinee: Value, branches: Vec<Term>) -> Term {
        Term::Case {
            scrutinee: Arc::new(scrutinee),
            branches: branches.into_iter().map(Arc::new).collect(),
        }
    }

    pub fn ty_app(head: Value, ty: Type) -> Term {
        Term::TyApp {
            head: Arc::new(head),
            ty: Arc::new(ty),
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Term::Val(_))
    }

    pub fn as_value(&self) -> Option<&Value> {
        match self {
            Term::Val(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Value> for Term {
    fn from(v: Value) -> Term {
        Term::Val(v)
    }
}

/// Alpha-equivalence of terms. With nameless syntax this is structural
/// equality; the named function exists so call sites say what they mean.
pub fn term_eq(a: &Term, b: &Term) -> bool {
    a == b
}

/// Alpha-equivalence of types.
pub fn type_eq(a: &Type, b: &Type) -> bool {
    a == b
}

// ---------------------------------------------------------------------------
// Shifting
// ---------------------------------------------------------------------------

/// Add `by` to every free type variable of `t` that is ≥ `cutoff`.
pub fn shift_type(t: &Type, by: usize, cutoff: usize) -> Type {
    if by == 0 {
        return t.clone();
    }
    match t {
        Type::Var(i) => {
            if *i >= cutoff {
                Type::Var(i + by)
            } else {
                Type::Var(*i)
            }
        }
        Type::Unit => Type::Unit,
        Type::Prod(a, b) => Type::prod(shift_type(a, by, cutoff), shift_type(b, by, cutoff)),
        Type::Arrow(a, b) => Type::arrow(shift_type(a, by, cutoff), shift_type(b, by, cutoff)),
        Type::Rec(arms) => Type::Rec(
            arms.iter()
                .map(|a| Arc::new(shift_type(a, by, cutoff + 1)))
                .collect(),
        ),
        Type::Forall(b) => Type::forall(shift_type(b, by, cutoff + 1)),
    }
}

/// Add `term_by` to free term variables ≥ `term_cut` and `ty_by` to free
/// type variables ≥ `ty_cut`, throughout a term.
fn shift_term_rec(e: &Term, term_by: usize, term_cut: usize, ty_by: usize, ty_cut: usize) -> Term {
    match e {
        Term::Val(v) => Term::Val(shift_value_rec(v, term_by, term_cut, ty_by, ty_cut)),
        Term::Choice => Term::Choice,
        Term::Proj { which, of } => Term::proj(
            *which,
            shift_value_rec(of, term_by, term_cut, ty_by, ty_cut),
        ),
        Term::App { head, arg } => Term::app(
            shift_value_rec(head, term_by, term_cut, ty_by, ty_cut),
            shift_term_rec(arg, term_by, term_cut, ty_by, ty_cut),
        ),
        Term::Case {
            scrutinee,
            branches,
        } => Term::Case {
            scrutinee: Arc::new(shift_value_rec(
                scrutinee, term_by, term_cut, ty_by, ty_cut,
            )),
            branches: branches
                .iter()
                .map(|b| Arc::new(shift_term_rec(b, term_by, term_cut + 1, ty_by, ty_cut)))
                .collect(),
        },
        Term::TyApp { head, ty } => Term::ty_app(
            shift_value_rec(head, term_by, term_cut, ty_by, ty_cut),
            shift_type(ty, ty_by, ty_cut),
        ),
    }
}

fn shift_value_rec(
    v: &Value,
    term_by: usize,
    term_cut: usize,
    ty_by: usize,
    ty_cut: usize,
) -> Value {
    match v {
        Value::Var(i) => {
            if *i >= term_cut {
                Value::Var(i + term_by)
            } else {
                Value::Var(*i)
            }
        }
        Value::Unit => Value::Unit,
        Value::Pair(a, b) => Value::pair(
            shift_value_rec(a, term_by, term_cut, ty_by, ty_cut),
            shift_value_rec(b, term_by, term_cut, ty_by, ty_cut),
        ),
        Value::Lam { domain, body } => Value::Lam {
            domain: domain
                .as_ref()
                .map(|d| Arc::new(shift_type(d, ty_by, ty_cut))),
            body: Arc::new(shift_term_rec(body, term_by, term_cut + 1, ty_by, ty_cut)),
        },
        Value::Inj {
            arm,
            payload,
            annot,
        } => Value::Inj {
            arm: *arm,
            payload: Arc::new(shift_value_rec(payload, term_by, term_cut, ty_by, ty_cut)),
            annot: Arc::new(shift_type(annot, ty_by, ty_cut)),
        },
        Value::TyLam(body) => Value::TyLam(Arc::new(shift_term_rec(
            body,
            term_by,
            term_cut,
            ty_by,
            ty_cut + 1,
        ))),
    }
}

/// Add `by` to every free term variable of `e` that is ≥ `cutoff`.
pub fn shift_term(e: &Term, by: usize, cutoff: usize) -> Term {
    if by == 0 {
        return e.clone();
    }
    shift_term_rec(e, by, cutoff, 0, 0)
}

/// Add `by` to every free term variable of `v` that is ≥ `cutoff`.
pub fn shift_value(v: &Value, by: usize, cutoff: usize) -> Value {
    if by == 0 {
        return v.clone();
    }
    shift_value_rec(v, by, cutoff, 0, 0)
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// Capture-avoiding substitution of value `v` for term variable 0 of `e`.
/// Remaining free term variables of `e` shift down by one.
///
/// `v` may itself be open: its free term and type variables are shifted past
/// whatever binders of `e` it lands under.
pub fn subst_term(e: &Term, v: &Value) -> Term {
    subst_term_rec(e, v, 0, 0)
}

fn subst_term_rec(e: &Term, v: &Value, term_depth: usize, ty_depth: usize) -> Term {
    match e {
        Term::Val(w) => Term::Val(subst_value_rec(w, v, term_depth, ty_depth)),
        Term::Choice => Term::Choice,
        Term::Proj { which, of } => {
            Term::proj(*which, subst_value_rec(of, v, term_depth, ty_depth))
        }
        Term::App { head, arg } => Term::app(
            subst_value_rec(head, v, term_depth, ty_depth),
            subst_term_rec(arg, v, term_depth, ty_depth),
        ),
        Term::Case {
            scrutinee,
            branches,
        } => Term::Case {
            scrutinee: Arc::new(subst_value_rec(scrutinee, v, term_depth, ty_depth)),
            branches: branches
                .iter()
                .map(|b| Arc::new(subst_term_rec(b, v, term_depth + 1, ty_depth)))
                .collect(),
        },
        Term::TyApp { head, ty } => Term::TyApp {
            head: Arc::new(subst_value_rec(head, v, term_depth, ty_depth)),
            ty: ty.clone(),
        },
    }
}

fn subst_value_rec(w: &Value, v: &Value, term_depth: usize, ty_depth: usize) -> Value {
    match w {
        Value::Var(i) => {
            use std::cmp::Ordering::*;
            match i.cmp(&term_depth) {
                Less => Value::Var(*i),
                Equal => shift_value_rec(v, term_depth, 0, ty_depth, 0),
                Greater => Value::Var(i - 1),
            }
        }
        Value::Unit => Value::Unit,
        Value::Pair(a, b) => Value::pair(
            subst_value_rec(a, v, term_depth, ty_depth),
            subst_value_rec(b, v, term_depth, ty_depth),
        ),
        Value::Lam { domain, body } => Value::Lam {
            domain: domain.clone(),
            body: Arc::new(subst_term_rec(body, v, term_depth + 1, ty_depth)),
        },
        Value::Inj {
            arm,
            payload,
            annot,
        } => Value::Inj {
            arm: *arm,
            payload: Arc::new(subst_value_rec(payload, v, term_depth, ty_depth)),
            annot: annot.clone(),
        },
        Value::TyLam(body) => Value::TyLam(Arc::new(subst_term_rec(
            body,
            v,
            term_depth,
            ty_depth + 1,
        ))),
    }
}

/// Substitute type `s` for type variable 0 of `t`; remaining free type
/// variables of `t` shift down by one.
pub fn subst_type_in_type(t: &Type, s: &Type) -> Type {
    subst_type_at(t, s, 0)
}

fn subst_type_at(t: &Type, s: &Type, depth: usize) -> Type {
    match t {
        Type::Var(i) => {
            use std::cmp::Ordering::*;
            match i.cmp(&depth) {
                Less => Type::Var(*i),
                Equal => shift_type(s, depth, 0),
                Greater => Type::Var(i - 1),
            }
        }
        Type::Unit => Type::Unit,
        Type::Prod(a, b) => Type::prod(subst_type_at(a, s, depth), subst_type_at(b, s, depth)),
        Type::Arrow(a, b) => Type::arrow(subst_type_at(a, s, depth), subst_type_at(b, s, depth)),
        Type::Rec(arms) => Type::Rec(
            arms.iter()
                .map(|a| Arc::new(subst_type_at(a, s, depth + 1)))
                .collect(),
        ),
        Type::Forall(b) => Type::forall(subst_type_at(b, s, depth + 1)),
    }
}

/// Substitute type `s` for type variable 0 throughout a term's annotations
/// (lambda domains, injection annotations, type-application operands).
/// This is the contraction step of a type-lambda application.
pub fn subst_type_in_term(e: &Term, s: &Type) -> Term {
    subst_type_in_term_rec(e, s, 0)
}

fn subst_type_in_term_rec(e: &Term, s: &Type, ty_depth: usize) -> Term {
    match e {
        Term::Val(v) => Term::Val(subst_type_in_value_rec(v, s, ty_depth)),
        Term::Choice => Term::Choice,
        Term::Proj { which, of } => Term::proj(*which, subst_type_in_value_rec(of, s, ty_depth)),
        Term::App { head, arg } => Term::app(
            subst_type_in_value_rec(head, s, ty_depth),
            subst_type_in_term_rec(arg, s, ty_depth),
        ),
        Term::Case {
            scrutinee,
            branches,
        } => Term::Case {
            scrutinee: Arc::new(subst_type_in_value_rec(scrutinee, s, ty_depth)),
            branches: branches
                .iter()
                .map(|b| Arc::new(subst_type_in_term_rec(b, s, ty_depth)))
                .collect(),
        },
        Term::TyApp { head, ty } => Term::TyApp {
            head: Arc::new(subst_type_in_value_rec(head, s, ty_depth)),
            ty: Arc::new(subst_type_at(ty, s, ty_depth)),
        },
    }
}

fn subst_type_in_value_rec(v: &Value, s: &Type, ty_depth: usize) -> Value {
    match v {
        Value::Var(i) => Value::Var(*i),
        Value::Unit => Value::Unit,
        Value::Pair(a, b) => Value::pair(
            subst_type_in_value_rec(a, s, ty_depth),
            subst_type_in_value_rec(b, s, ty_depth),
        ),
        Value::Lam { domain, body } => Value::Lam {
            domain: domain
                .as_ref()
                .map(|d| Arc::new(subst_type_at(d, s, ty_depth))),
            body: Arc::new(subst_type_in_term_rec(body, s, ty_depth)),
        },
        Value::Inj {
            arm,
            payload,
            annot,
        } => Value::Inj {
            arm: *arm,
            payload: Arc::new(subst_type_in_value_rec(payload, s, ty_depth)),
            annot: Arc::new(subst_type_at(annot, s, ty_depth)),
        },
        Value::TyLam(body) => Value::TyLam(Arc::new(subst_type_in_term_rec(body, s, ty_depth + 1))),
    }
}

// ---------------------------------------------------------------------------
// Closedness
// ---------------------------------------------------------------------------

/// True when `t` has no free type variable ≥ `depth`.
pub fn type_closed_at(t: &Type, depth: usize) -> bool {
    match t {
        Type::Var(i) => *i < depth,
        Type::Unit => true,
        Type::Prod(a, b) | Type::Arrow(a, b) => {
            type_closed_at(a, depth) && type_closed_at(b, depth)
        }
        Type::Rec(arms) => arms.iter().all(|a| type_closed_at(a, depth + 1)),
        Type::Forall(b) => type_closed_at(b, depth + 1),
    }
}

/// True when `e` has no free term variable ≥ `term_depth` and no free type
/// variable ≥ `ty_depth`.
pub fn term_closed_at(e: &Term, term_depth: usize, ty_depth: usize) -> bool {
    match e {
        Term::Val(v) => value_closed_at(v, term_depth, ty_depth),
        Term::Choice => true,
        Term::Proj { of, .. } => value_closed_at(of, term_depth, ty_depth),
        Term::App { head, arg } => {
            value_closed_at(head, term_depth, ty_depth) && term_closed_at(arg, term_depth, ty_depth)
        }
        Term::Case {
            scrutinee,
            branches,
        } => {
            value_closed_at(scrutinee, term_depth, ty_depth)
                && branches
                    .iter()
                    .all(|b| term_closed_at(b, term_depth + 1, ty_depth))
        }
        Term::TyApp { head, ty } => {
            value_closed_at(head, term_depth, ty_depth) && type_closed_at(ty, ty_depth)
        }
    }
}

pub fn value_closed_at(v: &Value, term_depth: usize, ty_depth: usize) -> bool {
    match v {
        Value::Var(i) => *i < term_depth,
        Value::Unit => true,
        Value::Pair(a, b) => {
            value_closed_at(a, term_depth, ty_depth) && value_closed_at(b, term_depth, ty_depth)
        }
        Value::Lam { domain, body } => {
            domain.as_ref().map_or(true, |d| type_closed_at(d, ty_depth))
                && term_closed_at(body, term_depth + 1, ty_depth)
        }
        Value::Inj {
            payload, annot, ..
        } => value_closed_at(payload, term_depth, ty_depth) && type_closed_at(annot, ty_depth),
        Value::TyLam(body) => term_closed_at(body, term_depth, ty_depth + 1),
    }
}

/// True when `e` has no free term or type variables at all.
pub fn is_closed(e: &Term) -> bool {
    term_closed_at(e, 0, 0)
}

// ---------------------------------------------------------------------------
// Evaluation contexts
// ---------------------------------------------------------------------------

/// An evaluation context: a stack of application frames `v [.]`.
///
/// `frames[0]` is the innermost frame, so plugging `e` yields
/// `frames[n-1] (... (frames[1] (frames[0] e)) ...)`. The empty stack is the
/// hole itself. Evaluation contexts never cross a binder, so plugging needs
/// no shifting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EvalContext {
    pub frames: Vec<Value>,
}

impl EvalContext {
    /// The empty context `[]`.
    pub fn hole() -> EvalContext {
        EvalContext { frames: Vec::new() }
    }

    /// The one-frame context `v []`.
    pub fn single(v: Value) -> EvalContext {
        EvalContext { frames: vec![v] }
    }

    /// Extend with a new outermost frame, giving `v C[.]`.
    pub fn wrap_outer(mut self, v: Value) -> EvalContext {
        self.frames.push(v);
        self
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }
}

/// Plug a term into an evaluation context.
pub fn plug(ctx: &EvalContext, e: &Term) -> Term {
    let mut acc = e.clone();
    for v in &ctx.frames {
        acc = Term::app(v.clone(), acc);
    }
    acc
}
