//! Standard encodings over the core syntax: naturals and booleans as
//! recursive sums, `let`/`or`/conditional sugar as application shapes, a
//! typed call-by-value fixed-point combinator, a diverging term at every
//! type, and the specific functions and evaluation contexts the equivalence
//! demos exercise.
//!
//! Everything here builds core terms directly; the surface desugarer targets
//! these same shapes, and tests pin the two down against each other.

use crate::syntax::{shift_term, EvalContext, Proj, Term, Type, Value};

// ---------------------------------------------------------------------------
// Base types and their values
// ---------------------------------------------------------------------------

/// Naturals: `mu a. unit + a` (left arm zero, right arm successor).
pub fn nat() -> Type {
    Type::rec(vec![Type::Unit, Type::Var(0)])
}

/// Booleans: `mu a. unit + unit` (left arm true, right arm false).
pub fn two() -> Type {
    Type::rec(vec![Type::Unit, Type::Unit])
}

/// The numeral for `n`: zero is `in1 ()`, successor wraps with `in2`, every
/// layer annotated at the naturals type.
pub fn numeral(n: u64) -> Value {
    let mut v = Value::inj(1, Value::Unit, nat());
    for _ in 0..n {
        v = Value::inj(2, v, nat());
    }
    v
}

pub fn numeral_term(n: u64) -> Term {
    Term::Val(numeral(n))
}

/// Read a value back as a numeral, if it is one.
pub fn as_numeral(v: &Value) -> Option<u64> {
    let nat_ty = nat();
    let mut count = 0u64;
    let mut cur = v;
    loop {
        match cur {
            Value::Inj {
                arm: 1,
                payload,
                annot,
            } if **annot == nat_ty && **payload == Value::Unit => return Some(count),
            Value::Inj {
                arm: 2,
                payload,
                annot,
            } if **annot == nat_ty => {
                count += 1;
                cur = payload;
            }
            _ => return None,
        }
    }
}

pub fn tt() -> Value {
    Value::inj(1, Value::Unit, two())
}

pub fn ff() -> Value {
    Value::inj(2, Value::Unit, two())
}

pub fn bool_value(b: bool) -> Value {
    if b {
        tt()
    } else {
        ff()
    }
}

/// Read a value back as a boolean, if it is one.
pub fn as_bool(v: &Value) -> Option<bool> {
    let two_ty = two();
    match v {
        Value::Inj {
            arm,
            payload,
            annot,
        } if **annot == two_ty && **payload == Value::Unit => match arm {
            1 => Some(true),
            2 => Some(false),
            _ => None,
        },
        _ => None,
    }
}

/// The identity function at a type.
pub fn id_value(ty: Type) -> Value {
    Value::lam(ty, Term::Val(Value::Var(0)))
}

// ---------------------------------------------------------------------------
// Sugar shapes
// ---------------------------------------------------------------------------

/// `let x = bound in body`: an application whose head is an unannotated
/// lambda. `body` binds x at index 0.
pub fn let_in(bound: Term, body: Term) -> Term {
    Term::app(Value::lam_unann(body), bound)
}

/// `a or b`: draw a number, branch on zero / nonzero.
///
/// `let x = ? in case x of in1 _ => a | in2 _ => b`; the two new binders are
/// invisible to `a` and `b`, whose free variables are shifted past them.
pub fn or_term(a: Term, b: Term) -> Term {
    let a = shift_term(&a, 2, 0);
    let b = shift_term(&b, 2, 0);
    let_in(Term::Choice, Term::case(Value::Var(0), vec![a, b]))
}

/// Two-way branch on a term of a two-armed recursive-sum type: both
/// `if p then a else b` (booleans) and `ifz p then a else b` (naturals,
/// zero / successor) desugar to this shape.
///
/// `let y = p in case y of in1 _ => a | in2 _ => b`, with `a`/`b` shifted
/// past the two new binders.
pub fn cond(p: Term, a: Term, b: Term) -> Term {
    let a = shift_term(&a, 2, 0);
    let b = shift_term(&b, 2, 0);
    let_in(p, Term::case(Value::Var(0), vec![a, b]))
}

/// Apply a not-necessarily-value function term to an argument term:
/// `(fun x => x u) e`, evaluating `e` first, then the (pre-shifted) `u`.
pub fn letapp(e: Term, u: Term) -> Term {
    let u = shift_term(&u, 1, 0);
    Term::app(Value::lam_unann(Term::App {
        head: std::sync::Arc::new(Value::Var(0)),
        arg: std::sync::Arc::new(u),
    }), e)
}

// ---------------------------------------------------------------------------
// Fixed point and divergence
// ---------------------------------------------------------------------------

/// Call-by-value fixed-point combinator
/// `fix : all a. all b. ((a -> b) -> (a -> b)) -> (a -> b)`.
///
/// Self-application is tied through the one-armed recursive sum
/// `s = mu g. g -> (a -> b)`: the combinator builds
/// `d = fun y : s => case y of in1 y' => f (fun x : a => (fun r => r x) (y' y))`
/// and returns `d (in1[s] d)`. The eta-expansion `fun x => ... (y' y) ...`
/// delays the next unfolding until an argument arrives, as call-by-value
/// requires; the inner `let`-shaped redex keeps the unfolding itself pure.
pub fn fix_value() -> Value {
    // Type depth inside the two type lambdas: a = Var(1), b = Var(0).
    let a = Type::Var(1);
    let b = Type::Var(0);
    let ab = Type::arrow(a.clone(), b.clone());
    // f's type: (a -> b) -> (a -> b).
    let functional_ty = Type::arrow(ab.clone(), ab);
    // s = mu g. g -> (a -> b); under the mu-binder a and b shift by one.
    let sigma = Type::rec(vec![Type::arrow(
        Type::Var(0),
        Type::arrow(Type::Var(2), Type::Var(1)),
    )]);

    // Inside d's case branch the binders are y' = 0, y = 1, f = 2.
    // Inner lambda body: (fun r => r x) (y' y), with x = 0 shifting the rest.
    let inner_body = Term::app(
        Value::lam_unann(Term::app(Value::Var(0), Term::Val(Value::Var(1)))),
        Term::app(Value::Var(1), Term::Val(Value::Var(2))),
    );
    let branch = Term::app(
        Value::Var(2),
        Term::Val(Value::lam(a, inner_body)),
    );
    let delta = Value::lam(sigma.clone(), Term::case(Value::Var(0), vec![branch]));
    let body = Term::app(
        delta.clone(),
        Term::Val(Value::inj(1, delta, sigma)),
    );
    Value::ty_lam(Term::Val(Value::ty_lam(Term::Val(Value::lam(
        functional_ty,
        body,
    )))))
}

pub fn fix_term() -> Term {
    Term::Val(fix_value())
}

/// `omega : all a. a`, a closed value whose every instantiation diverges:
/// `Lam a => let g = fix[unit] in let h = g[a] in let k = h (fun f : unit -> a => f) in k ()`.
///
/// Instantiating and running enters a five-step loop that repeats forever,
/// unfolding once per lap.
pub fn omega_value() -> Value {
    let alpha = Type::Var(0);
    // k () with k = 0.
    let rest3 = Term::app(Value::Var(0), Term::Val(Value::Unit));
    // h (fun f : unit -> a => f) with h = 0.
    let rest2 = let_in(
        Term::app(
            Value::Var(0),
            Term::Val(Value::lam(
                Type::arrow(Type::Unit, alpha.clone()),
                Term::Val(Value::Var(0)),
            )),
        ),
        rest3,
    );
    // g[a] with g = 0.
    let rest1 = let_in(Term::ty_app(Value::Var(0), alpha), rest2);
    let body = let_in(Term::ty_app(fix_value(), Type::Unit), rest1);
    Value::ty_lam(body)
}

/// The diverging term at type `ty`.
pub fn omega_at(ty: Type) -> Term {
    Term::ty_app(omega_value(), ty)
}

/// `fun x : dom => omega[cod]` — a value that diverges whenever applied.
pub fn diverging_fn(dom: Type, cod: Type) -> Value {
    Value::lam(dom, omega_at(cod))
}

// ---------------------------------------------------------------------------
// Boolean functions
// ---------------------------------------------------------------------------

/// `xor : 2 -> 2 -> 2` as nested conditionals:
/// `fun x => fun y => if x then (if y then false else true) else y`.
pub fn xor_value() -> Value {
    let body = cond(
        Term::Val(Value::Var(1)),
        cond(Term::Val(Value::Var(0)), Term::Val(ff()), Term::Val(tt())),
        Term::Val(Value::Var(0)),
    );
    Value::lam(two(), Term::Val(Value::lam(two(), body)))
}

/// `xnor : 2 -> 2 -> 2`:
/// `fun x => fun y => if x then y else (if y then false else true)`.
pub fn xnor_value() -> Value {
    let body = cond(
        Term::Val(Value::Var(1)),
        Term::Val(Value::Var(0)),
        cond(Term::Val(Value::Var(0)), Term::Val(ff()), Term::Val(tt())),
    );
    Value::lam(two(), Term::Val(Value::lam(two(), body)))
}

// ---------------------------------------------------------------------------
// The distinguishing functions and contexts
// ---------------------------------------------------------------------------

/// `fun x : 2*2 => proj1 x or proj2 x` — chooses a component afresh on each
/// call.
pub fn chooser_per_call() -> Value {
    Value::lam(
        Type::prod(two(), two()),
        or_term(
            Term::proj(Proj::Fst, Value::Var(0)),
            Term::proj(Proj::Snd, Value::Var(0)),
        ),
    )
}

/// `ifz ? then (fun x : 2*2 => proj1 x) else (fun x : 2*2 => proj2 x)` —
/// commits to one component up front, then behaves deterministically.
pub fn chooser_once() -> Term {
    let dom = Type::prod(two(), two());
    cond(
        Term::Choice,
        Term::Val(Value::lam(dom.clone(), Term::proj(Proj::Fst, Value::Var(0)))),
        Term::Val(Value::lam(dom, Term::proj(Proj::Snd, Value::Var(0)))),
    )
}

/// The type of both choosers: `(2*2) -> 2`.
pub fn chooser_type() -> Type {
    Type::arrow(Type::prod(two(), two()), two())
}

/// Shared skeleton of the two discriminating frames: bind the tested
/// function to x, call it twice on `(true, false)`, combine the two results
/// with `op`, and converge only if the combination is true.
///
/// `fun x => let y = x (true, false) in let z = x (true, false) in
///  let w = op z y in if w then w else omega[2]`
fn call_twice_frame(op: Value) -> Value {
    let args = Term::Val(Value::pair(tt(), ff()));
    // At w = 0, z = 1, y = 2, x = 3.
    let rest3 = cond(
        Term::Val(Value::Var(0)),
        Term::Val(Value::Var(0)),
        omega_at(two()),
    );
    // op z y as let t = op z in t y; at z = 0, y = 1, under t the var y = 2.
    let op_z_y = let_in(
        Term::app(op, Term::Val(Value::Var(0))),
        Term::app(Value::Var(0), Term::Val(Value::Var(2))),
    );
    let rest2 = let_in(op_z_y, rest3);
    let rest1 = let_in(Term::app(Value::Var(1), args.clone()), rest2);
    let body = let_in(Term::app(Value::Var(0), args), rest1);
    Value::lam(chooser_type(), body)
}

/// A frame converging iff two calls of the tested function on
/// `(true, false)` disagree. Separates the per-call chooser (which can
/// answer `(true, false)`) from anything deterministic.
pub fn frame_xor_twice() -> Value {
    call_twice_frame(xor_value())
}

/// A frame converging iff two calls of the tested function on
/// `(true, false)` agree. Under must-convergence it separates the one-time
/// chooser (always agrees with itself) from the per-call chooser.
pub fn frame_xnor_twice() -> Value {
    call_twice_frame(xnor_value())
}

pub fn ctx_xor_twice() -> EvalContext {
    EvalContext::single(frame_xor_twice())
}

pub fn ctx_xnor_twice() -> EvalContext {
    EvalContext::single(frame_xnor_twice())
}

// ---------------------------------------------------------------------------
// Recursive-type structure map
// ---------------------------------------------------------------------------

/// `mu t. nat + (t -> t)` — a recursive type mixing a base arm with a
/// function arm, for exercising fixed points over function spaces.
pub fn wrap_type() -> Type {
    Type::rec(vec![nat(), Type::arrow(Type::Var(0), Type::Var(0))])
}

/// The structure-map functional on [`wrap_type`]: rebuilds base elements
/// as they are and wraps function elements with recursive calls on both
/// sides. Its fixed point acts as the identity.
///
/// `fun h : t -> t => fun x : t =>
///    case x of in1 y => in1[t] y
///            | in2 g => in2[t] (fun y : t => h (g (h y)))`
pub fn wrap_functional() -> Value {
    let t = wrap_type();
    // Branch 1: payload y = 0, x = 1, h = 2.
    let br1 = Term::Val(Value::inj(1, Value::Var(0), t.clone()));
    // Branch 2: g = 0, x = 1, h = 2; inside the lambda y = 0, g = 1, h = 3.
    let inner = Term::app(
        Value::Var(3),
        Term::app(
            Value::Var(1),
            Term::app(Value::Var(3), Term::Val(Value::Var(0))),
        ),
    );
    let br2 = Term::Val(Value::inj(2, Value::lam(t.clone(), inner), t.clone()));
    Value::lam(
        Type::arrow(t.clone(), t.clone()),
        Term::Val(Value::lam(t, Term::case(Value::Var(0), vec![br1, br2]))),
    )
}

// ---------------------------------------------------------------------------
// Canonical polymorphic pair-choosers
// ---------------------------------------------------------------------------

/// The type `all a. (a * a) -> a`.
pub fn pair_chooser_type() -> Type {
    Type::forall(Type::arrow(
        Type::prod(Type::Var(0), Type::Var(0)),
        Type::Var(0),
    ))
}

fn pair_dom() -> Type {
    Type::prod(Type::Var(0), Type::Var(0))
}

/// `Lam a => omega[(a * a) -> a]` — diverges at instantiation.
pub fn poly_diverge() -> Value {
    Value::ty_lam(omega_at(Type::arrow(pair_dom(), Type::Var(0))))
}

/// `Lam a => fun x : a * a => omega[a]` — instantiates, then diverges when
/// applied.
pub fn poly_diverge_applied() -> Value {
    Value::ty_lam(Term::Val(Value::lam(pair_dom(), omega_at(Type::Var(0)))))
}

/// `Lam a => fun x : a * a => proj1 x`.
pub fn poly_first() -> Value {
    Value::ty_lam(Term::Val(Value::lam(
        pair_dom(),
        Term::proj(Proj::Fst, Value::Var(0)),
    )))
}

/// `Lam a => fun x : a * a => proj2 x`.
pub fn poly_second() -> Value {
    Value::ty_lam(Term::Val(Value::lam(
        pair_dom(),
        Term::proj(Proj::Snd, Value::Var(0)),
    )))
}

/// `Lam a => fun x : a * a => proj1 x or proj2 x` — the type abstraction of
/// the per-call chooser.
pub fn poly_choose() -> Value {
    Value::ty_lam(Term::Val(Value::lam(
        pair_dom(),
        or_term(
            Term::proj(Proj::Fst, Value::Var(0)),
            Term::proj(Proj::Snd, Value::Var(0)),
        ),
    )))
}

/// The type abstraction of the one-time chooser, `typed all a. (a * a) -> a`
/// but committing to a component before ever seeing an argument. Its body is
/// not a value, so instantiation is where the choice happens.
pub fn poly_choose_once() -> Value {
    let dom = pair_dom();
    Value::ty_lam(cond(
        Term::Choice,
        Term::Val(Value::lam(dom.clone(), Term::proj(Proj::Fst, Value::Var(0)))),
        Term::Val(Value::lam(dom, Term::proj(Proj::Snd, Value::Var(0)))),
    ))
}

/// Lift the two-call discriminating frames to the polymorphic type: bind the
/// polymorphic value, instantiate at the booleans, and run the base frame on
/// the result.
pub fn poly_frame(base: Value) -> Value {
    Value::lam(
        pair_chooser_type(),
        Term::app(base, Term::ty_app(Value::Var(0), two())),
    )
}

/// `fun g : (all a. (a*a) -> a) => (fun x => x (true, false)) (g[2])` —
/// instantiate at booleans and apply once.
pub fn poly_apply_frame() -> Value {
    Value::lam(
        pair_chooser_type(),
        letapp(
            Term::ty_app(Value::Var(0), two()),
            Term::Val(Value::pair(tt(), ff())),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::is_closed;

    #[test]
    fn numerals_round_trip() {
        for n in 0..10 {
            assert_eq!(as_numeral(&numeral(n)), Some(n));
        }
        assert_eq!(as_numeral(&tt()), None);
        assert_eq!(as_bool(&tt()), Some(true));
        assert_eq!(as_bool(&ff()), Some(false));
        assert_eq!(as_bool(&numeral(0)), None);
    }

    #[test]
    fn sugar_shapes_are_the_documented_applications() {
        let l = let_in(numeral_term(1), Term::Val(Value::Var(0)));
        assert_eq!(
            l,
            Term::app(Value::lam_unann(Term::Val(Value::Var(0))), numeral_term(1))
        );

        // `0 or 1` must shift nothing (closed operands) and bind choice.
        let o = or_term(numeral_term(0), numeral_term(1));
        assert_eq!(
            o,
            Term::app(
                Value::lam_unann(Term::case(
                    Value::Var(0),
                    vec![numeral_term(0), numeral_term(1)]
                )),
                Term::Choice
            )
        );
    }

    #[test]
    fn or_shifts_open_operands_past_its_binders() {
        // x or 0 with x free at index 0: inside the case branch x sits under
        // the let binder and the branch binder.
        let o = or_term(Term::Val(Value::Var(0)), numeral_term(0));
        assert_eq!(
            o,
            Term::app(
                Value::lam_unann(Term::case(
                    Value::Var(0),
                    vec![Term::Val(Value::Var(2)), numeral_term(0)]
                )),
                Term::Choice
            )
        );
    }

    #[test]
    fn combinators_are_closed() {
        assert!(is_closed(&fix_term()));
        assert!(is_closed(&Term::Val(omega_value())));
        assert!(is_closed(&Term::Val(xor_value())));
        assert!(is_closed(&Term::Val(xnor_value())));
        assert!(is_closed(&Term::Val(chooser_per_call())));
        assert!(is_closed(&chooser_once()));
        assert!(is_closed(&Term::Val(frame_xor_twice())));
        assert!(is_closed(&Term::Val(frame_xnor_twice())));
        assert!(is_closed(&Term::Val(wrap_functional())));
        for v in [
            poly_diverge(),
            poly_diverge_applied(),
            poly_first(),
            poly_second(),
            poly_choose(),
            poly_choose_once(),
            poly_frame(frame_xor_twice()),
            poly_apply_frame(),
        ] {
            assert!(is_closed(&Term::Val(v)));
        }
    }

    #[test]
    fn poly_choose_is_the_lifted_per_call_chooser() {
        // Abstracting the boolean instance of the per-call chooser over its
        // element type gives exactly the canonical choosing value.
        let lifted = Value::ty_lam(Term::Val(Value::lam(
            Type::prod(Type::Var(0), Type::Var(0)),
            or_term(
                Term::proj(Proj::Fst, Value::Var(0)),
                Term::proj(Proj::Snd, Value::Var(0)),
            ),
        )));
        assert_eq!(lifted, poly_choose());
    }
}
