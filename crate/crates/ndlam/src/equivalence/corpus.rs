//! Context corpora: families of evaluation contexts used as observers.
//!
//! Contextual reasoning here is always relative to a finite corpus of
//! closed, well-typed evaluation contexts. A corpus is built by stacking
//! "discriminator" frames — closed functions chosen to tell inhabitants
//! of a type apart: projections for products, tag observers and
//! per-branch divergence for sums, appliers over sample arguments for
//! functions, instantiators for polymorphic values, plus constant and
//! strictly-diverging frames for every type. Frames compose outward as
//! long as their types chain, so a depth-2 corpus already probes
//! second-order behavior (observe the result of an application, apply
//! the result of an instantiation, and so on).

use crate::encodings::{
    bool_value, diverging_fn, ff, frame_xnor_twice, frame_xor_twice, id_value, nat, numeral,
    numeral_term, omega_at, pair_chooser_type, poly_apply_frame, poly_choose,
    poly_diverge, poly_diverge_applied, poly_first, poly_frame, poly_second, tt, two,
};
use crate::syntax::{subst_type_in_type, type_eq, EvalContext, Proj, Term, Type, Value};
use crate::typing::infer_closed;

/// Does `Var(idx)` occur free in `t`?
fn mentions_tyvar(t: &Type, idx: usize) -> bool {
    match t {
        Type::Var(i) => *i == idx,
        Type::Unit => false,
        Type::Prod(a, b) | Type::Arrow(a, b) => mentions_tyvar(a, idx) || mentions_tyvar(b, idx),
        Type::Rec(arms) => arms.iter().any(|a| mentions_tyvar(a, idx + 1)),
        Type::Forall(body) => mentions_tyvar(body, idx + 1),
    }
}

/// A canonical inhabitant of `ty`. Total for every type this crate
/// builds: products recurse, arrows return a constant, recursive sums
/// take their first non-recursive arm, and polymorphic types fall back
/// to a type abstraction whose body diverges when forced (still a
/// value). Panics on open types and on recursive sums with no
/// non-recursive arm.
pub fn min_value(ty: &Type) -> Value {
    match ty {
        Type::Unit => Value::Unit,
        Type::Prod(a, b) => Value::pair(min_value(a), min_value(b)),
        Type::Arrow(a, b) => Value::lam(a.as_ref().clone(), Term::Val(min_value(b))),
        Type::Rec(arms) => {
            let k = arms
                .iter()
                .position(|arm| !mentions_tyvar(arm, 0))
                .expect("recursive sum needs a non-recursive arm");
            let payload_ty = subst_type_in_type(&arms[k], ty);
            Value::inj(k + 1, min_value(&payload_ty), ty.clone())
        }
        Type::Forall(body) => {
            if mentions_tyvar(body, 0) {
                Value::ty_lam(omega_at(body.as_ref().clone()))
            } else {
                Value::ty_lam(Term::Val(min_value(body)))
            }
        }
        Type::Var(_) => panic!("no canonical value at an open type"),
    }
}

/// A small set of distinct closed values of `ty`, for exercising
/// functions: numerals and booleans enumerate their first few
/// inhabitants, products cross their components, arrows include the
/// identity (when possible), constants, and a function that diverges on
/// every call. For the two-sided polymorphic chooser type the set is
/// the five canonical inhabitants.
pub fn sample_values(ty: &Type) -> Vec<Value> {
    if type_eq(ty, &nat()) {
        return vec![numeral(0), numeral(1), numeral(2)];
    }
    if type_eq(ty, &two()) {
        return vec![tt(), ff()];
    }
    if type_eq(ty, &pair_chooser_type()) {
        return vec![
            poly_first(),
            poly_second(),
            poly_choose(),
            poly_diverge(),
            poly_diverge_applied(),
        ];
    }
    match ty {
        Type::Unit => vec![Value::Unit],
        Type::Prod(a, b) => {
            let mut out = Vec::new();
            for va in sample_values(a) {
                for vb in sample_values(b) {
                    out.push(Value::pair(va.clone(), vb));
                    if out.len() >= 4 {
                        return out;
                    }
                }
            }
            out
        }
        Type::Arrow(a, b) => {
            let mut out = Vec::new();
            if type_eq(a, b) {
                out.push(id_value(a.as_ref().clone()));
            }
            for w in sample_values(b).into_iter().take(2) {
                out.push(Value::lam(a.as_ref().clone(), Term::Val(w)));
            }
            out.push(diverging_fn(a.as_ref().clone(), b.as_ref().clone()));
            out
        }
        Type::Rec(arms) => {
            let mut out = Vec::new();
            for (k, arm) in arms.iter().enumerate() {
                let payload_ty = subst_type_in_type(arm, ty);
                if mentions_tyvar(arm, 0) {
                    // One recursive layer over the minimal base.
                    out.push(Value::inj(k + 1, min_value(&payload_ty), ty.clone()));
                } else {
                    for p in sample_values(&payload_ty).into_iter().take(2) {
                        out.push(Value::inj(k + 1, p, ty.clone()));
                    }
                }
                if out.len() >= 5 {
                    break;
                }
            }
            out
        }
        Type::Forall(_) => vec![min_value(ty)],
        Type::Var(_) => panic!("no sample values at an open type"),
    }
}

/// Closed single-argument functions on `ty` used as context frames.
/// Every frame has an arrow type with domain `ty`.
pub fn discriminator_pool(ty: &Type) -> Vec<Value> {
    let mut pool = Vec::new();
    pool.push(id_value(ty.clone()));
    // Constant observers: still meaningful, because plugging keeps the
    // scrutinized term in argument position where it is evaluated first,
    // and their varied result types multiply the stackings available one
    // level up.
    pool.push(Value::lam(ty.clone(), Term::Val(numeral(0))));
    pool.push(Value::lam(ty.clone(), Term::Val(numeral(1))));
    pool.push(Value::lam(ty.clone(), Term::Val(bool_value(true))));
    pool.push(Value::lam(ty.clone(), Term::Val(bool_value(false))));
    // A strict frame that then diverges.
    pool.push(Value::lam(ty.clone(), omega_at(Type::Unit)));
    match ty {
        Type::Prod(_, _) => {
            pool.push(Value::lam(ty.clone(), Term::proj(Proj::Fst, Value::Var(0))));
            pool.push(Value::lam(ty.clone(), Term::proj(Proj::Snd, Value::Var(0))));
        }
        Type::Rec(arms) => {
            // Which arm? (as a numeral)
            let tag_branches = (0..arms.len()).map(|k| numeral_term(k as u64)).collect();
            pool.push(Value::lam(ty.clone(), Term::case(Value::Var(0), tag_branches)));
            // Converge exactly on arm j.
            for j in 0..arms.len() {
                let branches = (0..arms.len())
                    .map(|k| {
                        if k == j {
                            Term::Val(Value::Unit)
                        } else {
                            omega_at(Type::Unit)
                        }
                    })
                    .collect();
                pool.push(Value::lam(ty.clone(), Term::case(Value::Var(0), branches)));
            }
            // For arms that recurse immediately (payload is the sum
            // itself), expose the payload: a predecessor-style frame.
            for (j, arm) in arms.iter().enumerate() {
                if matches!(arm.as_ref(), Type::Var(0)) {
                    let branches = (0..arms.len())
                        .map(|k| {
                            if k == j {
                                Term::Val(Value::Var(0))
                            } else {
                                Term::Val(min_value(ty))
                            }
                        })
                        .collect();
                    pool.push(Value::lam(ty.clone(), Term::case(Value::Var(0), branches)));
                }
            }
        }
        Type::Arrow(a, _) => {
            for v in sample_values(a) {
                pool.push(Value::lam(ty.clone(), Term::app(Value::Var(0), Term::Val(v))));
            }
        }
        Type::Forall(_) => {
            for at in [Type::Unit, nat(), two()] {
                pool.push(Value::lam(ty.clone(), Term::ty_app(Value::Var(0), at)));
            }
        }
        _ => {}
    }
    // Frames that call their argument twice — the observers that make
    // call-sharing visible.
    if type_eq(ty, &crate::encodings::chooser_type()) {
        pool.push(frame_xor_twice());
        pool.push(frame_xnor_twice());
    }
    if type_eq(ty, &pair_chooser_type()) {
        pool.push(poly_apply_frame());
        pool.push(poly_frame(frame_xor_twice()));
        pool.push(poly_frame(frame_xnor_twice()));
    }
    pool
}

/// All well-typed frame stacks over a `ty`-shaped hole up to `depth`
/// frames, built from the discriminator pools of the successive result
/// types. The hole-only context is always included. Frames whose result
/// type is not an arrow simply stop extending.
pub fn gen_contexts(hole: &Type, depth: usize) -> Vec<EvalContext> {
    let mut out = vec![EvalContext::hole()];
    let mut frontier = vec![(EvalContext::hole(), hole.clone())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (ctx, ty) in &frontier {
            for frame in discriminator_pool(ty) {
                let frame_ty = infer_closed(&Term::Val(frame.clone()))
                    .expect("discriminator frames are closed and well-typed");
                let Type::Arrow(dom, cod) = frame_ty else {
                    unreachable!("discriminator frames are functions")
                };
                debug_assert!(type_eq(&dom, ty));
                let extended = ctx.clone().wrap_outer(frame);
                out.push(extended.clone());
                next.push((extended, cod.as_ref().clone()));
            }
        }
        frontier = next;
    }
    out
}
