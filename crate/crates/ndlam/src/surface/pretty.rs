//! Pretty-printer: core terms back to surface syntax.
//!
//! Binders get fresh names keyed to their depth (`x0`, `x1`, … for term
//! binders, `'a`, `'b`, … for type binders), so printing is
//! deterministic and shadow-free. The printer re-sugars numerals,
//! booleans, `let`, `fix`, and `omega[T]`; everything else prints
//! structurally with the fewest parentheses the grammar allows.
//! Re-parsing printed output yields the original term exactly.

use crate::encodings::{as_bool, as_numeral, fix_value, omega_value};
use crate::syntax::{EvalContext, Term, Type, Value};
use std::fmt::{self, Write};
use std::sync::OnceLock;

fn fix_singleton() -> &'static Value {
    static FIX: OnceLock<Value> = OnceLock::new();
    FIX.get_or_init(fix_value)
}

fn omega_singleton() -> &'static Value {
    static OMEGA: OnceLock<Value> = OnceLock::new();
    OMEGA.get_or_init(omega_value)
}

fn term_name(depth: usize) -> String {
    format!("x{depth}")
}

/// Name for the type binder introduced at `depth`: 'a … 'z, then 't26 on.
fn type_name(depth: usize) -> String {
    if depth < 26 {
        format!("{}", (b'a' + depth as u8) as char)
    } else {
        format!("t{depth}")
    }
}

// Precedence levels, loosest to tightest. A node whose own level is
// below the minimum its position demands gets parenthesized.
const OPEN: u8 = 0; // binder forms that extend right
const CHAIN: u8 = 1; // application chains and prefix operators
const ATOM: u8 = 2; // self-delimiting

fn type_level(t: &Type) -> u8 {
    match t {
        Type::Rec(_) | Type::Forall(_) => 0,
        Type::Arrow(_, _) => 1,
        Type::Prod(_, _) => 2,
        Type::Var(_) | Type::Unit => 3,
    }
}

fn write_type(f: &mut fmt::Formatter<'_>, t: &Type, depth: usize, min: u8) -> fmt::Result {
    if type_level(t) < min {
        f.write_char('(')?;
        write_type(f, t, depth, 0)?;
        return f.write_char(')');
    }
    match t {
        Type::Var(i) => {
            if *i < depth {
                write!(f, "'{}", type_name(depth - 1 - i))
            } else {
                // Free variable: keep it lexable, even though the result
                // cannot resolve without its binder.
                write!(f, "'_{}", i - depth)
            }
        }
        Type::Unit => f.write_str("unit"),
        Type::Prod(a, b) => {
            write_type(f, a, depth, 2)?;
            f.write_str(" * ")?;
            write_type(f, b, depth, 3)
        }
        Type::Arrow(a, b) => {
            write_type(f, a, depth, 2)?;
            f.write_str(" -> ")?;
            write_type(f, b, depth, 0)
        }
        Type::Rec(arms) => {
            write!(f, "mu '{}. ", type_name(depth))?;
            for (k, arm) in arms.iter().enumerate() {
                if k > 0 {
                    f.write_str(" + ")?;
                }
                write_type(f, arm, depth + 1, 1)?;
            }
            Ok(())
        }
        Type::Forall(body) => {
            write!(f, "all '{}. ", type_name(depth))?;
            write_type(f, body, depth + 1, 0)
        }
    }
}

/// What a term prints as once the sugar forms are recognized.
enum TermShape<'a> {
    Numeral(u64),
    Bool(bool),
    Fix,
    Omega(&'a Type),
    Let { bound: &'a Term, body: &'a Term },
    Plain,
}

fn term_shape(e: &Term) -> TermShape<'_> {
    match e {
        Term::Val(v) => match value_shape(v) {
            ValueShape::Numeral(n) => TermShape::Numeral(n),
            ValueShape::Bool(b) => TermShape::Bool(b),
            ValueShape::Fix => TermShape::Fix,
            ValueShape::Plain => TermShape::Plain,
        },
        Term::App { head, arg } => match head.as_ref() {
            Value::Lam { domain: None, body } => TermShape::Let { bound: arg, body },
            _ => TermShape::Plain,
        },
        Term::TyApp { head, ty } => {
            if head.as_ref() == omega_singleton() {
                TermShape::Omega(ty)
            } else {
                TermShape::Plain
            }
        }
        _ => TermShape::Plain,
    }
}

enum ValueShape {
    Numeral(u64),
    Bool(bool),
    Fix,
    Plain,
}

fn value_shape(v: &Value) -> ValueShape {
    if let Some(n) = as_numeral(v) {
        return ValueShape::Numeral(n);
    }
    if let Some(b) = as_bool(v) {
        return ValueShape::Bool(b);
    }
    if v == fix_singleton() {
        return ValueShape::Fix;
    }
    ValueShape::Plain
}

fn term_level(e: &Term) -> u8 {
    match term_shape(e) {
        TermShape::Numeral(_) | TermShape::Bool(_) | TermShape::Fix | TermShape::Omega(_) => ATOM,
        TermShape::Let { .. } => OPEN,
        TermShape::Plain => match e {
            Term::Val(v) => value_level(v),
            Term::Choice => ATOM,
            Term::TyApp { .. } => ATOM,
            Term::App { .. } | Term::Proj { .. } => CHAIN,
            Term::Case { .. } => OPEN,
        },
    }
}

fn value_level(v: &Value) -> u8 {
    match value_shape(v) {
        ValueShape::Numeral(_) | ValueShape::Bool(_) | ValueShape::Fix => ATOM,
        ValueShape::Plain => match v {
            Value::Var(_) | Value::Unit | Value::Pair(_, _) => ATOM,
            Value::Inj { .. } => CHAIN,
            Value::Lam { .. } | Value::TyLam(_) => OPEN,
        },
    }
}

/// True for printed forms whose body extends to the right without a
/// closing delimiter; such a form inside a non-final case branch would
/// swallow the following `|`, so it gets parenthesized there.
fn extends_right(e: &Term) -> bool {
    match term_shape(e) {
        TermShape::Let { .. } => true,
        TermShape::Plain => matches!(
            e,
            Term::Val(Value::Lam { .. }) | Term::Val(Value::TyLam(_)) | Term::Case { .. }
        ),
        _ => false,
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    e: &Term,
    tdepth: usize,
    ydepth: usize,
    min: u8,
) -> fmt::Result {
    if term_level(e) < min {
        f.write_char('(')?;
        write_term(f, e, tdepth, ydepth, 0)?;
        return f.write_char(')');
    }
    match term_shape(e) {
        TermShape::Numeral(n) => write!(f, "{n}"),
        TermShape::Bool(b) => f.write_str(if b { "true" } else { "false" }),
        TermShape::Fix => f.write_str("fix"),
        TermShape::Omega(ty) => {
            f.write_str("omega[")?;
            write_type(f, ty, ydepth, 0)?;
            f.write_char(']')
        }
        TermShape::Let { bound, body } => {
            write!(f, "let {} = ", term_name(tdepth))?;
            write_term(f, bound, tdepth, ydepth, 0)?;
            f.write_str(" in ")?;
            write_term(f, body, tdepth + 1, ydepth, 0)
        }
        TermShape::Plain => match e {
            Term::Val(v) => write_value(f, v, tdepth, ydepth, min),
            Term::Choice => f.write_char('?'),
            Term::Proj { which, of } => {
                write!(f, "proj{} ", which.index())?;
                write_value(f, of, tdepth, ydepth, ATOM)
            }
            Term::App { head, arg } => {
                write_value(f, head, tdepth, ydepth, ATOM)?;
                f.write_char(' ')?;
                write_term(f, arg, tdepth, ydepth, ATOM)
            }
            Term::Case {
                scrutinee,
                branches,
            } => {
                f.write_str("case ")?;
                write_value(f, scrutinee, tdepth, ydepth, CHAIN)?;
                f.write_str(" of")?;
                let last = branches.len().saturating_sub(1);
                for (k, br) in branches.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" |")?;
                    }
                    write!(f, " in{} {} => ", k + 1, term_name(tdepth))?;
                    if k < last && extends_right(br) {
                        f.write_char('(')?;
                        write_term(f, br, tdepth + 1, ydepth, 0)?;
                        f.write_char(')')?;
                    } else {
                        write_term(f, br, tdepth + 1, ydepth, 0)?;
                    }
                }
                Ok(())
            }
            Term::TyApp { head, ty } => {
                write_value(f, head, tdepth, ydepth, ATOM)?;
                f.write_char('[')?;
                write_type(f, ty, ydepth, 0)?;
                f.write_char(']')
            }
        },
    }
}

fn write_value(
    f: &mut fmt::Formatter<'_>,
    v: &Value,
    tdepth: usize,
    ydepth: usize,
    min: u8,
) -> fmt::Result {
    if value_level(v) < min {
        f.write_char('(')?;
        write_value(f, v, tdepth, ydepth, 0)?;
        return f.write_char(')');
    }
    match value_shape(v) {
        ValueShape::Numeral(n) => return write!(f, "{n}"),
        ValueShape::Bool(b) => return f.write_str(if b { "true" } else { "false" }),
        ValueShape::Fix => return f.write_str("fix"),
        ValueShape::Plain => {}
    }
    match v {
        Value::Var(i) => {
            if *i < tdepth {
                f.write_str(&term_name(tdepth - 1 - i))
            } else {
                write!(f, "_{}", i - tdepth)
            }
        }
        Value::Unit => f.write_str("()"),
        Value::Pair(a, b) => {
            f.write_char('(')?;
            write_value(f, a, tdepth, ydepth, 0)?;
            f.write_str(", ")?;
            write_value(f, b, tdepth, ydepth, 0)?;
            f.write_char(')')
        }
        Value::Lam { domain, body } => {
            write!(f, "fun {}", term_name(tdepth))?;
            if let Some(d) = domain {
                f.write_str(" : ")?;
                write_type(f, d, ydepth, 0)?;
            }
            f.write_str(" => ")?;
            write_term(f, body, tdepth + 1, ydepth, 0)
        }
        Value::Inj {
            arm,
            payload,
            annot,
        } => {
            write!(f, "in{arm}[")?;
            write_type(f, annot, ydepth, 0)?;
            f.write_str("] ")?;
            write_value(f, payload, tdepth, ydepth, ATOM)
        }
        Value::TyLam(body) => {
            write!(f, "Lam '{} => ", type_name(ydepth))?;
            write_term(f, body, tdepth, ydepth + 1, 0)
        }
    }
}

struct DisplayFn<F>(F);

impl<F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result> fmt::Display for DisplayFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, 0, 0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0, 0, 0)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_value(f, self, 0, 0, 0)
    }
}

impl fmt::Display for EvalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut inner = "[]".to_string();
        for (k, v) in self.frames.iter().enumerate() {
            let head = DisplayFn(|f: &mut fmt::Formatter<'_>| write_value(f, v, 0, 0, ATOM));
            inner = if k == 0 {
                format!("{head} {inner}")
            } else {
                format!("{head} ({inner})")
            };
        }
        f.write_str(&inner)
    }
}

/// Render a closed term in surface syntax.
pub fn pretty_term(e: &Term) -> String {
    e.to_string()
}

/// Render a closed value in surface syntax.
pub fn pretty_value(v: &Value) -> String {
    v.to_string()
}

/// Render a closed type in surface syntax.
pub fn pretty_type(t: &Type) -> String {
    t.to_string()
}

/// Render an evaluation context, hole spelled `[]`.
pub fn pretty_context(ctx: &EvalContext) -> String {
    ctx.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{
        chooser_once, chooser_per_call, chooser_type, ctx_xnor_twice, ctx_xor_twice,
        frame_xor_twice, nat, numeral_term, or_term, pair_chooser_type, poly_choose,
        poly_diverge, poly_first, poly_second, wrap_functional, wrap_type, xor_value,
    };
    use crate::surface::{parse_context, term_from_source};
    use crate::syntax::term_eq;

    fn roundtrip(e: &Term) {
        let printed = pretty_term(e);
        let back = term_from_source(&printed)
            .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
        assert!(
            term_eq(&back, e),
            "print/reparse changed the term:\n  printed: {printed}"
        );
    }

    #[test]
    fn numerals_booleans_and_choice_print_as_themselves() {
        assert_eq!(pretty_term(&numeral_term(3)), "3");
        assert_eq!(pretty_term(&Term::Val(crate::encodings::tt())), "true");
        assert_eq!(pretty_term(&Term::Choice), "?");
    }

    #[test]
    fn let_prints_with_fresh_names() {
        let e = crate::encodings::let_in(Term::Choice, Term::Val(Value::Var(0)));
        assert_eq!(pretty_term(&e), "let x0 = ? in x0");
    }

    #[test]
    fn nested_binders_number_by_depth() {
        let e = term_from_source("fun a => fun b => a b").unwrap();
        assert_eq!(pretty_term(&e), "fun x0 => fun x1 => x0 x1");
    }

    #[test]
    fn known_types_print_in_surface_syntax() {
        assert_eq!(pretty_type(&nat()), "mu 'a. unit + 'a");
        assert_eq!(
            pretty_type(&wrap_type()),
            "mu 'a. (mu 'b. unit + 'b) + 'a -> 'a"
        );
        assert_eq!(
            pretty_type(&pair_chooser_type()),
            "all 'a. 'a * 'a -> 'a"
        );
    }

    #[test]
    fn type_printing_reparses() {
        for ty in [nat(), chooser_type(), wrap_type(), pair_chooser_type()] {
            let printed = pretty_type(&ty);
            let parsed = crate::surface::parse_type(&printed).unwrap();
            let back = crate::surface::desugar_type(&parsed).unwrap();
            assert_eq!(back, ty, "printed as `{printed}`");
        }
    }

    #[test]
    fn canonical_values_roundtrip() {
        for v in [
            xor_value(),
            chooser_per_call(),
            poly_diverge(),
            poly_first(),
            poly_second(),
            poly_choose(),
            wrap_functional(),
            frame_xor_twice(),
            crate::encodings::fix_value(),
        ] {
            roundtrip(&Term::Val(v));
        }
        roundtrip(&chooser_once());
    }

    #[test]
    fn sugar_heavy_sources_roundtrip() {
        for src in [
            "fun x => x",
            "let x = ? in (x, x)",
            "ifz ? then 0 else omega[mu 'a. unit + 'a]",
            "case in2[mu 'a. unit + 'a] () of in1 y => 0 | in2 y => 1",
            "(fun f => f ()) (fun u : unit => u)",
            "Lam 'a => fun p : 'a * 'a => proj1 p",
            "fix[unit][unit] (fun k : unit -> unit => k)",
            "1 or (2 or 3)",
            "proj2 ((), fun x : unit => x)",
        ] {
            roundtrip(&term_from_source(src).unwrap());
        }
    }

    #[test]
    fn or_prints_as_its_expansion_and_roundtrips() {
        let e = or_term(numeral_term(0), numeral_term(1));
        let printed = pretty_term(&e);
        assert!(printed.starts_with("let x0 = ? in case x0 of"));
        roundtrip(&e);
    }

    #[test]
    fn omega_resugars_only_at_type_application() {
        let e = term_from_source("omega[unit]").unwrap();
        assert_eq!(pretty_term(&e), "omega[unit]");
        roundtrip(&e);
    }

    #[test]
    fn nonfinal_case_branches_with_open_bodies_are_parenthesized() {
        let src = "case in1[mu 'a. unit + unit] () of \
                   in1 a => (case in1[mu 'b. unit + unit] a of in1 b => 0 | in2 b => 1) \
                   | in2 c => 2";
        let e = term_from_source(src).unwrap();
        roundtrip(&e);
        let printed = pretty_term(&e);
        assert!(printed.contains("=> (case"));
    }

    #[test]
    fn contexts_print_and_reparse() {
        for ctx in [
            EvalContext::hole(),
            ctx_xor_twice(),
            ctx_xnor_twice(),
            EvalContext::single(crate::encodings::id_value(nat())),
        ] {
            let printed = pretty_context(&ctx);
            let back = parse_context(&printed)
                .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
            assert_eq!(back, ctx, "printed as `{printed}`");
        }
    }

    #[test]
    fn free_variables_print_without_panicking() {
        let open_term = Term::Val(Value::Var(4));
        assert_eq!(pretty_term(&open_term), "_4");
        let open_ty = Type::Var(2);
        assert_eq!(pretty_type(&open_ty), "'_2");
    }
}
