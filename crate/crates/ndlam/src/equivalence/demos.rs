//! Guided demonstrations: the two-call counterexample to extensional
//! reasoning, fixed-point unrolling, the identity fixed point on a
//! recursive type, and behavioral classification of the polymorphic
//! pair-choosers.

use super::ciu::{equivalent, CiuOutcome, Counterexample, Mode};
use super::corpus::gen_contexts;
use crate::convergence::{
    explore, may_converges, must_converges, Budget, MayVerdict, MustVerdict,
};
use crate::encodings::{
    as_bool, bool_value, chooser_once, chooser_per_call, ctx_xnor_twice, ctx_xor_twice,
    diverging_fn, fix_value, id_value, let_in, letapp, nat, numeral, numeral_term,
    pair_chooser_type, poly_choose, poly_choose_once, poly_diverge, poly_diverge_applied,
    poly_first, poly_second, tt, two, wrap_functional, wrap_type,
};
use crate::reduction::{step_successors, Successors};
use crate::syntax::{is_closed, plug, term_eq, EvalContext, Term, Type, Value};
use std::fmt;

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn value_eq(a: &Value, b: &Value) -> bool {
    term_eq(&Term::Val(a.clone()), &Term::Val(b.clone()))
}

/// All boolean result values the explored graph of `e` reaches, sorted
/// and deduplicated.
fn boolean_results(e: &Term, budget: &Budget) -> Vec<bool> {
    let tree = explore(e, budget);
    let mut out: Vec<bool> = tree
        .value_nodes()
        .filter_map(|id| match &tree.nodes[id].term {
            Term::Val(v) => as_bool(v),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn may_label(v: &MayVerdict) -> String {
    match v {
        MayVerdict::Converges { unfold_count, .. } => {
            format!("converges (unfolds: {unfold_count})")
        }
        MayVerdict::DivergesCertified { .. } => "diverges, certified".to_string(),
        MayVerdict::Unknown { .. } => "unknown (budget)".to_string(),
    }
}

fn must_label(v: &MustVerdict) -> String {
    match v {
        MustVerdict::MustConverges { rank, exact } => format!(
            "must-converges (rank {rank}{})",
            if *exact { ", exact" } else { ", truncated" }
        ),
        MustVerdict::Refuted { .. } => "refuted by an infinite path".to_string(),
        MustVerdict::Unknown => "unknown (budget)".to_string(),
    }
}

fn set_label(bs: &[bool]) -> String {
    let names: Vec<&str> = bs.iter().map(|b| if *b { "true" } else { "false" }).collect();
    format!("{{{}}}", names.join(", "))
}

// ---------------------------------------------------------------------------
// 1. Two calls defeat pointwise reasoning
// ---------------------------------------------------------------------------

/// One input pair and the result sets of the two choosers on it.
#[derive(Debug, Clone)]
pub struct SingleCallRow {
    pub input: (bool, bool),
    pub per_call: Vec<bool>,
    pub committed: Vec<bool>,
}

impl SingleCallRow {
    pub fn agree(&self) -> bool {
        self.per_call == self.committed
    }
}

/// The per-call chooser and the commit-up-front chooser have identical
/// result sets on every single application, yet a context calling its
/// argument twice separates them in both convergence modes.
#[derive(Debug, Clone)]
pub struct NonextensionalityDemo {
    pub rows: Vec<SingleCallRow>,
    /// `may` under the frame that converges only if two calls disagree.
    pub may_disagree_per_call: MayVerdict,
    pub may_disagree_committed: MayVerdict,
    /// `must` under the frame that converges only if two calls agree.
    pub must_agree_committed: MustVerdict,
    pub must_agree_per_call: MustVerdict,
}

impl NonextensionalityDemo {
    /// Every single-call result set matches.
    pub fn single_calls_agree(&self) -> bool {
        self.rows.iter().all(SingleCallRow::agree)
    }

    /// The four two-call verdicts land exactly as designed.
    pub fn verdicts_as_designed(&self) -> bool {
        self.may_disagree_per_call.converges()
            && matches!(self.may_disagree_committed, MayVerdict::DivergesCertified { .. })
            && self.must_agree_committed.holds_exactly()
            && matches!(self.must_agree_per_call, MustVerdict::Refuted { .. })
    }

    pub fn passed(&self) -> bool {
        self.single_calls_agree() && self.verdicts_as_designed()
    }
}

impl fmt::Display for NonextensionalityDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "single-call result sets at 2*2 -> 2:")?;
        writeln!(
            f,
            "  {:<16} {:<16} {:<16} {}",
            "input", "per-call", "committed", "agree"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "  ({:<5}, {:<5})   {:<16} {:<16} {}",
                row.input.0,
                row.input.1,
                set_label(&row.per_call),
                set_label(&row.committed),
                row.agree()
            )?;
        }
        writeln!(f, "two-call observations:")?;
        writeln!(
            f,
            "  may,  disagreement frame, per-call:  {}",
            may_label(&self.may_disagree_per_call)
        )?;
        writeln!(
            f,
            "  may,  disagreement frame, committed: {}",
            may_label(&self.may_disagree_committed)
        )?;
        writeln!(
            f,
            "  must, agreement frame,    committed: {}",
            must_label(&self.must_agree_committed)
        )?;
        writeln!(
            f,
            "  must, agreement frame,    per-call:  {}",
            must_label(&self.must_agree_per_call)
        )?;
        write!(
            f,
            "single calls agree: {}; two-call verdicts separate: {}",
            self.single_calls_agree(),
            self.verdicts_as_designed()
        )
    }
}

/// Run the two-call separation demo.
pub fn demo_nonextensionality(budget: &Budget) -> NonextensionalityDemo {
    let inputs = [(true, true), (true, false), (false, true), (false, false)];
    let rows = inputs
        .iter()
        .map(|&(a, b)| {
            let pair = Value::pair(bool_value(a), bool_value(b));
            let per_call = boolean_results(
                &Term::app(chooser_per_call(), Term::Val(pair.clone())),
                budget,
            );
            let committed = boolean_results(&letapp(chooser_once(), Term::Val(pair)), budget);
            SingleCallRow {
                input: (a, b),
                per_call,
                committed,
            }
        })
        .collect();
    let per_call = Term::Val(chooser_per_call());
    let committed = chooser_once();
    NonextensionalityDemo {
        rows,
        may_disagree_per_call: may_converges(&plug(&ctx_xor_twice(), &per_call), budget),
        may_disagree_committed: may_converges(&plug(&ctx_xor_twice(), &committed), budget),
        must_agree_committed: must_converges(&plug(&ctx_xnor_twice(), &committed), budget),
        must_agree_per_call: must_converges(&plug(&ctx_xnor_twice(), &per_call), budget),
    }
}

// ---------------------------------------------------------------------------
// 2. Fixed points
// ---------------------------------------------------------------------------

/// `let g = fix[dom] in let h = g[cod] in h f`: the fixed point of the
/// closed functional `f : (dom -> cod) -> (dom -> cod)`.
pub fn fixed_point(f: &Value, dom: Type, cod: Type) -> Term {
    debug_assert!(is_closed(&Term::Val(f.clone())));
    let_in(
        Term::ty_app(fix_value(), dom),
        let_in(
            Term::ty_app(Value::Var(0), cod),
            Term::app(Value::Var(0), Term::Val(f.clone())),
        ),
    )
}

/// One functional: its fixed point against one unrolling, and optionally
/// against a closed candidate for what the fixed point denotes.
#[derive(Debug, Clone)]
pub struct FixRow {
    pub name: &'static str,
    pub unroll_may: CiuOutcome,
    pub unroll_must: CiuOutcome,
    pub candidate: Option<(String, CiuOutcome, CiuOutcome)>,
}

impl FixRow {
    pub fn holds(&self) -> bool {
        self.unroll_may.holds()
            && self.unroll_must.holds()
            && self
                .candidate
                .as_ref()
                .map_or(true, |(_, may, must)| may.holds() && must.holds())
    }
}

#[derive(Debug, Clone)]
pub struct FixDemo {
    pub rows: Vec<FixRow>,
    pub contexts_swept: usize,
}

impl FixDemo {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(FixRow::holds)
    }
}

impl fmt::Display for FixDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "fixed points at nat -> nat over {} contexts:",
            self.contexts_swept
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "  {:<22} fix f =~ f (fix f): may {}, must {}",
                row.name, row.unroll_may, row.unroll_must
            )?;
            if let Some((cand, may, must)) = &row.candidate {
                writeln!(
                    f,
                    "  {:<22} fix f =~ {cand}: may {may}, must {must}",
                    ""
                )?;
            }
        }
        write!(f, "all rows hold: {}", self.passed())
    }
}

/// Check `fix f =~ f (fix f)` (and candidate identifications) for three
/// functionals on the numerals.
pub fn demo_fix(depth: usize, budget: &Budget) -> FixDemo {
    let fn_ty = Type::arrow(nat(), nat());
    let ctxs = gen_contexts(&fn_ty, depth);

    let const_zero = Value::lam(nat(), numeral_term(0));
    // fun g => fun x => case x of in1 _ => 0 | in2 y => g y
    let recurse_body = Term::case(
        Value::Var(0),
        vec![
            numeral_term(0),
            Term::app(Value::Var(2), Term::Val(Value::Var(0))),
        ],
    );
    let functionals: Vec<(&'static str, Value, Option<(String, Value)>)> = vec![
        (
            "ignore-and-identity",
            Value::lam(
                fn_ty.clone(),
                Term::Val(Value::lam(nat(), Term::Val(Value::Var(0)))),
            ),
            Some(("fun x => x".to_string(), id_value(nat()))),
        ),
        (
            "ignore-and-zero",
            Value::lam(fn_ty.clone(), Term::Val(Value::lam(nat(), numeral_term(0)))),
            Some(("fun x => 0".to_string(), const_zero.clone())),
        ),
        (
            "count-down-to-zero",
            Value::lam(fn_ty.clone(), Term::Val(Value::lam(nat(), recurse_body))),
            Some(("fun x => 0".to_string(), const_zero)),
        ),
    ];

    let rows = functionals
        .into_iter()
        .map(|(name, func, cand)| {
            let fp = fixed_point(&func, nat(), nat());
            let unrolled = Term::app(func, fp.clone());
            FixRow {
                name,
                unroll_may: equivalent(&fp, &unrolled, &ctxs, Mode::May, budget),
                unroll_must: equivalent(&fp, &unrolled, &ctxs, Mode::Must, budget),
                candidate: cand.map(|(desc, v)| {
                    let cand_term = Term::Val(v);
                    (
                        desc,
                        equivalent(&fp, &cand_term, &ctxs, Mode::May, budget),
                        equivalent(&fp, &cand_term, &ctxs, Mode::Must, budget),
                    )
                }),
            }
        })
        .collect();
    FixDemo {
        rows,
        contexts_swept: ctxs.len(),
    }
}

// ---------------------------------------------------------------------------
// 3. The identity fixed point on a recursive type
// ---------------------------------------------------------------------------

/// One element of the recursive type, pushed through the structure-map
/// fixed point.
#[derive(Debug, Clone)]
pub struct InvarianceRow {
    pub description: String,
    pub applied_converges: bool,
    /// Whether the single result value is behaviorally equal to the
    /// input element (`None` when no value was reached).
    pub result_matches: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct MinimalInvarianceDemo {
    pub rows: Vec<InvarianceRow>,
    /// The fixed point against the literal identity, as functions.
    pub identity_may: CiuOutcome,
    pub identity_must: CiuOutcome,
    pub contexts_swept: usize,
}

impl MinimalInvarianceDemo {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.applied_converges && r.result_matches == Some(true))
            && self.identity_may.holds()
            && self.identity_must.holds()
    }
}

impl fmt::Display for MinimalInvarianceDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure-map fixed point applied to sample elements:")?;
        for row in &self.rows {
            writeln!(
                f,
                "  {:<28} converges: {:<5} result matches input: {}",
                row.description,
                row.applied_converges,
                row.result_matches
                    .map_or("n/a".to_string(), |b| b.to_string()),
            )?;
        }
        writeln!(
            f,
            "as a function ({} contexts): =~may identity: {}; =~must identity: {}",
            self.contexts_swept, self.identity_may, self.identity_must
        )?;
        write!(f, "passed: {}", self.passed())
    }
}

/// Check that the fixed point of the structure map on `mu t. nat + (t -> t)`
/// behaves as the identity: elementwise on samples, and as a function
/// against `fun x => x` over application contexts.
pub fn demo_minimal_invariance(depth: usize, budget: &Budget) -> MinimalInvarianceDemo {
    let t = wrap_type();
    let fp = fixed_point(&wrap_functional(), t.clone(), t.clone());
    let elem_ctxs = gen_contexts(&t, depth);

    let const_fn = Value::lam(t.clone(), Term::Val(Value::inj(1, numeral(0), t.clone())));
    let samples: Vec<(String, Value)> = vec![
        ("in1 0".to_string(), Value::inj(1, numeral(0), t.clone())),
        ("in1 3".to_string(), Value::inj(1, numeral(3), t.clone())),
        ("in1 7".to_string(), Value::inj(1, numeral(7), t.clone())),
        (
            "in2 (fun x => x)".to_string(),
            Value::inj(2, id_value(t.clone()), t.clone()),
        ),
        (
            "in2 (fun x => in1 0)".to_string(),
            Value::inj(2, const_fn, t.clone()),
        ),
        (
            "in2 (fun x => omega)".to_string(),
            Value::inj(2, diverging_fn(t.clone(), t.clone()), t.clone()),
        ),
    ];

    let rows = samples
        .into_iter()
        .map(|(description, v)| {
            let applied = letapp(fp.clone(), Term::Val(v.clone()));
            let tree = explore(&applied, budget);
            let result = tree
                .value_nodes()
                .next()
                .map(|id| tree.nodes[id].term.clone());
            let result_matches = result.as_ref().map(|rv| {
                equivalent(rv, &Term::Val(v.clone()), &elem_ctxs, Mode::May, budget).holds()
                    && equivalent(rv, &Term::Val(v), &elem_ctxs, Mode::Must, budget).holds()
            });
            InvarianceRow {
                description,
                applied_converges: result.is_some(),
                result_matches,
            }
        })
        .collect();

    let fn_ctxs = gen_contexts(&Type::arrow(t.clone(), t.clone()), depth);
    let id_term = Term::Val(id_value(t));
    MinimalInvarianceDemo {
        rows,
        identity_may: equivalent(&fp, &id_term, &fn_ctxs, Mode::May, budget),
        identity_must: equivalent(&fp, &id_term, &fn_ctxs, Mode::Must, budget),
        contexts_swept: fn_ctxs.len(),
    }
}

// ---------------------------------------------------------------------------
// 4. Classifying the polymorphic pair-choosers
// ---------------------------------------------------------------------------

/// Behavior of a closed value of type `all a. (a * a) -> a`, observed
/// through instantiation and one application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyClass {
    DivergesAtInstantiation,
    DivergesWhenApplied,
    ProjectsFirst,
    ProjectsSecond,
    ChoosesAmongComponents,
    Unclassified,
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyClass::DivergesAtInstantiation => "diverges at instantiation",
            PolyClass::DivergesWhenApplied => "diverges when applied",
            PolyClass::ProjectsFirst => "projects first component",
            PolyClass::ProjectsSecond => "projects second component",
            PolyClass::ChoosesAmongComponents => "chooses among components",
            PolyClass::Unclassified => "unclassified (budget)",
        })
    }
}

/// Classification at the booleans, cross-checked at the numerals, plus
/// whether instantiation alone already resolves a choice.
#[derive(Debug, Clone)]
pub struct PolyProfile {
    pub class: PolyClass,
    pub class_at_nat: PolyClass,
    /// More than one distinct value for `v[2]`: the choice happens at
    /// instantiation rather than per application.
    pub commits_at_instantiation: bool,
}

impl PolyProfile {
    /// Classification is uniform across the two observation types.
    pub fn consistent(&self) -> bool {
        self.class == self.class_at_nat
    }
}

/// Classify by instantiating at `ty` and applying once to the pair
/// `(left, right)`; `left` and `right` must be distinct values of `ty`.
fn classify_at(v: &Value, ty: &Type, left: &Value, right: &Value, budget: &Budget) -> PolyClass {
    let inst = Term::ty_app(v.clone(), ty.clone());
    match must_converges(&inst, budget) {
        MustVerdict::Refuted { .. } => return PolyClass::DivergesAtInstantiation,
        MustVerdict::Unknown => return PolyClass::Unclassified,
        MustVerdict::MustConverges { .. } => {}
    }
    let applied = letapp(inst, Term::Val(Value::pair(left.clone(), right.clone())));
    match must_converges(&applied, budget) {
        MustVerdict::Refuted { .. } => PolyClass::DivergesWhenApplied,
        MustVerdict::Unknown => PolyClass::Unclassified,
        MustVerdict::MustConverges { .. } => {
            let tree = explore(&applied, budget);
            let mut saw_left = false;
            let mut saw_right = false;
            for id in tree.value_nodes() {
                if let Term::Val(rv) = &tree.nodes[id].term {
                    saw_left |= value_eq(rv, left);
                    saw_right |= value_eq(rv, right);
                }
            }
            match (saw_left, saw_right) {
                (true, false) => PolyClass::ProjectsFirst,
                (false, true) => PolyClass::ProjectsSecond,
                (true, true) => PolyClass::ChoosesAmongComponents,
                (false, false) => PolyClass::Unclassified,
            }
        }
    }
}

/// Full behavioral profile of a closed pair-chooser.
pub fn classify_pair_chooser(v: &Value, budget: &Budget) -> PolyProfile {
    let class = classify_at(v, &two(), &tt(), &crate::encodings::ff(), budget);
    let class_at_nat = classify_at(v, &nat(), &numeral(0), &numeral(1), budget);
    let inst_tree = explore(&Term::ty_app(v.clone(), two()), budget);
    let commits_at_instantiation = inst_tree.value_nodes().count() > 1;
    PolyProfile {
        class,
        class_at_nat,
        commits_at_instantiation,
    }
}

/// A context separating two pair-choosers, with the mode it separates
/// them in.
#[derive(Debug, Clone)]
pub struct Separation {
    pub left: String,
    pub right: String,
    pub mode: Mode,
    pub counterexample: Counterexample,
}

/// First counterexample distinguishing `a` from `b` over `ctxs`, trying
/// may- then must-equivalence.
pub fn distinguish(
    a: &Term,
    b: &Term,
    ctxs: &[EvalContext],
    budget: &Budget,
) -> Option<(Mode, Counterexample)> {
    for mode in [Mode::May, Mode::Must] {
        if let CiuOutcome::Counterexample(ce) = equivalent(a, b, ctxs, mode, budget) {
            return Some((mode, *ce));
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct ParametricityDemo {
    /// The five canonical pair-choosers with their observed profiles.
    pub profiles: Vec<(String, PolyProfile)>,
    /// The commit-at-instantiation chooser's profile.
    pub committed_profile: (String, PolyProfile),
    /// Pairwise separations among the five canonicals.
    pub separations: Vec<Separation>,
    /// Separations of the committed chooser from each canonical.
    pub committed_separations: Vec<Separation>,
    /// Canonical pairs no context separated.
    pub unseparated: Vec<(String, String)>,
    /// Instantiating the per-call chooser at the booleans steps to the
    /// plain monomorphic chooser, literally.
    pub per_call_instantiates_literally: bool,
    /// Likewise for the committed chooser.
    pub committed_instantiates_literally: bool,
    pub contexts_swept: usize,
}

impl ParametricityDemo {
    pub fn expected_classes() -> [PolyClass; 5] {
        [
            PolyClass::DivergesAtInstantiation,
            PolyClass::DivergesWhenApplied,
            PolyClass::ProjectsFirst,
            PolyClass::ProjectsSecond,
            PolyClass::ChoosesAmongComponents,
        ]
    }

    pub fn passed(&self) -> bool {
        let classes_as_expected = self
            .profiles
            .iter()
            .zip(Self::expected_classes())
            .all(|((_, p), want)| p.class == want && p.consistent());
        classes_as_expected
            && self.committed_profile.1.class == PolyClass::ChoosesAmongComponents
            && self.committed_profile.1.commits_at_instantiation
            && self.unseparated.is_empty()
            && self.committed_separations.len() == self.profiles.len()
            && self.per_call_instantiates_literally
            && self.committed_instantiates_literally
    }
}

impl fmt::Display for ParametricityDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profiles at all 'a. 'a * 'a -> 'a:")?;
        for (name, p) in self.profiles.iter().chain([&self.committed_profile]) {
            writeln!(
                f,
                "  {:<26} {} (at nat: {}; commits at instantiation: {})",
                name, p.class, p.class_at_nat, p.commits_at_instantiation
            )?;
        }
        writeln!(
            f,
            "pairwise separations over {} contexts: {} of {} canonical pairs, {} of {} against the committed chooser",
            self.contexts_swept,
            self.separations.len(),
            self.separations.len() + self.unseparated.len(),
            self.committed_separations.len(),
            self.profiles.len(),
        )?;
        for s in self.separations.iter().chain(&self.committed_separations) {
            writeln!(
                f,
                "  {} vs {} separated in {} mode by context #{}",
                s.left, s.right, s.mode, s.counterexample.index
            )?;
        }
        if !self.unseparated.is_empty() {
            for (a, b) in &self.unseparated {
                writeln!(f, "  NOT separated: {a} vs {b}")?;
            }
        }
        writeln!(
            f,
            "instantiation at 2 is literal: per-call {}, committed {}",
            self.per_call_instantiates_literally, self.committed_instantiates_literally
        )?;
        write!(f, "passed: {}", self.passed())
    }
}

fn steps_to_exactly(e: &Term, want: &Term) -> bool {
    match step_successors(e, 0) {
        Successors::Deterministic(s) => term_eq(&s.target, want),
        _ => false,
    }
}

/// Profile the five canonical pair-choosers, separate them pairwise, and
/// show the committed chooser differs from every one of them.
pub fn demo_parametricity(depth: usize, budget: &Budget) -> ParametricityDemo {
    let canonicals: Vec<(String, Value)> = vec![
        ("omega-under-Lam".to_string(), poly_diverge()),
        ("diverge-on-apply".to_string(), poly_diverge_applied()),
        ("project-first".to_string(), poly_first()),
        ("project-second".to_string(), poly_second()),
        ("choose-per-call".to_string(), poly_choose()),
    ];
    let committed = ("choose-at-instantiation".to_string(), poly_choose_once());

    let profiles: Vec<(String, PolyProfile)> = canonicals
        .iter()
        .map(|(n, v)| (n.clone(), classify_pair_chooser(v, budget)))
        .collect();
    let committed_profile = (
        committed.0.clone(),
        classify_pair_chooser(&committed.1, budget),
    );

    let ctxs = gen_contexts(&pair_chooser_type(), depth);
    let mut separations = Vec::new();
    let mut unseparated = Vec::new();
    for i in 0..canonicals.len() {
        for j in (i + 1)..canonicals.len() {
            let (ln, lv) = &canonicals[i];
            let (rn, rv) = &canonicals[j];
            match distinguish(
                &Term::Val(lv.clone()),
                &Term::Val(rv.clone()),
                &ctxs,
                budget,
            ) {
                Some((mode, counterexample)) => separations.push(Separation {
                    left: ln.clone(),
                    right: rn.clone(),
                    mode,
                    counterexample,
                }),
                None => unseparated.push((ln.clone(), rn.clone())),
            }
        }
    }
    let committed_separations = canonicals
        .iter()
        .filter_map(|(n, v)| {
            distinguish(
                &Term::Val(committed.1.clone()),
                &Term::Val(v.clone()),
                &ctxs,
                budget,
            )
            .map(|(mode, counterexample)| Separation {
                left: committed.0.clone(),
                right: n.clone(),
                mode,
                counterexample,
            })
        })
        .collect();

    let per_call_instantiates_literally = steps_to_exactly(
        &Term::ty_app(poly_choose(), two()),
        &Term::Val(chooser_per_call()),
    );
    let committed_instantiates_literally =
        steps_to_exactly(&Term::ty_app(poly_choose_once(), two()), &chooser_once());

    ParametricityDemo {
        profiles,
        committed_profile,
        separations,
        committed_separations,
        unseparated,
        per_call_instantiates_literally,
        committed_instantiates_literally,
        contexts_swept: ctxs.len(),
    }
}
