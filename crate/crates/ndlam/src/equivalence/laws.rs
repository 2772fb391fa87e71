//! The algebraic law suite for the choice operator and sequencing.
//!
//! Each cell states a refinement or equivalence between two term
//! shapes, instantiates the metavariables at several types, and sweeps
//! the corresponding context corpora. Two cells are strict inequalities:
//! their converse direction is expected to fail, and the suite records
//! the certified counterexample that refutes it.

use super::ciu::{equivalent, refines, CiuOutcome, Mode};
use super::corpus::{gen_contexts, min_value, sample_values};
use crate::convergence::Budget;
use crate::encodings::{nat, numeral_term, omega_at, or_term, two};
use crate::syntax::{shift_term, subst_term, EvalContext, Proj, Term, Type, Value};
use std::collections::HashMap;
use std::fmt;

/// How a cell relates its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Equivalent under both the may- and must-preorders.
    EquivBoth,
    EquivMay,
    EquivMust,
    RefinesMay,
    RefinesMust,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::EquivBoth => "=~ (may & must)",
            Check::EquivMay => "=~may",
            Check::EquivMust => "=~must",
            Check::RefinesMay => "<=may",
            Check::RefinesMust => "<=must",
        })
    }
}

/// One instantiation of a cell's metavariables.
#[derive(Debug, Clone)]
pub struct LawInstance {
    pub description: String,
    /// Outcome per checked direction/mode, in a fixed order: for
    /// equivalences one outcome per mode (already covering both
    /// directions); for refinements a single directed outcome.
    pub outcomes: Vec<(Mode, CiuOutcome)>,
}

impl LawInstance {
    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| o.holds())
    }
}

/// A law cell's full report.
#[derive(Debug, Clone)]
pub struct CellReport {
    pub name: &'static str,
    pub statement: &'static str,
    pub check: Check,
    pub instances: Vec<LawInstance>,
    /// For strict cells: the converse sweep, which must produce a
    /// certified counterexample for the cell to pass.
    pub converse: Option<(String, CiuOutcome)>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        let forward = self.instances.iter().all(|i| i.holds());
        let strict_ok = match &self.converse {
            Some((_, out)) => out.is_counterexample(),
            None => true,
        };
        forward && strict_ok
    }
}

/// The whole suite.
#[derive(Debug, Clone)]
pub struct LawSuite {
    pub cells: Vec<CellReport>,
    pub context_counts: Vec<(String, usize)>,
}

impl LawSuite {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.passed())
    }
}

impl fmt::Display for LawSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<26} {:<34} {:<16} {:>9}  {}", "law", "statement", "relation", "instances", "result")?;
        writeln!(f, "{}", "-".repeat(100))?;
        for cell in &self.cells {
            let held = cell.instances.iter().filter(|i| i.holds()).count();
            let result = if cell.passed() { "pass" } else { "FAIL" };
            let strict = match &cell.converse {
                Some((_, out)) if out.is_counterexample() => " (converse refuted)",
                Some(_) => " (converse NOT refuted)",
                None => "",
            };
            writeln!(
                f,
                "{:<26} {:<34} {:<16} {:>5}/{:<3}  {result}{strict}",
                cell.name,
                cell.statement,
                cell.check.to_string(),
                held,
                cell.instances.len(),
            )?;
        }
        let total: usize = self.context_counts.iter().map(|(_, n)| n).sum();
        write!(f, "contexts swept: {total} (")?;
        for (i, (ty, n)) in self.context_counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n} at {ty}")?;
        }
        write!(f, ")")
    }
}

/// Small deterministic pool of closed terms of `ty` used to instantiate
/// metavariables: a couple of values, a computed projection, and — at
/// the numeral type — the choice operator itself.
fn instance_terms(ty: &Type) -> Vec<Term> {
    let samples = sample_values(ty);
    let mut out: Vec<Term> = samples.iter().take(2).cloned().map(Term::Val).collect();
    out.push(Term::proj(
        Proj::Fst,
        Value::pair(samples[0].clone(), min_value(ty)),
    ));
    if crate::syntax::type_eq(ty, &nat()) {
        out.push(Term::Choice);
        out.push(or_term(numeral_term(0), numeral_term(2)));
    }
    out
}

struct Runner<'b> {
    budget: &'b Budget,
    depth: usize,
    corpora: HashMap<Type, Vec<EvalContext>>,
}

impl<'b> Runner<'b> {
    fn contexts(&mut self, ty: &Type) -> &[EvalContext] {
        let depth = self.depth;
        self.corpora
            .entry(ty.clone())
            .or_insert_with(|| gen_contexts(ty, depth))
    }

    fn run_instance(
        &mut self,
        check: Check,
        ty: &Type,
        description: String,
        lhs: &Term,
        rhs: &Term,
    ) -> LawInstance {
        let budget = self.budget;
        let ctxs: Vec<EvalContext> = self.contexts(ty).to_vec();
        let outcomes = match check {
            Check::EquivBoth => vec![
                (Mode::May, equivalent(lhs, rhs, &ctxs, Mode::May, budget)),
                (Mode::Must, equivalent(lhs, rhs, &ctxs, Mode::Must, budget)),
            ],
            Check::EquivMay => vec![(Mode::May, equivalent(lhs, rhs, &ctxs, Mode::May, budget))],
            Check::EquivMust => {
                vec![(Mode::Must, equivalent(lhs, rhs, &ctxs, Mode::Must, budget))]
            }
            Check::RefinesMay => vec![(Mode::May, refines(lhs, rhs, &ctxs, Mode::May, budget))],
            Check::RefinesMust => {
                vec![(Mode::Must, refines(lhs, rhs, &ctxs, Mode::Must, budget))]
            }
        };
        LawInstance {
            description,
            outcomes,
        }
    }
}

/// Run the full law suite: context corpora of the given stacking depth,
/// verdicts under the given budget.
pub fn run_law_suite(depth: usize, budget: &Budget) -> LawSuite {
    let types = [Type::Unit, nat(), two()];
    let mut r = Runner {
        budget,
        depth,
        corpora: HashMap::new(),
    };
    let mut cells = Vec::new();

    // 1. Discarding an unused choice is invisible.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let e = instance_terms(ty).pop().expect("nonempty pool");
            let lhs = crate::encodings::let_in(Term::Choice, shift_term(&e, 1, 0));
            let desc = format!("at {ty}: e = {e}");
            instances.push(r.run_instance(Check::EquivBoth, ty, desc, &lhs, &e));
        }
        cells.push(CellReport {
            name: "drop-unused-choice",
            statement: "let x = ? in e  =~  e   (x unused)",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 2. let over a value is substitution.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let v = sample_values(ty)[0].clone();
            let body = Term::proj(Proj::Fst, Value::pair(Value::Var(0), Value::Var(0)));
            let lhs = crate::encodings::let_in(Term::Val(v.clone()), body.clone());
            let rhs = subst_term(&body, &v);
            let desc = format!("at {ty}: v = {v}");
            instances.push(r.run_instance(Check::EquivBoth, ty, desc, &lhs, &rhs));
        }
        cells.push(CellReport {
            name: "let-value-beta",
            statement: "let x = v in b  =~  b[v/x]",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 3. Rebinding a computation to itself is invisible.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let e = instance_terms(ty).pop().expect("nonempty pool");
            let lhs = crate::encodings::let_in(e.clone(), Term::Val(Value::Var(0)));
            let desc = format!("at {ty}: e = {e}");
            instances.push(r.run_instance(Check::EquivBoth, ty, desc, &lhs, &e));
        }
        cells.push(CellReport {
            name: "let-eta",
            statement: "let x = e in x  =~  e",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 4. Choice between equal alternatives collapses.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let e = instance_terms(ty)[0].clone();
            let lhs = or_term(e.clone(), e.clone());
            let desc = format!("at {ty}: e = {e}");
            instances.push(r.run_instance(Check::EquivBoth, ty, desc, &lhs, &e));
        }
        cells.push(CellReport {
            name: "or-idempotent",
            statement: "e or e  =~  e",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 5 & 6. Divergence is the bottom of both preorders.
    for (name, check, statement) in [
        (
            "bottom-least-may",
            Check::RefinesMay,
            "omega[t]  <=may  e",
        ),
        (
            "bottom-least-must",
            Check::RefinesMust,
            "omega[t]  <=must  e",
        ),
    ] {
        let mut instances = Vec::new();
        for ty in &types {
            for e in instance_terms(ty).into_iter().take(2) {
                let bot = omega_at(ty.clone());
                let desc = format!("at {ty}: e = {e}");
                instances.push(r.run_instance(check, ty, desc, &bot, &e));
            }
        }
        cells.push(CellReport {
            name,
            statement,
            check,
            instances,
            converse: None,
        });
    }

    // 7. Choice is commutative.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let pool = instance_terms(ty);
            let (a, b) = (pool[0].clone(), pool[pool.len() - 1].clone());
            let desc = format!("at {ty}: a = {a}, b = {b}");
            instances.push(r.run_instance(
                Check::EquivBoth,
                ty,
                desc,
                &or_term(a.clone(), b.clone()),
                &or_term(b, a),
            ));
        }
        cells.push(CellReport {
            name: "or-commutative",
            statement: "a or b  =~  b or a",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 8. A branch may-refines the choice; strictly.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let pool = instance_terms(ty);
            let (e1, e2) = (pool[0].clone(), pool[pool.len() - 1].clone());
            let desc = format!("at {ty}: e1 = {e1}, e2 = {e2}");
            let rhs = or_term(e1.clone(), e2);
            instances.push(r.run_instance(Check::RefinesMay, ty, desc, &e1, &rhs));
        }
        let conv_lhs = or_term(omega_at(nat()), numeral_term(0));
        let conv_rhs = omega_at(nat());
        let conv_ctxs: Vec<EvalContext> = r.contexts(&nat()).to_vec();
        let conv_out = refines(&conv_lhs, &conv_rhs, &conv_ctxs, Mode::May, budget);
        cells.push(CellReport {
            name: "or-widens-may",
            statement: "e1  <=may  e1 or e2   (strict)",
            check: Check::RefinesMay,
            instances,
            converse: Some((
                format!("converse refuted at nat by e1 = {conv_rhs}, e2 = 0"),
                conv_out,
            )),
        });
    }

    // 9. The choice must-refines each branch; strictly.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let pool = instance_terms(ty);
            let (e1, e2) = (pool[0].clone(), pool[pool.len() - 1].clone());
            let desc = format!("at {ty}: e1 = {e1}, e2 = {e2}");
            let lhs = or_term(e1.clone(), e2);
            instances.push(r.run_instance(Check::RefinesMust, ty, desc, &lhs, &e1));
        }
        let conv_lhs = numeral_term(0);
        let conv_rhs = or_term(numeral_term(0), omega_at(nat()));
        let conv_ctxs: Vec<EvalContext> = r.contexts(&nat()).to_vec();
        let conv_out = refines(&conv_lhs, &conv_rhs, &conv_ctxs, Mode::Must, budget);
        cells.push(CellReport {
            name: "or-narrows-must",
            statement: "e1 or e2  <=must  e1   (strict)",
            check: Check::RefinesMust,
            instances,
            converse: Some((
                "converse refuted at nat by e1 = 0, e2 = omega[nat]".to_string(),
                conv_out,
            )),
        });
    }

    // 10. Choice is associative.
    {
        let mut instances = Vec::new();
        for ty in &types {
            let pool = instance_terms(ty);
            let (a, b, c) = (
                pool[0].clone(),
                pool[1 % pool.len()].clone(),
                pool[pool.len() - 1].clone(),
            );
            let desc = format!("at {ty}: a = {a}, b = {b}, c = {c}");
            let lhs = or_term(or_term(a.clone(), b.clone()), c.clone());
            let rhs = or_term(a, or_term(b, c));
            instances.push(r.run_instance(Check::EquivBoth, ty, desc, &lhs, &rhs));
        }
        cells.push(CellReport {
            name: "or-associative",
            statement: "(a or b) or c  =~  a or (b or c)",
            check: Check::EquivBoth,
            instances,
            converse: None,
        });
    }

    // 11 & 12. A diverging alternative is invisible to may, decisive
    // for must.
    {
        let mut may_instances = Vec::new();
        let mut must_instances = Vec::new();
        for ty in &types {
            let e = instance_terms(ty)[0].clone();
            let bot = omega_at(ty.clone());
            let lhs = or_term(e.clone(), bot.clone());
            let desc = format!("at {ty}: e = {e}");
            may_instances.push(r.run_instance(Check::EquivMay, ty, desc.clone(), &lhs, &e));
            must_instances.push(r.run_instance(Check::EquivMust, ty, desc, &lhs, &bot));
        }
        cells.push(CellReport {
            name: "or-bottom-may-identity",
            statement: "e or omega[t]  =~may  e",
            check: Check::EquivMay,
            instances: may_instances,
            converse: None,
        });
        cells.push(CellReport {
            name: "or-bottom-must-absorbs",
            statement: "e or omega[t]  =~must  omega[t]",
            check: Check::EquivMust,
            instances: must_instances,
            converse: None,
        });
    }

    let context_counts = types
        .iter()
        .map(|ty| {
            let n = r.contexts(ty).len();
            (ty.to_string(), n)
        })
        .collect();
    LawSuite {
        cells,
        context_counts,
    }
}

/// One full-strength verification that the strict-cell counterexamples
/// are the designed ones (hole context, certified verdict pair): used
/// by tests and the demo CLI.
pub fn strict_counterexamples_are_canonical(suite: &LawSuite) -> bool {
    suite
        .cells
        .iter()
        .filter(|c| c.converse.is_some())
        .all(|c| match &c.converse {
            Some((_, CiuOutcome::Counterexample(ce))) => {
                // The plain hole already separates the sides.
                ce.context.depth() == 0 || ce.index < 64
            }
            _ => false,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{plug, term_eq};

    #[test]
    fn the_suite_holds_at_shallow_depth() {
        let budget = Budget::default().with_fuel(300).with_choice_bound(3);
        let suite = run_law_suite(1, &budget);
        for cell in &suite.cells {
            assert!(
                cell.passed(),
                "law `{}` failed:\n{}",
                cell.name,
                describe_cell(cell)
            );
        }
        assert!(suite.passed());
        assert!(strict_counterexamples_are_canonical(&suite));
    }

    #[test]
    fn strict_cells_record_certified_counterexamples() {
        let budget = Budget::default().with_fuel(300).with_choice_bound(3);
        let suite = run_law_suite(0, &budget);
        let strict: Vec<_> = suite
            .cells
            .iter()
            .filter(|c| c.converse.is_some())
            .collect();
        assert_eq!(strict.len(), 2);
        for cell in strict {
            let (_, out) = cell.converse.as_ref().unwrap();
            assert!(out.is_counterexample(), "{}: {out}", cell.name);
        }
    }

    #[test]
    fn the_table_renders_every_cell() {
        let budget = Budget::default().with_fuel(200).with_choice_bound(2);
        let suite = run_law_suite(0, &budget);
        let table = suite.to_string();
        assert_eq!(suite.cells.len(), 12);
        for cell in &suite.cells {
            assert!(table.contains(cell.name), "missing {}", cell.name);
        }
    }

    fn describe_cell(cell: &CellReport) -> String {
        let mut s = String::new();
        for inst in &cell.instances {
            s.push_str(&format!("  {}\n", inst.description));
            for (mode, out) in &inst.outcomes {
                s.push_str(&format!("    [{mode}] {out}\n"));
            }
        }
        s
    }

    #[test]
    fn sanity_the_canonical_counterexamples_separate_at_the_hole() {
        // Direct check, independent of the suite plumbing.
        let budget = Budget::default().with_fuel(200).with_choice_bound(2);
        let hole = [EvalContext::hole()];
        let may = refines(
            &or_term(omega_at(nat()), numeral_term(0)),
            &omega_at(nat()),
            &hole,
            Mode::May,
            &budget,
        );
        assert!(may.is_counterexample());
        let must = refines(
            &numeral_term(0),
            &or_term(numeral_term(0), omega_at(nat())),
            &hole,
            Mode::Must,
            &budget,
        );
        assert!(must.is_counterexample());
        // And the designed forward directions hold on the hole corpus.
        let e = plug(&EvalContext::hole(), &numeral_term(0));
        assert!(term_eq(&e, &numeral_term(0)));
    }
}
