//! Command-line front end: type checking, single-path tracing,
//! reduction-graph exploration, convergence verdicts, contextual
//! equivalence, the algebraic law table, and the guided demos.
//!
//! Exit codes: 0 = positive verdict (typechecks, holds, converges),
//! 1 = refuted (counterexample, certified divergence, failed law),
//! 2 = inconclusive (budget exhausted), 3 = unreadable input (I/O,
//! parse, scope, or type error), 64 = usage error.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use ndlam::convergence::{
    explore, may_converges, must_converges, Budget, InfinitePathEvidence, MayVerdict,
    MustVerdict,
};
use ndlam::equivalence::demos::{
    demo_fix, demo_minimal_invariance, demo_nonextensionality, demo_parametricity,
};
use ndlam::equivalence::laws::run_law_suite;
use ndlam::equivalence::{equivalent, gen_contexts, CiuOutcome, Mode};
use ndlam::reduction::{trace, ChoicePolicy, StepKind, TraceEnd};
use ndlam::surface::{parse_context, pretty_context, pretty_term, pretty_type, term_from_source};
use ndlam::syntax::{type_eq, EvalContext, Term, Type};
use ndlam::typing::{check_context, infer_closed};
use serde_json::json;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_PASS: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "ndlam",
    version,
    about = "Nondeterministic call-by-value lambda calculus: run programs, decide convergence, check contextual equivalence"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Maximum reduction-path length, in steps.
    #[arg(long, global = true, default_value_t = 500)]
    fuel: usize,
    /// Explored choice fanouts list the numerals 0..=BOUND.
    #[arg(long, global = true, default_value_t = 8)]
    choice_bound: u64,
    /// Frame-stacking depth of generated context corpora.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Seed for the random choice policy.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit line-delimited JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for corpus sweeps (0 keeps the library default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a program and print its type.
    Check { file: PathBuf },
    /// Follow one reduction path and print the trace.
    Run {
        file: PathBuf,
        /// How to resolve each choice redex along the path.
        #[arg(long, value_enum, default_value_t = PolicyArg::First)]
        policy: PolicyArg,
    },
    /// Explore the reduction graph and summarize it.
    Tree { file: PathBuf },
    /// Decide whether the program may and/or must converge.
    Verdict {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Check contextual equivalence of two programs of the same type.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// File of evaluation contexts (one per line, `[]` for the hole)
        /// to sweep instead of the generated corpus.
        #[arg(long)]
        contexts: Option<PathBuf>,
    },
    /// Run the algebraic law suite and print the table.
    Laws,
    /// Run a guided demonstration.
    Demo {
        #[arg(value_enum)]
        which: DemoArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    /// Always pick 0.
    First,
    /// Pick uniformly in 0..=choice-bound, seeded.
    Random,
    /// Prompt on stdin at each choice.
    Ask,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    May,
    Must,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::May => vec![Mode::May],
            ModeArg::Must => vec![Mode::Must],
            ModeArg::Both => vec![Mode::May, Mode::Must],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoArg {
    /// Single calls agree, two calls separate the choosers.
    Counterexample,
    /// Fixed points unroll and match their closed candidates.
    Fix,
    /// The structure-map fixed point is the identity.
    MinimalInvariance,
    /// Classify and separate the polymorphic pair-choosers.
    Parametricity,
}

enum CliError {
    Io(String, std::io::Error),
    Load(String, String),
    TypeMismatch { left: String, right: String },
    BadContext(String, String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Load(path, e) => write!(f, "{path}: {e}"),
            CliError::TypeMismatch { left, right } => write!(
                f,
                "the programs have different types: {left} vs {right}"
            ),
            CliError::BadContext(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

struct Settings {
    budget: Budget,
    depth: usize,
    seed: u64,
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    let settings = Settings {
        budget: Budget::default()
            .with_fuel(cli.fuel)
            .with_choice_bound(cli.choice_bound),
        depth: cli.depth,
        seed: cli.seed,
        json: cli.json,
    };
    let outcome = match cli.cmd {
        Cmd::Check { file } => cmd_check(&file, &settings),
        Cmd::Run { file, policy } => cmd_run(&file, policy, &settings),
        Cmd::Tree { file } => cmd_tree(&file, &settings),
        Cmd::Verdict { file, mode } => cmd_verdict(&file, mode, &settings),
        Cmd::Equiv {
            left,
            right,
            mode,
            contexts,
        } => cmd_equiv(&left, &right, mode, contexts.as_deref(), &settings),
        Cmd::Laws => Ok(cmd_laws(&settings)),
        Cmd::Demo { which } => Ok(cmd_demo(which, &settings)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if settings.json {
                println!("{}", json!({ "event": "error", "message": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Read, parse, desugar, and typecheck one program file.
fn load(path: &Path) -> Result<(Term, Type), CliError> {
    let display = path.display().to_string();
    let src =
        fs::read_to_string(path).map_err(|e| CliError::Io(display.clone(), e))?;
    let term =
        term_from_source(&src).map_err(|e| CliError::Load(display.clone(), e.to_string()))?;
    let ty = infer_closed(&term).map_err(|e| CliError::Load(display, e.to_string()))?;
    Ok((term, ty))
}

fn cmd_check(file: &Path, s: &Settings) -> Result<u8, CliError> {
    let (_, ty) = load(file)?;
    if s.json {
        println!(
            "{}",
            json!({ "event": "type", "file": file.display().to_string(), "type": pretty_type(&ty) })
        );
    } else {
        println!("{}", pretty_type(&ty));
    }
    Ok(EXIT_PASS)
}

fn step_kind_label(kind: StepKind) -> String {
    match kind {
        StepKind::Other => "step".to_string(),
        StepKind::UnfoldFold => "unfold".to_string(),
        StepKind::Choice(n) => format!("choice {n}"),
    }
}

fn cmd_run(file: &Path, policy: PolicyArg, s: &Settings) -> Result<u8, CliError> {
    let (term, _) = load(file)?;
    let policy = match policy {
        PolicyArg::First => ChoicePolicy::Fixed(0),
        PolicyArg::Random => ChoicePolicy::Random {
            seed: s.seed,
            bound: s.budget.choice_bound,
        },
        PolicyArg::Ask => ChoicePolicy::Ask,
    };
    let t = trace(&term, s.budget.fuel, &policy);
    if s.json {
        for (i, step) in t.steps.iter().enumerate() {
            println!(
                "{}",
                json!({
                    "event": "step",
                    "index": i,
                    "kind": step_kind_label(step.kind),
                    "term": pretty_term(&step.target),
                })
            );
        }
        println!(
            "{}",
            json!({
                "event": "end",
                "ended": match t.ended { TraceEnd::Value => "value", TraceEnd::FuelExhausted => "fuel" },
                "steps": t.steps.len(),
                "term": pretty_term(&t.end),
            })
        );
    } else {
        println!("     {}", pretty_term(&term));
        for (i, step) in t.steps.iter().enumerate() {
            println!("{:>4} [{}] {}", i + 1, step_kind_label(step.kind), pretty_term(&step.target));
        }
        match t.ended {
            TraceEnd::Value => println!("value after {} steps", t.steps.len()),
            TraceEnd::FuelExhausted => {
                println!("fuel exhausted after {} steps", t.steps.len())
            }
        }
    }
    Ok(match t.ended {
        TraceEnd::Value => EXIT_PASS,
        TraceEnd::FuelExhausted => EXIT_INCONCLUSIVE,
    })
}

fn cmd_tree(file: &Path, s: &Settings) -> Result<u8, CliError> {
    let (term, _) = load(file)?;
    let tree = explore(&term, &s.budget);
    let values: Vec<String> = tree
        .value_nodes()
        .map(|id| pretty_term(&tree.nodes[id].term))
        .collect();
    let cut_count = tree.nodes.iter().filter(|n| n.cut.is_some()).count();
    if s.json {
        println!(
            "{}",
            json!({
                "event": "tree",
                "nodes": tree.nodes.len(),
                "values": values,
                "back_edges": tree.back_edges.len(),
                "cut_nodes": cut_count,
                "aborted": tree.aborted,
                "complete": tree.complete(),
            })
        );
    } else {
        println!(
            "nodes: {} ({} values, {} cut), back edges: {}, aborted: {}, complete: {}",
            tree.nodes.len(),
            values.len(),
            cut_count,
            tree.back_edges.len(),
            tree.aborted,
            tree.complete(),
        );
        let mut shown: Vec<&String> = values.iter().collect();
        shown.dedup();
        for v in shown.iter().take(10) {
            println!("value: {v}");
        }
        if shown.len() > 10 {
            println!("... and {} more", shown.len() - 10);
        }
    }
    Ok(EXIT_PASS)
}

fn may_fields(v: &MayVerdict) -> (String, u8, serde_json::Value) {
    match v {
        MayVerdict::Converges {
            witness,
            unfold_count,
        } => {
            let result = witness
                .last()
                .map(|st| pretty_term(&st.target))
                .unwrap_or_else(|| "<already a value>".to_string());
            (
                format!(
                    "converges — {} steps, {} unfolds, result: {result}",
                    witness.len(),
                    unfold_count
                ),
                EXIT_PASS,
                json!({ "verdict": "converges", "steps": witness.len(), "unfolds": unfold_count, "result": result }),
            )
        }
        MayVerdict::DivergesCertified { cycle } => (
            format!(
                "diverges, certified — a cycle of {} steps is reachable in {} steps",
                cycle.cycle.len(),
                cycle.stem.len()
            ),
            EXIT_REFUTED,
            json!({ "verdict": "diverges-certified", "stem": cycle.stem.len(), "cycle": cycle.cycle.len() }),
        ),
        MayVerdict::Unknown { budget } => (
            format!(
                "unknown — budget exhausted (fuel {}, choice bound {})",
                budget.fuel, budget.choice_bound
            ),
            EXIT_INCONCLUSIVE,
            json!({ "verdict": "unknown" }),
        ),
    }
}

fn must_fields(v: &MustVerdict) -> (String, u8, serde_json::Value) {
    match v {
        MustVerdict::MustConverges { rank, exact } => (
            format!(
                "must-converges — rank {rank}{}",
                if *exact { ", exact" } else { ", truncated fanout" }
            ),
            EXIT_PASS,
            json!({ "verdict": "must-converges", "rank": rank, "exact": exact }),
        ),
        MustVerdict::Refuted { evidence } => {
            let detail = match evidence {
                InfinitePathEvidence::Cycle(c) => {
                    format!("a cycle of {} steps is reachable in {} steps", c.cycle.len(), c.stem.len())
                }
                InfinitePathEvidence::FuelExhausted(steps) => {
                    format!("a path ran {} steps without terminating", steps.len())
                }
            };
            (
                format!("refuted — {detail}"),
                EXIT_REFUTED,
                json!({ "verdict": "refuted" }),
            )
        }
        MustVerdict::Unknown => (
            "unknown — budget exhausted".to_string(),
            EXIT_INCONCLUSIVE,
            json!({ "verdict": "unknown" }),
        ),
    }
}

fn combine_codes(codes: &[u8]) -> u8 {
    if codes.iter().any(|&c| c == EXIT_INCONCLUSIVE) {
        EXIT_INCONCLUSIVE
    } else if codes.iter().any(|&c| c == EXIT_REFUTED) {
        EXIT_REFUTED
    } else {
        EXIT_PASS
    }
}

fn cmd_verdict(file: &Path, mode: ModeArg, s: &Settings) -> Result<u8, CliError> {
    let (term, _) = load(file)?;
    let mut codes = Vec::new();
    for m in mode.modes() {
        let (line, code, fields) = match m {
            Mode::May => may_fields(&may_converges(&term, &s.budget)),
            Mode::Must => must_fields(&must_converges(&term, &s.budget)),
        };
        if s.json {
            let mut obj = json!({ "event": "verdict", "mode": m.to_string() });
            merge(&mut obj, fields);
            println!("{obj}");
        } else {
            println!("{m}: {line}");
        }
        codes.push(code);
    }
    Ok(combine_codes(&codes))
}

fn merge(into: &mut serde_json::Value, from: serde_json::Value) {
    if let (Some(a), Some(b)) = (into.as_object_mut(), from.as_object()) {
        for (k, v) in b {
            a.insert(k.clone(), v.clone());
        }
    }
}

/// Read a context file: one evaluation context per line; blank lines and
/// `//` comment lines are skipped. Each context must accept a hole of
/// type `hole`.
fn load_contexts(path: &Path, hole: &Type) -> Result<Vec<EvalContext>, CliError> {
    let display = path.display().to_string();
    let src = fs::read_to_string(path).map_err(|e| CliError::Io(display.clone(), e))?;
    let mut out = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let ctx = parse_context(line).map_err(|e| {
            CliError::BadContext(display.clone(), format!("line {}: {e}", lineno + 1))
        })?;
        check_context(&ctx, hole).map_err(|e| {
            CliError::BadContext(
                display.clone(),
                format!("line {}: context rejects a {hole}-typed hole: {e}", lineno + 1),
            )
        })?;
        out.push(ctx);
    }
    if out.is_empty() {
        return Err(CliError::BadContext(
            display,
            "no contexts in file".to_string(),
        ));
    }
    Ok(out)
}

fn cmd_equiv(
    left_path: &Path,
    right_path: &Path,
    mode: ModeArg,
    contexts: Option<&Path>,
    s: &Settings,
) -> Result<u8, CliError> {
    let (left, lty) = load(left_path)?;
    let (right, rty) = load(right_path)?;
    if !type_eq(&lty, &rty) {
        return Err(CliError::TypeMismatch {
            left: pretty_type(&lty),
            right: pretty_type(&rty),
        });
    }
    let ctxs = match contexts {
        Some(path) => load_contexts(path, &lty)?,
        None => gen_contexts(&lty, s.depth),
    };
    if !s.json {
        println!(
            "common type: {}; sweeping {} contexts",
            pretty_type(&lty),
            ctxs.len()
        );
    }
    let mut codes = Vec::new();
    for m in mode.modes() {
        let outcome = equivalent(&left, &right, &ctxs, m, &s.budget);
        let code = match &outcome {
            CiuOutcome::Holds { .. } => EXIT_PASS,
            CiuOutcome::Counterexample(_) => EXIT_REFUTED,
            CiuOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        };
        if s.json {
            let fields = match &outcome {
                CiuOutcome::Holds { contexts_tested } => {
                    json!({ "outcome": "holds", "contexts": contexts_tested })
                }
                CiuOutcome::Counterexample(ce) => json!({
                    "outcome": "counterexample",
                    "context_index": ce.index,
                    "context": pretty_context(&ce.context),
                    "left": ce.left_verdict,
                    "right": ce.right_verdict,
                }),
                CiuOutcome::Inconclusive {
                    contexts_tested,
                    unknown_sites,
                } => json!({
                    "outcome": "inconclusive",
                    "contexts": contexts_tested,
                    "unknown": unknown_sites,
                }),
            };
            let mut obj = json!({ "event": "equiv", "mode": m.to_string() });
            merge(&mut obj, fields);
            println!("{obj}");
        } else {
            println!("{m}: {outcome}");
        }
        codes.push(code);
    }
    Ok(combine_codes(&codes))
}

fn outcome_brief(o: &CiuOutcome) -> String {
    match o {
        CiuOutcome::Holds { contexts_tested } => format!("holds ({contexts_tested} contexts)"),
        CiuOutcome::Counterexample(ce) => format!("counterexample at #{}", ce.index),
        CiuOutcome::Inconclusive { unknown_sites, .. } => {
            format!("inconclusive ({unknown_sites} unknown)")
        }
    }
}

fn cmd_laws(s: &Settings) -> u8 {
    let suite = run_law_suite(s.depth, &s.budget);
    if s.json {
        for cell in &suite.cells {
            let held = cell.instances.iter().filter(|i| i.holds()).count();
            println!(
                "{}",
                json!({
                    "event": "law",
                    "name": cell.name,
                    "statement": cell.statement,
                    "relation": cell.check.to_string(),
                    "instances": cell.instances.len(),
                    "held": held,
                    "converse_refuted": cell.converse.as_ref().map(|(_, o)| o.is_counterexample()),
                    "passed": cell.passed(),
                })
            );
        }
        println!(
            "{}",
            json!({ "event": "laws-summary", "cells": suite.cells.len(), "passed": suite.passed() })
        );
    } else {
        println!("{suite}");
        println!();
        println!(
            "{} of {} laws hold",
            suite.cells.iter().filter(|c| c.passed()).count(),
            suite.cells.len()
        );
    }
    if suite.passed() {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    }
}

fn cmd_demo(which: DemoArg, s: &Settings) -> u8 {
    let passed = match which {
        DemoArg::Counterexample => {
            let demo = demo_nonextensionality(&s.budget);
            if s.json {
                println!(
                    "{}",
                    json!({
                        "event": "demo",
                        "name": "counterexample",
                        "single_calls_agree": demo.single_calls_agree(),
                        "may_disagree_per_call": may_fields(&demo.may_disagree_per_call).2,
                        "may_disagree_committed": may_fields(&demo.may_disagree_committed).2,
                        "must_agree_committed": must_fields(&demo.must_agree_committed).2,
                        "must_agree_per_call": must_fields(&demo.must_agree_per_call).2,
                        "passed": demo.passed(),
                    })
                );
            } else {
                println!("{demo}");
            }
            demo.passed()
        }
        DemoArg::Fix => {
            let demo = demo_fix(s.depth, &s.budget);
            if s.json {
                let rows: Vec<serde_json::Value> = demo
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "unroll_may": outcome_brief(&r.unroll_may),
                            "unroll_must": outcome_brief(&r.unroll_must),
                            "candidate": r.candidate.as_ref().map(|(c, may, must)| {
                                json!({ "term": c, "may": outcome_brief(may), "must": outcome_brief(must) })
                            }),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({ "event": "demo", "name": "fix", "contexts": demo.contexts_swept, "rows": rows, "passed": demo.passed() })
                );
            } else {
                println!("{demo}");
            }
            demo.passed()
        }
        DemoArg::MinimalInvariance => {
            let demo = demo_minimal_invariance(s.depth, &s.budget);
            if s.json {
                let rows: Vec<serde_json::Value> = demo
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "element": r.description,
                            "converges": r.applied_converges,
                            "matches": r.result_matches,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "event": "demo",
                        "name": "minimal-invariance",
                        "rows": rows,
                        "identity_may": outcome_brief(&demo.identity_may),
                        "identity_must": outcome_brief(&demo.identity_must),
                        "passed": demo.passed(),
                    })
                );
            } else {
                println!("{demo}");
            }
            demo.passed()
        }
        DemoArg::Parametricity => {
            let demo = demo_parametricity(s.depth, &s.budget);
            if s.json {
                let profiles: Vec<serde_json::Value> = demo
                    .profiles
                    .iter()
                    .chain([&demo.committed_profile])
                    .map(|(name, p)| {
                        json!({
                            "name": name,
                            "class": p.class.to_string(),
                            "class_at_nat": p.class_at_nat.to_string(),
                            "commits_at_instantiation": p.commits_at_instantiation,
                        })
                    })
                    .collect();
                let separations: Vec<serde_json::Value> = demo
                    .separations
                    .iter()
                    .chain(&demo.committed_separations)
                    .map(|sep| {
                        json!({
                            "left": sep.left,
                            "right": sep.right,
                            "mode": sep.mode.to_string(),
                            "context_index": sep.counterexample.index,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "event": "demo",
                        "name": "parametricity",
                        "profiles": profiles,
                        "separations": separations,
                        "unseparated": demo.unseparated.len(),
                        "contexts": demo.contexts_swept,
                        "passed": demo.passed(),
                    })
                );
            } else {
                println!("{demo}");
            }
            demo.passed()
        }
    };
    if passed {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    }
}
