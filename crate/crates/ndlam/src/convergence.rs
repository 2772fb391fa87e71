//! Bounded exploration of a term's full reduction behavior, and the
//! convergence verdicts computed from it.
//!
//! [`explore`] builds the reachable reduction graph breadth-first up to a
//! step-depth budget, truncating every choice fanout at a bound. Nodes are
//! keyed by alpha-equivalence when deduplication is on, which both caps the
//! blowup of reconverging branches and turns repeated terms into cycles the
//! verdicts can certify divergence with.
//!
//! Truncation would normally make every positive "all branches" claim
//! approximate. Two mechanisms restore exactness where it is honestly
//! available:
//!
//! * **Choice certification** ([`certify_choice`]): before fanning a choice
//!   node out, the explorer replaces the choice with an opaque placeholder
//!   variable and runs the remaining deterministic steps symbolically. If
//!   the placeholder is never scrutinized (it vanishes or survives into a
//!   value), every numeral behaves identically, so the explored branches
//!   exhaust the infinite fanout. If it is scrutinized by exactly one
//!   two-armed case, the zero branch is explored concretely and the
//!   successor branch is re-run with a fresh placeholder for the
//!   predecessor; if that placeholder is never scrutinized again, all
//!   numerals ≥ 1 behave identically and branches `0` and `1` exhaust the
//!   fanout. Anything else — a second scrutiny, another choice redex
//!   surfacing, or the step bound running out — leaves the node truncated.
//!   A second scrutiny genuinely distinguishes numerals ≥ 1 from each other
//!   (a case on the predecessor separates `1` from `2, 3, ...`), so
//!   comparing any fixed number of explored branches would be unsound there.
//! * **Cycle witnesses**: a back edge in the explored graph is a real
//!   reduction cycle, hence a real infinite path, independent of any bound.
//!
//! A tree is *complete* when no node was cut by fuel or the node budget and
//! every choice node certified; then the explored graph represents the whole
//! (generally infinite) reduction tree faithfully enough to decide both
//! convergence modes and the must-convergence rank exactly.

use std::collections::{HashMap, VecDeque};

use crate::reduction::{step_successors, Step, StepKind, Successors};
use crate::syntax::{subst_term, Term, Value};

/// Resource bounds for exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum path length, in steps, from the root.
    pub fuel: usize,
    /// Choice fanouts list numerals `0 ..= choice_bound`.
    pub choice_bound: u64,
    /// Merge alpha-equivalent terms into one node and attempt choice
    /// certification. Off, the explored object is a plain tree whose only
    /// sharing is a back edge when a term repeats on its own ancestor path.
    pub dedup: bool,
    /// Hard cap on explored nodes; exceeding it aborts the exploration.
    pub memo_limit: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            fuel: 500,
            choice_bound: 8,
            dedup: true,
            memo_limit: 100_000,
        }
    }
}

impl Budget {
    pub fn with_fuel(mut self, fuel: usize) -> Budget {
        self.fuel = fuel;
        self
    }

    pub fn with_choice_bound(mut self, bound: u64) -> Budget {
        self.choice_bound = bound;
        self
    }

    pub fn with_dedup(mut self, dedup: bool) -> Budget {
        self.dedup = dedup;
        self
    }

    pub fn with_memo_limit(mut self, limit: usize) -> Budget {
        self.memo_limit = limit;
        self
    }
}

pub type NodeId = usize;

/// Why a node was not expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    /// The node sits at the fuel depth.
    Fuel,
    /// The node budget ran out before this node's turn.
    NodeBudget,
}

/// One explored term.
#[derive(Debug, Clone)]
pub struct Node {
    pub term: Term,
    /// Step distance from the root along the discovery path (minimal over
    /// all paths, since discovery is breadth-first).
    pub depth: usize,
    /// Outgoing steps; for choice nodes, one edge per listed numeral.
    pub edges: Vec<(StepKind, NodeId)>,
    pub is_value: bool,
    /// `Some(complete)` iff this node's redex is a choice; `complete` means
    /// certification proved the explored branches exhaust the fanout.
    pub choice_complete: Option<bool>,
    pub cut: Option<Cut>,
    /// In tree mode (no dedup): the node this one was discovered from.
    pub parent: Option<NodeId>,
}

/// A concrete infinite-path certificate: from the root, `stem` reaches a
/// term that `cycle` rewrites back to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub stem: Vec<Step>,
    pub cycle: Vec<Step>,
}

/// The explored reduction graph.
#[derive(Debug, Clone)]
pub struct ReductionTree {
    pub root: NodeId,
    pub nodes: Vec<Node>,
    /// Node budget exhausted; some reachable terms were never expanded.
    pub aborted: bool,
    /// Edges that close a cycle in the explored graph.
    pub back_edges: Vec<(NodeId, NodeId)>,
    pub budget: Budget,
}

impl ReductionTree {
    /// No fuel or node-budget cuts and every choice node certified: the
    /// explored graph decides both convergence modes exactly.
    pub fn complete(&self) -> bool {
        !self.aborted
            && self.nodes.iter().all(|n| {
                n.cut.is_none() && n.choice_complete.map_or(true, |c| c)
            })
    }

    pub fn value_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_value)
            .map(|(i, _)| i)
    }

    pub fn has_cycle(&self) -> bool {
        !self.back_edges.is_empty()
    }

    /// Reconstruct the cheapest infinite-path certificate: the first cycle
    /// the post-exploration depth-first sweep closed.
    pub fn cycle_witness(&self) -> Option<CycleWitness> {
        let &(from, to) = self.back_edges.first()?;
        // Path root -> to, then to -> from, both inside the explored graph;
        // the back edge from -> to closes the loop.
        let stem_ids = self.path_between(self.root, to)?;
        let loop_ids = self.path_between(to, from)?;
        let step = |u: NodeId, v: NodeId| -> Step {
            let kind = self.nodes[u]
                .edges
                .iter()
                .find(|(_, t)| *t == v)
                .map(|(k, _)| *k)
                .expect("adjacent in explored graph");
            Step {
                source: self.nodes[u].term.clone(),
                target: self.nodes[v].term.clone(),
                kind,
            }
        };
        let path_steps = |ids: &[NodeId]| -> Vec<Step> {
            ids.windows(2).map(|w| step(w[0], w[1])).collect()
        };
        let mut cycle = path_steps(&loop_ids);
        cycle.push(step(from, to));
        Some(CycleWitness {
            stem: path_steps(&stem_ids),
            cycle,
        })
    }

    /// Breadth-first node path from `a` to `b` inside the explored graph.
    fn path_between(&self, a: NodeId, b: NodeId) -> Option<Vec<NodeId>> {
        let mut prev: HashMap<NodeId, NodeId> = HashMap::new();
        let mut queue = VecDeque::from([a]);
        let mut seen = vec![false; self.nodes.len()];
        seen[a] = true;
        while let Some(u) = queue.pop_front() {
            if u == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &(_, v) in &self.nodes[u].edges {
                if !seen[v] {
                    seen[v] = true;
                    prev.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// Explore the reduction graph of a closed well-typed term, breadth-first,
/// within the budget.
pub fn explore(e: &Term, budget: &Budget) -> ReductionTree {
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<Term, NodeId> = HashMap::new();
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let mut aborted = false;

    let intern = |term: Term,
                      depth: usize,
                      parent: Option<NodeId>,
                      nodes: &mut Vec<Node>,
                      index: &mut HashMap<Term, NodeId>,
                      queue: &mut VecDeque<NodeId>|
     -> NodeId {
        let id = nodes.len();
        if budget.dedup {
            index.insert(term.clone(), id);
        }
        let is_value = term.is_value();
        nodes.push(Node {
            term,
            depth,
            edges: Vec::new(),
            is_value,
            choice_complete: None,
            cut: None,
            parent,
        });
        queue.push_back(id);
        id
    };

    let root = intern(e.clone(), 0, None, &mut nodes, &mut index, &mut queue);

    while let Some(id) = queue.pop_front() {
        if nodes[id].is_value {
            continue;
        }
        if nodes.len() > budget.memo_limit {
            aborted = true;
            // Everything still queued (this node included) stays unexpanded.
            nodes[id].cut = Some(Cut::NodeBudget);
            for &rest in &queue {
                if !nodes[rest].is_value {
                    nodes[rest].cut = Some(Cut::NodeBudget);
                }
            }
            break;
        }
        let depth = nodes[id].depth;
        if depth >= budget.fuel {
            nodes[id].cut = Some(Cut::Fuel);
            continue;
        }
        let term = nodes[id].term.clone();
        let successors = step_successors(&term, budget.choice_bound);
        let mut targets: Vec<(StepKind, Term)> = Vec::new();
        match successors {
            Successors::Value => unreachable!("value handled above"),
            Successors::Deterministic(s) => targets.push((s.kind, s.target)),
            Successors::ChoiceFanout { steps, .. } => {
                let complete = budget.dedup
                    && match certify_choice(&term) {
                        ChoiceCert::EqualOnAll => true,
                        ChoiceCert::SplitZeroFromSuccessors => budget.choice_bound >= 1,
                        ChoiceCert::Unknown => false,
                    };
                nodes[id].choice_complete = Some(complete);
                for s in steps {
                    targets.push((s.kind, s.target));
                }
            }
        }
        for (kind, target) in targets {
            let target_id = if budget.dedup {
                match index.get(&target) {
                    Some(&t) => t,
                    None => intern(target, depth + 1, Some(id), &mut nodes, &mut index, &mut queue),
                }
            } else {
                // Tree mode: close a cycle only against this node's own
                // ancestor chain.
                match ancestor_with_term(&nodes, id, &target) {
                    Some(anc) => anc,
                    None => intern(target, depth + 1, Some(id), &mut nodes, &mut index, &mut queue),
                }
            };
            nodes[id].edges.push((kind, target_id));
        }
    }

    let back_edges = find_back_edges(&nodes, root);
    ReductionTree {
        root,
        nodes,
        aborted,
        back_edges,
        budget: budget.clone(),
    }
}

fn ancestor_with_term(nodes: &[Node], from: NodeId, term: &Term) -> Option<NodeId> {
    let mut cur = Some(from);
    while let Some(id) = cur {
        if nodes[id].term == *term {
            return Some(id);
        }
        cur = nodes[id].parent;
    }
    None
}

/// Iterative three-color depth-first sweep; an edge into a node still on the
/// visit stack closes a cycle.
fn find_back_edges(nodes: &[Node], root: NodeId) -> Vec<(NodeId, NodeId)> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; nodes.len()];
    let mut back = Vec::new();
    // Stack of (node, next edge index to look at).
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    color[root] = Color::Gray;
    loop {
        let Some(&(u, next)) = stack.last() else { break };
        if next < nodes[u].edges.len() {
            stack.last_mut().expect("nonempty").1 += 1;
            let (_, v) = nodes[u].edges[next];
            match color[v] {
                Color::White => {
                    color[v] = Color::Gray;
                    stack.push((v, 0));
                }
                Color::Gray => back.push((u, v)),
                Color::Black => {}
            }
        } else {
            color[u] = Color::Black;
            stack.pop();
        }
    }
    back
}

// ---------------------------------------------------------------------------
// Choice certification
// ---------------------------------------------------------------------------

/// Placeholder indices this far above any real de Bruijn index stand for
/// "an arbitrary numeral" during certification. Substitution may shift a
/// placeholder by the (small) binder depth it crosses, so membership is a
/// threshold test rather than an equality test.
const PLACEHOLDER_BASE: usize = usize::MAX / 2;

fn is_placeholder(i: usize) -> bool {
    i >= PLACEHOLDER_BASE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChoiceCert {
    /// Every numeral drives the continuation through identical steps.
    EqualOnAll,
    /// Numeral 0 is its own branch; all numerals ≥ 1 drive identical steps.
    SplitZeroFromSuccessors,
    Unknown,
}

const PROBE_FUEL: usize = 256;

/// Decide whether the explored branches of the choice node `e` (whose redex
/// is `?`) exhaust its infinite fanout. See the module docs for the method
/// and its soundness argument.
fn certify_choice(e: &Term) -> ChoiceCert {
    let Some(mut t) = replace_choice_with_placeholder(e) else {
        return ChoiceCert::Unknown;
    };
    let mut split = false;
    for _ in 0..PROBE_FUEL {
        if !mentions_placeholder(&t) {
            return done(split);
        }
        match probe_step(&t) {
            ProbeStep::Value => return done(split),
            ProbeStep::Stepped(next) => t = next,
            ProbeStep::CaseSplit(successor_branch) => {
                if split {
                    // A second scrutiny can tell numerals ≥ 1 apart.
                    return ChoiceCert::Unknown;
                }
                split = true;
                t = successor_branch;
            }
            ProbeStep::Opaque => return ChoiceCert::Unknown,
        }
    }
    ChoiceCert::Unknown
}

fn done(split: bool) -> ChoiceCert {
    if split {
        ChoiceCert::SplitZeroFromSuccessors
    } else {
        ChoiceCert::EqualOnAll
    }
}

/// Rebuild `e` with its choice redex replaced by a placeholder variable.
/// The redex of an evaluation context is never under a binder, so the
/// placeholder needs no adjustment going in.
fn replace_choice_with_placeholder(e: &Term) -> Option<Term> {
    match e {
        Term::Choice => Some(Term::Val(Value::Var(PLACEHOLDER_BASE))),
        Term::App { head, arg } => {
            if arg.is_value() {
                None
            } else {
                let inner = replace_choice_with_placeholder(arg)?;
                Some(Term::App {
                    head: head.clone(),
                    arg: std::sync::Arc::new(inner),
                })
            }
        }
        _ => None,
    }
}

fn mentions_placeholder(e: &Term) -> bool {
    // Binder depths are tiny compared to the placeholder base, so the
    // threshold test is exact regardless of shifting.
    fn in_term(e: &Term) -> bool {
        match e {
            Term::Val(v) => in_value(v),
            Term::Choice => false,
            Term::Proj { of, .. } => in_value(of),
            Term::App { head, arg } => in_value(head) || in_term(arg),
            Term::Case {
                scrutinee,
                branches,
            } => in_value(scrutinee) || branches.iter().any(|b| in_term(b)),
            Term::TyApp { head, .. } => in_value(head),
        }
    }
    fn in_value(v: &Value) -> bool {
        match v {
            Value::Var(i) => is_placeholder(*i),
            Value::Unit => false,
            Value::Pair(a, b) => in_value(a) || in_value(b),
            Value::Lam { body, .. } => in_term(body),
            Value::Inj { payload, .. } => in_value(payload),
            Value::TyLam(body) => in_term(body),
        }
    }
    in_term(e)
}

enum ProbeStep {
    Value,
    /// One deterministic step that treats the placeholder as inert data.
    Stepped(Term),
    /// The redex is a two-armed case on the placeholder: the rebuilt term
    /// follows the successor arm with a fresh placeholder as predecessor.
    CaseSplit(Term),
    /// The placeholder (or a new choice) reached a position whose next step
    /// depends on the actual numeral; certification cannot proceed.
    Opaque,
}

/// One symbolic step of the open probe term. Mirrors the real step relation
/// wherever the placeholder is not the active datum.
fn probe_step(e: &Term) -> ProbeStep {
    match e {
        Term::Val(_) => ProbeStep::Value,
        // A fresh choice redex while the placeholder is still live would
        // interleave two fanouts; give up.
        Term::Choice => ProbeStep::Opaque,
        Term::Proj { which, of } => match &**of {
            Value::Pair(a, b) => ProbeStep::Stepped(Term::Val(match which {
                crate::syntax::Proj::Fst => (**a).clone(),
                crate::syntax::Proj::Snd => (**b).clone(),
            })),
            _ => ProbeStep::Opaque,
        },
        Term::App { head, arg } => {
            if let Term::Val(v) = &**arg {
                match &**head {
                    Value::Lam { body, .. } => ProbeStep::Stepped(subst_term(body, v)),
                    _ => ProbeStep::Opaque,
                }
            } else {
                let wrap = |inner: Term| Term::App {
                    head: head.clone(),
                    arg: std::sync::Arc::new(inner),
                };
                match probe_step(arg) {
                    ProbeStep::Value => unreachable!("non-value argument"),
                    ProbeStep::Stepped(t) => ProbeStep::Stepped(wrap(t)),
                    ProbeStep::CaseSplit(t) => ProbeStep::CaseSplit(wrap(t)),
                    ProbeStep::Opaque => ProbeStep::Opaque,
                }
            }
        }
        Term::Case {
            scrutinee,
            branches,
        } => match &**scrutinee {
            Value::Inj { arm, payload, .. } => match branches.get(arm - 1) {
                Some(branch) => {
                    ProbeStep::Stepped(subst_term(branch, payload))
                }
                None => ProbeStep::Opaque,
            },
            Value::Var(i) if is_placeholder(*i) => {
                if branches.len() == 2 {
                    // Successor arm with a fresh placeholder standing for
                    // the predecessor, which again ranges over all numerals.
                    ProbeStep::CaseSplit(subst_term(
                        &branches[1],
                        &Value::Var(PLACEHOLDER_BASE),
                    ))
                } else {
                    ProbeStep::Opaque
                }
            }
            _ => ProbeStep::Opaque,
        },
        Term::TyApp { head, ty } => match &**head {
            Value::TyLam(body) => {
                ProbeStep::Stepped(crate::syntax::subst_type_in_term(body, ty))
            }
            _ => ProbeStep::Opaque,
        },
    }
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Can the term reach a value?
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MayVerdict {
    /// A value was reached; the witness is a path with the fewest
    /// unfold-fold steps among explored value paths.
    Converges {
        witness: Vec<Step>,
        unfold_count: usize,
    },
    /// The exploration was exhaustive (complete tree), reached no value, and
    /// every maximal path loops: no reduction path ever reaches a value.
    DivergesCertified { cycle: CycleWitness },
    /// Out of budget without a value and without a certified-complete tree.
    Unknown { budget: Budget },
}

impl MayVerdict {
    pub fn converges(&self) -> bool {
        matches!(self, MayVerdict::Converges { .. })
    }
}

/// Evidence that some reduction path never reaches a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfinitePathEvidence {
    /// A reachable term rewrites back to itself.
    Cycle(CycleWitness),
    /// A path ran the whole fuel without terminating (never produced by
    /// [`must_converges`], which refuses to call mere fuel exhaustion an
    /// infinite path; retained for callers that want to record one).
    FuelExhausted(Vec<Step>),
}

/// Do all reduction paths reach values?
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MustVerdict {
    /// Every explored path converges. `exact` means the explored fanout
    /// provably covers the infinite one (complete tree), making both the
    /// verdict and the rank true of the real term rather than the
    /// truncation.
    MustConverges { rank: usize, exact: bool },
    /// A cycle witnesses a genuinely infinite path: the term does not
    /// must-converge, regardless of any truncation.
    Refuted { evidence: InfinitePathEvidence },
    /// A fuel or node-budget cut left some path undecided.
    Unknown,
}

impl MustVerdict {
    pub fn holds_exactly(&self) -> bool {
        matches!(self, MustVerdict::MustConverges { exact: true, .. })
    }
}

/// May-convergence: search the explored graph for a value.
pub fn may_converges(e: &Term, budget: &Budget) -> MayVerdict {
    let tree = explore(e, budget);
    may_verdict_of_tree(&tree)
}

/// May-convergence with a ceiling on unfold-fold steps: converges only if
/// some explored path reaches a value using at most `max_unfolds` unfolds.
pub fn may_converges_within(e: &Term, max_unfolds: usize, budget: &Budget) -> MayVerdict {
    let tree = explore(e, budget);
    match min_unfold_witness(&tree) {
        Some((witness, unfold_count)) if unfold_count <= max_unfolds => {
            MayVerdict::Converges {
                witness,
                unfold_count,
            }
        }
        _ => {
            if tree.complete() && tree.value_nodes().next().is_none() {
                MayVerdict::DivergesCertified {
                    cycle: tree.cycle_witness().expect("complete valueless graph loops"),
                }
            } else {
                MayVerdict::Unknown {
                    budget: budget.clone(),
                }
            }
        }
    }
}

/// The may-verdict of an already-explored graph.
pub fn may_verdict_of_tree(tree: &ReductionTree) -> MayVerdict {
    if let Some((witness, unfold_count)) = min_unfold_witness(tree) {
        return MayVerdict::Converges {
            witness,
            unfold_count,
        };
    }
    if tree.complete() {
        // No value anywhere and nothing truncated: every leafless maximal
        // path is infinite, and a finite graph only sustains that through
        // cycles.
        return MayVerdict::DivergesCertified {
            cycle: tree.cycle_witness().expect("complete valueless graph loops"),
        };
    }
    MayVerdict::Unknown {
        budget: tree.budget.clone(),
    }
}

/// Must-convergence: a cycle refutes; otherwise a fully expanded graph whose
/// leaves are all values converges with a rank.
pub fn must_converges(e: &Term, budget: &Budget) -> MustVerdict {
    let tree = explore(e, budget);
    must_verdict_of_tree(&tree)
}

/// The must-verdict of an already-explored graph.
pub fn must_verdict_of_tree(tree: &ReductionTree) -> MustVerdict {
    if let Some(cycle) = tree.cycle_witness() {
        return MustVerdict::Refuted {
            evidence: InfinitePathEvidence::Cycle(cycle),
        };
    }
    if tree.aborted || tree.nodes.iter().any(|n| n.cut.is_some()) {
        return MustVerdict::Unknown;
    }
    // Acyclic and uncut: every maximal path ends at a leaf, and leaves are
    // values (non-values always expand). The verdict is exact when the
    // choice fanouts were certified exhaustive.
    let rank = must_rank(tree).expect("acyclic uncut graph has a rank");
    let exact = tree
        .nodes
        .iter()
        .all(|n| n.choice_complete.map_or(true, |c| c));
    MustVerdict::MustConverges { rank, exact }
}

/// The must-convergence rank of an explored graph: along every path from
/// the root, the maximum number of unfold-fold steps; `None` when the graph
/// has a cycle or a cut node (some path does not terminate in a value, so
/// no rank exists).
///
/// Computed as a longest-path fold over the acyclic graph, counting only
/// unfold edges: `rank(n) = max over edges (k, c) of rank(c) + [k is
/// unfold]`, with `rank = 0` at values. This agrees with the stratified
/// definition of must-convergence: a term must-converges at rank r exactly
/// when every one-step successor must-converges at rank < r across unfold
/// edges (and ≤ r across the rest).
pub fn must_rank(tree: &ReductionTree) -> Option<usize> {
    if tree.has_cycle() || tree.aborted || tree.nodes.iter().any(|n| n.cut.is_some()) {
        return None;
    }
    // Kahn topological order over the reachable subgraph, then fold ranks
    // in reverse. (Reachable = all nodes, by construction.)
    let n = tree.nodes.len();
    let mut indegree = vec![0usize; n];
    for node in &tree.nodes {
        for &(_, v) in &node.edges {
            indegree[v] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<NodeId> = (0..n).filter(|&i| indegree[i] == 0).collect();
    while let Some(u) = ready.pop() {
        order.push(u);
        for &(_, v) in &tree.nodes[u].edges {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push(v);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "graph certified acyclic");
    let mut rank = vec![0usize; n];
    for &u in order.iter().rev() {
        rank[u] = tree.nodes[u]
            .edges
            .iter()
            .map(|&(k, v)| rank[v] + usize::from(k.is_unfold()))
            .max()
            .unwrap_or(0);
    }
    Some(rank[tree.root])
}

/// Cheapest convergence witness: a path from the root to a value minimizing
/// the number of unfold-fold edges (0-1 breadth-first search).
pub fn min_unfold_witness(tree: &ReductionTree) -> Option<(Vec<Step>, usize)> {
    const INF: usize = usize::MAX;
    let n = tree.nodes.len();
    let mut dist = vec![INF; n];
    let mut prev: Vec<Option<NodeId>> = vec![None; n];
    let mut deque = VecDeque::new();
    dist[tree.root] = 0;
    deque.push_back(tree.root);
    while let Some(u) = deque.pop_front() {
        for &(k, v) in &tree.nodes[u].edges {
            let w = usize::from(k.is_unfold());
            if dist[u].saturating_add(w) < dist[v] {
                dist[v] = dist[u] + w;
                prev[v] = Some(u);
                if w == 0 {
                    deque.push_front(v);
                } else {
                    deque.push_back(v);
                }
            }
        }
    }
    let best = tree
        .value_nodes()
        .filter(|&v| dist[v] < INF)
        .min_by_key(|&v| dist[v])?;
    let mut ids = vec![best];
    let mut cur = best;
    while let Some(p) = prev[cur] {
        ids.push(p);
        cur = p;
    }
    ids.reverse();
    debug_assert_eq!(ids[0], tree.root);
    let steps = ids
        .windows(2)
        .map(|w| {
            let kind = tree.nodes[w[0]]
                .edges
                .iter()
                .find(|(_, t)| *t == w[1])
                .map(|(k, _)| *k)
                .expect("adjacent nodes");
            Step {
                source: tree.nodes[w[0]].term.clone(),
                target: tree.nodes[w[1]].term.clone(),
                kind,
            }
        })
        .collect();
    Some((steps, dist[best]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::*;
    use crate::reduction::classify_path;
    use crate::syntax::{plug, term_eq, Type};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn exploring_a_choice_of_two_numerals() {
        let tree = explore(&or_term(numeral_term(0), numeral_term(1)), &b());
        let leaves: Vec<&Term> = tree
            .value_nodes()
            .map(|i| &tree.nodes[i].term)
            .collect();
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().any(|t| **t == numeral_term(0)));
        assert!(leaves.iter().any(|t| **t == numeral_term(1)));
        assert!(tree.complete(), "single scrutiny certifies the fanout");
        assert!(!tree.has_cycle());
    }

    #[test]
    fn values_explore_to_single_nodes() {
        let tree = explore(&numeral_term(3), &b());
        assert_eq!(tree.nodes.len(), 1);
        assert!(tree.nodes[0].is_value);
        assert!(tree.complete());
    }

    #[test]
    fn omega_explores_to_a_cycle() {
        let tree = explore(&omega_at(Type::Unit), &b());
        assert!(tree.has_cycle());
        assert!(tree.complete(), "the loop closes without cuts");
        assert_eq!(tree.value_nodes().count(), 0);
        let w = tree.cycle_witness().unwrap();
        assert!(!w.cycle.is_empty());
        // The witness replays: stem chains from the root, the cycle chains
        // from the stem's end back to itself.
        let stem_class = classify_path(&w.stem).unwrap();
        let cycle_class = classify_path(&w.cycle).unwrap();
        assert!(stem_class.pure && cycle_class.pure);
        assert!(
            cycle_class.unfold_count >= 1,
            "each lap unfolds at least once"
        );
        let first = w
            .cycle
            .first()
            .map(|s| s.source.clone())
            .expect("nonempty cycle");
        let last = w.cycle.last().map(|s| s.target.clone()).unwrap();
        assert!(term_eq(&first, &last));
        if let Some(stem_last) = w.stem.last() {
            assert!(term_eq(&stem_last.target, &first));
        }
    }

    #[test]
    fn may_examples() {
        assert!(may_converges(&numeral_term(0), &b()).converges());
        assert!(may_converges(&or_term(numeral_term(0), omega_at(nat())), &b()).converges());

        match may_converges(&omega_at(Type::Unit), &b()) {
            MayVerdict::DivergesCertified { .. } => {}
            other => panic!("expected certified divergence, got {other:?}"),
        }

        // let x = omega[unit] in (): the bound term never produces a value,
        // so the whole term cannot either.
        let e = let_in(omega_at(Type::Unit), Term::Val(Value::Unit));
        match may_converges(&e, &b()) {
            MayVerdict::DivergesCertified { .. } => {}
            other => panic!("expected certified divergence, got {other:?}"),
        }
    }

    #[test]
    fn must_examples() {
        match must_converges(&or_term(numeral_term(0), numeral_term(1)), &b()) {
            MustVerdict::MustConverges { rank, exact } => {
                assert!(exact);
                assert_eq!(rank, 1, "one case scrutiny on every branch");
            }
            other => panic!("expected must-convergence, got {other:?}"),
        }

        match must_converges(&or_term(numeral_term(0), omega_at(nat())), &b()) {
            MustVerdict::Refuted { .. } => {}
            other => panic!("expected refutation, got {other:?}"),
        }

        match must_converges(&omega_at(nat()), &b()) {
            MustVerdict::Refuted {
                evidence: InfinitePathEvidence::Cycle(w),
            } => assert!(!w.cycle.is_empty()),
            other => panic!("expected a cycle refutation, got {other:?}"),
        }
    }

    #[test]
    fn ranks_count_unfolds_not_steps() {
        // A bare value: rank 0.
        let tree = explore(&Term::Val(tt()), &b());
        assert_eq!(must_rank(&tree), Some(0));

        // One beta step, no unfolds: rank 0.
        let tree = explore(&Term::app(id_value(nat()), numeral_term(0)), &b());
        assert_eq!(must_rank(&tree), Some(0));

        // One case scrutiny: rank 1.
        let tree = explore(
            &Term::case(numeral(1), vec![numeral_term(0), Term::Val(Value::Var(0))]),
            &b(),
        );
        assert_eq!(must_rank(&tree), Some(1));

        // Choice then case on the result: still rank 1 on every branch.
        let tree = explore(&or_term(numeral_term(0), numeral_term(1)), &b());
        assert_eq!(must_rank(&tree), Some(1));

        // Nested conditionals: two scrutinies along the deep path.
        let e = cond(
            Term::Val(tt()),
            cond(Term::Val(ff()), numeral_term(0), numeral_term(1)),
            numeral_term(2),
        );
        let tree = explore(&e, &b());
        assert_eq!(must_rank(&tree), Some(2));

        // Undefined on cyclic graphs.
        let tree = explore(&omega_at(nat()), &b());
        assert_eq!(must_rank(&tree), None);
    }

    #[test]
    fn within_bound_on_unfolds() {
        let beta_only = Term::app(id_value(nat()), numeral_term(0));
        assert!(may_converges_within(&beta_only, 0, &b()).converges());

        let one_unfold = or_term(numeral_term(0), numeral_term(1));
        assert!(!may_converges_within(&one_unfold, 0, &b()).converges());
        assert!(may_converges_within(&one_unfold, 1, &b()).converges());
    }

    #[test]
    fn witnesses_chain_and_minimize_unfolds() {
        let e = or_term(
            Term::case(numeral(1), vec![numeral_term(0), Term::Val(Value::Var(0))]),
            numeral_term(7),
        );
        match may_converges(&e, &b()) {
            MayVerdict::Converges {
                witness,
                unfold_count,
            } => {
                let class = classify_path(&witness).unwrap();
                assert_eq!(class.unfold_count, unfold_count);
                assert!(term_eq(&witness[0].source, &e));
                assert!(witness.last().unwrap().target.is_value());
                // The right operand needs only the or-scrutiny; the left
                // would add another unfold.
                assert_eq!(unfold_count, 1);
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn certification_covers_the_three_shapes() {
        // Placeholder erased: discarded choice.
        let tree = explore(&let_in(Term::Choice, Term::Val(Value::Unit)), &b());
        assert!(tree.complete());

        // Placeholder surviving into a value: bare choice.
        let tree = explore(&Term::Choice, &b());
        assert!(tree.complete());

        // One scrutiny: or.
        let tree = explore(&or_term(numeral_term(0), numeral_term(1)), &b());
        assert!(tree.complete());
    }

    #[test]
    fn double_scrutiny_is_not_certified() {
        // let x = ? in ifz x then 0 else (ifz pred x then 0 else 1):
        // distinguishes 1 from 2, so no fixed branch set is exhaustive.
        let inner = Term::case(
            Value::Var(0),
            vec![numeral_term(0), numeral_term(1)],
        );
        let e = let_in(
            Term::Choice,
            Term::case(Value::Var(0), vec![numeral_term(0), inner]),
        );
        let tree = explore(&e, &b());
        assert!(!tree.complete(), "two scrutinies must stay truncated");
        match must_verdict_of_tree(&tree) {
            MustVerdict::MustConverges { exact, .. } => assert!(!exact),
            other => panic!("expected inexact must-convergence, got {other:?}"),
        }
    }

    #[test]
    fn certified_verdicts_stable_under_larger_bounds() {
        let cases = vec![
            or_term(numeral_term(0), numeral_term(1)),
            let_in(Term::Choice, Term::Val(Value::Unit)),
            Term::Choice,
            cond(Term::Choice, Term::Val(tt()), Term::Val(ff())),
        ];
        for e in cases {
            let small = must_converges(&e, &Budget::default().with_choice_bound(2));
            let large = must_converges(&e, &Budget::default().with_choice_bound(17));
            match (&small, &large) {
                (
                    MustVerdict::MustConverges { rank: r1, exact: true },
                    MustVerdict::MustConverges { rank: r2, exact: true },
                ) => assert_eq!(r1, r2),
                other => panic!("expected exact verdicts at both bounds: {other:?}"),
            }
        }
    }

    #[test]
    fn tree_mode_agrees_with_dedup_on_verdicts() {
        let nb = Budget::default().with_dedup(false).with_fuel(60);
        let db = Budget::default().with_fuel(60);
        // Deterministic diverger: both modes certify via the ancestor cycle.
        match (may_converges(&omega_at(nat()), &nb), may_converges(&omega_at(nat()), &db)) {
            (MayVerdict::DivergesCertified { .. }, MayVerdict::DivergesCertified { .. }) => {}
            other => panic!("divergence should certify in both modes: {other:?}"),
        }
        // Converging choice term: both modes find the values.
        let e = or_term(numeral_term(0), numeral_term(1));
        assert!(may_converges(&e, &nb).converges());
        assert!(may_converges(&e, &db).converges());
    }

    #[test]
    fn fuel_cuts_give_unknown() {
        let tiny = Budget::default().with_fuel(3);
        match may_converges(&omega_at(nat()), &tiny) {
            MayVerdict::Unknown { .. } => {}
            other => panic!("expected unknown under tiny fuel, got {other:?}"),
        }
        match must_converges(&omega_at(nat()), &tiny) {
            MustVerdict::Unknown => {}
            other => panic!("expected unknown under tiny fuel, got {other:?}"),
        }
    }

    #[test]
    fn memo_limit_aborts_to_unknown() {
        let clamped = Budget::default().with_memo_limit(5);
        let e = or_term(or_term(numeral_term(0), numeral_term(1)), numeral_term(2));
        let tree = explore(&e, &clamped);
        assert!(tree.aborted);
        assert!(!tree.complete());
        match must_verdict_of_tree(&tree) {
            MustVerdict::Unknown => {}
            other => panic!("expected unknown after abort, got {other:?}"),
        }
    }

    #[test]
    fn plugged_discriminators_behave_as_designed() {
        // The per-call chooser can answer (true, false) differently across
        // two calls, so the disagreement frame may converge but the
        // agreement frame may also converge; under must, both fail for the
        // per-call chooser, while the one-time chooser always agrees with
        // itself.
        let eb = Budget::default();
        let per_call = Term::Val(chooser_per_call());
        let once = chooser_once();

        let e_xor = plug(&ctx_xor_twice(), &per_call);
        assert!(may_converges(&e_xor, &eb).converges());

        let eprime_xor = plug(&ctx_xor_twice(), &once);
        match may_converges(&eprime_xor, &eb) {
            MayVerdict::DivergesCertified { .. } => {}
            other => panic!("one-time chooser never disagrees with itself: {other:?}"),
        }

        let eprime_xnor = plug(&ctx_xnor_twice(), &once);
        match must_converges(&eprime_xnor, &eb) {
            MustVerdict::MustConverges { exact: true, .. } => {}
            other => panic!("one-time chooser always agrees with itself: {other:?}"),
        }

        let e_xnor = plug(&ctx_xnor_twice(), &per_call);
        match must_converges(&e_xnor, &eb) {
            MustVerdict::Refuted { .. } => {}
            other => panic!("per-call chooser can disagree with itself: {other:?}"),
        }
    }
}
