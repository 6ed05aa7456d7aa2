//! Exact search for minimum-color local antimagic labelings of small graphs.
//!
//! Labels are assigned one element at a time. A vertex weight is final once every
//! member of its open neighborhood is labeled; at that point it must differ from
//! finished neighbors and may not push the number of distinct weights above the
//! target. The minimum is found by iterative deepening on that target.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{self, Label, Mode, TotalLabeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub parallelism: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: u64::MAX, max_time: Duration::from_secs(60), parallelism: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    /// `chi` is certified: a witness exists and every smaller target was refuted.
    Exact,
    /// The budget ran out before any labeling was found.
    LowerBoundOnly,
    /// The budget ran out after a witness was found; `chi` lies in the bound range.
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub status: Status,
    pub chi: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub best_witness: Option<TotalLabeling>,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_secs", serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("exhaustive search found no {mode} local antimagic labeling of {graph:?}")]
    NoValidLabeling { graph: Graph, mode: Mode },
}

// ============================================================================
// Search engine
// ============================================================================

#[derive(Debug, Clone, Copy)]
enum Elem {
    Vertex(usize),
    Edge(usize),
}

/// Fixed data for one (graph, mode) pair.
struct Plan<'g> {
    g: &'g Graph,
    order: Vec<Elem>,
    /// Label range for each position in `order`.
    pools: Vec<std::ops::RangeInclusive<Label>>,
    /// Vertices whose weight the element at each position contributes to.
    targets: Vec<Vec<usize>>,
}

impl<'g> Plan<'g> {
    fn new(g: &'g Graph, mode: Mode) -> Self {
        let (n, m) = (g.n(), g.m());
        let (nl, ml) = (n as Label, m as Label);
        let mut by_degree: Vec<usize> = g.vertices().collect();
        by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let vertices: Vec<Elem> = by_degree.iter().map(|&v| Elem::Vertex(v)).collect();
        let mut edges: Vec<Elem> = Vec::with_capacity(m);
        let mut seen = vec![false; m];
        for &v in &by_degree {
            for &(_, e) in g.incident(v) {
                if !std::mem::replace(&mut seen[e], true) {
                    edges.push(Elem::Edge(e));
                }
            }
        }
        let (first, second) = match mode {
            Mode::Setla => (edges, vertices),
            _ => (vertices, edges),
        };
        let second = completion_order(g, &first, second);
        let order: Vec<Elem> = first.into_iter().chain(second).collect();
        let pool = |e: &Elem| match (mode, e) {
            (Mode::Svtla, Elem::Vertex(_)) => 1..=nl,
            (Mode::Svtla, Elem::Edge(_)) => nl + 1..=nl + ml,
            (Mode::Setla, Elem::Edge(_)) => 1..=ml,
            (Mode::Setla, Elem::Vertex(_)) => ml + 1..=nl + ml,
            (Mode::General, _) => 1..=nl + ml,
        };
        let pools = order.iter().map(pool).collect();
        let targets = order
            .iter()
            .map(|e| match *e {
                Elem::Vertex(v) => g.neighbors(v).collect(),
                Elem::Edge(i) => {
                    let (a, b) = g.edges()[i];
                    vec![a, b]
                }
            })
            .collect();
        Plan { g, order, pools, targets }
    }
}

/// Orders the second phase greedily so that as many weights as possible become
/// final as early as possible; ties go to the element listed first.
fn completion_order(g: &Graph, first: &[Elem], mut rest: Vec<Elem>) -> Vec<Elem> {
    let mut remaining: Vec<usize> = (0..=g.n()).map(|v| if v == 0 { 0 } else { 2 * g.degree(v) }).collect();
    let touch = |e: &Elem| -> Vec<usize> {
        match *e {
            Elem::Vertex(v) => g.neighbors(v).collect(),
            Elem::Edge(i) => vec![g.edges()[i].0, g.edges()[i].1],
        }
    };
    for e in first {
        for v in touch(e) {
            remaining[v] -= 1;
        }
    }
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let score = |e: &Elem| touch(e).iter().filter(|&&v| remaining[v] == 1).count();
        let best = (0..rest.len()).max_by_key(|&i| (score(&rest[i]), std::cmp::Reverse(i))).expect("non-empty");
        let e = rest.remove(best);
        for v in touch(&e) {
            remaining[v] -= 1;
        }
        out.push(e);
    }
    out
}

struct Shared {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
    out_of_budget: AtomicBool,
    /// Smallest first-level branch that has succeeded so far.
    best_branch: AtomicUsize,
}

impl Shared {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes || (n.is_multiple_of(4096) && Instant::now() >= self.deadline) {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        !self.out_of_budget.load(Ordering::Relaxed)
    }
}

enum Outcome {
    Found(TotalLabeling),
    Refuted,
    OutOfBudget,
}

struct Worker<'p, 'g> {
    plan: &'p Plan<'g>,
    shared: &'p Shared,
    branch: usize,
    max_colors: usize,
    used: Vec<bool>,
    labels: Vec<Label>,
    weight: Vec<Label>,
    remaining: Vec<usize>,
    /// (weight, multiplicity) of finished vertices.
    colors: Vec<(Label, usize)>,
    done: Vec<bool>,
}

impl<'p, 'g> Worker<'p, 'g> {
    fn new(plan: &'p Plan<'g>, shared: &'p Shared, branch: usize, max_colors: usize) -> Self {
        let g = plan.g;
        Worker {
            plan,
            shared,
            branch,
            max_colors,
            used: vec![false; g.n() + g.m() + 1],
            labels: vec![0; plan.order.len()],
            weight: vec![0; g.n() + 1],
            remaining: (0..=g.n()).map(|v| if v == 0 { 0 } else { 2 * g.degree(v) }).collect(),
            colors: Vec::new(),
            done: vec![false; g.n() + 1],
        }
    }

    fn cancelled(&self) -> bool {
        self.shared.best_branch.load(Ordering::Relaxed) < self.branch
    }

    /// Assigns `label` at `depth`; returns the vertices finished by it, or `None`
    /// (with the assignment undone) when a finished weight breaks a constraint.
    fn place(&mut self, depth: usize, label: Label) -> Option<Vec<usize>> {
        self.used[label as usize] = true;
        self.labels[depth] = label;
        let mut finished = Vec::new();
        for &v in &self.plan.targets[depth] {
            self.weight[v] += label;
            self.remaining[v] -= 1;
            if self.remaining[v] == 0 {
                finished.push(v);
            }
        }
        let mut accepted = 0;
        let mut ok = true;
        for &v in &finished {
            let w = self.weight[v];
            if self.plan.g.neighbors(v).any(|u| self.done[u] && self.weight[u] == w) {
                ok = false;
                break;
            }
            match self.colors.iter().position(|c| c.0 == w) {
                Some(i) => self.colors[i].1 += 1,
                None if self.colors.len() < self.max_colors => self.colors.push((w, 1)),
                None => {
                    ok = false;
                    break;
                }
            }
            self.done[v] = true;
            accepted += 1;
        }
        if ok {
            return Some(finished);
        }
        self.unfinish(&finished[..accepted]);
        self.unplace(depth, label);
        None
    }

    fn unfinish(&mut self, finished: &[usize]) {
        for &v in finished.iter().rev() {
            self.done[v] = false;
            let w = self.weight[v];
            let i = self.colors.iter().position(|c| c.0 == w).expect("color present");
            self.colors[i].1 -= 1;
            if self.colors[i].1 == 0 {
                self.colors.remove(i);
            }
        }
    }

    fn unplace(&mut self, depth: usize, label: Label) {
        for &v in &self.plan.targets[depth] {
            self.weight[v] -= label;
            self.remaining[v] += 1;
        }
        self.used[label as usize] = false;
    }

    fn dfs(&mut self, depth: usize) -> Outcome {
        if depth == self.plan.order.len() {
            return Outcome::Found(self.witness());
        }
        for label in self.plan.pools[depth].clone() {
            if self.used[label as usize] {
                continue;
            }
            if !self.shared.tick() || self.cancelled() {
                return Outcome::OutOfBudget;
            }
            let Some(finished) = self.place(depth, label) else { continue };
            let result = self.dfs(depth + 1);
            self.unfinish(&finished);
            self.unplace(depth, label);
            if !matches!(result, Outcome::Refuted) {
                return result;
            }
        }
        Outcome::Refuted
    }

    fn witness(&self) -> TotalLabeling {
        let g = self.plan.g;
        let mut f = TotalLabeling::new(vec![0; g.n()], vec![0; g.m()]);
        for (e, &l) in self.plan.order.iter().zip(&self.labels) {
            match *e {
                Elem::Vertex(v) => f.vertex_labels[v - 1] = l,
                Elem::Edge(i) => f.edge_labels[i] = l,
            }
        }
        f
    }
}

/// Searches for a labeling with at most `max_colors` distinct weights. The first
/// level is split into branches; the lowest successful branch wins, so the witness
/// does not depend on thread scheduling.
fn feasible(plan: &Plan, max_colors: usize, budget: &SearchBudget, shared: &Shared) -> Outcome {
    shared.best_branch.store(usize::MAX, Ordering::Relaxed);
    let branches: Vec<Label> = plan.pools[0].clone().collect();
    let results: Mutex<Vec<Option<Outcome>>> = Mutex::new(branches.iter().map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let run = || loop {
        let b = next.fetch_add(1, Ordering::Relaxed);
        if b >= branches.len() {
            break;
        }
        if shared.best_branch.load(Ordering::Relaxed) < b || shared.out_of_budget.load(Ordering::Relaxed) {
            continue;
        }
        let mut w = Worker::new(plan, shared, b, max_colors);
        let outcome = if !shared.tick() {
            Outcome::OutOfBudget
        } else if let Some(finished) = w.place(0, branches[b]) {
            let r = w.dfs(1);
            w.unfinish(&finished);
            r
        } else {
            Outcome::Refuted
        };
        if matches!(outcome, Outcome::Found(_)) {
            shared.best_branch.fetch_min(b, Ordering::Relaxed);
        }
        results.lock().expect("no poisoned workers")[b] = Some(outcome);
    };
    let threads = budget.parallelism.max(1).min(branches.len());
    if threads <= 1 {
        run();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(run);
            }
        });
    }
    // Branches below the winner ran to completion; anything else unfinished means
    // the budget decided the outcome.
    let results = results.into_inner().expect("no poisoned workers");
    let mut incomplete = false;
    for r in results {
        match r {
            Some(Outcome::Found(f)) if !incomplete => return Outcome::Found(f),
            Some(Outcome::Refuted) => {}
            Some(Outcome::Found(_)) => {}
            _ => incomplete = true,
        }
    }
    if incomplete {
        Outcome::OutOfBudget
    } else {
        Outcome::Refuted
    }
}

fn new_shared(budget: &SearchBudget, start: Instant) -> Shared {
    Shared {
        nodes: AtomicU64::new(0),
        max_nodes: budget.max_nodes,
        deadline: start + budget.max_time,
        out_of_budget: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
    }
}

// ============================================================================
// Public operations
// ============================================================================

/// Exact chromatic number by backtracking; a lower bound for any labeling's colors.
pub fn chromatic_number(g: &Graph) -> usize {
    fn color(g: &Graph, v: usize, k: usize, c: &mut [usize]) -> bool {
        if v > g.n() {
            return true;
        }
        let used = c[v - 1] == 0;
        debug_assert!(used);
        for col in 1..=k {
            if g.neighbors(v).all(|u| c[u - 1] != col) {
                c[v - 1] = col;
                if color(g, v + 1, k, c) {
                    return true;
                }
            }
        }
        c[v - 1] = 0;
        false
    }
    (1..=g.n()).find(|&k| color(g, 1, k, &mut vec![0; g.n()])).unwrap_or(g.n())
}

/// The starting target for the color search: max(χ(G), pendant bound).
pub fn color_lower_bound(g: &Graph) -> usize {
    chromatic_number(g).max(labeling::pendant_lower_bound(g))
}

/// First labeling of the class found in search order, `None` if none exists.
pub fn find_any_labeling(g: &Graph, mode: Mode, budget: &SearchBudget) -> Result<Option<TotalLabeling>, SolveError> {
    let plan = Plan::new(g, mode);
    let shared = new_shared(budget, Instant::now());
    match feasible(&plan, g.n(), budget, &shared) {
        Outcome::Found(f) => Ok(Some(f)),
        Outcome::Refuted => Ok(None),
        Outcome::OutOfBudget => Err(SolveError::BudgetExhausted),
    }
}

/// Minimum number of colors over all local antimagic labelings of the class.
pub fn solve_min_colors(g: &Graph, mode: Mode, budget: &SearchBudget) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let plan = Plan::new(g, mode);
    let shared = new_shared(budget, start);
    let lower = color_lower_bound(g);
    let result = |status, chi, lower_bound, witness: Option<TotalLabeling>| {
        let upper_bound = witness.as_ref().map(|f| labeling::weight_profile(g, f).expect("witness").color_count());
        SolveResult {
            status,
            chi,
            lower_bound,
            upper_bound,
            best_witness: witness,
            nodes_explored: shared.nodes.load(Ordering::Relaxed),
            elapsed: start.elapsed(),
        }
    };
    let first = match feasible(&plan, g.n(), budget, &shared) {
        Outcome::Found(f) => f,
        Outcome::Refuted => return Err(SolveError::NoValidLabeling { graph: g.clone(), mode }),
        Outcome::OutOfBudget => return Ok(result(Status::LowerBoundOnly, None, lower, None)),
    };
    let upper = labeling::weight_profile(g, &first).expect("witness").color_count();
    for k in lower..upper {
        match feasible(&plan, k, budget, &shared) {
            Outcome::Found(f) => return Ok(result(Status::Exact, Some(k), k, Some(f))),
            Outcome::Refuted => {}
            Outcome::OutOfBudget => return Ok(result(Status::Timeout, None, k, Some(first))),
        }
    }
    Ok(result(Status::Exact, Some(upper), upper, Some(first)))
}

// ============================================================================
// Conjecture scan
// ============================================================================

/// Upper-triangle adjacency bits, pair (i, j) with i < j in lexicographic order.
fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut code = 0u64;
    for &(u, v) in g.edges() {
        let (a, b) = (perm[u - 1].min(perm[v - 1]), perm[u - 1].max(perm[v - 1]));
        // index of pair (a, b), 0-based vertices
        let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        code |= 1 << idx;
    }
    code
}

/// Canonical form: the largest adjacency code over all vertex permutations.
/// Exponential in n; intended for n <= 8.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical form supports at most 11 vertices");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code_under(g, &perm);
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.max(code_under(g, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            if code >> idx & 1 == 1 {
                edges.push((a, b));
            }
            idx += 1;
        }
    }
    Graph::new(n, edges).expect("codes of connected graphs")
}

/// One representative per isomorphism class of connected graphs on 2..=max_order
/// vertices, ordered by order and then canonical code.
pub fn connected_graphs(max_order: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_order < 2 {
        return out;
    }
    let mut level = vec![Graph::new(2, [(1, 2)]).expect("K_2")];
    out.extend(level.iter().cloned());
    for n in 3..=max_order {
        let mut codes = BTreeSet::new();
        // every connected graph has a vertex whose removal leaves it connected
        for g in &level {
            for mask in 1u32..(1 << (n - 1)) {
                let extra = (1..n).filter(|&u| mask >> (u - 1) & 1 == 1).map(|u| (u, n));
                let h = Graph::new(n, g.edges().iter().copied().chain(extra)).expect("connected extension");
                codes.insert(canonical_code(&h));
            }
        }
        level = codes.into_iter().map(|c| graph_from_code(n, c)).collect();
        out.extend(level.iter().cloned());
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ScanOutcome {
    Admits { witness: TotalLabeling },
    Counterexample,
    BudgetExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub order: usize,
    pub graph: Graph,
    pub canonical: u64,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub mode: Mode,
    pub max_order: usize,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| matches!(e.outcome, ScanOutcome::Counterexample))
    }

    pub fn partial(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.outcome, ScanOutcome::BudgetExhausted))
    }
}

/// Runs [`find_any_labeling`] on every connected graph up to `max_order`, with the
/// budget applied per graph. A counterexample entry is a complete refutation.
pub fn conjecture_scan(max_order: usize, mode: Mode, budget: &SearchBudget) -> ScanReport {
    let entries = connected_graphs(max_order)
        .into_iter()
        .map(|g| {
            let outcome = match find_any_labeling(&g, mode, budget) {
                Ok(Some(witness)) => ScanOutcome::Admits { witness },
                Ok(None) => ScanOutcome::Counterexample,
                Err(_) => ScanOutcome::BudgetExhausted,
            };
            ScanEntry { order: g.n(), canonical: canonical_code(&g), graph: g, outcome }
        })
        .collect();
    ScanReport { mode, max_order, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn exact(spec: FamilySpec, mode: Mode) -> usize {
        let g = spec.generate().unwrap();
        let r = solve_min_colors(&g, mode, &SearchBudget::default()).unwrap();
        assert_eq!(r.status, Status::Exact);
        let f = r.best_witness.unwrap();
        assert!(labeling::is_local_antimagic(&g, &f).unwrap().valid);
        assert!(labeling::has_class(&g, &f, mode).unwrap());
        r.chi.unwrap()
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(exact(FamilySpec::Path { n: 3 }, Mode::Svtla), 3);
        assert_eq!(exact(FamilySpec::Complete { n: 2 }, Mode::Svtla), 2);
        assert_eq!(exact(FamilySpec::Cycle { n: 4 }, Mode::Setla), 3);
        assert_eq!(exact(FamilySpec::Star { n: 3 }, Mode::Setla), 4);
        assert_eq!(exact(FamilySpec::Star { n: 3 }, Mode::Svtla), 4);
        assert_eq!(exact(FamilySpec::Cycle { n: 3 }, Mode::Svtla), 3);
        // even cycles of length at least 6 need only two weights
        assert_eq!(exact(FamilySpec::Cycle { n: 6 }, Mode::Setla), 2);
        assert_eq!(exact(FamilySpec::Cycle { n: 6 }, Mode::Svtla), 2);
    }

    #[test]
    fn general_k2() {
        let g = FamilySpec::Complete { n: 2 }.generate().unwrap();
        assert!(find_any_labeling(&g, Mode::General, &SearchBudget::default()).unwrap().is_some());
    }

    #[test]
    fn node_budget_is_respected() {
        let g = FamilySpec::Cycle { n: 6 }.generate().unwrap();
        let budget = SearchBudget { max_nodes: 5, ..SearchBudget::default() };
        let r = solve_min_colors(&g, Mode::Svtla, &budget).unwrap();
        assert_eq!(r.status, Status::LowerBoundOnly);
        assert!(r.best_witness.is_none());
        assert_eq!(r.lower_bound, 2);
        assert!(matches!(find_any_labeling(&g, Mode::Svtla, &budget), Err(SolveError::BudgetExhausted)));
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = FamilySpec::Cycle { n: 5 }.generate().unwrap();
        let seq = solve_min_colors(&g, Mode::Svtla, &SearchBudget::default()).unwrap();
        let par =
            solve_min_colors(&g, Mode::Svtla, &SearchBudget { parallelism: 4, ..SearchBudget::default() }).unwrap();
        assert_eq!(seq.chi, par.chi);
        assert_eq!(seq.best_witness, par.best_witness);
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (2..=6).map(|k| connected_graphs(6).iter().filter(|g| g.n() == k).count()).collect();
        assert_eq!(counts, vec![1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_code_is_invariant() {
        let a = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Graph::new(4, [(3, 1), (1, 4), (4, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let star = FamilySpec::Star { n: 3 }.generate().unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&star));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&FamilySpec::Cycle { n: 5 }.generate().unwrap()), 3);
        assert_eq!(chromatic_number(&FamilySpec::Complete { n: 4 }.generate().unwrap()), 4);
        assert_eq!(chromatic_number(&FamilySpec::Path { n: 4 }.generate().unwrap()), 2);
    }
}
