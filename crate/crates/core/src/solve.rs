//! Exact solvers for `R`-rcol, `k`-rcol and `k`-ccol.
//!
//! Both searches keep one bitmask domain per vertex (so at most 64 colours),
//! propagate to a fixpoint after every decision and branch on the smallest
//! open domain. Every leaf is re-checked by the verifier before it is
//! reported.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::graph::Graph;
use crate::role::{verify_coupon_at, verify_role_colouring, RoleColouring, RoleGraph};

pub const MAX_COLOURS: usize = 64;
/// Largest `k` for which `k`-rcol enumerates role graphs up to isomorphism.
pub const MAX_ROLE_ENUMERATION: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VariableOrder {
    #[default]
    MinCandidatesFirst,
    InputOrder,
    /// Smallest ratio of domain size to conflict weight (constraint failures
    /// seen so far around the vertex), then lowest id. First-solution
    /// searches restart with a growing failure cutoff, keeping the weights.
    ConflictWeighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolveConfig {
    /// Cap on search nodes; `None` searches to completion.
    pub node_budget: Option<u64>,
    /// Report every solution instead of stopping at the first.
    pub enumerate_all: bool,
    pub variable_order: VariableOrder,
}

impl SolveConfig {
    pub fn first() -> Self {
        SolveConfig::default()
    }

    pub fn all() -> Self {
        SolveConfig { enumerate_all: true, ..SolveConfig::default() }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    fn validate(&self) -> Result<(), SolveError> {
        if self.node_budget == Some(0) {
            return Err(SolveError::InvalidParameter("node budget must be positive"));
        }
        Ok(())
    }
}

/// Solutions plus the number of search nodes visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub solutions: Vec<T>,
    pub nodes: u64,
}

type Mask = u64;

fn bit(c: usize) -> Mask {
    1 << c
}

fn full_mask(k: usize) -> Mask {
    if k == 64 {
        !0
    } else {
        (1 << k) - 1
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(c)
        }
    })
}

fn is_singleton(m: Mask) -> bool {
    m != 0 && m & (m - 1) == 0
}

struct Budget {
    limit: Option<u64>,
    nodes: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        match self.limit {
            Some(limit) if self.nodes > limit => Err(SolveError::BudgetExhausted { budget: limit }),
            _ => Ok(()),
        }
    }
}

fn pick_variable(domains: &[Mask], order: VariableOrder, weights: &[u64]) -> Option<usize> {
    let open = domains.iter().enumerate().filter(|(_, d)| !is_singleton(**d));
    match order {
        VariableOrder::InputOrder => domains.iter().position(|&d| !is_singleton(d)),
        VariableOrder::MinCandidatesFirst => open.min_by_key(|(v, d)| (d.count_ones(), *v)).map(|(v, _)| v),
        VariableOrder::ConflictWeighted => open
            .min_by(|(u, a), (v, b)| {
                let x = u64::from(a.count_ones()) * (weights[*v] + 1);
                let y = u64::from(b.count_ones()) * (weights[*u] + 1);
                x.cmp(&y).then(u.cmp(v))
            })
            .map(|(v, _)| v),
    }
}

/// Failure cutoff for restarts; `None` means a single complete search.
struct Restarts {
    cutoff: Option<u64>,
    failures: u64,
}

impl Restarts {
    fn new(cfg: &SolveConfig) -> Self {
        let on = cfg.variable_order == VariableOrder::ConflictWeighted && !cfg.enumerate_all;
        Restarts { cutoff: on.then_some(64), failures: 0 }
    }

    /// Records a failure; true when the current run should restart.
    fn fail(&mut self) -> bool {
        self.failures += 1;
        self.cutoff.is_some_and(|c| self.failures > c)
    }

    fn next_run(&mut self) {
        self.failures = 0;
        if let Some(c) = &mut self.cutoff {
            *c += *c / 2;
        }
    }
}

/// Outcome of one search subtree.
#[derive(PartialEq, Eq)]
enum Step {
    Stop,
    Continue,
    Restart,
}

/// Charges a failed constraint around `v` to `v` and its neighbours.
fn charge(weights: &mut [u64], g: &Graph, v: usize) {
    weights[v] += 1;
    for &u in g.neighbours(v) {
        weights[u] += 1;
    }
}

/// Worklist with membership flags.
struct Worklist {
    queue: Vec<usize>,
    queued: Vec<bool>,
}

impl Worklist {
    fn new(n: usize) -> Self {
        Worklist { queue: Vec::new(), queued: vec![false; n] }
    }

    fn push(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v);
        }
    }

    fn pop(&mut self) -> Option<usize> {
        let v = self.queue.pop()?;
        self.queued[v] = false;
        Some(v)
    }

    fn clear(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v] = false;
        }
    }
}

// ---------------------------------------------------------------------------
// R-rcol

struct RoleSearch<'a> {
    g: &'a Graph,
    role: &'a RoleGraph,
    role_nbrs: Vec<Mask>,
    all_colours: Mask,
    cfg: SolveConfig,
    budget: Budget,
    work: Worklist,
    weights: Vec<u64>,
    restarts: Restarts,
    solutions: Vec<RoleColouring>,
}

impl RoleSearch<'_> {
    /// Drops colours of `v` lacking support: some neighbour with no
    /// admissible colour, or a required neighbour colour nobody can take.
    fn revise(&self, domains: &mut [Mask], v: usize) -> bool {
        let nbrs = self.g.neighbours(v);
        let reachable = nbrs.iter().fold(0, |acc, &u| acc | domains[u]);
        let mut keep = 0;
        for c in bits(domains[v]) {
            let want = self.role_nbrs[c];
            if want & !reachable == 0 && nbrs.iter().all(|&u| domains[u] & want != 0) {
                keep |= bit(c);
            }
        }
        let changed = keep != domains[v];
        domains[v] = keep;
        changed
    }

    fn propagate(&mut self, domains: &mut [Mask]) -> bool {
        while let Some(v) = self.work.pop() {
            if self.revise(domains, v) {
                if domains[v] == 0 {
                    charge(&mut self.weights, self.g, v);
                    self.work.clear();
                    return false;
                }
                for &u in self.g.neighbours(v) {
                    self.work.push(u);
                }
            }
        }
        domains.iter().fold(0, |acc, &d| acc | d) == self.all_colours
    }

    fn run(&mut self, domains: Vec<Mask>) -> Result<(), SolveError> {
        loop {
            for v in self.g.vertices() {
                self.work.push(v);
            }
            if self.search(domains.clone())? != Step::Restart {
                return Ok(());
            }
            self.restarts.next_run();
        }
    }

    fn search(&mut self, mut domains: Vec<Mask>) -> Result<Step, SolveError> {
        self.budget.tick()?;
        if !self.propagate(&mut domains) {
            return Ok(if self.restarts.fail() { Step::Restart } else { Step::Continue });
        }
        let Some(v) = pick_variable(&domains, self.cfg.variable_order, &self.weights) else {
            let r = RoleColouring::new(domains.iter().map(|d| d.trailing_zeros() as usize).collect());
            if verify_role_colouring(self.g, self.role, &r).is_ok() {
                self.solutions.push(r);
                if !self.cfg.enumerate_all {
                    return Ok(Step::Stop);
                }
            }
            return Ok(Step::Continue);
        };
        for c in bits(domains[v]) {
            let mut next = domains.clone();
            next[v] = bit(c);
            for &u in self.g.neighbours(v) {
                self.work.push(u);
            }
            match self.search(next)? {
                Step::Continue => {}
                step => return Ok(step),
            }
        }
        Ok(Step::Continue)
    }
}

/// Searches for role colourings of `g` with role graph `role`.
///
/// With `enumerate_all` unset at most one colouring is returned; the
/// lowest-numbered vertex is then restricted to one colour per orbit of the
/// role graph's automorphism group.
pub fn solve_r_rcol(
    g: &Graph,
    role: &RoleGraph,
    cfg: SolveConfig,
) -> Result<SearchReport<RoleColouring>, SolveError> {
    cfg.validate()?;
    let k = role.order();
    if k > MAX_COLOURS {
        return Err(SolveError::InvalidParameter("role graph has more than 64 vertices"));
    }
    if g.order() == 0 {
        return Err(SolveError::InvalidParameter("graph must be nonempty"));
    }
    let mut search = RoleSearch {
        g,
        role,
        role_nbrs: role
            .vertices()
            .map(|c| role.neighbours(c).iter().fold(0, |m, &d| m | bit(d)))
            .collect(),
        all_colours: full_mask(k),
        cfg,
        budget: Budget { limit: cfg.node_budget, nodes: 0 },
        work: Worklist::new(g.order()),
        weights: vec![0; g.order()],
        restarts: Restarts::new(&cfg),
        solutions: Vec::new(),
    };
    if k > g.order() || k == 0 {
        return Ok(SearchReport { solutions: Vec::new(), nodes: 0 });
    }
    // A colour of degree d in the role graph needs a vertex of degree >= d.
    let mut domains: Vec<Mask> = g
        .vertices()
        .map(|v| {
            role.vertices()
                .filter(|&c| role.degree(c) <= g.degree(v))
                .fold(0, |m, c| m | bit(c))
        })
        .collect();
    if !cfg.enumerate_all {
        if let Some(reps) = orbit_representatives(role) {
            domains[0] &= reps;
        }
    }
    search.run(domains)?;
    Ok(SearchReport { solutions: search.solutions, nodes: search.budget.nodes })
}

/// Convenience wrapper returning the first colouring, if any.
pub fn find_r_rcol(
    g: &Graph,
    role: &RoleGraph,
    cfg: SolveConfig,
) -> Result<Option<RoleColouring>, SolveError> {
    let cfg = SolveConfig { enumerate_all: false, ..cfg };
    Ok(solve_r_rcol(g, role, cfg)?.solutions.pop())
}

/// Decides `k`-rcol by trying every role graph on `k` vertices (loops
/// allowed) up to isomorphism, connected ones only when `g` is connected.
pub fn solve_k_rcol(
    g: &Graph,
    k: usize,
    cfg: SolveConfig,
) -> Result<Option<(RoleGraph, RoleColouring)>, SolveError> {
    if k == 0 {
        return Err(SolveError::InvalidParameter("k must be at least 1"));
    }
    if k > MAX_ROLE_ENUMERATION {
        return Err(SolveError::SizeGuard("k-rcol enumerates role graphs only for k <= 5"));
    }
    if g.order() == 0 {
        return Err(SolveError::InvalidParameter("graph must be nonempty"));
    }
    if k > g.order() {
        return Ok(None);
    }
    let cfg = SolveConfig { enumerate_all: false, ..cfg };
    let connected = g.is_connected();
    let (dmin, dmax) = (g.min_degree(), g.max_degree());
    let mut spent = 0u64;
    for role in role_graphs_up_to_isomorphism(k) {
        if connected && !role.is_connected() {
            continue;
        }
        if role.min_degree() > dmin || role.max_degree() > dmax {
            continue;
        }
        let call = match cfg.node_budget {
            Some(b) if spent >= b => return Err(SolveError::BudgetExhausted { budget: b }),
            Some(b) => SolveConfig { node_budget: Some(b - spent), ..cfg },
            None => cfg,
        };
        let report = match solve_r_rcol(g, &role, call) {
            Err(SolveError::BudgetExhausted { .. }) => {
                return Err(SolveError::BudgetExhausted { budget: cfg.node_budget.unwrap_or(0) })
            }
            other => other?,
        };
        spent += report.nodes;
        if let Some(r) = report.solutions.into_iter().next() {
            return Ok(Some((role, r)));
        }
    }
    Ok(None)
}

/// All graphs on `k` vertices with loops allowed, one per isomorphism class,
/// in order of their smallest edge-set encoding.
pub fn role_graphs_up_to_isomorphism(k: usize) -> Vec<RoleGraph> {
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|u| (u..k).map(move |v| (u, v))).collect();
    let perms = permutations(k);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let chosen = || slots.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        // Keep a mask only if it is the smallest encoding in its class.
        let minimal = perms.iter().all(|p| {
            let image = chosen().fold(0u64, |acc, (u, v)| {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                acc | 1 << slot_index(k, a, b)
            });
            image >= mask
        });
        if minimal {
            out.push(RoleGraph::new(Graph::from_edges(k, chosen()).expect("slots in range")));
        }
    }
    out
}

fn slot_index(k: usize, a: usize, b: usize) -> usize {
    // Row a of the upper triangle (diagonal included) starts after
    // k + (k-1) + ... + (k-a+1) slots.
    a * k - a * a.saturating_sub(1) / 2 + (b - a)
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Automorphisms of a small graph by brute force; `None` above 8 vertices.
pub fn automorphisms(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let k = g.order();
    if k > 8 {
        return None;
    }
    let edges = g.edges();
    Some(
        permutations(k)
            .into_iter()
            .filter(|p| edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])))
            .collect(),
    )
}

/// Smallest member of each automorphism orbit, as a colour mask.
fn orbit_representatives(role: &RoleGraph) -> Option<Mask> {
    let autos = automorphisms(role)?;
    let mut reps = 0;
    for c in role.vertices() {
        if autos.iter().all(|p| p[c] >= c) {
            reps |= bit(c);
        }
    }
    Some(reps)
}

// ---------------------------------------------------------------------------
// k-ccol

/// A `k`-coupon colouring search with optional restrictions.
///
/// By default every vertex must see all `k` colours. [`CouponSearch::demand`]
/// narrows that to a subset of vertices and [`CouponSearch::pin`] fixes
/// colours up front, which is how gadgets are studied in isolation.
#[derive(Clone, Debug)]
pub struct CouponSearch<'a> {
    g: &'a Graph,
    k: usize,
    demand: Vec<bool>,
    domains: Vec<Mask>,
    pinned: bool,
}

impl<'a> CouponSearch<'a> {
    pub fn new(g: &'a Graph, k: usize) -> Result<Self, SolveError> {
        if k == 0 {
            return Err(SolveError::InvalidParameter("k must be at least 1"));
        }
        if k > MAX_COLOURS {
            return Err(SolveError::InvalidParameter("at most 64 colours"));
        }
        Ok(CouponSearch {
            g,
            k,
            demand: vec![true; g.order()],
            domains: vec![full_mask(k); g.order()],
            pinned: false,
        })
    }

    /// Only vertices flagged `true` need a neighbour of every colour.
    pub fn demand(mut self, demand: Vec<bool>) -> Self {
        assert_eq!(demand.len(), self.g.order());
        self.demand = demand;
        self
    }

    /// Restricts `v` to `colour`.
    pub fn pin(mut self, v: usize, colour: usize) -> Self {
        self.domains[v] &= bit(colour);
        self.pinned = true;
        self
    }

    pub fn run(self, cfg: SolveConfig) -> Result<SearchReport<RoleColouring>, SolveError> {
        cfg.validate()?;
        let g = self.g;
        let k = self.k;
        // A vertex with fewer than k neighbours cannot see k colours.
        if g.vertices().any(|v| self.demand[v] && g.degree(v) < k) {
            return Ok(SearchReport { solutions: Vec::new(), nodes: 0 });
        }
        let mut domains = self.domains;
        if !cfg.enumerate_all && !self.pinned {
            // Colours are interchangeable: fix the neighbourhood of one
            // demanding vertex of degree exactly k, or failing that one vertex.
            if let Some(w) = g.vertices().find(|&w| self.demand[w] && g.degree(w) == k) {
                for (c, &u) in g.neighbours(w).iter().enumerate() {
                    domains[u] &= bit(c);
                }
            } else if let Some(d) = domains.first_mut() {
                *d &= 1;
            }
        }
        let mut search = CouponEngine {
            g,
            k,
            all: full_mask(k),
            demand: self.demand,
            cfg,
            budget: Budget { limit: cfg.node_budget, nodes: 0 },
            work: Worklist::new(g.order()),
            weights: vec![0; g.order()],
            restarts: Restarts::new(&cfg),
            solutions: Vec::new(),
        };
        search.run(domains)?;
        Ok(SearchReport { solutions: search.solutions, nodes: search.budget.nodes })
    }
}

struct CouponEngine<'a> {
    g: &'a Graph,
    k: usize,
    all: Mask,
    demand: Vec<bool>,
    cfg: SolveConfig,
    budget: Budget,
    work: Worklist,
    weights: Vec<u64>,
    restarts: Restarts,
    solutions: Vec<RoleColouring>,
}

impl CouponEngine<'_> {
    fn touched(&mut self, u: usize) {
        for &w in self.g.neighbours(u) {
            if self.demand[w] {
                self.work.push(w);
            }
        }
    }

    /// Enforces the coupon condition at a demanding vertex `v`. Returns false
    /// on a wipeout.
    fn revise(&mut self, domains: &mut [Mask], v: usize) -> bool {
        let g = self.g;
        let nbrs = g.neighbours(v);
        let exact = nbrs.len() == self.k;
        if exact {
            // Exactly k neighbours: they take pairwise distinct colours.
            for (i, &u) in nbrs.iter().enumerate() {
                if is_singleton(domains[u]) {
                    let c = domains[u];
                    for (j, &w) in nbrs.iter().enumerate() {
                        if i != j && w != u && domains[w] & c != 0 {
                            domains[w] &= !c;
                            if domains[w] == 0 {
                                return false;
                            }
                            self.touched(w);
                        }
                    }
                }
            }
        }
        let mut covered = 0;
        for &u in nbrs {
            covered |= domains[u];
        }
        if covered & self.all != self.all {
            return false;
        }
        // A colour with a single possible supplier forces that supplier.
        for c in 0..self.k {
            let mut supplier = None;
            let mut count = 0;
            for &u in nbrs {
                if domains[u] & bit(c) != 0 {
                    count += 1;
                    supplier = Some(u);
                    if count > 1 {
                        break;
                    }
                }
            }
            match (count, supplier) {
                (0, _) => return false,
                (1, Some(u)) if domains[u] != bit(c) => {
                    domains[u] = bit(c);
                    self.touched(u);
                }
                _ => {}
            }
        }
        true
    }

    fn propagate(&mut self, domains: &mut [Mask]) -> bool {
        while let Some(v) = self.work.pop() {
            if !self.revise(domains, v) {
                charge(&mut self.weights, self.g, v);
                self.work.clear();
                return false;
            }
        }
        true
    }

    fn run(&mut self, domains: Vec<Mask>) -> Result<(), SolveError> {
        loop {
            for v in self.g.vertices() {
                if self.demand[v] {
                    self.work.push(v);
                }
            }
            if self.search(domains.clone())? != Step::Restart {
                return Ok(());
            }
            self.restarts.next_run();
        }
    }

    fn search(&mut self, mut domains: Vec<Mask>) -> Result<Step, SolveError> {
        self.budget.tick()?;
        if domains.contains(&0) || !self.propagate(&mut domains) {
            return Ok(if self.restarts.fail() { Step::Restart } else { Step::Continue });
        }
        let Some(v) = pick_variable(&domains, self.cfg.variable_order, &self.weights) else {
            let r = RoleColouring::new(domains.iter().map(|d| d.trailing_zeros() as usize).collect());
            let demanded = self.g.vertices().filter(|&v| self.demand[v]);
            if verify_coupon_at(self.g, self.k, &r, demanded).is_ok() {
                self.solutions.push(r);
                if !self.cfg.enumerate_all {
                    return Ok(Step::Stop);
                }
            }
            return Ok(Step::Continue);
        };
        for c in bits(domains[v]) {
            let mut next = domains.clone();
            next[v] = bit(c);
            self.touched(v);
            match self.search(next)? {
                Step::Continue => {}
                step => return Ok(step),
            }
        }
        Ok(Step::Continue)
    }
}

/// Searches for `k`-coupon colourings: every vertex has a neighbour of each
/// of the `k` colours. Returns immediately when `δ(g) < k`.
pub fn solve_k_ccol(g: &Graph, k: usize, cfg: SolveConfig) -> Result<SearchReport<RoleColouring>, SolveError> {
    CouponSearch::new(g, k)?.run(cfg)
}

pub fn find_k_ccol(g: &Graph, k: usize, cfg: SolveConfig) -> Result<Option<RoleColouring>, SolveError> {
    let cfg = SolveConfig { enumerate_all: false, ..cfg };
    Ok(solve_k_ccol(g, k, cfg)?.solutions.pop())
}
