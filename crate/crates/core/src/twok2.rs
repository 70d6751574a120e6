//! 2-role colouring of 2K_2-free graphs from a maximal independent set.
//!
//! Every candidate colouring is checked against its own role graph before it
//! is returned; a failed check is reported with the independent set and the
//! first violation instead of a certificate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{SolveError, TwoRoleError};
use crate::families::GraphFamily;
use crate::graph::Graph;
use crate::induced::contains_induced;
use crate::oracle::{brute_force_oracle, OracleQuery};
use crate::role::{role_graph_of, verify_role_colouring, RoleColouring, RoleGraph, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub independent_set: Vec<usize>,
    pub colouring: RoleColouring,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoRoleOutcome {
    VerifiedColouring(RoleColouring, RoleGraph),
    TooSmall,
    ConstructionFailed(Diagnostic),
}

impl TwoRoleOutcome {
    pub fn colouring(&self) -> Option<&RoleColouring> {
        match self {
            TwoRoleOutcome::VerifiedColouring(r, _) => Some(r),
            _ => None,
        }
    }
}

fn check_simple(g: &Graph) -> Result<(), TwoRoleError> {
    if g.has_loops() {
        return Err(TwoRoleError::HasLoops);
    }
    Ok(())
}

fn check_2k2_free(g: &Graph) -> Result<(), TwoRoleError> {
    let two_k2 = GraphFamily::two_k2().build().expect("fixed family");
    match contains_induced(g, &two_k2) {
        Ok(None) => Ok(()),
        Ok(Some(_)) => Err(TwoRoleError::Not2K2Free),
        Err(_) => unreachable!("2K2 is loop-free"),
    }
}

/// Greedy extension of `{u, v}` in ascending vertex order.
pub fn maximal_independent_set_containing(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>, TwoRoleError> {
    check_simple(g)?;
    for x in [u, v] {
        if x >= g.order() {
            return Err(TwoRoleError::VertexOutOfRange(x));
        }
    }
    if u == v || g.has_edge(u, v) {
        return Err(TwoRoleError::Adjacent(u, v));
    }
    let mut blocked = vec![false; g.order()];
    let mut set = Vec::new();
    let take = |x: usize, blocked: &mut Vec<bool>, set: &mut Vec<usize>| {
        set.push(x);
        blocked[x] = true;
        for &w in g.neighbours(x) {
            blocked[w] = true;
        }
    };
    take(u, &mut blocked, &mut set);
    take(v, &mut blocked, &mut set);
    for x in g.vertices() {
        if !blocked[x] {
            take(x, &mut blocked, &mut set);
        }
    }
    set.sort_unstable();
    Ok(set)
}

fn finish(g: &Graph, colours: Vec<usize>, independent_set: Vec<usize>) -> TwoRoleOutcome {
    let r = RoleColouring::new(colours);
    let role = role_graph_of(g, &r);
    match verify_role_colouring(g, &role, &r) {
        Ok(()) => TwoRoleOutcome::VerifiedColouring(r, role),
        Err(violation) => TwoRoleOutcome::ConstructionFailed(Diagnostic { independent_set, colouring: r, violation }),
    }
}

/// Colours a loop-free 2K_2-free graph with two colours (0 and 1).
///
/// Disconnected inputs: singleton components take colour 0 and everything
/// else colour 1; with no singletons the component of vertex 0 takes colour
/// 0; an edgeless graph puts vertex 0 alone in colour 0. Cliques put vertex
/// 0 alone in colour 0. Otherwise the first non-adjacent pair in
/// lexicographic order is extended to a maximal independent set, which takes
/// colour 0.
pub fn two_role_colour_2k2_free(g: &Graph) -> Result<TwoRoleOutcome, TwoRoleError> {
    check_simple(g)?;
    check_2k2_free(g)?;
    let n = g.order();
    if n < 2 {
        return Ok(TwoRoleOutcome::TooSmall);
    }
    let (count, labels) = g.component_labels();
    if count > 1 {
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        let colours: Vec<usize> = if sizes.iter().all(|&s| s == 1) {
            (0..n).map(|v| usize::from(v != 0)).collect()
        } else if sizes.contains(&1) {
            labels.iter().map(|&l| usize::from(sizes[l] != 1)).collect()
        } else {
            labels.iter().map(|&l| usize::from(l != labels[0])).collect()
        };
        let class: Vec<usize> = (0..n).filter(|&v| colours[v] == 0).collect();
        return Ok(finish(g, colours, class));
    }
    let pair = g.vertices().find_map(|u| (u + 1..n).find(|&v| !g.has_edge(u, v)).map(|v| (u, v)));
    match pair {
        None => Ok(finish(g, (0..n).map(|v| usize::from(v != 0)).collect(), vec![0])),
        Some((u, v)) => {
            let set = maximal_independent_set_containing(g, u, v)?;
            let mut colours = vec![1; n];
            for &x in &set {
                colours[x] = 0;
            }
            Ok(finish(g, colours, set))
        }
    }
}

/// Whether `V \ I` induces a connected graph.
///
/// `g` must be connected, loop-free and 2K_2-free, and `I` a maximal
/// independent set with at least two vertices.
pub fn check_lemma_2k2struc(g: &Graph, independent_set: &[usize]) -> Result<bool, TwoRoleError> {
    check_simple(g)?;
    if !g.is_connected() {
        return Err(TwoRoleError::Disconnected);
    }
    check_2k2_free(g)?;
    let mut inside = vec![false; g.order()];
    for &x in independent_set {
        if x >= g.order() {
            return Err(TwoRoleError::VertexOutOfRange(x));
        }
        if inside[x] {
            return Err(TwoRoleError::BadIndependentSet);
        }
        inside[x] = true;
    }
    let independent = independent_set.iter().all(|&x| g.neighbours(x).iter().all(|&w| !inside[w]));
    let maximal = g.vertices().all(|x| inside[x] || g.neighbours(x).iter().any(|&w| inside[w]));
    if independent_set.len() < 2 || !independent || !maximal {
        return Err(TwoRoleError::BadIndependentSet);
    }
    let rest: Vec<usize> = g.vertices().filter(|&x| !inside[x]).collect();
    Ok(g.induced_subgraph(&rest).is_connected())
}

/// A disagreement between the construction and exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anomaly {
    pub graph: Graph,
    pub diagnostic: Diagnostic,
    /// Whether any 2-role colouring exists at all.
    pub oracle_has_colouring: bool,
}

impl fmt::Display for Anomaly {
    /// One line: `anomaly n=<n> edges=<u-v,...> I=<...> oracle=<some|none> <violation>`
    /// with 1-based ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "anomaly n={} edges=", self.graph.order())?;
        for (i, (u, v)) in self.graph.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        f.write_str(" I=")?;
        for (i, x) in self.diagnostic.independent_set.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        let oracle = if self.oracle_has_colouring { "some" } else { "none" };
        write!(f, " oracle={} {}", oracle, self.diagnostic.violation)
    }
}

/// Runs the construction on `g` and, if it fails, asks the oracle whether a
/// 2-role colouring exists. `Ok(None)` means the construction succeeded.
pub fn probe(g: &Graph) -> Result<Option<Anomaly>, SolveError> {
    let outcome = two_role_colour_2k2_free(g).map_err(|_| SolveError::InvalidParameter("graph must be loop-free and 2K2-free"))?;
    match outcome {
        TwoRoleOutcome::ConstructionFailed(diagnostic) => {
            let oracle_has_colouring = !brute_force_oracle(g, OracleQuery::KRole(2), false)?.is_empty();
            Ok(Some(Anomaly { graph: g.clone(), diagnostic, oracle_has_colouring }))
        }
        _ => Ok(None),
    }
}
