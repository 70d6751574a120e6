//! Induced-subgraph containment by backtracking.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::Graph;

/// Searches for a vertex subset of `g` inducing a copy of `pattern`.
///
/// On success the witness maps each pattern vertex to its image in `g`.
/// Pattern vertices are placed in an order where every vertex after the
/// first of its component has an already-placed neighbour, so candidates are
/// drawn from that neighbour's adjacency list.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    if pattern.has_loops() {
        return Err(GraphError::LoopedPattern);
    }
    let p = pattern.order();
    if p == 0 {
        return Ok(Some(Vec::new()));
    }
    if p > g.order() {
        return Ok(None);
    }
    let plan = SearchPlan::new(pattern);
    let mut state = Matcher {
        g,
        pattern,
        plan: &plan,
        image: vec![usize::MAX; p],
        used: vec![false; g.order()],
        simple_degree: g
            .vertices()
            .map(|v| g.degree(v) - usize::from(g.has_loop(v)))
            .collect(),
    };
    if state.extend(0) {
        Ok(Some(state.image))
    } else {
        Ok(None)
    }
}

/// `true` when `g` contains none of `patterns` as an induced subgraph.
pub fn is_free(g: &Graph, patterns: &[Graph]) -> Result<bool, GraphError> {
    for pattern in patterns {
        if contains_induced(g, pattern)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

struct SearchPlan {
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
}

impl SearchPlan {
    fn new(pattern: &Graph) -> Self {
        let p = pattern.order();
        let mut placed = vec![false; p];
        let mut placed_nbrs = vec![0usize; p];
        let mut order = Vec::with_capacity(p);
        let mut anchor = Vec::with_capacity(p);
        for _ in 0..p {
            // Prefer the most constrained vertex: most placed neighbours, then
            // highest degree, then lowest id.
            let next = (0..p)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (placed_nbrs[a], pattern.degree(a), core::cmp::Reverse(a))
                        .cmp(&(placed_nbrs[b], pattern.degree(b), core::cmp::Reverse(b)))
                })
                .expect("unplaced vertex remains");
            let a = order.iter().copied().find(|&u| pattern.has_edge(u, next));
            placed[next] = true;
            for &w in pattern.neighbours(next) {
                placed_nbrs[w] += 1;
            }
            order.push(next);
            anchor.push(a);
        }
        SearchPlan { order, anchor }
    }
}

struct Matcher<'a> {
    g: &'a Graph,
    pattern: &'a Graph,
    plan: &'a SearchPlan,
    image: Vec<usize>,
    used: Vec<bool>,
    simple_degree: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.plan.order.len() {
            return true;
        }
        let pv = self.plan.order[depth];
        match self.plan.anchor[depth] {
            Some(a) => {
                let host = self.image[a];
                let g = self.g;
                for &c in g.neighbours(host) {
                    if self.try_place(depth, pv, c) {
                        return true;
                    }
                }
            }
            None => {
                for c in self.g.vertices() {
                    if self.try_place(depth, pv, c) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn try_place(&mut self, depth: usize, pv: usize, c: usize) -> bool {
        if self.used[c] || self.g.has_loop(c) || self.simple_degree[c] < self.pattern.degree(pv) {
            return false;
        }
        for &earlier in &self.plan.order[..depth] {
            if self.g.has_edge(self.image[earlier], c) != self.pattern.has_edge(earlier, pv) {
                return false;
            }
        }
        self.image[pv] = c;
        self.used[c] = true;
        if self.extend(depth + 1) {
            return true;
        }
        self.used[c] = false;
        self.image[pv] = usize::MAX;
        false
    }
}
