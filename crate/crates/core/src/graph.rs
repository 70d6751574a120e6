//! Undirected graphs with optional loops.
//!
//! Vertices are `0..n` inside the library. The text formats and the CLI use
//! 1-based ids; [`Graph::from_one_based_edges`] is the bridge for callers that
//! think in those terms.
//!
//! A loop `{v}` puts `v` into its own neighbourhood, so it contributes exactly
//! one to `d(v)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;

/// An immutable simple graph that may carry loops.
///
/// Neighbour lists are kept sorted and free of duplicates, which makes
/// equality structural and [`Graph::has_edge`] a binary search.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Degree statistics and connectivity of a graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicProps {
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub degrees: Vec<usize>,
}

/// Mutable edge accumulator. `build` sorts and deduplicates.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![Vec::new(); n] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { adj: g.adj.clone() }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> core::ops::Range<usize> {
        let start = self.adj.len();
        self.adj.resize(start + count, Vec::new());
        start..start + count
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::EndpointOutOfRange { vertex: w, order: n });
            }
        }
        self.adj[u].push(v);
        if u != v {
            self.adj[v].push(u);
        }
        Ok(())
    }

    /// Adds a path `vs[0] - vs[1] - ... - vs[last]`.
    pub fn add_path(&mut self, vs: &[usize]) -> Result<(), GraphError> {
        for w in vs.windows(2) {
            self.add_edge(w[0], w[1])?;
        }
        Ok(())
    }

    /// Adds a cycle through `vs` in order, closing `last - first`.
    pub fn add_cycle(&mut self, vs: &[usize]) -> Result<(), GraphError> {
        self.add_path(vs)?;
        if vs.len() > 2 {
            self.add_edge(vs[vs.len() - 1], vs[0])?;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if let Some(list) = self.adj.get_mut(u) {
            list.retain(|&w| w != v);
        }
        if let Some(list) = self.adj.get_mut(v) {
            list.retain(|&w| w != u);
        }
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
        let g = Graph { adj: self.adj };
        debug_assert!(g.is_well_formed());
        g
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from 0-based vertex pairs. Repeated pairs collapse,
    /// `(v, v)` is a loop.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds a graph from 1-based vertex pairs, as they appear in files.
    pub fn from_one_based_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, order: n });
                }
            }
            b.add_edge(u - 1, v - 1)?;
        }
        Ok(b.build())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, counting each loop once.
    pub fn size(&self) -> usize {
        let mut total = 0;
        let mut loops = 0;
        for (v, list) in self.adj.iter().enumerate() {
            total += list.len();
            if list.binary_search(&v).is_ok() {
                loops += 1;
            }
        }
        (total - loops) / 2 + loops
    }

    pub fn vertices(&self) -> core::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn has_loops(&self) -> bool {
        self.vertices().any(|v| self.has_loop(v))
    }

    /// All edges as `(u, v)` with `u <= v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|l| l.len() == k)
    }

    pub fn basic_props(&self) -> BasicProps {
        BasicProps {
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            connected: self.is_connected(),
            degrees: self.degrees(),
        }
    }

    /// Component index of every vertex; components are numbered in order of
    /// their smallest vertex.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Vertex sets of the connected components, each ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (count, label) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_labels().0 <= 1
    }

    /// Breadth-first distances from `source`; `None` when unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// The subgraph induced by `vertices`, relabelled `0..len` in the given
    /// order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj }
    }

    /// `self` followed by a relabelled copy of `other`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&w| w + offset).collect::<Vec<_>>()),
        );
        Graph { adj }
    }

    /// Replaces `edge` by a path through `times` new vertices. The new
    /// vertices take ids `n..n + times`, the first adjacent to `edge.0`.
    pub fn subdivide_edge(&self, edge: (usize, usize), times: usize) -> Result<Graph, GraphError> {
        let (u, v) = edge;
        if u == v {
            return Err(GraphError::LoopEdge { vertex: u });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge { u, v });
        }
        if times == 0 {
            return Err(GraphError::InvalidParameter("subdivision count must be positive"));
        }
        let mut b = GraphBuilder::from_graph(self);
        b.remove_edge(u, v);
        let fresh = b.add_vertices(times);
        let mut path = Vec::with_capacity(times + 2);
        path.push(u);
        path.extend(fresh);
        path.push(v);
        b.add_path(&path)?;
        Ok(b.build())
    }

    /// Applies `times` subdivisions to every edge. Loops are rejected.
    pub fn subdivide_all(&self, times: usize) -> Result<Graph, GraphError> {
        if let Some(v) = self.vertices().find(|&v| self.has_loop(v)) {
            return Err(GraphError::LoopEdge { vertex: v });
        }
        if times == 0 {
            return Ok(self.clone());
        }
        let mut b = GraphBuilder::new(self.order());
        for (u, v) in self.edges() {
            let fresh = b.add_vertices(times);
            let mut path = Vec::with_capacity(times + 2);
            path.push(u);
            path.extend(fresh);
            path.push(v);
            b.add_path(&path)?;
        }
        Ok(b.build())
    }

    /// Symmetry and set invariants. Always true for values built through the
    /// public constructors.
    pub fn is_well_formed(&self) -> bool {
        let n = self.order();
        self.adj.iter().enumerate().all(|(v, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&w| w < n && self.adj[w].binary_search(&v).is_ok())
        })
    }
}
