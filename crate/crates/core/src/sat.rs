//! Monotone NAE-SAT and the gadget graphs whose `P_k**`-role colourings
//! encode its solutions.
//!
//! Variables and clauses are 0-based here. Gadget coordinates keep the
//! 1-based superscripts of the construction only through the tables of
//! [`GadgetMap`]: `variable_cycle[i][j - 1]` is `x_i^j`, and so on.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GraphError, ReductionError};
use crate::graph::{Graph, GraphBuilder};
use crate::role::{verify_role_colouring, RoleColouring, RoleTarget};

/// A CNF formula with positive literals only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Vec<usize>>,
}

impl CnfFormula {
    /// Clauses must have width 2 or 3 so that the gadget graphs stay
    /// subcubic.
    pub fn new(variable_count: usize, clauses: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let f = Self::any_width(variable_count, clauses)?;
        if let Some((q, c)) = f.clauses.iter().enumerate().find(|(_, c)| !(2..=3).contains(&c.len())) {
            return Err(ReductionError::ClauseWidth { clause: q, width: c.len() });
        }
        Ok(f)
    }

    /// Like [`CnfFormula::new`] without the width restriction. Wider clauses
    /// give clause vertices of degree above 3.
    pub fn any_width(variable_count: usize, clauses: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        if variable_count == 0 {
            return Err(ReductionError::NoVariables);
        }
        for (q, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(ReductionError::EmptyClause { clause: q });
            }
            for (p, &x) in clause.iter().enumerate() {
                if x >= variable_count {
                    return Err(ReductionError::VariableOutOfRange { variable: x, count: variable_count });
                }
                if clause[..p].contains(&x) {
                    return Err(ReductionError::RepeatedVariable { clause: q });
                }
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `s_i`, the number of occurrences of each variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut s = vec![0; self.variable_count];
        for c in &self.clauses {
            for &x in c {
                s[x] += 1;
            }
        }
        s
    }

    /// First clause without both a true and a false literal.
    pub fn first_unsatisfied(&self, a: &NaeAssignment) -> Option<usize> {
        self.clauses.iter().position(|c| {
            let t = c.iter().any(|&x| a.values[x]);
            let f = c.iter().any(|&x| !a.values[x]);
            !(t && f)
        })
    }

    pub fn is_nae_satisfied(&self, a: &NaeAssignment) -> bool {
        a.values.len() == self.variable_count && self.first_unsatisfied(a).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaeAssignment {
    pub values: Vec<bool>,
}

impl NaeAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        NaeAssignment { values }
    }

    pub fn complement(&self) -> Self {
        NaeAssignment { values: self.values.iter().map(|&b| !b).collect() }
    }
}

pub const NAE_BRUTE_MAX_VARIABLES: usize = 24;

/// First NAE-satisfying assignment in binary counting order (variable 0
/// least significant), if any.
pub fn nae_brute(f: &CnfFormula) -> Result<Option<NaeAssignment>, ReductionError> {
    let n = f.variable_count;
    if n > NAE_BRUTE_MAX_VARIABLES {
        return Err(ReductionError::TooManyVariables(n));
    }
    let masks: Vec<u32> = f.clauses.iter().map(|c| c.iter().fold(0, |m, &x| m | 1 << x)).collect();
    for bits in 0u32..1 << n {
        if masks.iter().all(|&m| bits & m != 0 && !bits & m != 0) {
            return Ok(Some(NaeAssignment::new((0..n).map(|x| bits >> x & 1 == 1).collect())));
        }
    }
    Ok(None)
}

/// Which gadget graph to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `G_phi`, hard for `P_k**`-role colouring.
    Base,
    /// `G'_phi`: `G_phi` with three hooked cycles, hard for `k`-role colouring.
    Prime,
    /// `G^j_phi`: every edge of `G'_phi` subdivided `j * p(k)` times.
    Subdivided(usize),
}

/// The path inserted into one edge of `G'_phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    /// Original endpoints with `edge.0 <= edge.1`.
    pub edge: (usize, usize),
    /// New vertices in path order; the first is adjacent to `edge.0`.
    pub vertices: Vec<usize>,
}

/// The vertices of the three cycles added in `G'_phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraCycles {
    /// `u_1 .. u_{2k-1}`.
    pub c: Vec<usize>,
    /// `u'_1 .. u'_{2k}`.
    pub c1: Vec<usize>,
    /// `u''_1 .. u''_{2k}`.
    pub c2: Vec<usize>,
}

/// Gadget coordinates to vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMap {
    pub k: usize,
    /// `variable_cycle[i][j - 1]` is `x_i^j`, `j` in `1..=2k(s_i + 1)`.
    pub variable_cycle: Vec<Vec<usize>>,
    /// `base_cycle[i][j - 1]` is `v_i^j`, `j` in `1..=2k`.
    pub base_cycle: Vec<Vec<usize>>,
    /// `w_path[i][j - 1]` is `w_i^j`, `j` in `1..=2k - 1`.
    pub w_path: Vec<Vec<usize>>,
    pub clause_vertex: Vec<usize>,
    pub extra_cycles: Option<ExtraCycles>,
    pub subdivisions: Vec<Subdivision>,
}

/// One table entry: table name, 1-based indices, vertex id (0-based).
pub type MapEntry = (&'static str, Vec<usize>, usize);

impl GadgetMap {
    /// All entries in a fixed order: tables in declaration order, indices
    /// ascending.
    pub fn entries(&self) -> Vec<MapEntry> {
        let mut out = Vec::new();
        let nested = [
            ("variable_cycle", &self.variable_cycle),
            ("base_cycle", &self.base_cycle),
            ("w_path", &self.w_path),
        ];
        for (name, table) in nested {
            for (i, row) in table.iter().enumerate() {
                for (j, &id) in row.iter().enumerate() {
                    out.push((name, vec![i + 1, j + 1], id));
                }
            }
        }
        for (q, &id) in self.clause_vertex.iter().enumerate() {
            out.push(("clause", vec![q + 1], id));
        }
        if let Some(extra) = &self.extra_cycles {
            for (name, cycle) in [("cycle_c", &extra.c), ("cycle_c1", &extra.c1), ("cycle_c2", &extra.c2)] {
                for (m, &id) in cycle.iter().enumerate() {
                    out.push((name, vec![m + 1], id));
                }
            }
        }
        for s in &self.subdivisions {
            for (t, &id) in s.vertices.iter().enumerate() {
                out.push(("subdivision", vec![s.edge.0 + 1, s.edge.1 + 1, t + 1], id));
            }
        }
        out
    }

    /// Rebuilds a map from entries as produced by [`GadgetMap::entries`].
    /// Entries may come in any order but every table must be dense.
    pub fn from_entries(k: usize, entries: &[MapEntry]) -> Result<Self, ReductionError> {
        fn put(table: &mut Vec<Vec<Option<usize>>>, i: usize, j: usize, id: usize) -> Result<(), ReductionError> {
            if i == 0 || j == 0 {
                return Err(ReductionError::MapMismatch);
            }
            if table.len() < i {
                table.resize(i, Vec::new());
            }
            let row = &mut table[i - 1];
            if row.len() < j {
                row.resize(j, None);
            }
            if row[j - 1].replace(id).is_some() {
                return Err(ReductionError::MapMismatch);
            }
            Ok(())
        }
        fn dense(table: Vec<Vec<Option<usize>>>) -> Result<Vec<Vec<usize>>, ReductionError> {
            table
                .into_iter()
                .map(|row| row.into_iter().collect::<Option<Vec<_>>>().ok_or(ReductionError::MapMismatch))
                .collect()
        }
        let mut var = Vec::new();
        let mut base = Vec::new();
        let mut w = Vec::new();
        let mut clause = Vec::new();
        let mut extra = Vec::new();
        type Partial = ((usize, usize), Vec<Option<usize>>);
        let mut subs: Vec<Partial> = Vec::new();
        for (name, idx, id) in entries {
            let id = *id;
            match (*name, idx.as_slice()) {
                ("variable_cycle", &[i, j]) => put(&mut var, i, j, id)?,
                ("base_cycle", &[i, j]) => put(&mut base, i, j, id)?,
                ("w_path", &[i, j]) => put(&mut w, i, j, id)?,
                ("clause", &[q]) => put(&mut clause, 1, q, id)?,
                ("cycle_c", &[m]) => put(&mut extra, 1, m, id)?,
                ("cycle_c1", &[m]) => put(&mut extra, 2, m, id)?,
                ("cycle_c2", &[m]) => put(&mut extra, 3, m, id)?,
                ("subdivision", &[u, v, t]) => {
                    if u == 0 || v == 0 || t == 0 {
                        return Err(ReductionError::MapMismatch);
                    }
                    let edge = (u - 1, v - 1);
                    let pos = match subs.iter().position(|(e, _)| *e == edge) {
                        Some(p) => p,
                        None => {
                            subs.push((edge, Vec::new()));
                            subs.len() - 1
                        }
                    };
                    let row = &mut subs[pos].1;
                    if row.len() < t {
                        row.resize(t, None);
                    }
                    if row[t - 1].replace(id).is_some() {
                        return Err(ReductionError::MapMismatch);
                    }
                }
                _ => return Err(ReductionError::MapMismatch),
            }
        }
        let extra_cycles = match extra.len() {
            0 => None,
            3 => {
                let mut rows = dense(extra)?.into_iter();
                let (c, c1, c2) = (rows.next().unwrap(), rows.next().unwrap(), rows.next().unwrap());
                Some(ExtraCycles { c, c1, c2 })
            }
            _ => return Err(ReductionError::MapMismatch),
        };
        let mut subdivisions = Vec::with_capacity(subs.len());
        for (edge, row) in subs {
            let vertices = row.into_iter().collect::<Option<Vec<_>>>().ok_or(ReductionError::MapMismatch)?;
            subdivisions.push(Subdivision { edge, vertices });
        }
        subdivisions.sort_by_key(|s| s.edge);
        Ok(GadgetMap {
            k,
            variable_cycle: dense(var)?,
            base_cycle: dense(base)?,
            w_path: dense(w)?,
            clause_vertex: dense(clause)?.into_iter().next().unwrap_or_default(),
            extra_cycles,
            subdivisions,
        })
    }

    /// `true` when every vertex `0..n` appears in exactly one table entry.
    pub fn partitions(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for (_, _, id) in self.entries() {
            if id >= n || seen[id] {
                return false;
            }
            seen[id] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `x_i^{2pk+2}` for `p` in `0..=s_i`.
    pub fn occurrence_class(&self, i: usize) -> Vec<usize> {
        let cycle = &self.variable_cycle[i];
        (0..cycle.len() / (2 * self.k)).map(|p| cycle[2 * p * self.k + 1]).collect()
    }
}

/// `p(k) = 2k(k-1)(2k-1)`.
pub fn subdivision_period(k: usize) -> usize {
    2 * k * (k - 1) * (2 * k - 1)
}

fn check_k(k: usize) -> Result<(), ReductionError> {
    if k < 2 {
        return Err(ReductionError::ColourCount);
    }
    Ok(())
}

fn graph_err(e: GraphError) -> ReductionError {
    ReductionError::Graph(e)
}

fn build_base(f: &CnfFormula, k: usize) -> Result<(GraphBuilder, GadgetMap), ReductionError> {
    check_k(k)?;
    let n = f.variable_count;
    let s = f.occurrences();
    let mut b = GraphBuilder::new(0);
    let variable_cycle: Vec<Vec<usize>> = s.iter().map(|&si| b.add_vertices(2 * k * (si + 1)).collect()).collect();
    let base: Vec<usize> = b.add_vertices(2 * k * n).collect();
    let w_path: Vec<Vec<usize>> = (0..n).map(|_| b.add_vertices(2 * k - 1).collect()).collect();
    let clause_vertex: Vec<usize> = b.add_vertices(f.clauses.len()).collect();

    for cycle in &variable_cycle {
        b.add_cycle(cycle).map_err(graph_err)?;
    }
    let mut seen = vec![0usize; n];
    for (q, clause) in f.clauses.iter().enumerate() {
        for &x in clause {
            seen[x] += 1;
            let p = seen[x];
            b.add_edge(variable_cycle[x][2 * p * k + 1], clause_vertex[q]).map_err(graph_err)?;
        }
    }
    b.add_cycle(&base).map_err(graph_err)?;
    let base_cycle: Vec<Vec<usize>> = base.chunks(2 * k).map(<[usize]>::to_vec).collect();
    for i in 0..n {
        let w = &w_path[i];
        b.add_path(w).map_err(graph_err)?;
        b.add_edge(base_cycle[i][0], w[0]).map_err(graph_err)?;
        b.add_edge(w[2 * k - 2], variable_cycle[i][0]).map_err(graph_err)?;
    }
    let map = GadgetMap {
        k,
        variable_cycle,
        base_cycle,
        w_path,
        clause_vertex,
        extra_cycles: None,
        subdivisions: Vec::new(),
    };
    Ok((b, map))
}

/// `G_phi`.
pub fn build_g_phi(f: &CnfFormula, k: usize) -> Result<(Graph, GadgetMap), ReductionError> {
    let (b, map) = build_base(f, k)?;
    Ok((b.build(), map))
}

/// `G'_phi`: cycles of lengths `2k-1`, `2k`, `2k` hooked to `v_n^2`, `v_n^3`,
/// `v_n^4`.
pub fn build_g_phi_prime(f: &CnfFormula, k: usize) -> Result<(Graph, GadgetMap), ReductionError> {
    let (mut b, mut map) = build_base(f, k)?;
    let c: Vec<usize> = b.add_vertices(2 * k - 1).collect();
    let c1: Vec<usize> = b.add_vertices(2 * k).collect();
    let c2: Vec<usize> = b.add_vertices(2 * k).collect();
    let last = map.base_cycle.last().expect("at least one variable");
    for (cycle, anchor) in [(&c, last[1]), (&c1, last[2]), (&c2, last[3])] {
        b.add_cycle(cycle).map_err(graph_err)?;
        b.add_edge(cycle[0], anchor).map_err(graph_err)?;
    }
    map.extra_cycles = Some(ExtraCycles { c, c1, c2 });
    Ok((b.build(), map))
}

/// `G^j_phi`: every edge of `G'_phi` subdivided `j * p(k)` times.
pub fn build_g_phi_j(f: &CnfFormula, k: usize, j: usize) -> Result<(Graph, GadgetMap), ReductionError> {
    if j < 3 {
        return Err(ReductionError::GirthParameter);
    }
    let (g, mut map) = build_g_phi_prime(f, k)?;
    let times = j * subdivision_period(k);
    let out = g.subdivide_all(times).map_err(graph_err)?;
    let n = g.order();
    map.subdivisions = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(e, edge)| Subdivision { edge, vertices: (n + e * times..n + (e + 1) * times).collect() })
        .collect();
    Ok((out, map))
}

pub fn build(f: &CnfFormula, k: usize, variant: Variant) -> Result<(Graph, GadgetMap), ReductionError> {
    match variant {
        Variant::Base => build_g_phi(f, k),
        Variant::Prime => build_g_phi_prime(f, k),
        Variant::Subdivided(j) => build_g_phi_j(f, k, j),
    }
}

/// `1, 1, 2, 3, ..., k, k, ..., 3, 2` as 0-based colours. Walking it
/// cyclically traverses every directed edge and loop of `P_k**` once.
pub fn period_pattern(k: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(2 * k);
    p.push(0);
    p.extend(0..k);
    p.extend((1..k).rev());
    p
}

/// The constructive `P_k**`-role colouring for a NAE-satisfying assignment.
///
/// The variant is read from the map: extra cycles are coloured when present
/// and subdivision paths continue the periodic pattern along each edge.
pub fn assignment_to_colouring(
    f: &CnfFormula,
    a: &NaeAssignment,
    map: &GadgetMap,
) -> Result<RoleColouring, ReductionError> {
    if a.values.len() != f.variable_count {
        return Err(ReductionError::AssignmentLength);
    }
    if let Some(q) = f.first_unsatisfied(a) {
        return Err(ReductionError::NotNaeSatisfying { clause: q });
    }
    if map.variable_cycle.len() != f.variable_count || map.clause_vertex.len() != f.clauses.len() {
        return Err(ReductionError::MapMismatch);
    }
    let k = map.k;
    let period = period_pattern(k);
    let len = 2 * k;
    let n = map.entries().len();
    let mut colour = vec![usize::MAX; n];
    fn set(colour: &mut [usize], v: usize, c: usize) -> Result<(), ReductionError> {
        *colour.get_mut(v).ok_or(ReductionError::MapMismatch)? = c;
        Ok(())
    }
    for (i, cycle) in map.variable_cycle.iter().enumerate() {
        for (j, &v) in cycle.iter().enumerate() {
            let pos = if a.values[i] { j % len } else { (len - j % len) % len };
            set(&mut colour, v, period[pos])?;
        }
    }
    for block in &map.base_cycle {
        for (j, &v) in block.iter().enumerate() {
            set(&mut colour, v, period[j])?;
        }
    }
    for path in &map.w_path {
        for (j, &v) in path.iter().enumerate() {
            // 2, 3, ..., k, k, ..., 2, 1 is the pattern from index 2 onward.
            set(&mut colour, v, period[(j + 2) % len])?;
        }
    }
    for &v in &map.clause_vertex {
        set(&mut colour, v, 0)?;
    }
    if let Some(extra) = &map.extra_cycles {
        // u_1 = 1 and u_i = u_{2k-(i-1)} = i.
        set(&mut colour, extra.c[0], 0)?;
        for i in 2..=k {
            set(&mut colour, extra.c[i - 1], i - 1)?;
            set(&mut colour, extra.c[2 * k - i], i - 1)?;
        }
        for (j, &v) in extra.c1.iter().enumerate() {
            set(&mut colour, v, period[j])?;
        }
        for (j, &v) in extra.c2.iter().enumerate() {
            set(&mut colour, v, period[(j + 2) % len])?;
        }
    }
    if !map.subdivisions.is_empty() {
        let mut step = vec![vec![usize::MAX; k]; k];
        for i in 0..len {
            step[period[i]][period[(i + 1) % len]] = i;
        }
        for s in &map.subdivisions {
            let (u, v) = s.edge;
            let (a, b) = (colour[u], colour[v]);
            if a == usize::MAX || b == usize::MAX || step[a][b] == usize::MAX {
                return Err(ReductionError::MapMismatch);
            }
            let start = step[a][b];
            for (t, &x) in s.vertices.iter().enumerate() {
                set(&mut colour, x, period[(start + 1 + t) % len])?;
            }
        }
    }
    if colour.contains(&usize::MAX) {
        return Err(ReductionError::MapMismatch);
    }
    Ok(RoleColouring::new(colour))
}

/// Reads the NAE-satisfying assignment back from a `P_k**`-role colouring.
///
/// With `c` the colour of `x_1^1`, variable `i` is true when its occurrence
/// class carries `c` (if `c` is looped in `P_k**`) or the smaller neighbour of
/// `c` (otherwise).
pub fn colouring_to_assignment(
    f: &CnfFormula,
    g: &Graph,
    map: &GadgetMap,
    r: &RoleColouring,
) -> Result<NaeAssignment, ReductionError> {
    let k = map.k;
    if map.variable_cycle.len() != f.variable_count || !map.partitions(g.order()) {
        return Err(ReductionError::MapMismatch);
    }
    let role = RoleTarget::PathStarStar.role_graph(k);
    verify_role_colouring(g, &role, r).map_err(ReductionError::InvalidColouring)?;
    let c = r.colour(map.variable_cycle[0][0]);
    let c_true = if role.has_loop(c) { c } else { role.neighbours(c)[0] };
    let mut values = Vec::with_capacity(f.variable_count);
    for i in 0..f.variable_count {
        let class = map.occurrence_class(i);
        let first = r.colour(class[0]);
        if class.iter().any(|&v| r.colour(v) != first) || r.colour(map.variable_cycle[i][0]) != c {
            return Err(ReductionError::NonMonochromaticClass { variable: i });
        }
        values.push(first == c_true);
    }
    let a = NaeAssignment::new(values);
    if let Some(q) = f.first_unsatisfied(&a) {
        return Err(ReductionError::NotNaeSatisfying { clause: q });
    }
    Ok(a)
}

/// Expected vertex count of `G_phi`.
pub fn g_phi_order(f: &CnfFormula, k: usize) -> usize {
    let n = f.variable_count;
    let cycles: usize = f.occurrences().iter().map(|&s| 2 * k * (s + 1)).sum();
    cycles + 2 * k * n + n * (2 * k - 1) + f.clauses.len()
}
