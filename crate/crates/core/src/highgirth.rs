//! Two cycles joined by a digit-shuffling matching, and gemel implantation.
//!
//! Strings are read right to left: `digits[0]` is position 1, the least
//! significant base-`(k-1)` digit, and the tag is written leftmost. In a
//! gemel tree a child appends its digit at position 1, so the digit chosen
//! at the root sits at the highest position.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{GirthGraphError, SolveError};
use crate::graph::{Graph, GraphBuilder};
use crate::role::RoleColouring;
use crate::solve::{CouponSearch, SolveConfig};

/// Guard on the number of strings per side.
pub const MAX_SIDE: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recurrence {
    /// `a_{n+1} = a_n + (k-1)^{a_n}`.
    Base,
    /// `a_{n+1} = a_n + 2 (k-1)^{a_n}`.
    Doubled,
}

/// `a_0, ..., a_upto`.
pub fn a_sequence(k: usize, upto: usize, recurrence: Recurrence) -> Result<Vec<u128>, GirthGraphError> {
    if k < 3 {
        return Err(GirthGraphError::BadK(k));
    }
    let factor = match recurrence {
        Recurrence::Base => 1,
        Recurrence::Doubled => 2,
    };
    let mut out = Vec::with_capacity(upto + 1);
    let mut a: u128 = 1;
    out.push(a);
    for _ in 0..upto {
        let exp = u32::try_from(a).map_err(|_| GirthGraphError::Overflow)?;
        let step = (k as u128 - 1).checked_pow(exp).ok_or(GirthGraphError::Overflow)?;
        a = step.checked_mul(factor).and_then(|s| s.checked_add(a)).ok_or(GirthGraphError::Overflow)?;
        out.push(a);
    }
    Ok(out)
}

/// A tagged base-`(k-1)` string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString {
    pub tag: u8,
    /// `digits[j - 1]` is the digit at position `j`.
    pub digits: Vec<u8>,
}

impl DigitString {
    pub fn new(tag: u8, digits: Vec<u8>) -> Self {
        DigitString { tag, digits }
    }

    /// Parses the written form: tag first, then digits from the highest
    /// position down to position 1. Digits above 9 use `a..z`.
    pub fn parse(s: &str) -> Result<Self, GirthGraphError> {
        let mut chars = s.chars();
        let tag = match chars.next() {
            Some('0') => 0,
            Some('1') => 1,
            _ => return Err(GirthGraphError::Parse("tag must be 0 or 1")),
        };
        let mut digits = chars
            .map(|c| c.to_digit(36).map(|d| d as u8).ok_or(GirthGraphError::Parse("not a digit")))
            .collect::<Result<Vec<_>, _>>()?;
        digits.reverse();
        Ok(DigitString { tag, digits })
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at 1-based position `j`.
    pub fn at(&self, j: usize) -> u8 {
        self.digits[j - 1]
    }

    /// Value of positions `1..=len` in base `base`.
    pub fn prefix_value(&self, len: usize, base: usize) -> u128 {
        self.digits[..len].iter().rev().fold(0, |acc, &d| acc * base as u128 + d as u128)
    }

    pub fn value(&self, base: usize) -> u128 {
        self.prefix_value(self.digits.len(), base)
    }

    pub fn from_value(tag: u8, mut value: u128, len: usize, base: usize) -> Self {
        let mut digits = Vec::with_capacity(len);
        for _ in 0..len {
            digits.push((value % base as u128) as u8);
            value /= base as u128;
        }
        DigitString { tag, digits }
    }

    fn check(&self, base: usize, len: usize, tag: u8) -> Result<(), GirthGraphError> {
        if self.digits.len() != len {
            return Err(GirthGraphError::LengthMismatch { expected: len, got: self.digits.len() });
        }
        if self.tag != tag {
            return Err(GirthGraphError::WrongTag);
        }
        if let Some(&d) = self.digits.iter().find(|&&d| d as usize >= base) {
            return Err(GirthGraphError::DigitRange { digit: d, base });
        }
        Ok(())
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        for &d in self.digits.iter().rev() {
            let c = char::from_digit(d as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parameters of `G_(n,k)` or of a gemel gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GirthParams {
    pub k: usize,
    /// `n`: the matching uses levels `0..n` and needs `a_n` digits.
    pub length_index: usize,
    pub recurrence: Recurrence,
    /// Digits per string (leaf depth for gemel trees).
    pub digits: usize,
}

impl GirthParams {
    /// Strings of exactly `a_n` digits (base recurrence).
    pub fn base(k: usize, length_index: usize) -> Result<Self, GirthGraphError> {
        let a = a_sequence(k, length_index, Recurrence::Base)?;
        let digits = usize::try_from(a[length_index]).map_err(|_| GirthGraphError::Overflow)?;
        Self { k, length_index, recurrence: Recurrence::Base, digits }.guarded()
    }

    /// Gemel trees of depth `a_n + 1` (doubled recurrence). `a_n` is always
    /// odd, and the colouring functions `f_0`, `f_1` only line up at even
    /// leaf depth.
    pub fn doubled(k: usize, length_index: usize) -> Result<Self, GirthGraphError> {
        let a = a_sequence(k, length_index, Recurrence::Doubled)?;
        let digits = usize::try_from(a[length_index]).map_err(|_| GirthGraphError::Overflow)? + 1;
        Self { k, length_index, recurrence: Recurrence::Doubled, digits }.guarded()
    }

    /// Overrides the digit count; it must still hold every matching position.
    pub fn with_digits(self, digits: usize) -> Result<Self, GirthGraphError> {
        Self { digits, ..self }.guarded()
    }

    pub fn base_digit(&self) -> usize {
        self.k - 1
    }

    /// `(k-1)^digits`.
    pub fn side(&self) -> Result<u128, GirthGraphError> {
        let exp = u32::try_from(self.digits).map_err(|_| GirthGraphError::Overflow)?;
        (self.base_digit() as u128).checked_pow(exp).ok_or(GirthGraphError::Overflow)
    }

    /// `a_0 .. a_n` for this recurrence.
    pub fn levels(&self) -> Result<Vec<usize>, GirthGraphError> {
        a_sequence(self.k, self.length_index, self.recurrence)?
            .into_iter()
            .map(|a| usize::try_from(a).map_err(|_| GirthGraphError::Overflow))
            .collect()
    }

    fn guarded(self) -> Result<Self, GirthGraphError> {
        let levels = self.levels()?;
        let needed = levels[self.length_index];
        if self.digits < needed {
            return Err(GirthGraphError::DigitLength { digits: self.digits, needed });
        }
        let side = self.side().map_err(|_| GirthGraphError::TooLarge(u128::MAX))?;
        if side > MAX_SIDE {
            return Err(GirthGraphError::TooLarge(side));
        }
        Ok(self)
    }
}

/// The matching `e`. One step: for each level `i`, with `x_i` the value of
/// the first `a_i` digits of `s`, add 1 (mod `k-1`) at position
/// `a_i + x_i + 1`, then set the tag. Two steps: the positions are
/// `a_i + 2(x_i + 1) - 1`, and after setting the tag the highest digit moves
/// to position 1. All `x_i` are read from `s` as given.
pub fn matching_e(s: &DigitString, params: &GirthParams, two_step: bool) -> Result<DigitString, GirthGraphError> {
    let base = params.base_digit();
    s.check(base, params.digits, 0)?;
    let levels = params.levels()?;
    let mut out = s.clone();
    for &a in &levels[..params.length_index] {
        let x = usize::try_from(s.prefix_value(a, base)).map_err(|_| GirthGraphError::Overflow)?;
        let pos = if two_step { a + 2 * (x + 1) - 1 } else { a + x + 1 };
        let d = &mut out.digits[pos - 1];
        *d = ((*d as usize + 1) % base) as u8;
    }
    out.tag = 1;
    if two_step {
        let top = out.digits.pop().expect("non-empty string");
        out.digits.insert(0, top);
    }
    Ok(out)
}

/// `G_(n,k)` with its vertex labels.
#[derive(Clone, Debug)]
pub struct GirthGraph {
    pub graph: Graph,
    pub params: GirthParams,
    /// `labels[id]`.
    pub labels: Vec<DigitString>,
}

impl GirthGraph {
    /// Vertex id of a label: `tag * (k-1)^digits + value`.
    pub fn id_of(&self, s: &DigitString) -> Option<usize> {
        let base = self.params.base_digit();
        s.check(base, self.params.digits, s.tag).ok()?;
        let side = self.labels.len() / 2;
        Some(s.tag as usize * side + s.value(base) as usize)
    }
}

/// Builds `G_(n,k)`: each side is a cycle through the strings in numeric
/// order, and `e` matches the sides.
pub fn build_girth_graph(params: &GirthParams) -> Result<GirthGraph, GirthGraphError> {
    if params.recurrence != Recurrence::Base {
        return Err(GirthGraphError::WrongRecurrence);
    }
    let side = params.side()?;
    if side < 3 {
        return Err(GirthGraphError::TooSmall(side));
    }
    let side = side as usize;
    let base = params.base_digit();
    let labels: Vec<DigitString> = (0..2 * side)
        .map(|id| DigitString::from_value((id / side) as u8, (id % side) as u128, params.digits, base))
        .collect();
    let mut b = GraphBuilder::new(2 * side);
    for half in 0..2 {
        let cycle: Vec<usize> = (half * side..(half + 1) * side).collect();
        b.add_cycle(&cycle)?;
    }
    for (v, label) in labels.iter().enumerate().take(side) {
        let w = matching_e(label, params, false)?;
        b.add_edge(v, side + w.value(base) as usize)?;
    }
    let graph = b.build();
    debug_assert!(graph.is_regular(3));
    Ok(GirthGraph { graph, params: *params, labels })
}

/// Vertex ids of one implanted gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GemelGadget {
    pub u: usize,
    pub v: usize,
    /// Root of `T_0`, adjacent to `u`.
    pub v_prime: usize,
    /// Root of `T_1`, adjacent to `v`.
    pub u_prime: usize,
    /// Non-leaf tree vertices: `nodes[t]` lists `T_t` by depth, then value.
    pub nodes: [Vec<usize>; 2],
}

/// The shape shared by every gadget for given parameters, with vertices
/// numbered from 0: all of `T_0` (depths `0..digits`), then all of `T_1`.
#[derive(Clone, Debug)]
pub struct GemelTemplate {
    pub params: GirthParams,
    /// Tree vertices per tree.
    pub per_tree: usize,
    /// `offset[d]`: index of the first vertex at depth `d` within a tree.
    pub offset: Vec<usize>,
    /// Edges between leaf-parents after contraction, as tree-local
    /// `(T_0 index, T_1 index)`.
    pub matching: Vec<(usize, usize)>,
    /// For each `T_0` leaf value, the `T_1` leaf value it is matched to.
    pub leaf_match: Vec<usize>,
}

impl GemelTemplate {
    pub fn new(params: &GirthParams) -> Result<Self, GirthGraphError> {
        if params.recurrence != Recurrence::Doubled {
            return Err(GirthGraphError::WrongRecurrence);
        }
        let base = params.base_digit();
        let depth = params.digits;
        let mut offset = Vec::with_capacity(depth + 1);
        let mut total = 0usize;
        let mut level = 1usize;
        for _ in 0..=depth {
            offset.push(total);
            total += level;
            level *= base;
        }
        let leaves = level / base;
        let per_tree = offset[depth];
        let mut matching = Vec::with_capacity(leaves);
        let mut leaf_match = Vec::with_capacity(leaves);
        for x in 0..leaves {
            let s = DigitString::from_value(0, x as u128, depth, base);
            let y = matching_e(&s, params, true)?.value(base) as usize;
            leaf_match.push(y);
            matching.push((offset[depth - 1] + x / base, offset[depth - 1] + y / base));
        }
        Ok(GemelTemplate { params: *params, per_tree, offset, matching, leaf_match })
    }

    /// Tree-local index to `(depth, value)`.
    pub fn locate(&self, index: usize) -> (usize, usize) {
        let d = self.offset.partition_point(|&o| o <= index) - 1;
        (d, index - self.offset[d])
    }

    /// Label of a tree-local index in tree `t`.
    pub fn label(&self, t: u8, index: usize) -> DigitString {
        let (d, x) = self.locate(index);
        DigitString::from_value(t, x as u128, d, self.params.base_digit())
    }

    fn add_to(&self, b: &mut GraphBuilder, u: usize, v: usize) -> Result<GemelGadget, GirthGraphError> {
        let base = self.params.base_digit();
        let trees = [b.add_vertices(self.per_tree), b.add_vertices(self.per_tree)];
        let depth = self.params.digits;
        for tree in &trees {
            for d in 1..depth {
                for x in 0..self.offset[d + 1] - self.offset[d] {
                    b.add_edge(tree.start + self.offset[d - 1] + x / base, tree.start + self.offset[d] + x)?;
                }
            }
        }
        for &(a, c) in &self.matching {
            b.add_edge(trees[0].start + a, trees[1].start + c)?;
        }
        b.add_edge(u, trees[0].start)?;
        b.add_edge(trees[1].start, v)?;
        Ok(GemelGadget {
            u,
            v,
            v_prime: trees[0].start,
            u_prime: trees[1].start,
            nodes: [trees[0].clone().collect(), trees[1].clone().collect()],
        })
    }
}

/// Result of implanting gadgets into a host graph. Host vertices keep their
/// ids; gadget vertices follow in edge order.
#[derive(Clone, Debug)]
pub struct Implanted {
    pub graph: Graph,
    pub template: GemelTemplate,
    pub gadgets: Vec<GemelGadget>,
}

fn check_host(g: &Graph, k: usize) -> Result<(), GirthGraphError> {
    if !g.is_regular(k) || g.has_loops() {
        return Err(GirthGraphError::NotRegular(k));
    }
    Ok(())
}

fn implant(g: &Graph, edges: &[(usize, usize)], params: &GirthParams) -> Result<Implanted, GirthGraphError> {
    check_host(g, params.k)?;
    let template = GemelTemplate::new(params)?;
    let mut b = GraphBuilder::from_graph(g);
    let mut gadgets = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u == v {
            return Err(crate::error::GraphError::LoopEdge { vertex: u }.into());
        }
        if !g.has_edge(u, v) {
            return Err(crate::error::GraphError::MissingEdge { u, v }.into());
        }
        b.remove_edge(u, v);
        gadgets.push(template.add_to(&mut b, u, v)?);
    }
    let graph = b.build();
    if !graph.is_regular(params.k) {
        return Err(GirthGraphError::NotRegular(params.k));
    }
    Ok(Implanted { graph, template, gadgets })
}

/// Replaces the edge `uv` by a gadget.
pub fn gemel_implant_edge(g: &Graph, edge: (usize, usize), params: &GirthParams) -> Result<Implanted, GirthGraphError> {
    implant(g, &[edge], params)
}

/// Replaces every edge of `g`, in [`Graph::edges`] order.
pub fn gemel_implant_all(g: &Graph, params: &GirthParams) -> Result<Implanted, GirthGraphError> {
    implant(g, &g.edges(), params)
}

/// A single gadget with bare endpoints: `u = 0`, `v = 1`, each of degree 1.
pub fn gemel_gadget(params: &GirthParams) -> Result<Implanted, GirthGraphError> {
    let template = GemelTemplate::new(params)?;
    let mut b = GraphBuilder::new(2);
    let gadget = template.add_to(&mut b, 0, 1)?;
    Ok(Implanted { graph: b.build(), template, gadgets: vec![gadget] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FWhich {
    /// Even depth in `T_0`, measured from `v'`.
    F0,
    /// Odd depth in `T_1`, measured from `u'`.
    F1,
}

/// `f_0(w) = sum_{j=0}^{d/2-1} (t_{2j+1} + 1) mod k` for `w` at even depth
/// `d` in `T_0`, and `f_1(w) = sum_{j=0}^{(d-1)/2} (t_{2j+1} + 1) mod k` for
/// `w` at odd depth in `T_1`. The depth is the digit count.
pub fn gadget_colour_f(w: &DigitString, which: FWhich, k: usize) -> Result<usize, GirthGraphError> {
    if k < 3 {
        return Err(GirthGraphError::BadK(k));
    }
    let d = w.len();
    let (tag, parity) = match which {
        FWhich::F0 => (0, 0),
        FWhich::F1 => (1, 1),
    };
    w.check(k - 1, d, tag)?;
    if d % 2 != parity {
        return Err(GirthGraphError::Parity(d));
    }
    Ok((1..=d).step_by(2).map(|j| w.at(j) as usize + 1).sum::<usize>() % k)
}

/// Outcome of the three checks on the `f_0`/`f_1` colouring of a gadget.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FChecks {
    /// Vertices compared with their grandparent.
    pub grandparent_checked: usize,
    /// Labels whose colour equals their grandparent's.
    pub grandparent_failures: Vec<DigitString>,
    /// Sibling groups compared.
    pub sibling_groups_checked: usize,
    /// Parents whose coloured children repeat a colour.
    pub sibling_failures: Vec<DigitString>,
    /// `T_1` leaf-parents compared with the `T_0` leaves matched to their
    /// children.
    pub leaf_parents_checked: usize,
    /// `T_1` leaf-parents that disagree with one of those leaves.
    pub leaf_parent_failures: Vec<DigitString>,
    /// Set when the leaf depth has the wrong parity for the third check.
    pub parity_error: Option<usize>,
}

impl FChecks {
    pub fn passed(&self) -> bool {
        self.grandparent_failures.is_empty()
            && self.sibling_failures.is_empty()
            && self.leaf_parent_failures.is_empty()
            && self.parity_error.is_none()
    }
}

/// Runs the checks for every even-depth vertex of `T_0` (leaves included)
/// and every odd-depth non-leaf vertex of `T_1`.
pub fn check_f_colouring(template: &GemelTemplate) -> Result<FChecks, GirthGraphError> {
    let k = template.params.k;
    let base = k - 1;
    let depth = template.params.digits;
    let mut out = FChecks::default();
    for (which, tag, parity, max_depth) in [(FWhich::F0, 0u8, 0usize, depth), (FWhich::F1, 1, 1, depth - 1)] {
        let count = |d: usize| base.pow(d as u32);
        for d in (2..=max_depth).filter(|d| d % 2 == parity) {
            for x in 0..count(d) {
                let w = DigitString::from_value(tag, x as u128, d, base);
                let gp = DigitString::from_value(tag, (x / (base * base)) as u128, d - 2, base);
                out.grandparent_checked += 1;
                if gadget_colour_f(&w, which, k)? == gadget_colour_f(&gp, which, k)? {
                    out.grandparent_failures.push(w);
                }
            }
        }
        for d in (1..=max_depth).filter(|d| d % 2 == parity) {
            for p in 0..count(d - 1) {
                out.sibling_groups_checked += 1;
                let mut seen = 0u64;
                let mut clash = false;
                for t in 0..base {
                    let w = DigitString::from_value(tag, (p * base + t) as u128, d, base);
                    let c = gadget_colour_f(&w, which, k)?;
                    clash |= seen >> c & 1 == 1;
                    seen |= 1 << c;
                }
                if clash {
                    out.sibling_failures.push(DigitString::from_value(tag, p as u128, d - 1, base));
                }
            }
        }
    }
    if !depth.is_multiple_of(2) {
        out.parity_error = Some(depth);
        return Ok(out);
    }
    let leaves = base.pow(depth as u32);
    let mut expected: Vec<Option<usize>> = vec![None; leaves / base];
    let mut failed = vec![false; leaves / base];
    for x in 0..leaves {
        let leaf = DigitString::from_value(0, x as u128, depth, base);
        let c = gadget_colour_f(&leaf, FWhich::F0, k)?;
        let p1 = template.leaf_match[x] / base;
        let want = gadget_colour_f(&DigitString::from_value(1, p1 as u128, depth - 1, base), FWhich::F1, k)?;
        expected[p1] = Some(want);
        if c != want {
            failed[p1] = true;
        }
    }
    for (p1, e) in expected.iter().enumerate() {
        if e.is_some() {
            out.leaf_parents_checked += 1;
            if failed[p1] {
                out.leaf_parent_failures.push(DigitString::from_value(1, p1 as u128, depth - 1, base));
            }
        }
    }
    Ok(out)
}

/// Colours fixed by `f_0` and `f_1` in one gadget, shifted so that `v'`
/// gets `base`: `(vertex, colour)` pairs. Leaves are contracted away, so
/// `T_0` contributes its even depths below the leaf level.
pub fn f_colouring(template: &GemelTemplate, gadget: &GemelGadget, base: usize) -> Result<Vec<(usize, usize)>, GirthGraphError> {
    let k = template.params.k;
    let mut out = Vec::new();
    for (t, which, parity) in [(0u8, FWhich::F0, 0usize), (1, FWhich::F1, 1)] {
        for (index, &id) in gadget.nodes[t as usize].iter().enumerate() {
            let label = template.label(t, index);
            if label.len() % 2 == parity {
                out.push((id, (gadget_colour_f(&label, which, k)? + base) % k));
            }
        }
    }
    Ok(out)
}

/// Extends a `k`-coupon colouring of the host to the implanted graph: host
/// vertices keep their colours, `v'` and `u'` copy `v` and `u`, the `f`
/// classes are fixed, and the search fills in the rest.
pub fn lift_coupon_colouring(
    implanted: &Implanted,
    host_colouring: &RoleColouring,
    cfg: SolveConfig,
) -> Result<Option<RoleColouring>, SolveError> {
    let g = &implanted.graph;
    let k = implanted.template.params.k;
    let mut search = CouponSearch::new(g, k)?;
    for (v, &c) in host_colouring.as_slice().iter().enumerate() {
        search = search.pin(v, c);
    }
    for gadget in &implanted.gadgets {
        let cu = host_colouring.colour(gadget.u);
        let cv = host_colouring.colour(gadget.v);
        search = search.pin(gadget.u_prime, cu).pin(gadget.v_prime, cv);
        let fixed = f_colouring(&implanted.template, gadget, cv)
            .map_err(|_| SolveError::InvalidParameter("gadget depth has the wrong parity for f_0/f_1"))?;
        for (v, c) in fixed {
            search = search.pin(v, c);
        }
    }
    let cfg = SolveConfig { enumerate_all: false, ..cfg };
    Ok(search.run(cfg)?.solutions.pop())
}

/// Vertex id and digit-string label of every gadget tree vertex.
pub fn gadget_labels(implanted: &Implanted) -> Vec<(usize, String)> {
    use alloc::string::ToString;
    let mut out = Vec::new();
    for gadget in &implanted.gadgets {
        for t in 0..2u8 {
            for (index, &id) in gadget.nodes[t as usize].iter().enumerate() {
                out.push((id, implanted.template.label(t, index).to_string()));
            }
        }
    }
    out
}
