//! Role colourings: certificates, the verifier and quotient role graphs.
//!
//! Colours are `0..k` and colour `c` is vertex `c` of the role graph. Files
//! and user-facing messages shift both vertices and colours up by one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::families::GraphFamily;
use crate::graph::{Graph, GraphBuilder};

/// A total vertex -> colour map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RoleColouring {
    colours: Vec<usize>,
}

impl RoleColouring {
    pub fn new(colours: Vec<usize>) -> Self {
        RoleColouring { colours }
    }

    /// From colours numbered `1..=k`. `None` if any entry is 0.
    pub fn from_one_based(colours: &[usize]) -> Option<Self> {
        colours
            .iter()
            .map(|&c| c.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .map(RoleColouring::new)
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colours
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// One more than the largest colour in use.
    pub fn colour_count(&self) -> usize {
        self.colours.iter().max().map_or(0, |&c| c + 1)
    }

    /// Vertices of each colour class, indexed by colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.colour_count()];
        for (v, &c) in self.colours.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// The quotient graph of a role colouring. Loops are meaningful.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RoleGraph(Graph);

impl RoleGraph {
    pub fn new(g: Graph) -> Self {
        RoleGraph(g)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }
}

impl Deref for RoleGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl From<Graph> for RoleGraph {
    fn from(g: Graph) -> Self {
        RoleGraph(g)
    }
}

/// The four sparse role graphs that an ear of length `2k` admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoleTarget {
    Cycle,
    Path,
    PathStar,
    PathStarStar,
}

impl RoleTarget {
    pub const ALL: [RoleTarget; 4] = [
        RoleTarget::Cycle,
        RoleTarget::Path,
        RoleTarget::PathStar,
        RoleTarget::PathStarStar,
    ];

    /// The target on `k` colours in the canonical ordering. `C_2` is the
    /// single edge, since graphs here have no multi-edges.
    pub fn role_graph(self, k: usize) -> RoleGraph {
        let family = match self {
            RoleTarget::Cycle if k >= 3 => GraphFamily::Cycle(k),
            RoleTarget::Cycle | RoleTarget::Path => GraphFamily::Path(k),
            RoleTarget::PathStar => GraphFamily::PathStar(k),
            RoleTarget::PathStarStar => GraphFamily::PathStarStar(k),
        };
        RoleGraph(family.build().expect("k >= 1"))
    }

    /// Length `p` of a degree-2 path whose ends are forced to share a colour.
    pub fn period(self, k: usize) -> usize {
        match self {
            RoleTarget::Cycle => k,
            RoleTarget::Path => 2 * k - 2,
            RoleTarget::PathStar => 2 * k - 1,
            RoleTarget::PathStarStar => 2 * k,
        }
    }
}

impl fmt::Display for RoleTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoleTarget::Cycle => "C_k",
            RoleTarget::Path => "P_k",
            RoleTarget::PathStar => "P_k*",
            RoleTarget::PathStarStar => "P_k**",
        })
    }
}

/// `K_k` with a loop at every vertex; its role colourings are exactly the
/// `k`-coupon colourings.
pub fn complete_with_loops(k: usize) -> RoleGraph {
    let mut b = GraphBuilder::new(k);
    for u in 0..k {
        for v in u..k {
            b.add_edge(u, v).expect("in range");
        }
    }
    RoleGraph(b.build())
}

/// First reason a colouring fails to certify. Vertices and colours are
/// reported 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Partial { expected: usize, got: usize },
    ColourOutOfRange { vertex: usize, colour: usize },
    MissingColour { colour: usize },
    ImageMismatch { vertex: usize, colour: usize, image: Vec<usize>, expected: Vec<usize> },
    CouponMissing { vertex: usize, colour: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Partial { expected, got } => {
                write!(f, "colouring covers {got} of {expected} vertices")
            }
            Violation::ColourOutOfRange { vertex, colour } => {
                write!(f, "vertex {} has colour {} outside the role graph", vertex + 1, colour + 1)
            }
            Violation::MissingColour { colour } => write!(f, "colour {} is never used", colour + 1),
            Violation::ImageMismatch { vertex, colour, image, expected } => {
                write!(f, "vertex {} (colour {}) sees ", vertex + 1, colour + 1)?;
                write_set(f, image)?;
                f.write_str(" but the role graph requires ")?;
                write_set(f, expected)
            }
            Violation::CouponMissing { vertex, colour } => {
                write!(f, "vertex {} has no neighbour of colour {}", vertex + 1, colour + 1)
            }
        }
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &[usize]) -> fmt::Result {
    f.write_str("{")?;
    for (i, c) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", c + 1)?;
    }
    f.write_str("}")
}

/// Sorted, deduplicated colours on the neighbourhood of `v`.
pub fn image(g: &Graph, r: &RoleColouring, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g.neighbours(v).iter().map(|&w| r.colour(w)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Checks that `r` is a locally surjective homomorphism from `g` onto
/// `role`: every role vertex is used and `r(N(v)) = N_role(r(v))` for all `v`.
pub fn verify_role_colouring(g: &Graph, role: &RoleGraph, r: &RoleColouring) -> Result<(), Violation> {
    if r.len() != g.order() {
        return Err(Violation::Partial { expected: g.order(), got: r.len() });
    }
    let k = role.order();
    let mut used = vec![false; k];
    for v in g.vertices() {
        let c = r.colour(v);
        if c >= k {
            return Err(Violation::ColourOutOfRange { vertex: v, colour: c });
        }
        used[c] = true;
    }
    if let Some(colour) = used.iter().position(|&u| !u) {
        return Err(Violation::MissingColour { colour });
    }
    for v in g.vertices() {
        let c = r.colour(v);
        let img = image(g, r, v);
        if img.as_slice() != role.neighbours(c) {
            return Err(Violation::ImageMismatch {
                vertex: v,
                colour: c,
                image: img,
                expected: role.neighbours(c).to_vec(),
            });
        }
    }
    Ok(())
}

/// Checks that every vertex sees all of `0..k` in its open neighbourhood and
/// that no colour exceeds `k - 1`.
pub fn verify_coupon_colouring(g: &Graph, k: usize, r: &RoleColouring) -> Result<(), Violation> {
    verify_coupon_at(g, k, r, g.vertices())
}

/// Coupon condition restricted to `vertices`.
pub fn verify_coupon_at<I>(g: &Graph, k: usize, r: &RoleColouring, vertices: I) -> Result<(), Violation>
where
    I: IntoIterator<Item = usize>,
{
    if r.len() != g.order() {
        return Err(Violation::Partial { expected: g.order(), got: r.len() });
    }
    if let Some(v) = g.vertices().find(|&v| r.colour(v) >= k) {
        return Err(Violation::ColourOutOfRange { vertex: v, colour: r.colour(v) });
    }
    for v in vertices {
        let img = image(g, r, v);
        if img.len() != k {
            let colour = (0..k).find(|c| img.binary_search(c).is_err()).unwrap_or(0);
            return Err(Violation::CouponMissing { vertex: v, colour });
        }
    }
    Ok(())
}

/// The role graph induced by `r`: vertex set `0..colour_count`, with an
/// edge `{x, y}` whenever some `x`-vertex has a `y`-neighbour. Colours that
/// are skipped stay isolated, so the verifier then reports them as missing.
pub fn role_graph_of(g: &Graph, r: &RoleColouring) -> RoleGraph {
    let mut b = GraphBuilder::new(r.colour_count());
    for (u, v) in g.edges() {
        b.add_edge(r.colour(u), r.colour(v)).expect("colours are in range");
    }
    RoleGraph(b.build())
}
