//! Named graph families.
//!
//! Paths and cycles are numbered along the walk, so vertex `i` here is vertex
//! `i + 1` of the usual `1..n` labelling.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// `P_n`.
    Path(usize),
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `P_n*`: a loop at the last vertex.
    PathStar(usize),
    /// `P_n**`: loops at both ends.
    PathStarStar(usize),
    /// `K_n`.
    Complete(usize),
    /// `K_{m,n}`.
    Biclique(usize, usize),
    /// `H_i`: two `P_3` centres joined by a path of length `i`.
    H(usize),
    /// `S_{ijk}`: three legs of the given lengths at a common centre.
    Spider(usize, usize, usize),
    /// The perfect `k`-regular tree of radius `t`.
    PerfectTree { branching: usize, depth: usize },
    /// `m` disjoint copies.
    Copies(usize, Box<GraphFamily>),
}

impl GraphFamily {
    pub fn build(&self) -> Result<Graph, GraphError> {
        use GraphFamily::*;
        match *self {
            Path(n) => {
                nonzero(n, "path needs n >= 1")?;
                let mut b = GraphBuilder::new(n);
                b.add_path(&(0..n).collect::<Vec<_>>())?;
                Ok(b.build())
            }
            Cycle(n) => {
                if n < 3 {
                    return Err(GraphError::InvalidParameter("cycle needs n >= 3"));
                }
                let mut b = GraphBuilder::new(n);
                b.add_cycle(&(0..n).collect::<Vec<_>>())?;
                Ok(b.build())
            }
            PathStar(n) => {
                nonzero(n, "path_star needs n >= 1")?;
                let mut b = GraphBuilder::new(n);
                b.add_path(&(0..n).collect::<Vec<_>>())?;
                b.add_edge(n - 1, n - 1)?;
                Ok(b.build())
            }
            PathStarStar(n) => {
                nonzero(n, "path_star_star needs n >= 1")?;
                let mut b = GraphBuilder::new(n);
                b.add_path(&(0..n).collect::<Vec<_>>())?;
                b.add_edge(0, 0)?;
                b.add_edge(n - 1, n - 1)?;
                Ok(b.build())
            }
            Complete(n) => {
                nonzero(n, "complete graph needs n >= 1")?;
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Biclique(m, n) => {
                if m == 0 || n == 0 {
                    return Err(GraphError::InvalidParameter("biclique needs m, n >= 1"));
                }
                Graph::from_edges(m + n, (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))))
            }
            H(i) => {
                nonzero(i, "H_i needs i >= 1")?;
                // 0 - 1 - 2 around u = 1, 3 - 4 - 5 around v = 4, then the
                // i - 1 subdivision vertices of uv.
                let mut b = GraphBuilder::new(i + 5);
                b.add_path(&[0, 1, 2])?;
                b.add_path(&[3, 4, 5])?;
                let mut spine = Vec::with_capacity(i + 1);
                spine.push(1);
                spine.extend(6..i + 5);
                spine.push(4);
                b.add_path(&spine)?;
                Ok(b.build())
            }
            Spider(i, j, k) => {
                let mut b = GraphBuilder::new(1);
                for len in [i, j, k] {
                    let leg = b.add_vertices(len);
                    let mut path = Vec::with_capacity(len + 1);
                    path.push(0);
                    path.extend(leg);
                    b.add_path(&path)?;
                }
                Ok(b.build())
            }
            PerfectTree { branching, depth } => {
                if branching < 2 {
                    return Err(GraphError::InvalidParameter("perfect tree needs k >= 2"));
                }
                let mut b = GraphBuilder::new(1);
                let mut frontier = alloc::vec![0usize];
                for level in 0..depth {
                    let kids = if level == 0 { branching } else { branching - 1 };
                    let mut next = Vec::with_capacity(frontier.len() * kids);
                    for &p in &frontier {
                        for c in b.add_vertices(kids) {
                            b.add_edge(p, c)?;
                            next.push(c);
                        }
                    }
                    frontier = next;
                }
                Ok(b.build())
            }
            Copies(m, ref inner) => {
                nonzero(m, "copy count must be >= 1")?;
                let one = inner.build()?;
                let mut g = one.clone();
                for _ in 1..m {
                    g = g.disjoint_union(&one);
                }
                Ok(g)
            }
        }
    }

    /// `2K_2`.
    pub fn two_k2() -> Self {
        GraphFamily::Copies(2, Box::new(GraphFamily::Complete(2)))
    }

    /// `K_{1,n}`.
    pub fn star(n: usize) -> Self {
        GraphFamily::Biclique(1, n)
    }
}

fn nonzero(n: usize, msg: &'static str) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::InvalidParameter(msg))
    } else {
        Ok(())
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphFamily::*;
        match self {
            Path(n) => write!(f, "P{n}"),
            Cycle(n) => write!(f, "C{n}"),
            PathStar(n) => write!(f, "P{n}*"),
            PathStarStar(n) => write!(f, "P{n}**"),
            Complete(n) => write!(f, "K{n}"),
            Biclique(m, n) => write!(f, "K{m},{n}"),
            H(i) => write!(f, "H{i}"),
            Spider(i, j, k) => write!(f, "S{i},{j},{k}"),
            PerfectTree { branching, depth } => write!(f, "T{branching}^{depth}"),
            Copies(m, inner) => write!(f, "{m}{inner}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn path_star_star_two() {
        let g = GraphFamily::PathStarStar(2).build().unwrap();
        assert_eq!(g.edges(), vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn path_star_has_one_loop() {
        let g = GraphFamily::PathStar(3).build().unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn h_one_is_h() {
        let g = GraphFamily::H(1).build().unwrap();
        assert_eq!(g.order(), 6);
        let cubic: Vec<_> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
        assert_eq!(cubic, vec![1, 4]);
        assert!(g.has_edge(1, 4));
    }

    #[test]
    fn h_i_shape() {
        for i in 1..=9 {
            let g = GraphFamily::H(i).build().unwrap();
            assert_eq!(g.order(), i + 5);
            let cubic: Vec<_> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
            assert_eq!(cubic.len(), 2);
            assert_eq!(g.distance(cubic[0], cubic[1]), Some(i));
        }
    }

    #[test]
    fn claw_from_spider_and_tree() {
        let s = GraphFamily::Spider(1, 1, 1).build().unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.degrees(), vec![3, 1, 1, 1]);
        let t = GraphFamily::PerfectTree { branching: 3, depth: 1 }.build().unwrap();
        assert_eq!(t, s);
    }

    #[test]
    fn spider_with_zero_leg_is_path() {
        let s = GraphFamily::Spider(2, 0, 3).build().unwrap();
        assert_eq!(s.order(), 6);
        assert_eq!(s.max_degree(), 2);
        assert!(s.is_connected());
        assert_eq!(s.size(), 5);
    }

    #[test]
    fn perfect_tree_counts() {
        let t = GraphFamily::PerfectTree { branching: 3, depth: 3 }.build().unwrap();
        assert_eq!(t.order(), 1 + 3 + 6 + 12);
        assert_eq!(t.size(), t.order() - 1);
    }

    #[test]
    fn copies() {
        let g = GraphFamily::two_k2().build().unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(GraphFamily::Cycle(2).build().is_err());
        assert!(GraphFamily::H(0).build().is_err());
        assert!(GraphFamily::Path(0).build().is_err());
        assert!(GraphFamily::Biclique(0, 3).build().is_err());
    }
}
