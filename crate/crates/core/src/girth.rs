use alloc::collections::VecDeque;
use alloc::vec;
use core::fmt;

use crate::graph::Graph;

/// Length of a shortest cycle. `Finite` sorts before `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn exceeds(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g > bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Exact girth by a breadth-first search from every vertex. A loop is a cycle
/// of length 1.
pub fn girth(g: &Graph) -> Girth {
    if g.has_loops() {
        return Girth::Finite(1);
    }
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = vec![];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        'bfs: while let Some(v) = queue.pop_front() {
            // Any cycle closed at v has length at least 2 d(v).
            if 2 * dist[v] >= best {
                break;
            }
            for &w in g.neighbours(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        queue.clear();
        for v in touched.drain(..) {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::GraphFamily;

    #[test]
    fn cycles() {
        for n in 3..=12 {
            assert_eq!(girth(&GraphFamily::Cycle(n).build().unwrap()), Girth::Finite(n));
        }
    }

    #[test]
    fn trees_are_infinite() {
        let t = GraphFamily::PerfectTree { branching: 3, depth: 3 }.build().unwrap();
        assert_eq!(girth(&t), Girth::Infinite);
        assert_eq!(girth(&Graph::empty(0)), Girth::Infinite);
    }

    #[test]
    fn loop_is_one() {
        let g = GraphFamily::PathStar(4).build().unwrap();
        assert_eq!(girth(&g), Girth::Finite(1));
    }

    #[test]
    fn petersen_and_bicliques() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let petersen = Graph::from_edges(10, outer.chain(inner).chain(spokes)).unwrap();
        assert_eq!(girth(&petersen), Girth::Finite(5));
        assert_eq!(girth(&GraphFamily::Biclique(3, 3).build().unwrap()), Girth::Finite(4));
        assert_eq!(girth(&GraphFamily::Complete(4).build().unwrap()), Girth::Finite(3));
    }

    #[test]
    fn subdivided_triangle() {
        let c3 = GraphFamily::Cycle(3).build().unwrap();
        for t in 1..=6 {
            let g = c3.subdivide_edge((0, 1), t).unwrap();
            assert_eq!(girth(&g), Girth::Finite(3 + t));
        }
    }

    #[test]
    fn ordering() {
        assert!(Girth::Finite(100) < Girth::Infinite);
        assert!(Girth::Infinite.exceeds(1_000));
        assert!(!Girth::Finite(4).exceeds(4));
    }
}
