#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rolecol_core::solve::permutations;
use rolecol_core::{Graph, GraphFamily};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fam(f: GraphFamily) -> Graph {
    f.build().unwrap()
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// The graph on `n` vertices whose edges are the set bits of `mask` over `pairs(n)`.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let edges = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled simple graph on `1..=max_n` vertices.
pub fn all_labelled(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let m = pairs(n).len();
        for mask in 0..1u64 << m {
            out.push(from_mask(n, mask));
        }
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.75);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Exhaustive induced-subgraph test over all ordered vertex tuples.
pub fn brute_contains_induced(g: &Graph, h: &Graph) -> bool {
    let (n, m) = (g.order(), h.order());
    if m > n {
        return false;
    }
    let mut pick = vec![0usize; m];
    fn go(g: &Graph, h: &Graph, pick: &mut Vec<usize>, i: usize) -> bool {
        if i == h.order() {
            return true;
        }
        for v in g.vertices() {
            if pick[..i].contains(&v) {
                continue;
            }
            if (0..i).all(|j| g.has_edge(pick[j], v) == h.has_edge(j, i)) && g.has_loop(v) == h.has_loop(i) {
                pick[i] = v;
                if go(g, h, pick, i + 1) {
                    return true;
                }
            }
        }
        false
    }
    go(g, h, &mut pick, 0)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    permutations(a.order()).iter().any(|p| {
        a.vertices().all(|u| a.vertices().all(|v| a.has_edge(u, v) == b.has_edge(p[u], p[v])))
    })
}

/// Attaches a path of `len` new vertices between `a` and `b` of `g`.
pub fn with_ear(g: &Graph, a: usize, b: usize, len: usize) -> Graph {
    let n = g.order();
    let mut edges = g.edges();
    let path: Vec<usize> = (n..n + len).collect();
    edges.push((a, path[0]));
    for w in path.windows(2) {
        edges.push((w[0], w[1]));
    }
    edges.push((path[len - 1], b));
    Graph::from_edges(n + len, edges).unwrap()
}

/// Adds a copy of `h` whose vertex `hook` gets one edge to `at` in `g`.
pub fn dangle(g: &Graph, h: &Graph, hook: usize, at: usize) -> Graph {
    let n = g.order();
    let mut edges = g.edges();
    edges.extend(h.edges().into_iter().map(|(u, v)| (u + n, v + n)));
    edges.push((at, hook + n));
    Graph::from_edges(n + h.order(), edges).unwrap()
}
