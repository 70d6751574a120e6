use proptest::prelude::*;
use rolecol_core::role::verify_coupon_colouring;
use rolecol_core::solve::{find_k_ccol, solve_r_rcol};
use rolecol_core::twok2::maximal_independent_set_containing;
use rolecol_core::{girth, role_graph_of, verify_role_colouring, Girth, Graph, RoleColouring, RoleTarget, SolveConfig};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n)
            .prop_map(move |es| Graph::from_edges(n, es.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric(g in graph(10)) {
        prop_assert!(g.is_well_formed());
        prop_assert_eq!(g.edges().len(), g.size());
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn quotient_accepts_equitable_colourings(g in graph(7), seed in proptest::collection::vec(0usize..3, 7)) {
        let colours: Vec<usize> = (0..g.order()).map(|v| seed[v]).collect();
        let used = { let mut c = colours.clone(); c.sort_unstable(); c.dedup(); c };
        let dense: Vec<usize> = colours.iter().map(|c| used.binary_search(c).unwrap()).collect();
        let r = RoleColouring::new(dense);
        let role = role_graph_of(&g, &r);
        prop_assert_eq!(role.order(), used.len());
        if verify_role_colouring(&g, &role, &r).is_ok() {
            for v in g.vertices() {
                prop_assert!(role.degree(r.colour(v)) <= g.degree(v));
            }
        }
    }

    #[test]
    fn solver_answers_verify(g in graph(8)) {
        for t in RoleTarget::ALL {
            let role = t.role_graph(2);
            for r in solve_r_rcol(&g, &role, SolveConfig::first()).unwrap().solutions {
                prop_assert!(verify_role_colouring(&g, &role, &r).is_ok());
            }
        }
        if let Some(r) = find_k_ccol(&g, 2, SolveConfig::first()).unwrap() {
            prop_assert!(verify_coupon_colouring(&g, 2, &r).is_ok());
        }
    }

    #[test]
    fn full_subdivision_scales_girth(g in graph(8), t in 1usize..4) {
        let h = g.subdivide_all(t).unwrap();
        prop_assert_eq!(h.order(), g.order() + t * g.size());
        match girth(&g) {
            Girth::Finite(c) => prop_assert_eq!(girth(&h), Girth::Finite(c * (t + 1))),
            Girth::Infinite => prop_assert_eq!(girth(&h), Girth::Infinite),
        }
    }

    #[test]
    fn independent_sets_are_maximal(g in graph(9)) {
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let set = maximal_independent_set_containing(&g, u, v).unwrap();
                prop_assert!(set.contains(&u) && set.contains(&v));
                for (i, &a) in set.iter().enumerate() {
                    for &b in &set[i + 1..] {
                        prop_assert!(!g.has_edge(a, b));
                    }
                }
                for w in g.vertices().filter(|w| !set.contains(w)) {
                    prop_assert!(set.iter().any(|&a| g.has_edge(a, w)));
                }
            }
        }
    }
}
