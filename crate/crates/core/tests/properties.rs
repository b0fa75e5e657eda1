//! Randomized properties. Graph shapes come from proptest strategies; the
//! pattern-free hosts for the lemma verifiers come from seeded generators.

use num_rational::Ratio;
use proptest::collection::vec;
use proptest::prelude::*;
use turan_core::bitset::VertexSet;
use turan_core::density::{is_balanced, Rational, RootedTree};
use turan_core::families::{gen_cube, l3_theta, theta};
use turan_core::lemmas::{
    bfs_layer_report, comb_decompose, comb_decompose_verify, construct_report, cube_proof_audit, verify_correlated,
    verify_h1t_count, verify_matching_count, verify_treelayer, TreeLayer, VerifierReport,
};
use turan_core::matching::count_h1t;
use turan_core::pattern::{contains, count_copies, embed_rooted_tree, PatternSet};
use turan_core::random::{free_bipartite, free_graph, rng, tree};
use turan_core::{BipGraph, Graph};

fn build(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn graphs(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi)
        .prop_flat_map(move |n| (Just(n), vec(prop::bool::weighted(density), n * (n.max(1) - 1) / 2)))
        .prop_map(|(n, bits)| build(n, &bits))
}

fn bip(a: usize, b: usize, bits: &[bool]) -> BipGraph {
    let mut g = Graph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            if bits[i * b + j] {
                g.add_edge(i, a + j);
            }
        }
    }
    let pa = VertexSet::from_slice(a + b, &(0..a).collect::<Vec<_>>());
    let pb = VertexSet::from_slice(a + b, &(a..a + b).collect::<Vec<_>>());
    BipGraph::new(g, pa, pb).unwrap()
}

/// Bipartite graphs on exactly `order` vertices with both sides nonempty.
fn bip_graphs(order: usize, density: f64) -> impl Strategy<Value = BipGraph> {
    (1..order)
        .prop_flat_map(move |a| (Just(a), vec(prop::bool::weighted(density), a * (order - a))))
        .prop_map(move |(a, bits)| bip(a, order - a, &bits))
}

fn sound(r: &VerifierReport) -> std::result::Result<(), TestCaseError> {
    prop_assert!(r.is_consistent(), "{} failed: {:?}", r.lemma, r);
    if r.counterexample.is_some() {
        prop_assert!(r.holds == Some(false) && r.precondition_met && r.hypothesis_met);
    }
    if r.precondition_met && r.hypothesis_met {
        prop_assert_eq!(r.holds, Some(true), "{} not evaluated", r.lemma);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn adjacency_stays_symmetric(g in graphs(0, 20, 0.4), drops in vec((0usize..20, 0usize..20), 0..10)) {
        let mut g = g;
        let n = g.order();
        for (u, v) in drops {
            if u < n && v < n && u != v {
                g.remove_edge(u, v);
            }
        }
        for u in 0..n {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..n {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn bipartition_splits_every_edge(g in bip_graphs(12, 0.3)) {
        let h = BipGraph::from_graph(g.graph().clone()).unwrap();
        prop_assert_eq!(h.part_a().len() + h.part_b().len(), 12);
        prop_assert!(h.part_a().is_disjoint(h.part_b()));
        for (u, v) in h.graph().edges() {
            prop_assert_ne!(h.in_a(u), h.in_a(v));
        }
    }

    #[test]
    fn containment_is_monotone(
        g in graphs(3, 9, 0.45),
        h in graphs(2, 5, 0.5),
        extra in (0usize..9, 0usize..9),
    ) {
        prop_assume!(h.edge_count() > 0);
        if let Some(e) = contains(&g, &h) {
            prop_assert!(e.is_valid(&g, &h));
            let (u, v) = extra;
            let mut bigger = g.clone();
            if u < g.order() && v < g.order() && u != v {
                bigger.add_edge(u, v);
            }
            prop_assert!(contains(&bigger, &h).is_some());
        }
    }

    #[test]
    fn self_containment_is_identity(g in graphs(1, 12, 0.5)) {
        let e = contains(&g, &g).expect("a graph contains itself");
        prop_assert_eq!(e.map, (0..g.order()).collect::<Vec<_>>());
    }

    #[test]
    fn h1t_count_on_twelve_vertices(g in bip_graphs(12, 0.35), t in 1usize..=2) {
        let h = gen_cube(1, t).unwrap().into_graph();
        prop_assert_eq!(count_h1t(&g, t).unwrap(), count_copies(g.graph(), &h).unwrap());
    }

    #[test]
    fn greedy_tree_embedding_needs_only_min_degree(seed: u64, k in 1usize..=6, n in 7usize..=14, p in 0.0f64..0.6) {
        let mut r = rng(seed);
        let t = RootedTree::new(tree(k, &mut r), &[(seed % (k as u64 + 1)) as usize]).unwrap();
        let mut g = turan_core::random::gnp(n, p, &mut r);
        // raise every degree to at least 6 by joining low vertices to the next ones
        for v in 0..n {
            let mut w = (v + 1) % n;
            while g.degree(v) < 6 {
                g.add_edge(v, w);
                w = (w + 1) % n;
            }
        }
        prop_assert!(g.min_degree() >= 6);
        for v in 0..n {
            let e = embed_rooted_tree(&g, &t, v).expect("min degree covers the tree");
            prop_assert!(e.is_valid(&g, t.tree()));
            prop_assert_eq!(e.map[t.roots().first().unwrap()], v);
        }
    }

    #[test]
    fn rooted_density_invariants(seed: u64, k in 1usize..=10, picks in vec(any::<bool>(), 11)) {
        let mut r = rng(seed);
        let g = tree(k, &mut r);
        let n = g.order();
        // greedy independent root set from the random picks, leaving a non-root
        let mut roots = Vec::new();
        for v in 0..n {
            if picks[v] && roots.len() + 1 < n && roots.iter().all(|&u| !g.has_edge(u, v)) {
                roots.push(v);
            }
        }
        if roots.is_empty() {
            roots.push((0..n).find(|&v| g.degree(v) == 1).unwrap_or(0));
        }
        let t = RootedTree::new(g.clone(), &roots).unwrap();
        let free = t.non_roots();
        let free_set = VertexSet::from_slice(n, &free);
        prop_assert_eq!(t.edges_meeting(&free_set), k);
        prop_assert_eq!(t.rho_t().unwrap(), Ratio::new(k as i64, free.len() as i64));
        let rep = is_balanced(&t).unwrap();
        prop_assert!(rep.min_rho <= rep.rho_t);
        prop_assert_eq!(rep.balanced, rep.min_rho == rep.rho_t);
        if rep.balanced {
            let one = Rational::from_integer(1);
            let two = Rational::from_integer(2);
            // ρ_T = 1 exactly when R is a single vertex
            if roots.len() >= 2 {
                prop_assert!(rep.exponent > one && rep.exponent < two);
            } else {
                prop_assert_eq!(rep.exponent, one);
            }
        }
        // a pendant at a non-root vertex raises ρ_T by at most 1
        let mut grown = g.extend_to(n + 1);
        grown.add_edge(free[seed as usize % free.len()], n);
        let t2 = RootedTree::new(grown, &roots).unwrap();
        let rho2 = Ratio::new(k as i64 + 1, free.len() as i64 + 1);
        prop_assert_eq!(t2.rho_t().unwrap(), rho2);
        prop_assert!(rho2 - t.rho_t().unwrap() <= Rational::from_integer(1));
    }

    #[test]
    fn comb_partition_invariants(g in graphs(2, 24, 0.3), p in 2usize..=3) {
        prop_assume!(g.edge_count() > 0);
        let dec = comb_decompose(&g, p).unwrap();
        prop_assert!(dec.partition_ok());
        prop_assert!(dec.h3_distinct_groups());
        prop_assert_eq!(dec.h.len(), dec.h1.len() + dec.h2.len());
        prop_assert!(dec.h3.len() <= dec.h2.len());
        prop_assert!(dec.g1().min_degree() <= dec.g1().degree(dec.root));
    }

    #[test]
    fn constructive_lemmas_hold(g in graphs(1, 16, 0.35), num in 1i64..=6, den in 1i64..=3) {
        let lambda = Ratio::new(num.max(den), den);
        for lemma in ["maxcut", "mindeg", "bipprune", "almostreg"] {
            let rep = construct_report(lemma, &g, lambda).unwrap();
            sound(&rep)?;
        }
        let half = turan_core::lemmas::bipartite_half(&g).into_graph();
        let rep = construct_report("bipprune", &half, lambda).unwrap();
        prop_assert_eq!(rep.precondition_met, half.edge_count() > 0);
        sound(&rep)?;
    }

    #[test]
    fn counting_lemmas_hold(g in bip_graphs(14, 0.4), t in 1usize..=3) {
        sound(&verify_matching_count(&g, t).unwrap())?;
        if t <= 2 {
            sound(&verify_h1t_count(&g, t).unwrap())?;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Hosts that avoid H_{s,t} by construction, so the correlation lemma and
    /// the cube counting claim are actually exercised.
    #[test]
    fn correlation_lemmas_hold(seed: u64, a in 3usize..=7, b in 3usize..=7, s in 2usize..=3, t in 2usize..=3) {
        prop_assume!(t >= s);
        let pats = PatternSet::single(gen_cube(s, t).unwrap().graph());
        let g = free_bipartite(a, b, &pats, a * b, &mut rng(seed));
        let rep = verify_correlated(&g, s, t).unwrap();
        prop_assert!(rep.hypothesis_met);
        sound(&rep)?;
        let audit = cube_proof_audit(&g, s, t).unwrap();
        prop_assert!(audit.hypothesis_met);
        prop_assert_ne!(audit.claim2_holds, Some(false));
    }

    #[test]
    fn theta_lemmas_hold(seed: u64, n in 8usize..=22, k in 2usize..=4, p in 2usize..=3) {
        let h = theta(k, p).unwrap().into_graph();
        let g = free_graph(n, &PatternSet::single(&h), n * n, &mut rng(seed));
        let root = (seed % n as u64) as usize;
        for t in 1..k {
            let layer = TreeLayer::from_bfs(&g, root, t).unwrap();
            sound(&verify_treelayer(&layer, k, p).unwrap())?;
        }
        let half = turan_core::lemmas::bipartite_half(&g);
        let rep = bfs_layer_report(&half, root, k, p).unwrap();
        prop_assert!(rep.theta_free);
        prop_assert!(rep.is_consistent());
        prop_assert_eq!(rep.layers[0], 1);
    }

    #[test]
    fn comb_claims_hold(seed: u64, n in 10usize..=28, p in 2usize..=3) {
        let g = free_graph(n, &PatternSet::single(&l3_theta(p).unwrap()), n * n, &mut rng(seed));
        prop_assume!(g.edge_count() > 0);
        let rep = comb_decompose_verify(&g, p).unwrap();
        prop_assert!(rep.hypothesis_met);
        sound(&rep)?;
    }
}
