//! Seeded random instances. Every generator takes the RNG explicitly, and
//! batches draw per-instance seeds sequentially from one master seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::graph::{BipGraph, Graph};
use crate::pattern::PatternSet;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` instance seeds drawn in order from the master seed.
pub fn instance_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut r = rng(master);
    (0..count).map(|_| r.gen()).collect()
}

/// G(n, p).
pub fn gnp(n: usize, p: f64, r: &mut Rng8) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Uniform graph with exactly `m` edges (capped at C(n,2)).
pub fn gnm(n: usize, m: usize, r: &mut Rng8) -> Graph {
    let mut slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    slots.shuffle(r);
    let mut g = Graph::new(n);
    for &(u, v) in slots.iter().take(m) {
        g.add_edge(u, v);
    }
    g
}

fn shell(a: usize, b: usize, g: Graph) -> BipGraph {
    let pa = VertexSet::from_slice(a + b, &(0..a).collect::<Vec<_>>());
    let pb = VertexSet::from_slice(a + b, &(a..a + b).collect::<Vec<_>>());
    BipGraph::from_parts_unchecked(g, pa, pb)
}

/// Bipartite graph with parts 0..a and a..a+b and exactly `e` edges
/// (capped at a·b).
pub fn bipartite_gnm(a: usize, b: usize, e: usize, r: &mut Rng8) -> BipGraph {
    let mut cells: Vec<(usize, usize)> = (0..a).flat_map(|u| (0..b).map(move |j| (u, a + j))).collect();
    cells.shuffle(r);
    let mut g = Graph::new(a + b);
    for &(u, v) in cells.iter().take(e) {
        g.add_edge(u, v);
    }
    shell(a, b, g)
}

/// Bipartite graph with each of the a·b cells present independently.
pub fn bipartite_gnp(a: usize, b: usize, p: f64, r: &mut Rng8) -> BipGraph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for j in 0..b {
            if r.gen_bool(p) {
                g.add_edge(u, a + j);
            }
        }
    }
    shell(a, b, g)
}

fn greedy_free(order: usize, mut slots: Vec<(usize, usize)>, pats: &PatternSet, cap: usize, r: &mut Rng8) -> Graph {
    slots.shuffle(r);
    let mut g = Graph::new(order);
    for (u, v) in slots {
        if g.edge_count() >= cap {
            break;
        }
        g.add_edge(u, v);
        if pats.occurs_through_edge(&g, u, v) {
            g.remove_edge(u, v);
        }
    }
    g
}

/// Random 𝓗-free bipartite graph: cells in random order, each kept unless
/// it completes a pattern, stopping at `cap` edges.
pub fn free_bipartite(a: usize, b: usize, pats: &PatternSet, cap: usize, r: &mut Rng8) -> BipGraph {
    let cells: Vec<(usize, usize)> = (0..a).flat_map(|u| (0..b).map(move |j| (u, a + j))).collect();
    shell(a, b, greedy_free(a + b, cells, pats, cap, r))
}

/// Random 𝓗-free graph on n vertices with at most `cap` edges.
pub fn free_graph(n: usize, pats: &PatternSet, cap: usize, r: &mut Rng8) -> Graph {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    greedy_free(n, slots, pats, cap, r)
}

/// Uniform labelled tree with `k` edges, from a random Prüfer sequence.
pub fn tree(k: usize, r: &mut Rng8) -> Graph {
    let n = k + 1;
    let mut g = Graph::new(n);
    if n == 2 {
        g.add_edge(0, 1);
    }
    if n <= 2 {
        return g;
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
    let mut deg = vec![1usize; n];
    for &x in &seq {
        deg[x] += 1;
    }
    for &x in &seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).expect("a leaf exists");
        g.add_edge(leaf, x);
        deg[leaf] -= 1;
        deg[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cycle;

    #[test]
    fn trees_are_trees() {
        let mut r = rng(7);
        for k in 1..12 {
            let t = tree(k, &mut r);
            assert_eq!(t.edge_count(), k);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn seeded_generators_repeat() {
        assert_eq!(instance_seeds(3, 4), instance_seeds(3, 4));
        let a = bipartite_gnm(5, 6, 13, &mut rng(1));
        let b = bipartite_gnm(5, 6, 13, &mut rng(1));
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 13);
    }

    #[test]
    fn free_generators_avoid_patterns() {
        let c4 = cycle(4).unwrap();
        let pats = PatternSet::single(&c4);
        let g = free_bipartite(6, 6, &pats, usize::MAX, &mut rng(2));
        assert!(crate::pattern::contains(g.graph(), &c4).is_none());
        let h = free_graph(9, &pats, usize::MAX, &mut rng(2));
        assert!(crate::pattern::contains(&h, &c4).is_none());
    }
}
