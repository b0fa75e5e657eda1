//! Randomised incumbents: a random maximal 𝓗-free graph improved by
//! 1-out/k-in exchange moves. Deterministic for a given seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_patterns, family_key, Budget, Clock, ExtremalResult, Mode};
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::PatternSet;

fn try_add(g: &mut Graph, pats: &PatternSet, u: usize, v: usize) -> bool {
    if !g.add_edge(u, v) {
        return false;
    }
    if pats.occurs_through_edge(g, u, v) {
        g.remove_edge(u, v);
        return false;
    }
    true
}

/// Hill climbing over the given slots; returns the best graph and rounds run.
fn climb(order: usize, mut slots: Vec<(usize, usize)>, pats: &PatternSet, budget: &Budget) -> (Graph, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    slots.shuffle(&mut rng);
    let mut g = Graph::new(order);
    for &(u, v) in &slots {
        try_add(&mut g, pats, u, v);
    }
    let mut best = g.clone();
    let mut rounds = 0u64;
    for _ in 0..budget.lower_effort {
        let edges = g.edges();
        if edges.is_empty() || edges.len() == slots.len() {
            break;
        }
        rounds += 1;
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        g.remove_edge(a, b);
        slots.shuffle(&mut rng);
        let mut added = Vec::new();
        for &(u, v) in &slots {
            if (u, v) != (a, b) && (v, u) != (a, b) && !g.has_edge(u, v) && try_add(&mut g, pats, u, v) {
                added.push((u, v));
            }
        }
        if added.is_empty() {
            g.add_edge(a, b);
        } else if g.edge_count() > best.edge_count() {
            best = g.clone();
        }
    }
    (best, rounds)
}

fn finish(
    patterns: &[Graph],
    orders: Vec<usize>,
    best: Graph,
    rounds: u64,
    budget: &Budget,
    clock: &Clock,
) -> Result<ExtremalResult> {
    Ok(ExtremalResult {
        pattern_g6: family_key(patterns)?,
        orders,
        value: best.edge_count(),
        mode: Mode::Lower,
        witness_g6: graph6::encode(&best),
        seed: budget.seed,
        nodes: rounds,
        prunes: 0,
        millis: clock.millis(),
    })
}

/// Lower bound for ex(n, 𝓗).
pub fn ex_lower(n: usize, patterns: &[Graph], budget: &Budget) -> Result<ExtremalResult> {
    check_patterns(patterns)?;
    let clock = Clock::new(budget);
    let pats = PatternSet::new(patterns);
    let slots: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let (best, rounds) = climb(n, slots, &pats, budget);
    finish(patterns, vec![n], best, rounds, budget, &clock)
}

/// Lower bound for z(m, n, 𝓗); parts are 0..m and m..m+n.
pub fn z_lower(m: usize, n: usize, patterns: &[Graph], budget: &Budget) -> Result<ExtremalResult> {
    check_patterns(patterns)?;
    let clock = Clock::new(budget);
    let pats = PatternSet::new(patterns);
    let slots: Vec<_> = (0..m).flat_map(|u| (0..n).map(move |j| (u, m + j))).collect();
    let (best, rounds) = climb(m + n, slots, &pats, budget);
    finish(patterns, vec![m, n], best, rounds, budget, &clock)
}
