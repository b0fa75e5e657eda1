use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::density::Rational;
use crate::error::{Error, Result};
use crate::graph::{BipGraph, Graph};
use crate::graph6;

use super::VerifierReport;

/// A spanning cut keeping at least half the edges. Starts from the BFS
/// parity colouring, then moves the lowest-index vertex with fewer than
/// half of its edges crossing until none is left.
pub fn bipartite_half(g: &Graph) -> BipGraph {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if side[v].is_none() {
                    side[v] = Some(!side[u].unwrap());
                    queue.push_back(v);
                }
            }
        }
    }
    let mut side: Vec<bool> = side.into_iter().map(|s| s.unwrap()).collect();
    let cross = |side: &[bool], v: usize| g.neighbors(v).filter(|&u| side[u] != side[v]).count();
    while let Some(v) = (0..n).find(|&v| 2 * cross(&side, v) < g.degree(v)) {
        side[v] = !side[v];
    }
    let mut h = Graph::new(n);
    for (u, v) in g.edges() {
        if side[u] != side[v] {
            h.add_edge(u, v);
        }
    }
    let a: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
    let b: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    BipGraph::from_parts_unchecked(h, VertexSet::from_slice(n, &a), VertexSet::from_slice(n, &b))
}

/// Subgraph with minimum degree at least d/2, d the average degree of `g`:
/// the lowest-index vertex below the threshold is deleted until none is.
/// Returns the induced graph and, for each of its vertices, the index in `g`.
pub fn min_degree_subgraph(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let n = g.order();
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::InvalidParameter("graph has no edges".into()));
    }
    // deg < d/2 = e/n  ⇔  deg·n < e
    let mut alive = VertexSet::full(n);
    let mut deg = g.degrees();
    while let Some(v) = alive.iter().find(|&v| deg[v] * n < e) {
        alive.remove(v);
        for u in g.neighbors(v) {
            if alive.contains(u) {
                deg[u] -= 1;
            }
        }
    }
    if alive.is_empty() {
        return Err(Error::Internal("peeling removed every vertex".into()));
    }
    Ok(g.induced(&alive.to_vec()))
}

/// Deletes the lowest-index A-vertex of degree below d_A/4 or B-vertex of
/// degree below d_B/4 (d_A = e/|A|, d_B = e/|B| of the input) until none is
/// left. At least half of the edges survive.
pub fn bipartite_degree_prune(g: &BipGraph) -> Result<BipGraph> {
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::InvalidParameter("graph has no edges".into()));
    }
    let (na, nb) = (g.part_a().len(), g.part_b().len());
    let mut a = g.part_a().clone();
    let mut b = g.part_b().clone();
    let mut deg = g.graph().degrees();
    // deg < e/(4|A|)  ⇔  4·deg·|A| < e
    let low = |v: usize, in_a: bool, deg: &[usize]| 4 * deg[v] * if in_a { na } else { nb } < e;
    loop {
        let next = g
            .vertices()
            .iter()
            .find(|&v| (a.contains(v) && low(v, true, &deg)) || (b.contains(v) && low(v, false, &deg)));
        let Some(v) = next else { break };
        a.remove(v);
        b.remove(v);
        for u in g.graph().neighbors(v) {
            if a.contains(u) || b.contains(u) {
                deg[u] -= 1;
            }
        }
    }
    let out = g.induced(&a, &b);
    if 2 * out.edge_count() < e {
        return Err(Error::Internal(format!(
            "pruning kept {} of {e} edges",
            out.edge_count()
        )));
    }
    Ok(out)
}

/// Result of [`almost_regular_extract`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostRegular {
    #[serde(skip)]
    pub graph: Graph,
    /// Index in the input graph of each vertex of `graph`.
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    /// Lower end of the degree band that produced the subgraph; 0 for the
    /// single-edge fallback.
    pub band_low: usize,
}

impl AlmostRegular {
    /// Size of the guarantee e > (2/5)·m^{1+α} for the extracted subgraph,
    /// returned as (e, (2/5)·m^{1+α}).
    pub fn guarantee(&self, alpha: f64) -> (f64, f64) {
        let m = self.vertices.len() as f64;
        (self.edges as f64, 0.4 * m.powf(1.0 + alpha))
    }
}

/// A λ-almost-regular subgraph (Δ ≤ λδ). For each band [b, λb], with b
/// ranging over the observed degrees and the powers of two, the vertices
/// whose degree lies in the band are peeled to minimum degree b; the
/// candidate with most edges wins, and a single edge is always a candidate.
pub fn almost_regular_extract(g: &Graph, lambda: Rational) -> Result<AlmostRegular> {
    if lambda < Rational::from_integer(1) {
        return Err(Error::InvalidParameter("lambda must be at least 1".into()));
    }
    let n = g.order();
    let degs = g.degrees();
    let max = g.max_degree();
    if g.edge_count() == 0 {
        return Ok(AlmostRegular {
            graph: g.clone(),
            vertices: (0..n).collect(),
            edges: 0,
            max_degree: 0,
            min_degree: 0,
            band_low: 0,
        });
    }
    let (num, den) = (*lambda.numer() as u128, *lambda.denom() as u128);
    let mut lows: BTreeSet<usize> = degs.iter().copied().filter(|&d| d > 0).collect();
    let mut p = 1;
    while p <= max {
        lows.insert(p);
        p *= 2;
    }
    let mut best: Option<AlmostRegular> = None;
    for &b in &lows {
        let mut alive = VertexSet::new(n);
        for v in 0..n {
            // b ≤ deg ≤ λb
            if degs[v] >= b && degs[v] as u128 * den <= num * b as u128 {
                alive.insert(v);
            }
        }
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree_into(v, &alive)).collect();
        while let Some(v) = alive.iter().find(|&v| deg[v] < b) {
            alive.remove(v);
            for u in g.neighbors(v) {
                if alive.contains(u) {
                    deg[u] -= 1;
                }
            }
        }
        if alive.is_empty() {
            continue;
        }
        let (h, map) = g.induced(&alive.to_vec());
        if best.as_ref().is_none_or(|c| h.edge_count() > c.edges) {
            best = Some(AlmostRegular {
                edges: h.edge_count(),
                max_degree: h.max_degree(),
                min_degree: h.min_degree(),
                graph: h,
                vertices: map,
                band_low: b,
            });
        }
    }
    let out = match best {
        Some(c) => c,
        None => {
            let (u, v) = g.edges()[0];
            let (h, map) = g.induced(&[u, v]);
            AlmostRegular {
                edges: 1,
                max_degree: 1,
                min_degree: 1,
                graph: h,
                vertices: map,
                band_low: 0,
            }
        }
    };
    if out.max_degree as u128 * den > num * out.min_degree as u128 {
        return Err(Error::Internal("extracted subgraph is not almost-regular".into()));
    }
    Ok(out)
}

/// Checks the postcondition of one constructive lemma on `g` and reports
/// it in verifier form (lhs and rhs are the two sides of the guarantee).
/// `lemma` is one of maxcut, mindeg, bipprune, almostreg; `lambda` is used by
/// almostreg only.
pub fn construct_report(lemma: &str, g: &Graph, lambda: Rational) -> Result<VerifierReport> {
    let mut rep = VerifierReport::new(lemma);
    rep.detail("input_edges", g.edge_count());
    rep.precondition_met = g.edge_count() > 0 || lemma == "maxcut";
    rep.hypothesis_met = true;
    if !["maxcut", "mindeg", "bipprune", "almostreg"].contains(&lemma) {
        return Err(Error::InvalidParameter(format!("unknown constructive lemma {lemma}")));
    }
    // pruning also needs a bipartite input; unmet preconditions are reported, not raised
    if lemma == "bipprune" && g.bipartition().is_none() {
        rep.precondition_met = false;
    }
    if !rep.precondition_met {
        return Ok(rep);
    }
    let holds = match lemma {
        // 2·e(H) ≥ e(G)
        "maxcut" => {
            let h = bipartite_half(g);
            rep.lhs = (2 * h.edge_count()) as f64;
            rep.rhs = g.edge_count() as f64;
            rep.detail("output", graph6::encode(h.graph()));
            2 * h.edge_count() >= g.edge_count()
        }
        // δ(H)·n ≥ e(G), i.e. δ ≥ d/2
        "mindeg" => {
            let (h, map) = min_degree_subgraph(g)?;
            rep.lhs = (h.min_degree() * g.order()) as f64;
            rep.rhs = g.edge_count() as f64;
            rep.detail("vertices", map);
            rep.detail("output", graph6::encode(&h));
            h.min_degree() * g.order() >= g.edge_count()
        }
        // 2·e(H) ≥ e(G), plus both degree floors
        "bipprune" => {
            let bg = BipGraph::from_graph(g.clone())?;
            let h = bipartite_degree_prune(&bg)?;
            let e = bg.edge_count();
            let (na, nb) = (bg.part_a().len(), bg.part_b().len());
            let floors = h.vertices().iter().all(|v| {
                let side = if bg.in_a(v) { na } else { nb };
                4 * h.graph().degree(v) * side >= e
            });
            rep.lhs = (2 * h.edge_count()) as f64;
            rep.rhs = e as f64;
            rep.detail("floors", floors);
            rep.detail("output", graph6::encode(h.graph()));
            floors && 2 * h.edge_count() >= e
        }
        // Δ·den ≤ num·δ, i.e. Δ ≤ λδ
        "almostreg" => {
            let r = almost_regular_extract(g, lambda)?;
            let (num, den) = (*lambda.numer() as f64, *lambda.denom() as f64);
            rep.lhs = r.max_degree as f64 * den;
            rep.rhs = r.min_degree as f64 * num;
            rep.detail("lambda", crate::density::format_ratio(&lambda));
            rep.detail("edges", r.edges);
            rep.detail("vertices", r.vertices.clone());
            rep.detail("band_low", r.band_low);
            (r.max_degree as i128) * (*lambda.denom() as i128) <= (*lambda.numer() as i128) * r.min_degree as i128
        }
        other => return Err(Error::InvalidParameter(format!("unknown constructive lemma {other}"))),
    };
    rep.holds = Some(holds);
    if !holds {
        rep.counterexample = Some(vec![graph6::encode(g)]);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle};

    #[test]
    fn cut_examples() {
        let c6 = cycle(6).unwrap();
        let h = bipartite_half(&c6);
        assert_eq!(h.graph(), &c6);
        assert_eq!(bipartite_half(&complete(3)).edge_count(), 2);
        assert_eq!(bipartite_half(&complete(4)).edge_count(), 4);
    }

    #[test]
    fn peeling_examples() {
        let mut g = complete(4).extend_to(5);
        g.add_edge(3, 4);
        let (h, map) = min_degree_subgraph(&g).unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(h, complete(4));
        let c = cycle(4).unwrap().extend_to(5);
        let (h, map) = min_degree_subgraph(&c).unwrap();
        assert_eq!((h, map), (cycle(4).unwrap(), vec![0, 1, 2, 3]));
        let c5 = cycle(5).unwrap();
        assert_eq!(min_degree_subgraph(&c5).unwrap().0, c5);
    }

    #[test]
    fn prune_examples() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!(bipartite_degree_prune(&k33).unwrap(), k33);
        // pendant B-vertex of degree 1 is above the B floor (10/4)/4
        let mut g = k33.graph().extend_to(7);
        g.add_edge(0, 6);
        let a = VertexSet::from_slice(7, &[0, 1, 2]);
        let b = VertexSet::from_slice(7, &[3, 4, 5, 6]);
        let bg = BipGraph::new(g, a, b).unwrap();
        assert_eq!(bipartite_degree_prune(&bg).unwrap(), bg);
        let e = complete_bipartite(1, 1);
        assert_eq!(bipartite_degree_prune(&e).unwrap(), e);
    }

    #[test]
    fn almost_regular_examples() {
        let one = Rational::from_integer(1);
        let two = Rational::from_integer(2);
        let c7 = cycle(7).unwrap();
        assert_eq!(almost_regular_extract(&c7, one).unwrap().graph, c7);
        let star = complete_bipartite(1, 9).into_graph();
        let r = almost_regular_extract(&star, two).unwrap();
        assert_eq!((r.edges, r.max_degree, r.min_degree), (1, 1, 1));
        assert!(almost_regular_extract(&star, Rational::new(1, 2)).is_err());
    }

    #[test]
    fn postcondition_reports() {
        let g = complete(5);
        for lemma in ["maxcut", "mindeg", "almostreg"] {
            let r = construct_report(lemma, &g, Rational::from_integer(2)).unwrap();
            assert_eq!(r.holds, Some(true), "{lemma}");
        }
        let k = complete_bipartite(2, 3).into_graph();
        assert_eq!(construct_report("bipprune", &k, Rational::from_integer(1)).unwrap().holds, Some(true));
        let odd = construct_report("bipprune", &g, Rational::from_integer(1)).unwrap();
        assert!(!odd.precondition_met && odd.holds.is_none());
        let empty = construct_report("mindeg", &Graph::new(4), Rational::from_integer(1)).unwrap();
        assert!(!empty.precondition_met && empty.holds.is_none());
        assert!(construct_report("nope", &g, Rational::from_integer(1)).is_err());
    }
}
