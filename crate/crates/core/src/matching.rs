//! Matchings in bipartite graphs, neighbourhood graphs N(M), correlation of
//! matching pairs, and H_{1,t} counting by central-edge scan.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::families::gen_cube;
use crate::graph::{BipGraph, Graph};

/// Vertex-disjoint crossing edges, stored as (A-vertex, B-vertex) in
/// increasing order of the A-vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates against `g`: every pair is an edge, crosses, and no vertex repeats.
    pub fn new(g: &BipGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = g.graph().order();
        let mut seen = VertexSet::new(n);
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if !g.graph().has_edge(u, v) {
                return Err(Error::NotMatching(format!("{u}-{v} is not an edge")));
            }
            if !seen.insert(u) || !seen.insert(v) {
                return Err(Error::NotMatching(format!("edge {u}-{v} shares a vertex")));
            }
            edges.push(if g.in_a(u) { (u, v) } else { (v, u) });
        }
        edges.sort_unstable();
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub(crate) fn from_oriented(mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// A_M.
    pub fn a_side(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.0).collect()
    }

    /// B_M.
    pub fn b_side(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.1).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Number of t-edge matchings.
pub fn count_matchings(g: &BipGraph, t: usize) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidParameter("matching size must be at least 1".into()));
    }
    let e = g.edge_count() as u64;
    if t == 1 {
        return Ok(e);
    }
    if t == 2 {
        // pairs of edges minus pairs sharing a vertex
        let shared: u64 = g.vertices().iter().map(|v| binom2(g.graph().degree(v) as u64)).sum();
        return Ok(binom2(e) - shared);
    }
    let a: Vec<usize> = g.part_a().iter().filter(|&v| g.graph().degree(v) > 0).collect();
    let b: Vec<usize> = g.part_b().iter().filter(|&v| g.graph().degree(v) > 0).collect();
    if t > a.len() || t > b.len() {
        return Ok(0);
    }
    if b.len() > 64 {
        let mut count = 0u64;
        let mut overflow = false;
        for_each_matching(g, t, &mut |_| match count.checked_add(1) {
            Some(c) => {
                count = c;
                true
            }
            None => {
                overflow = true;
                false
            }
        });
        return if overflow { Err(Error::Overflow("matching count")) } else { Ok(count) };
    }
    let mut bpos = vec![usize::MAX; g.graph().order()];
    for (i, &v) in b.iter().enumerate() {
        bpos[v] = i;
    }
    let rows: Vec<u64> = a
        .iter()
        .map(|&u| g.graph().neighbors(u).fold(0u64, |m, v| m | 1 << bpos[v]))
        .collect();
    let mut memo = HashMap::new();
    matchings_from(&rows, 0, t, 0, &mut memo)
}

/// Matchings of size `need` using A-rows `i..` and avoiding the B-columns in `used`.
fn matchings_from(
    rows: &[u64],
    i: usize,
    need: usize,
    used: u64,
    memo: &mut HashMap<(usize, u64), u64>,
) -> Result<u64> {
    if need == 0 {
        return Ok(1);
    }
    if rows.len() - i < need {
        return Ok(0);
    }
    if let Some(&c) = memo.get(&(i, used)) {
        return Ok(c);
    }
    let mut total = matchings_from(rows, i + 1, need, used, memo)?;
    let mut free = rows[i] & !used;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free ^= bit;
        let sub = matchings_from(rows, i + 1, need - 1, used | bit, memo)?;
        total = total.checked_add(sub).ok_or(Error::Overflow("matching count"))?;
    }
    memo.insert((i, used), total);
    Ok(total)
}

/// Visits every t-matching (A-vertices in increasing order); stop by
/// returning false.
pub fn for_each_matching(g: &BipGraph, t: usize, visit: &mut dyn FnMut(&Matching) -> bool) {
    let a: Vec<usize> = g.part_a().iter().filter(|&v| g.graph().degree(v) > 0).collect();
    let mut used = VertexSet::new(g.graph().order());
    let mut cur = Matching::empty();
    fn rec(
        g: &Graph,
        a: &[usize],
        i: usize,
        t: usize,
        used: &mut VertexSet,
        cur: &mut Matching,
        visit: &mut dyn FnMut(&Matching) -> bool,
    ) -> bool {
        if cur.len() == t {
            return visit(cur);
        }
        if a.len() - i < t - cur.len() {
            return true;
        }
        let u = a[i];
        for v in g.neighbors(u) {
            if used.contains(v) {
                continue;
            }
            used.insert(v);
            cur.edges.push((u, v));
            let go = rec(g, a, i + 1, t, used, cur, visit);
            cur.edges.pop();
            used.remove(v);
            if !go {
                return false;
            }
        }
        rec(g, a, i + 1, t, used, cur, visit)
    }
    if t == 0 {
        visit(&cur);
        return;
    }
    rec(g.graph(), &a, 0, t, &mut used, &mut cur, visit);
}

/// All t-matchings, in enumeration order.
pub fn matchings(g: &BipGraph, t: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching(g, t, &mut |m| {
        out.push(m.clone());
        true
    });
    out
}

fn check_matching(g: &BipGraph, m: &Matching) -> Result<()> {
    let n = g.graph().order();
    let mut seen = VertexSet::new(n);
    for &(a, b) in m.edges() {
        if a >= n || b >= n {
            return Err(Error::VertexOutOfRange { vertex: a.max(b), n });
        }
        if !g.in_a(a) || !g.part_b().contains(b) || !g.graph().has_edge(a, b) {
            return Err(Error::NotMatching(format!("{a}-{b} is not an A-B edge")));
        }
        if !seen.insert(a) || !seen.insert(b) {
            return Err(Error::NotMatching(format!("edge {a}-{b} shares a vertex")));
        }
    }
    Ok(())
}

/// The pair of parts of N(M): (N(B_M) \ V(M)) ∩ A and (N(A_M) \ V(M)) ∩ B.
/// N(∅) is the whole part.
fn neighbourhood_parts(g: &BipGraph, m: &Matching) -> (VertexSet, VertexSet) {
    let mut pa = g.part_a().clone();
    let mut pb = g.part_b().clone();
    for &(a, b) in m.edges() {
        pa.intersect_words(g.graph().row(b));
        pb.intersect_words(g.graph().row(a));
    }
    for v in m.vertices() {
        pa.remove(v);
        pb.remove(v);
    }
    (pa, pb)
}

/// N(M): the bipartite graph induced by N(B_M) \ V(M) and N(A_M) \ V(M).
pub fn neighborhood_graph(g: &BipGraph, m: &Matching) -> Result<BipGraph> {
    check_matching(g, m)?;
    let (pa, pb) = neighbourhood_parts(g, m);
    Ok(g.induced(&pa, &pb))
}

/// M ∼ L: every edge of L lies in N(M).
pub fn related(g: &BipGraph, m: &Matching, l: &Matching) -> bool {
    let (pa, pb) = neighbourhood_parts(g, m);
    l.edges().iter().all(|&(a, b)| pa.contains(a) && pb.contains(b))
}

/// (M, L) is t-correlated: M ∼ L and some v ∈ V(M) has at least `t`
/// neighbours among the vertices of N(L).
pub fn is_t_correlated(g: &BipGraph, m: &Matching, l: &Matching, t: usize) -> bool {
    if !related(g, m, l) {
        return false;
    }
    let (mut pa, pb) = neighbourhood_parts(g, l);
    pa.union_with(&pb);
    if pa.is_empty() {
        return false;
    }
    m.vertices().into_iter().any(|v| g.graph().degree_into(v, &pa) >= t)
}

/// Σ over edges ab of the t-matchings of N({ab}), before dividing by the
/// per-copy multiplicity.
fn central_edge_scan(g: &BipGraph, t: usize) -> Result<u64> {
    let mut total = 0u64;
    for (a, b) in g.oriented_edges() {
        let m = Matching::from_oriented(vec![(a, b)]);
        let c = if t == 1 {
            let (pa, pb) = neighbourhood_parts(g, &m);
            pa.iter().map(|u| g.graph().degree_into(u, &pb) as u64).sum()
        } else {
            let (pa, pb) = neighbourhood_parts(g, &m);
            count_matchings(&g.induced(&pa, &pb), t)?
        };
        total = total.checked_add(c).ok_or(Error::Overflow("H_{1,t} count"))?;
    }
    Ok(total)
}

/// Number of subgraphs isomorphic to H_{1,t}. Every (central edge,
/// t-matching of its neighbourhood graph) pair spans a copy, and each copy
/// arises the same number of times as H_{1,t} arises in itself.
pub fn count_h1t(g: &BipGraph, t: usize) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let per_copy = central_edge_scan(&gen_cube(1, t)?, t)?;
    Ok(central_edge_scan(g, t)? / per_copy)
}

/// Central-edge scan multiplicity of H_{1,t} in itself.
pub fn h1t_multiplicity(t: usize) -> Result<u64> {
    central_edge_scan(&gen_cube(1, t)?, t)
}
