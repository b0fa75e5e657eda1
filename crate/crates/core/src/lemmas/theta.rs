use serde::Serialize;

use super::VerifierReport;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::families::theta;
use crate::graph::{BipGraph, Graph};
use crate::graph6;
use crate::pattern::contains;

/// Largest |A|·|B| for [`treelayer_exhaustive`].
pub const TREELAYER_CELL_CAP: usize = 20;

/// A rooted tree T of height t, a vertex set B outside T and a bipartite
/// graph G between the level A (depth t in T) and B, all on one vertex space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLayer {
    union: Graph,
    tree_vertices: VertexSet,
    root: usize,
    height: usize,
    a: VertexSet,
    b: VertexSet,
    cross: Vec<(usize, usize)>,
}

impl TreeLayer {
    /// T is `tree` on 0..|T|; B is |T|..|T|+b_count; every cross edge joins
    /// a depth-t vertex of T to a vertex of B.
    pub fn new(tree: &Graph, root: usize, b_count: usize, cross: &[(usize, usize)]) -> Result<Self> {
        let nt = tree.order();
        if nt == 0 || tree.edge_count() + 1 != nt || !tree.is_connected() {
            return Err(Error::NotRootedTree("T is not a tree".into()));
        }
        if root >= nt {
            return Err(Error::VertexOutOfRange { vertex: root, n: nt });
        }
        let n = nt + b_count;
        let depth: Vec<usize> = tree.bfs_distances(root).into_iter().map(|d| d.unwrap()).collect();
        let height = depth.iter().copied().max().unwrap_or(0);
        let a = VertexSet::from_slice(n, &(0..nt).filter(|&v| depth[v] == height).collect::<Vec<_>>());
        let b = VertexSet::from_slice(n, &(nt..n).collect::<Vec<_>>());
        Self::assemble(tree.extend_to(n), VertexSet::from_slice(n, &(0..nt).collect::<Vec<_>>()), root, height, a, b, cross)
    }

    /// The layer used in the level-growth argument: T is the BFS tree of `g`
    /// from `root` to depth t (parent = lowest-index neighbour one level up),
    /// A = L_t, B = L_{t+1}, G = all edges of `g` between them.
    pub fn from_bfs(g: &Graph, root: usize, t: usize) -> Result<Self> {
        let n = g.order();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let dist = g.bfs_distances(root);
        let at = |d: usize| -> Vec<usize> { (0..n).filter(|&v| dist[v] == Some(d)).collect() };
        let mut tree = Graph::new(n);
        let mut tv = VertexSet::new(n);
        tv.insert(root);
        for d in 1..=t {
            for v in at(d) {
                let parent = g.neighbors(v).find(|&u| dist[u] == Some(d - 1)).unwrap();
                tree.add_edge(parent, v);
                tv.insert(v);
            }
        }
        let height = (0..n).filter_map(|v| dist[v]).filter(|&d| d <= t).max().unwrap_or(0);
        let a = VertexSet::from_slice(n, &at(height));
        let b = VertexSet::from_slice(n, &at(height + 1));
        let cross: Vec<(usize, usize)> =
            g.edges().into_iter().filter(|&(u, v)| (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u))).collect();
        Self::assemble(tree, tv, root, height, a, b, &cross)
    }

    fn assemble(
        mut union: Graph,
        tree_vertices: VertexSet,
        root: usize,
        height: usize,
        a: VertexSet,
        b: VertexSet,
        cross: &[(usize, usize)],
    ) -> Result<Self> {
        let mut kept = Vec::new();
        for &(u, v) in cross {
            let (u, v) = if a.contains(u) { (u, v) } else { (v, u) };
            if !a.contains(u) || !b.contains(v) {
                return Err(Error::InvalidParameter(format!("edge {u}-{v} does not join level A to B")));
            }
            if union.add_edge(u, v) {
                kept.push((u, v));
            }
        }
        kept.sort_unstable();
        Ok(TreeLayer {
            union,
            tree_vertices,
            root,
            height,
            a,
            b,
            cross: kept,
        })
    }

    /// T ∪ G.
    pub fn union(&self) -> &Graph {
        &self.union
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn level(&self) -> &VertexSet {
        &self.a
    }

    pub fn extra(&self) -> &VertexSet {
        &self.b
    }

    pub fn tree_vertices(&self) -> &VertexSet {
        &self.tree_vertices
    }

    /// Edges of G, oriented (A, B).
    pub fn cross_edges(&self) -> &[(usize, usize)] {
        &self.cross
    }
}

/// If T ∪ G is θ_{k,p}-free then e(G) ≤ 2ktp^t(|A|+|B|), for k, p ≥ 2 and
/// 1 ≤ t ≤ k−1.
pub fn verify_treelayer(layer: &TreeLayer, k: usize, p: usize) -> Result<VerifierReport> {
    let t = layer.height;
    let mut rep = VerifierReport::new("treelayer");
    rep.precondition_met = k >= 2 && p >= 2 && t >= 1 && t < k;
    let size = layer.a.len() + layer.b.len();
    let rhs = (|| {
        (2 * k * t)
            .checked_mul(p.checked_pow(t as u32)?)?
            .checked_mul(size)
    })()
    .ok_or(Error::Overflow("tree-layer bound"))?;
    rep.lhs = layer.cross.len() as f64;
    rep.rhs = rhs as f64;
    rep.detail("t", t);
    rep.detail("a", layer.a.len());
    rep.detail("b", layer.b.len());
    if !rep.precondition_met {
        return Ok(rep);
    }
    rep.hypothesis_met = contains(&layer.union, theta(k, p)?.graph()).is_none();
    if rep.hypothesis_met {
        let holds = layer.cross.len() <= rhs;
        rep.holds = Some(holds);
        if !holds {
            rep.counterexample = Some(vec![graph6::encode(&layer.union)]);
        }
    }
    Ok(rep)
}

/// Outcome of scanning every G between A and B for a fixed tree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustiveSummary {
    pub graphs: u64,
    pub hypothesis_met: u64,
    /// Largest e(G) among θ-free unions, with the bound it is compared to.
    pub max_free_edges: usize,
    pub bound: usize,
    /// graph6 of each union T ∪ G violating the bound.
    pub counterexamples: Vec<String>,
}

/// Runs [`verify_treelayer`] on all 2^{|A||B|} graphs G.
pub fn treelayer_exhaustive(tree: &Graph, root: usize, b_count: usize, k: usize, p: usize) -> Result<ExhaustiveSummary> {
    let base = TreeLayer::new(tree, root, b_count, &[])?;
    let cells: Vec<(usize, usize)> =
        base.a.iter().flat_map(|u| base.b.iter().map(move |v| (u, v))).collect();
    if cells.len() > TREELAYER_CELL_CAP {
        return Err(Error::SizeCap {
            what: "exhaustive tree-layer scan",
            n: cells.len(),
            cap: TREELAYER_CELL_CAP,
        });
    }
    let mut out = ExhaustiveSummary {
        graphs: 0,
        hypothesis_met: 0,
        max_free_edges: 0,
        bound: 0,
        counterexamples: Vec::new(),
    };
    for mask in 0u32..(1u32 << cells.len()) {
        let chosen: Vec<(usize, usize)> =
            cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect();
        let layer = TreeLayer::new(tree, root, b_count, &chosen)?;
        let rep = verify_treelayer(&layer, k, p)?;
        out.graphs += 1;
        out.bound = rep.rhs as usize;
        if rep.hypothesis_met {
            out.hypothesis_met += 1;
            out.max_free_edges = out.max_free_edges.max(chosen.len());
        }
        if rep.holds == Some(false) {
            out.counterexamples.push(graph6::encode(&layer.union));
        }
    }
    Ok(out)
}

/// One BFS level i ≥ 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub size: usize,
    /// |L_i| / |L_{i−1}|.
    pub ratio: f64,
    pub d: f64,
    /// Every vertex of L_0..L_{i−1} meets its degree floor d_A/4 or d_B/4.
    pub floors_met: bool,
    /// Floors met, i ≤ k and d_A, d_B ≥ 16k²p^k.
    pub flagged: bool,
    /// |L_i|/|L_{i−1}| ≥ d_i/(16kip^i); evaluated on flagged levels of
    /// θ_{k,p}-free graphs only.
    pub growth_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BfsLayerReport {
    pub root: usize,
    pub k: usize,
    pub p: usize,
    /// |L_0|, |L_1|, … up to L_k or the last nonempty level.
    pub layers: Vec<usize>,
    pub d_a: f64,
    pub d_b: f64,
    pub theta_free: bool,
    pub levels: Vec<LevelRow>,
}

impl BfsLayerReport {
    pub fn is_consistent(&self) -> bool {
        self.levels.iter().all(|l| l.growth_holds != Some(false))
    }
}

/// Level sizes from `root` with the growth-ratio diagnostics. d_i is the
/// average degree e/|X| of the part X holding L_{i−1}: d_A for odd i and
/// d_B for even i when the root lies in A.
pub fn bfs_layer_report(g: &BipGraph, root: usize, k: usize, p: usize) -> Result<BfsLayerReport> {
    if !g.vertices().contains(root) {
        return Err(Error::InvalidParameter(format!("root {root} is not a vertex of the graph")));
    }
    if k < 2 || p < 2 {
        return Err(Error::InvalidParameter("need k >= 2 and p >= 2".into()));
    }
    let h = g.graph();
    let e = g.edge_count();
    let (na, nb) = (g.part_a().len(), g.part_b().len());
    let dist = h.bfs_distances(root);
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for d in 0..=k {
        let l: Vec<usize> = g.vertices().iter().filter(|&v| dist[v] == Some(d)).collect();
        if l.is_empty() {
            break;
        }
        layers.push(l);
    }
    let root_in_a = g.in_a(root);
    // size of the part whose average degree is d_i: L_{i−1} lies in A iff
    // (i−1 even) == root_in_a
    let part_size = |i: usize| if ((i - 1) % 2 == 0) == root_in_a { na } else { nb };
    let ratio_of = |x: usize, y: usize| if y == 0 { 0.0 } else { x as f64 / y as f64 };
    let c = (16 * k * k) as u128 * (p as u128).pow(k as u32);
    let dense = e > 0 && na > 0 && nb > 0 && e as u128 >= c * na as u128 && e as u128 >= c * nb as u128;
    let theta_free = contains(h, theta(k, p)?.graph()).is_none();
    let mut floors = true;
    let mut levels = Vec::new();
    for i in 1..layers.len() {
        let side = part_size(i);
        // deg ≥ d_i/4  ⇔  4·deg·|side| ≥ e
        floors &= layers[i - 1].iter().all(|&v| 4 * h.degree(v) * side >= e);
        let flagged = floors && dense && i <= k;
        let growth_holds = (flagged && theta_free).then(|| {
            let lhs = layers[i].len() as u128 * (16 * k * i) as u128 * (p as u128).pow(i as u32) * side as u128;
            lhs >= e as u128 * layers[i - 1].len() as u128
        });
        levels.push(LevelRow {
            level: i,
            size: layers[i].len(),
            ratio: ratio_of(layers[i].len(), layers[i - 1].len()),
            d: ratio_of(e, side),
            floors_met: floors,
            flagged,
            growth_holds,
        });
    }
    Ok(BfsLayerReport {
        root,
        k,
        p,
        layers: layers.iter().map(Vec::len).collect(),
        d_a: ratio_of(e, na),
        d_b: ratio_of(e, nb),
        theta_free,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, cycle, gen_cube, star};

    fn star3() -> Graph {
        star(3)
    }

    #[test]
    fn star_examples() {
        let m = TreeLayer::new(&star3(), 0, 3, &[(1, 4), (2, 5), (3, 6)]).unwrap();
        let r = verify_treelayer(&m, 3, 2).unwrap();
        assert!(r.precondition_met && r.hypothesis_met);
        assert_eq!((r.lhs, r.rhs), (3.0, 72.0));
        assert_eq!(r.holds, Some(true));
        let full: Vec<(usize, usize)> = (1..4).flat_map(|a| (4..7).map(move |b| (a, b))).collect();
        let k = TreeLayer::new(&star3(), 0, 3, &full).unwrap();
        let r = verify_treelayer(&k, 3, 2).unwrap();
        assert!(!r.hypothesis_met);
        assert_eq!(r.holds, None);
    }

    #[test]
    fn malformed_layers_rejected() {
        assert!(TreeLayer::new(&star3(), 0, 3, &[(0, 4)]).is_err());
        assert!(TreeLayer::new(&cycle(4).unwrap(), 0, 1, &[]).is_err());
    }

    #[test]
    fn exhaustive_star() {
        let s = treelayer_exhaustive(&star3(), 0, 3, 3, 2).unwrap();
        assert_eq!(s.graphs, 512);
        assert!(s.counterexamples.is_empty());
        assert!(s.hypothesis_met > 0 && s.hypothesis_met < 512);
    }

    #[test]
    fn bfs_layer_examples() {
        let q8 = gen_cube(2, 2).unwrap();
        for v in 0..8 {
            assert_eq!(bfs_layer_report(&q8, v, 3, 2).unwrap().layers, vec![1, 3, 3, 1]);
        }
        let c6 = BipGraph::from_graph(cycle(6).unwrap()).unwrap();
        assert_eq!(bfs_layer_report(&c6, 2, 3, 2).unwrap().layers, vec![1, 2, 2, 1]);
        let k33 = complete_bipartite(3, 3);
        let r = bfs_layer_report(&k33, 4, 3, 2).unwrap();
        assert_eq!(r.layers, vec![1, 3, 2]);
        assert!(!r.theta_free);
        assert!(r.levels.iter().all(|l| !l.flagged));
    }

    #[test]
    fn layer_from_bfs() {
        let q8 = gen_cube(2, 2).unwrap();
        let l = TreeLayer::from_bfs(q8.graph(), 0, 1).unwrap();
        assert_eq!((l.level().len(), l.extra().len(), l.cross_edges().len()), (3, 3, 6));
    }
}
