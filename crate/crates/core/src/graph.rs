//! Simple undirected graphs over dense vertex indices, plus bipartite views.
//!
//! Adjacency is stored as one bitset row per vertex in a flat word buffer so
//! that neighbourhood intersections in the matching kernels are word-wise
//! ANDs.

use std::collections::VecDeque;
use std::fmt;

use crate::bitset::{count_and, iter_words, words_for, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        Ok(self.add_edge(u, v))
    }

    /// Inserts `uv`; returns false if it was already present.
    /// Panics on loops or out-of-range endpoints.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        let had = self.has_edge(u, v);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        !had
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.has_edge(u, v);
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
        had
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_words(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v))
    }

    /// Number of neighbours of `v` inside `set`.
    #[inline]
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        count_and(self.row(v), set.words())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Vertices of positive degree.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        for v in 0..self.n {
            if self.degree(v) > 0 {
                s.insert(v);
            }
        }
        s
    }

    /// Subgraph induced by `vs`, re-indexed in the order given. The returned
    /// vector maps new indices back to the original labels.
    pub fn induced(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut g = Graph::new(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, vs.to_vec())
    }

    /// Same vertex space, keeping only edges with both endpoints in `keep`.
    pub fn restrict(&self, keep: &VertexSet) -> Graph {
        let mut g = self.clone();
        for v in 0..self.n {
            if keep.contains(v) {
                g.adj[v * self.words..(v + 1) * self.words]
                    .iter_mut()
                    .zip(keep.words())
                    .for_each(|(a, b)| *a &= *b);
            } else {
                g.adj[v * self.words..(v + 1) * self.words].fill(0);
            }
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Same graph on a larger vertex space (new vertices isolated).
    pub fn extend_to(&self, n: usize) -> Graph {
        assert!(n >= self.n);
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut q = VecDeque::new();
        dist[root] = Some(0);
        q.push_back(root);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Two-colouring by BFS from the lowest-index vertex of each component,
    /// that vertex going to part A. `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut q = VecDeque::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            q.push_back(s);
            while let Some(u) = q.pop_front() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            q.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        let mut a = VertexSet::new(self.n);
        let mut b = VertexSet::new(self.n);
        for (v, s) in side.iter().enumerate() {
            if s == &Some(false) {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        Some((a, b))
    }

    /// N(S): intersection of the open neighbourhoods of the vertices of `s`.
    pub fn common_neighborhood(&self, s: &[usize]) -> Result<VertexSet> {
        let (&first, rest) = s.split_first().ok_or(Error::EmptySet)?;
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut out = self.neighbor_set(first);
        for &v in rest {
            out.intersect_words(self.row(v));
        }
        Ok(out)
    }

    /// Plain edge-list text: "n m" header then one "u v" line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::EdgeList("missing header".into()))?;
        let nums = parse_pair(header)?;
        let (n, m) = nums;
        let mut g = Graph::new(n);
        let mut count = 0;
        for line in lines {
            let (u, v) = parse_pair(line)?;
            g.try_add_edge(u, v)?;
            count += 1;
        }
        if count != m {
            return Err(Error::EdgeList(format!(
                "header announces {m} edges, found {count}"
            )));
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::EdgeList(format!("bad integer {t:?}")))
    });
    let a = it
        .next()
        .ok_or_else(|| Error::EdgeList(format!("short line {line:?}")))??;
    let b = it
        .next()
        .ok_or_else(|| Error::EdgeList(format!("short line {line:?}")))??;
    if it.next().is_some() {
        return Err(Error::EdgeList(format!("trailing tokens in {line:?}")));
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph together with a certified two-part colouring.
///
/// Parts keep the host's vertex indices. Vertices in neither part are not
/// vertices of the bipartite graph and must be isolated; this lets induced
/// pieces (neighbourhood graphs, peeled subgraphs) share the labels of the
/// graph they came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipGraph {
    graph: Graph,
    part_a: VertexSet,
    part_b: VertexSet,
}

impl BipGraph {
    pub fn new(graph: Graph, part_a: VertexSet, part_b: VertexSet) -> Result<Self> {
        let n = graph.order();
        if part_a.capacity() > n || part_b.capacity() > n {
            return Err(Error::NotBipartite("part outside vertex range".into()));
        }
        let part_a = resize(&part_a, n);
        let part_b = resize(&part_b, n);
        if !part_a.is_disjoint(&part_b) {
            return Err(Error::NotBipartite("parts overlap".into()));
        }
        for (u, v) in graph.edges() {
            let crosses = (part_a.contains(u) && part_b.contains(v))
                || (part_b.contains(u) && part_a.contains(v));
            if !crosses {
                return Err(Error::NotBipartite(format!("edge {u}-{v} does not cross")));
            }
        }
        Ok(BipGraph {
            graph,
            part_a,
            part_b,
        })
    }

    /// Uses the deterministic BFS colouring of the whole vertex space.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let (a, b) = graph
            .bipartition()
            .ok_or_else(|| Error::NotBipartite("graph has an odd cycle".into()))?;
        BipGraph::new(graph, a, b)
    }

    /// Complete bipartite shell: `m` A-vertices `0..m`, `n` B-vertices `m..m+n`.
    pub fn empty(m: usize, n: usize) -> Self {
        let g = Graph::new(m + n);
        let a = VertexSet::from_slice(m + n, &(0..m).collect::<Vec<_>>());
        let b = VertexSet::from_slice(m + n, &(m..m + n).collect::<Vec<_>>());
        BipGraph {
            graph: g,
            part_a: a,
            part_b: b,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn part_a(&self) -> &VertexSet {
        &self.part_a
    }

    pub fn part_b(&self) -> &VertexSet {
        &self.part_b
    }

    /// Number of vertices of the bipartite graph, |A| + |B|.
    pub fn vertex_count(&self) -> usize {
        self.part_a.len() + self.part_b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn vertices(&self) -> VertexSet {
        let mut s = self.part_a.clone();
        s.union_with(&self.part_b);
        s
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.part_a.contains(v)
    }

    /// Edges oriented as (A-vertex, B-vertex).
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.part_a.iter() {
            for b in self.graph.neighbors(a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Induced bipartite subgraph on `keep_a` ∪ `keep_b`, original labels kept.
    pub fn induced(&self, keep_a: &VertexSet, keep_b: &VertexSet) -> BipGraph {
        let mut a = self.part_a.clone();
        a.intersect_with(keep_a);
        let mut b = self.part_b.clone();
        b.intersect_with(keep_b);
        let mut keep = a.clone();
        keep.union_with(&b);
        BipGraph {
            graph: self.graph.restrict(&keep),
            part_a: a,
            part_b: b,
        }
    }

    /// Swaps the roles of the two parts.
    pub fn swapped(&self) -> BipGraph {
        BipGraph {
            graph: self.graph.clone(),
            part_a: self.part_b.clone(),
            part_b: self.part_a.clone(),
        }
    }

    pub(crate) fn from_parts_unchecked(graph: Graph, part_a: VertexSet, part_b: VertexSet) -> Self {
        debug_assert!(BipGraph::new(graph.clone(), part_a.clone(), part_b.clone()).is_ok());
        BipGraph {
            graph,
            part_a,
            part_b,
        }
    }
}

fn resize(s: &VertexSet, n: usize) -> VertexSet {
    if s.capacity() == n {
        s.clone()
    } else {
        VertexSet::from_slice(n, &s.to_vec())
    }
}

/// Convenience constructor used across the crate and tests.
pub fn make_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let g = make_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(make_graph(3, &[]).unwrap().edge_count(), 0);
        assert_eq!(make_graph(2, &[(0, 1), (0, 1)]).unwrap().edge_count(), 1);
        assert_eq!(
            make_graph(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(make_graph(2, &[(1, 1)]), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn bipartition_examples() {
        let (a, b) = c(4).bipartition().unwrap();
        assert_eq!(a.to_vec(), vec![0, 2]);
        assert_eq!(b.to_vec(), vec![1, 3]);
        assert!(c(5).bipartition().is_none());
        let (a, b) = Graph::new(3).bipartition().unwrap();
        assert_eq!(a.to_vec(), vec![0, 1, 2]);
        assert!(b.is_empty());
    }

    #[test]
    fn common_neighborhood_examples() {
        let g = c(4);
        assert_eq!(g.common_neighborhood(&[0, 2]).unwrap().to_vec(), vec![1, 3]);
        let path = make_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.common_neighborhood(&[0, 2]).unwrap().to_vec(), vec![1]);
        let mut k33 = Graph::new(6);
        for a in 0..3 {
            for b in 3..6 {
                k33.add_edge(a, b);
            }
        }
        assert_eq!(k33.common_neighborhood(&[0, 1]).unwrap().len(), 3);
        assert_eq!(g.common_neighborhood(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = c(5);
        let text = g.to_edge_list();
        assert!(text.starts_with("5 5\n"));
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
        assert!(Graph::from_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::from_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn bipgraph_rejects_noncrossing_edges() {
        let g = make_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let a = VertexSet::from_slice(3, &[0, 1]);
        let b = VertexSet::from_slice(3, &[2]);
        assert!(BipGraph::new(g.clone(), a, b).is_err());
        let bg = BipGraph::from_graph(g).unwrap();
        assert_eq!(bg.part_a().to_vec(), vec![0, 2]);
        assert_eq!(bg.oriented_edges(), vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = make_graph(6, &[(0, 1), (0, 2), (3, 4), (4, 5), (1, 5)]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
            assert!(!g.has_edge(u, u));
        }
    }
}
