//! Subgraph containment and embedding enumeration (not necessarily induced).
//!
//! Pattern vertices are matched in a connected order of descending degree;
//! candidates for the next vertex are the common host neighbours of its
//! already-placed pattern neighbours, visited in ascending index. A candidate
//! is skipped when its degree is below the pattern degree or when it has
//! fewer free neighbours than the pattern vertex still needs.

use serde::Serialize;

use crate::bitset::{iter_words, words_for, VertexSet};
use crate::density::RootedTree;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest pattern order accepted by [`count_copies`].
pub const COUNT_PATTERN_CAP: usize = 10;

const AUTO_ENUM_CAP: u64 = 50_000;

/// Injective, edge-preserving map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.len() == pattern.order()
            && self.map.iter().all(|&h| h < host.order() && seen.insert(h))
            && pattern
                .edges()
                .iter()
                .all(|&(u, v)| host.has_edge(self.map[u], self.map[v]))
    }
}

#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    /// positions j < i whose pattern vertex is adjacent to order[i]
    back: Vec<Vec<usize>>,
    deg: Vec<usize>,
    /// neighbours of order[i] placed after position i
    later: Vec<usize>,
}

impl Plan {
    fn new(h: &Graph, prefix: &[usize]) -> Plan {
        let n = h.order();
        let degs = h.degrees();
        let mut placed = vec![false; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for &v in prefix {
            placed[v] = true;
            order.push(v);
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                    (linked, degs[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).map(|u| pos[u]).filter(|&j| j < i).collect())
            .collect();
        let later = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).filter(|&u| pos[u] > i).count())
            .collect();
        let deg = order.iter().map(|&v| degs[v]).collect();
        Plan {
            order,
            back,
            deg,
            later,
        }
    }
}

struct Run<'a> {
    host: &'a Graph,
    plan: &'a Plan,
    host_deg: Vec<usize>,
    used: Vec<u64>,
    images: Vec<usize>,
    scratch: Vec<Vec<u64>>,
}

impl<'a> Run<'a> {
    fn new(host: &'a Graph, plan: &'a Plan) -> Self {
        let words = words_for(host.order());
        Run {
            host,
            plan,
            host_deg: host.degrees(),
            used: vec![0; words],
            images: vec![usize::MAX; plan.order.len()],
            scratch: vec![vec![0; words]; plan.order.len()],
        }
    }

    #[inline]
    fn fits(&self, i: usize, c: usize) -> bool {
        if self.host_deg[c] < self.plan.deg[i] {
            return false;
        }
        let need = self.plan.later[i];
        if need == 0 {
            return true;
        }
        let row = self.host.row(c);
        let free: usize = row
            .iter()
            .zip(&self.used)
            .map(|(r, u)| (r & !u).count_ones() as usize)
            .sum();
        free >= need
    }

    fn place(&mut self, i: usize, c: usize) {
        self.images[i] = c;
        self.used[c / 64] |= 1 << (c % 64);
    }

    fn unplace(&mut self, i: usize, c: usize) {
        self.images[i] = usize::MAX;
        self.used[c / 64] &= !(1 << (c % 64));
    }

    /// Returns false if the visitor asked to stop.
    fn go(&mut self, i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if i == self.plan.order.len() {
            return visit(&self.images);
        }
        let mut cand = std::mem::take(&mut self.scratch[i]);
        if self.plan.back[i].is_empty() {
            let n = self.host.order();
            for (w, word) in cand.iter_mut().enumerate() {
                let lo = w * 64;
                *word = if lo + 64 <= n {
                    !0
                } else if lo < n {
                    (1u64 << (n - lo)) - 1
                } else {
                    0
                };
            }
        } else {
            cand.copy_from_slice(self.host.row(self.images[self.plan.back[i][0]]));
            for &j in &self.plan.back[i][1..] {
                let row = self.host.row(self.images[j]);
                for (a, b) in cand.iter_mut().zip(row) {
                    *a &= *b;
                }
            }
        }
        for (a, u) in cand.iter_mut().zip(&self.used) {
            *a &= !u;
        }
        let mut keep_going = true;
        for c in iter_words(&cand) {
            if !self.fits(i, c) {
                continue;
            }
            self.place(i, c);
            let ok = self.go(i + 1, visit);
            self.unplace(i, c);
            if !ok {
                keep_going = false;
                break;
            }
        }
        self.scratch[i] = cand;
        keep_going
    }

    /// Position-indexed images to a pattern-indexed map.
    fn to_map(&self, images: &[usize]) -> Vec<usize> {
        let mut map = vec![0; images.len()];
        for (i, &v) in self.plan.order.iter().enumerate() {
            map[v] = images[i];
        }
        map
    }
}

fn quick_reject(host: &Graph, h: &Graph) -> bool {
    h.order() > host.order() || h.edge_count() > host.edge_count() || h.max_degree() > host.max_degree()
}

/// A copy of `h` in `host`, if any.
pub fn contains(host: &Graph, h: &Graph) -> Option<Embedding> {
    if quick_reject(host, h) {
        return None;
    }
    // identity labelling first, so contains(G, G) returns the identity
    if h.edges().iter().all(|&(u, v)| host.has_edge(u, v)) {
        return Some(Embedding {
            map: (0..h.order()).collect(),
        });
    }
    let plan = Plan::new(h, &[]);
    let mut run = Run::new(host, &plan);
    let mut found = None;
    run.go(0, &mut |imgs| {
        found = Some(imgs.to_vec());
        false
    });
    found.map(|imgs| Embedding { map: run.to_map(&imgs) })
}

/// Visits every embedding of `h` into `host`; stop by returning false.
pub fn for_each_embedding(host: &Graph, h: &Graph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if h.order() > host.order() {
        return;
    }
    let plan = Plan::new(h, &[]);
    let mut run = Run::new(host, &plan);
    let order = plan.order.clone();
    let mut map = vec![0; order.len()];
    run.go(0, &mut |imgs| {
        for (i, &v) in order.iter().enumerate() {
            map[v] = imgs[i];
        }
        visit(&map)
    });
}

/// Number of labelled embeddings, stopping early at `limit`.
pub fn count_embeddings_limited(host: &Graph, h: &Graph, limit: u64) -> u64 {
    let mut count = 0u64;
    for_each_embedding(host, h, &mut |_| {
        count += 1;
        count < limit
    });
    count
}

/// Labelled embeddings of `h` into `host`.
pub fn count_embeddings(host: &Graph, h: &Graph) -> Result<u64> {
    let mut count = 0u64;
    let mut overflow = false;
    for_each_embedding(host, h, &mut |_| match count.checked_add(1) {
        Some(c) => {
            count = c;
            true
        }
        None => {
            overflow = true;
            false
        }
    });
    if overflow {
        Err(Error::Overflow("embedding count"))
    } else {
        Ok(count)
    }
}

/// Embeddings of `h` into `host` with the pattern→host pairs in `fixed`
/// prescribed, counted up to `limit`.
pub fn count_embeddings_fixing(host: &Graph, h: &Graph, fixed: &[(usize, usize)], limit: u64) -> u64 {
    if h.order() > host.order() {
        return 0;
    }
    for &(a, x) in fixed {
        if host.degree(x) < h.degree(a) {
            return 0;
        }
        for &(b, y) in fixed {
            if (a == b) != (x == y) || (h.has_edge(a, b) && !host.has_edge(x, y)) {
                return 0;
            }
        }
    }
    let prefix: Vec<usize> = fixed.iter().map(|&(a, _)| a).collect();
    let plan = Plan::new(h, &prefix);
    let mut run = Run::new(host, &plan);
    for (i, &(_, x)) in fixed.iter().enumerate() {
        run.place(i, x);
    }
    let mut count = 0u64;
    run.go(fixed.len(), &mut |_| {
        count += 1;
        count < limit
    });
    count
}

/// |Aut(h)|, by enumerating edge-preserving bijections h → h.
pub fn automorphism_count(h: &Graph) -> Result<u64> {
    count_embeddings(h, h)
}

/// Number of subgraphs of `host` isomorphic to `h`: labelled embeddings
/// divided by |Aut(h)|.
pub fn count_copies(host: &Graph, h: &Graph) -> Result<u64> {
    if h.order() > COUNT_PATTERN_CAP {
        return Err(Error::SizeCap {
            what: "copy counting pattern",
            n: h.order(),
            cap: COUNT_PATTERN_CAP,
        });
    }
    let emb = count_embeddings(host, h)?;
    let aut = automorphism_count(h)?;
    debug_assert_eq!(emb % aut, 0);
    Ok(emb / aut)
}

/// A forbidden graph prepared for repeated containment queries, including
/// queries that must use a given host edge.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    full: Plan,
    /// one plan per orbit of ordered edges (arcs) under Aut(h)
    anchored: Vec<Plan>,
    edges: usize,
}

impl Pattern {
    pub fn new(h: &Graph) -> Pattern {
        let arcs: Vec<(usize, usize)> = h
            .edges()
            .into_iter()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .collect();
        let reps = arc_orbit_reps(h, &arcs);
        Pattern {
            graph: h.clone(),
            full: Plan::new(h, &[]),
            anchored: reps.iter().map(|&(a, b)| Plan::new(h, &[a, b])).collect(),
            edges: h.edge_count(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn find_in(&self, host: &Graph) -> Option<Embedding> {
        if self.graph.order() > host.order() || self.edges > host.edge_count() {
            return None;
        }
        let mut run = Run::new(host, &self.full);
        let mut found = None;
        run.go(0, &mut |imgs| {
            found = Some(imgs.to_vec());
            false
        });
        found.map(|imgs| Embedding { map: run.to_map(&imgs) })
    }

    pub fn occurs_in(&self, host: &Graph) -> bool {
        self.find_in(host).is_some()
    }

    /// Whether some copy of the pattern in `host` uses the edge `uv`.
    pub fn occurs_through_edge(&self, host: &Graph, u: usize, v: usize) -> bool {
        if self.edges == 0 || self.graph.order() > host.order() {
            return self.edges == 0 && self.graph.order() <= host.order();
        }
        debug_assert!(host.has_edge(u, v));
        let (du, dv) = (host.degree(u), host.degree(v));
        for plan in &self.anchored {
            let (a, b) = (plan.order[0], plan.order[1]);
            if self.graph.degree(a) > du || self.graph.degree(b) > dv {
                continue;
            }
            let mut run = Run::new(host, plan);
            run.place(0, u);
            run.place(1, v);
            if !run.go(2, &mut |_| false) {
                return true;
            }
        }
        false
    }
}

fn arc_orbit_reps(h: &Graph, arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let index = |a: usize, b: usize| arcs.iter().position(|&x| x == (a, b)).unwrap();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut autos = 0u64;
    let mut capped = false;
    for_each_embedding(h, h, &mut |map| {
        autos += 1;
        if autos > AUTO_ENUM_CAP {
            capped = true;
            return false;
        }
        for (i, &(a, b)) in arcs.iter().enumerate() {
            let j = index(map[a], map[b]);
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        true
    });
    if capped {
        return arcs.to_vec();
    }
    (0..arcs.len())
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| arcs[i])
        .collect()
}

/// Greedy embedding of a singly rooted tree with its root sent to `v`: the
/// tree is walked depth-first from the root and each child takes the
/// lowest-index unused neighbour of its parent's image. Always succeeds when
/// δ(G) ≥ e(T).
pub fn embed_rooted_tree(g: &Graph, t: &RootedTree, v: usize) -> Option<Embedding> {
    let root = t.roots().first()?;
    if t.roots().len() != 1 || v >= g.order() {
        return None;
    }
    let tree = t.tree();
    let mut map = vec![usize::MAX; tree.order()];
    let mut used = VertexSet::new(g.order());
    map[root] = v;
    used.insert(v);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        let children: Vec<usize> = tree.neighbors(x).filter(|&c| map[c] == usize::MAX).collect();
        for &c in &children {
            let img = g.neighbors(map[x]).find(|&w| !used.contains(w))?;
            map[c] = img;
            used.insert(img);
        }
        stack.extend(children.into_iter().rev());
    }
    Some(Embedding { map })
}

/// A finite family of forbidden graphs; the host must avoid all of them.
#[derive(Clone, Debug)]
pub struct PatternSet {
    members: Vec<Pattern>,
}

impl PatternSet {
    pub fn new(graphs: &[Graph]) -> Self {
        PatternSet {
            members: graphs.iter().map(Pattern::new).collect(),
        }
    }

    pub fn single(h: &Graph) -> Self {
        PatternSet::new(std::slice::from_ref(h))
    }

    pub fn members(&self) -> &[Pattern] {
        &self.members
    }

    pub fn min_order(&self) -> usize {
        self.members.iter().map(|p| p.order()).min().unwrap_or(0)
    }

    pub fn occurs_in(&self, host: &Graph) -> bool {
        self.members.iter().any(|p| p.occurs_in(host))
    }

    pub fn occurs_through_edge(&self, host: &Graph, u: usize, v: usize) -> bool {
        self.members.iter().any(|p| p.occurs_through_edge(host, u, v))
    }
}
