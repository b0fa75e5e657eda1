//! Constructors for the graph families used throughout the crate.
//!
//! Every constructor fixes its labelling: hubs and centres come first, then
//! path interiors leg by leg, so witnesses and examples stay stable.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::canon::{canonical_key, canonical_matrix_key};
use crate::density::RootedTree;
use crate::error::{Error, Result};
use crate::graph::{BipGraph, Graph};
use crate::pattern;

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "cycle needs at least 3 vertices")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// K_{s,t} with part A = 0..s and part B = s..s+t.
pub fn complete_bipartite(s: usize, t: usize) -> BipGraph {
    let mut g = BipGraph::empty(s, t).into_graph();
    for a in 0..s {
        for b in s..s + t {
            g.add_edge(a, b);
        }
    }
    let a = VertexSet::from_slice(s + t, &(0..s).collect::<Vec<_>>());
    let b = VertexSet::from_slice(s + t, &(s..s + t).collect::<Vec<_>>());
    BipGraph::from_parts_unchecked(g, a, b)
}

/// K_{1,p}, centre 0.
pub fn star(p: usize) -> Graph {
    complete_bipartite(1, p).into_graph()
}

/// θ_{k,p}: hubs 0 and 1, then the k−1 interior vertices of each path in turn.
pub fn theta(k: usize, p: usize) -> Result<BipGraph> {
    need(k >= 2 && p >= 2, "theta needs k >= 2 and p >= 2")?;
    let n = 2 + p * (k - 1);
    let mut g = Graph::new(n);
    for j in 0..p {
        let base = 2 + j * (k - 1);
        let mut prev = 0;
        for i in 0..k - 1 {
            g.add_edge(prev, base + i);
            prev = base + i;
        }
        g.add_edge(prev, 1);
    }
    BipGraph::from_graph(g)
}

/// H_{s,t}: a_i = i, b_i = s+i, c_j = 2s+j, d_j = 2s+t+j; edges a_ib_i, c_jd_j,
/// a_id_j, b_ic_j. Part A = {a_i} ∪ {c_j}.
pub fn gen_cube(s: usize, t: usize) -> Result<BipGraph> {
    need(s >= 1 && t >= 1, "gen_cube needs s >= 1 and t >= 1")?;
    let n = 2 * s + 2 * t;
    let a = |i: usize| i;
    let b = |i: usize| s + i;
    let c = |j: usize| 2 * s + j;
    let d = |j: usize| 2 * s + t + j;
    let mut g = Graph::new(n);
    for i in 0..s {
        g.add_edge(a(i), b(i));
    }
    for j in 0..t {
        g.add_edge(c(j), d(j));
    }
    for i in 0..s {
        for j in 0..t {
            g.add_edge(a(i), d(j));
            g.add_edge(b(i), c(j));
        }
    }
    let pa: Vec<usize> = (0..s).map(a).chain((0..t).map(c)).collect();
    let pb: Vec<usize> = (0..s).map(b).chain((0..t).map(d)).collect();
    BipGraph::new(g, VertexSet::from_slice(n, &pa), VertexSet::from_slice(n, &pb))
}

/// D_s: centres 0 and 1, leaves of 0 are 2..2+s, leaves of 1 follow. R = leaves.
pub fn double_star(s: usize) -> Result<RootedTree> {
    need(s >= 1, "double_star needs s >= 1")?;
    let n = 2 * s + 2;
    let mut edges = vec![(0, 1)];
    for i in 0..s {
        edges.push((0, 2 + i));
        edges.push((1, 2 + s + i));
    }
    let roots: Vec<usize> = (2..n).collect();
    RootedTree::new(Graph::from_edges(n, &edges)?, &roots)
}

/// 3-comb: spine a=0, b=1, c=2 with pendants a'=3, b'=4, c'=5 as roots.
pub fn comb3() -> RootedTree {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
    RootedTree::new(g, &[3, 4, 5]).unwrap()
}

/// Hub 0 and `p` legs of `len` edges; leg j occupies 1+j·len ..= (j+1)·len,
/// ordered outward. The hub is the single root.
pub fn spider(p: usize, len: usize) -> Result<RootedTree> {
    need(p >= 1 && len >= 1, "spider needs p >= 1 and len >= 1")?;
    let n = 1 + p * len;
    let mut edges = Vec::new();
    for j in 0..p {
        let mut prev = 0;
        for i in 0..len {
            let v = 1 + j * len + i;
            edges.push((prev, v));
            prev = v;
        }
    }
    RootedTree::new(Graph::from_edges(n, &edges)?, &[0])
}

/// The p-fold pasting T^p_R together with its construction record.
#[derive(Clone, Debug)]
pub struct Pasting {
    pub graph: Graph,
    /// `copies[i][v]` is the image of tree vertex `v` in copy `i`.
    pub copies: Vec<Vec<usize>>,
}

/// Roots first (ascending), then the non-root vertices of each copy in order.
pub fn pasting(t: &RootedTree, p: usize) -> Result<Pasting> {
    need(p >= 1, "pasting needs p >= 1")?;
    let roots = t.roots().to_vec();
    let free = t.non_roots();
    let n = roots.len() + p * free.len();
    let mut g = Graph::new(n);
    let mut copies = Vec::with_capacity(p);
    for i in 0..p {
        let mut map = vec![0; t.order()];
        for (k, &r) in roots.iter().enumerate() {
            map[r] = k;
        }
        for (k, &v) in free.iter().enumerate() {
            map[v] = roots.len() + i * free.len() + k;
        }
        for (u, v) in t.tree().edges() {
            g.add_edge(map[u], map[v]);
        }
        copies.push(map);
    }
    Ok(Pasting { graph: g, copies })
}

/// T_{s,t}: t copies of the double star D_s pasted along its leaves.
pub fn t_st(s: usize, t: usize) -> Result<Graph> {
    Ok(pasting(&double_star(s)?, t)?.graph)
}

/// S_p: p copies of the 3-comb pasted along its three pendant tips.
pub fn comb_pasting(p: usize) -> Result<Graph> {
    need(p >= 1, "comb pasting needs p >= 1")?;
    Ok(pasting(&comb3(), p)?.graph)
}

/// L_t(H): a new apex `u = v(H)` joined to every vertex of `part` by
/// internally disjoint paths of length t−1. Interiors follow the apex, one
/// path at a time in the order of `part`, listed from the apex outward.
pub fn l_t(h: &Graph, part: &[usize], t: usize) -> Result<Graph> {
    need(t >= 2, "L_t needs t >= 2")?;
    let n0 = h.order();
    for &a in part {
        if a >= n0 {
            return Err(Error::VertexOutOfRange { vertex: a, n: n0 });
        }
    }
    let n = n0 + 1 + part.len() * (t - 2);
    let mut g = h.extend_to(n);
    let apex = n0;
    for (j, &a) in part.iter().enumerate() {
        let mut prev = apex;
        for i in 0..t - 2 {
            let v = n0 + 1 + j * (t - 2) + i;
            g.add_edge(prev, v);
            prev = v;
        }
        g.add_edge(prev, a);
    }
    Ok(g)
}

/// L_t of a bipartite graph using its designated part A.
pub fn l_t_bip(h: &BipGraph, t: usize) -> Result<Graph> {
    l_t(h.graph(), &h.part_a().to_vec(), t)
}

/// L_3(θ_{3,p}) with the part containing hub 0.
pub fn l3_theta(p: usize) -> Result<Graph> {
    l_t_bip(&theta(3, p)?, 3)
}

/// Caps for [`power_family`].
pub const POWER_MAX_TREE: usize = 7;
pub const POWER_MAX_P: usize = 3;

#[derive(Clone, Debug)]
pub struct PowerFamily {
    /// Distinct labelled unions found (edge sets over the canonical pool).
    pub labelled_unions: usize,
    /// One representative per isomorphism class, sorted by canonical key.
    pub classes: Vec<Graph>,
}

/// Every union of `p` distinct labelled copies of `t` agreeing on the root
/// set, deduplicated up to isomorphism.
///
/// Copies are built one at a time; each new copy maps the non-root vertices
/// injectively into the existing pool or onto fresh vertices (taken in
/// increasing order). Partial unions are merged up to root-fixing
/// isomorphism. A final union belongs to the family iff it contains at least
/// `p` distinct root-fixing copies of `t`, which makes it a union of `p`
/// distinct copies.
pub fn power_family(t: &RootedTree, p: usize) -> Result<PowerFamily> {
    need(p >= 2, "power_family needs p >= 2")?;
    if t.order() > POWER_MAX_TREE || p > POWER_MAX_P {
        return Err(Error::SizeCap {
            what: "power family enumeration",
            n: t.order().max(p),
            cap: POWER_MAX_TREE,
        });
    }
    let roots = t.roots().to_vec();
    let free = t.non_roots();
    let r = roots.len();
    let q = free.len();
    let tree_edges = t.tree().edges();
    let max_n = r + p * q;

    // the image map of tree vertices, given the image of each free vertex
    let build = |images: &[usize]| -> Vec<usize> {
        let mut map = vec![0; t.order()];
        for (k, &rv) in roots.iter().enumerate() {
            map[rv] = k;
        }
        for (k, &v) in free.iter().enumerate() {
            map[v] = images[k];
        }
        map
    };

    let first: BTreeSet<(usize, usize)> = {
        let map = build(&(r..r + q).collect::<Vec<_>>());
        tree_edges.iter().map(|&(u, v)| ord(map[u], map[v])).collect()
    };
    let mut layer: Vec<(usize, BTreeSet<(usize, usize)>)> = vec![(r + q, first)];
    let mut labelled = 0usize;
    for step in 1..p {
        let mut next: Vec<(usize, BTreeSet<(usize, usize)>)> = Vec::new();
        let mut seen_keys: HashSet<Vec<u8>> = HashSet::new();
        let mut seen_labelled: HashSet<BTreeSet<(usize, usize)>> = HashSet::new();
        for (pool, edges) in &layer {
            let mut images = vec![0usize; q];
            let mut used = vec![false; max_n];
            extend_maps(0, q, r, *pool, &mut images, &mut used, &mut |imgs, fresh| {
                let map = build(imgs);
                let mut e = edges.clone();
                for &(u, v) in &tree_edges {
                    e.insert(ord(map[u], map[v]));
                }
                let n = pool + fresh;
                if step == p - 1 {
                    seen_labelled.insert(e.clone());
                }
                let key = rooted_key(n, r, &e);
                if seen_keys.insert(key) {
                    next.push((n, e));
                }
            });
        }
        labelled = seen_labelled.len();
        layer = next;
    }

    let tree_graph = t.tree();
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    for (n, edges) in layer {
        let g = Graph::from_edges(n, &edges.iter().copied().collect::<Vec<_>>())?;
        let fixed: Vec<(usize, usize)> = roots.iter().enumerate().map(|(k, &rv)| (rv, k)).collect();
        let copies = pattern::count_embeddings_fixing(&g, tree_graph, &fixed, p as u64);
        if copies >= p as u64 {
            classes.entry(canonical_key(&g)?).or_insert(g);
        }
    }
    Ok(PowerFamily {
        labelled_unions: labelled,
        classes: classes.into_values().collect(),
    })
}

fn ord(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Canonical key of a union with each root individually coloured.
fn rooted_key(n: usize, r: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<u8> {
    let mut m = vec![0u8; n * n];
    for v in 0..n {
        m[v * n + v] = if v < r { 2 + v as u8 } else { 1 };
    }
    for &(u, v) in edges {
        m[u * n + v] = 1;
        m[v * n + u] = 1;
    }
    canonical_matrix_key(n, &m)
}

#[allow(clippy::too_many_arguments)]
fn extend_maps(
    k: usize,
    q: usize,
    r: usize,
    pool: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[usize], usize),
) {
    let fresh_used = images[..k].iter().filter(|&&x| x >= pool).count();
    if k == q {
        emit(images, fresh_used);
        return;
    }
    for target in r..pool {
        if !used[target] {
            used[target] = true;
            images[k] = target;
            extend_maps(k + 1, q, r, pool, images, used, emit);
            used[target] = false;
        }
    }
    // next fresh vertex
    let target = pool + fresh_used;
    used[target] = true;
    images[k] = target;
    extend_maps(k + 1, q, r, pool, images, used, emit);
    used[target] = false;
}

/// Names accepted by [`FamilySpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Theta,
    Cycle,
    CompleteBipartite,
    GenCube,
    DoubleStar,
    Comb3,
    Pasting,
    #[serde(rename = "L_t")]
    LT,
    Spider,
}

impl std::str::FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theta" => FamilyName::Theta,
            "cycle" => FamilyName::Cycle,
            "complete_bipartite" => FamilyName::CompleteBipartite,
            "gen_cube" => FamilyName::GenCube,
            "double_star" => FamilyName::DoubleStar,
            "comb3" => FamilyName::Comb3,
            "pasting" => FamilyName::Pasting,
            "L_t" | "l_t" => FamilyName::LT,
            "spider" => FamilyName::Spider,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

/// A named family member with its integer parameters. `pasting` pastes
/// double stars when `s` is given and 3-combs otherwise; `L_t` applies to
/// θ_{k,p}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub name: FamilyName,
    #[serde(flatten)]
    pub params: BTreeMap<String, usize>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, params: &[(&str, usize)]) -> Self {
        FamilySpec {
            name,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn get(&self, key: &str) -> Result<usize> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}")))
    }

    pub fn build(&self) -> Result<Graph> {
        Ok(match self.name {
            FamilyName::Theta => theta(self.get("k")?, self.get("p")?)?.into_graph(),
            FamilyName::Cycle => cycle(self.get("len")?)?,
            FamilyName::CompleteBipartite => {
                complete_bipartite(self.get("s")?, self.get("t")?).into_graph()
            }
            FamilyName::GenCube => gen_cube(self.get("s")?, self.get("t")?)?.into_graph(),
            FamilyName::DoubleStar => double_star(self.get("s")?)?.tree().clone(),
            FamilyName::Comb3 => comb3().tree().clone(),
            FamilyName::Pasting => {
                let p = self.get("p")?;
                match self.params.get("s") {
                    Some(&s) => t_st(s, p)?,
                    None => comb_pasting(p)?,
                }
            }
            FamilyName::LT => {
                let t = self.get("t")?;
                l_t_bip(&theta(self.get("k")?, self.get("p")?)?, t)?
            }
            FamilyName::Spider => spider(self.get("p")?, self.get("len")?)?.tree().clone(),
        })
    }
}
