//! Canonical labelling by partition refinement and backtracking.
//!
//! The search individualises vertices of the first smallest non-singleton
//! cell, refines to an equitable partition, and keeps the discrete leaf whose
//! relabelled matrix is lexicographically smallest. Leaves that reproduce an
//! already-seen matrix yield automorphisms; children lying in the same orbit
//! of the automorphisms fixing the current prefix are skipped.
//!
//! The same machinery canonicalises small edge-coloured complete graphs
//! (entries 0..=255), which the extremal search uses for isomorphism
//! rejection of partial assignments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

/// Largest order accepted by [`canonical_form`].
pub const CANON_CAP: usize = 64;

const MAX_STORED_AUTOS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// `relabeling[v]` is the canonical index of vertex `v`.
    pub relabeling: Vec<usize>,
    /// graph6 of the canonically relabelled graph.
    pub key: String,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > CANON_CAP {
        return Err(Error::SizeCap {
            what: "canonical labelling",
            n,
            cap: CANON_CAP,
        });
    }
    let mut m = vec![0u8; n * n];
    for (u, v) in g.edges() {
        m[u * n + v] = 1;
        m[v * n + u] = 1;
    }
    let lab = canonical_labeling(n, &m);
    let mut relabeling = vec![0; n];
    for (pos, &v) in lab.iter().enumerate() {
        relabeling[v] = pos;
    }
    let key = graph6::encode(&g.permute(&relabeling));
    Ok(CanonicalForm { relabeling, key })
}

/// Shorthand for the canonical graph6 key.
pub fn canonical_key(g: &Graph) -> Result<String> {
    canonical_form(g).map(|c| c.key)
}

/// Canonical key of a symmetric `n`×`n` colour matrix. Diagonal entries are
/// vertex colours; off-diagonal entries are edge colours (0 = no edge).
pub fn canonical_matrix_key(n: usize, m: &[u8]) -> Vec<u8> {
    let lab = canonical_labeling(n, m);
    permuted(n, m, &lab)
}

/// Returns `lab` with `lab[i]` = the vertex placed at canonical position `i`.
pub fn canonical_labeling(n: usize, m: &[u8]) -> Vec<usize> {
    assert_eq!(m.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let mut colours: Vec<u8> = (0..n).map(|v| m[v * n + v]).collect();
    colours.sort_unstable();
    colours.dedup();
    let mut cells: Vec<Vec<usize>> = colours
        .iter()
        .map(|&c| (0..n).filter(|&v| m[v * n + v] == c).collect())
        .collect();
    cells.retain(|c| !c.is_empty());

    let mut edge_colours: Vec<u8> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && m[u * n + v] != 0 && !edge_colours.contains(&m[u * n + v]) {
                edge_colours.push(m[u * n + v]);
            }
        }
    }
    edge_colours.sort_unstable();
    let mut colour_index = [usize::MAX; 256];
    for (i, &c) in edge_colours.iter().enumerate() {
        colour_index[c as usize] = i;
    }

    let mut search = Search {
        n,
        m,
        ncol: edge_colours.len(),
        colour_index,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    search.visit(cells, &mut Vec::new());
    search.best.unwrap().1
}

fn permuted(n: usize, m: &[u8], lab: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n);
    for &u in lab {
        for &v in lab {
            out.push(m[u * n + v]);
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    m: &'a [u8],
    ncol: usize,
    colour_index: [usize; 256],
    first: Option<(Vec<u8>, Vec<usize>)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Splits cells until every vertex of a cell has the same number of
    /// neighbours of each colour in every cell.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci;
                }
            }
            let width = cells.len() * self.ncol;
            let mut split_at = None;
            for (ci, cell) in cells.iter().enumerate() {
                if cell.len() == 1 {
                    continue;
                }
                let mut sigs: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; width];
                        let row = &self.m[v * n..(v + 1) * n];
                        for (u, &c) in row.iter().enumerate() {
                            if u != v && c != 0 {
                                sig[cell_of[u] * self.ncol + self.colour_index[c as usize]] += 1;
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                if sigs.windows(2).all(|w| w[0].0 == w[1].0) {
                    continue;
                }
                sigs.sort();
                let mut groups: Vec<Vec<usize>> = Vec::new();
                for (i, (sig, v)) in sigs.iter().enumerate() {
                    if i == 0 || sigs[i - 1].0 != *sig {
                        groups.push(Vec::new());
                    }
                    groups.last_mut().unwrap().push(*v);
                }
                split_at = Some((ci, groups));
                break;
            }
            match split_at {
                None => return cells,
                Some((ci, groups)) => {
                    cells.splice(ci..=ci, groups);
                }
            }
        }
    }

    fn visit(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        let cells = self.refine(cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            self.leaf(lab);
            return;
        };
        let mut members = cells[ti].clone();
        members.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, fixed) {
                continue;
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[ti].iter().copied().filter(|&u| u != v).collect();
            child.splice(ti..=ti, [vec![v], rest]);
            fixed.push(v);
            self.visit(child, fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if fixed.iter().all(|&f| a[f] == f) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let key = permuted(self.n, self.m, &lab);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == key {
                // vertex at position i in the reference maps to the vertex at position i here
                let mut auto = vec![0; self.n];
                for (i, &v) in reference.1.iter().enumerate() {
                    auto[v] = lab[i];
                }
                if self.autos.len() < MAX_STORED_AUTOS && !self.autos.contains(&auto) {
                    self.autos.push(auto);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((key.clone(), lab.clone()));
        }
        match &self.best {
            Some((b, _)) if *b <= key => {}
            _ => self.best = Some((key, lab)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn relabelled_cycles_share_key() {
        let c4 = cycle(4);
        let other = c4.permute(&[2, 0, 3, 1]);
        assert_eq!(canonical_key(&c4).unwrap(), canonical_key(&other).unwrap());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(canonical_key(&c4).unwrap(), canonical_key(&p4).unwrap());
    }

    #[test]
    fn relabeling_maps_to_key_graph() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let cf = canonical_form(&g).unwrap();
        assert_eq!(graph6::encode(&g.permute(&cf.relabeling)), cf.key);
    }

    #[test]
    fn symmetric_graphs_finish_quickly() {
        // perfect matching and empty graph on 16 vertices, 4-cube
        let mut pm = Graph::new(16);
        for i in 0..8 {
            pm.add_edge(2 * i, 2 * i + 1);
        }
        let shuffled = pm.permute(&[5, 3, 14, 0, 9, 1, 12, 7, 2, 15, 4, 11, 6, 13, 8, 10]);
        assert_eq!(canonical_key(&pm).unwrap(), canonical_key(&shuffled).unwrap());
        canonical_key(&Graph::new(16)).unwrap();
        let mut q4 = Graph::new(16);
        for u in 0..16usize {
            for b in 0..4 {
                let v = u ^ (1 << b);
                if u < v {
                    q4.add_edge(u, v);
                }
            }
        }
        canonical_key(&q4).unwrap();
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            canonical_form(&Graph::new(CANON_CAP + 1)),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn coloured_matrix_respects_colours() {
        // path a-b-c with colours 1,2 vs 2,1 is isomorphic (reverse); 1,1 is not
        let mk = |x: u8, y: u8| {
            let mut m = vec![0u8; 9];
            m[1] = x;
            m[3] = x;
            m[5] = y;
            m[7] = y;
            m
        };
        assert_eq!(canonical_matrix_key(3, &mk(1, 2)), canonical_matrix_key(3, &mk(2, 1)));
        assert_ne!(canonical_matrix_key(3, &mk(1, 2)), canonical_matrix_key(3, &mk(1, 1)));
    }
}
