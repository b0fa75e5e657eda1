//! Rooted trees, the density ρ_S = e(S)/|S| of non-root vertex sets, and
//! balancedness.
//!
//! All arithmetic is exact: densities are reduced fractions of integers and
//! comparisons never go through floating point.

use num_rational::Ratio;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

/// Largest |V(T) \ R| accepted by the exhaustive balancedness scan.
pub const BALANCE_CAP: usize = 24;

/// A tree with an independent root set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Graph,
    roots: VertexSet,
}

impl RootedTree {
    pub fn new(tree: Graph, roots: &[usize]) -> Result<Self> {
        let n = tree.order();
        if n == 0 {
            return Err(Error::NotRootedTree("empty graph".into()));
        }
        if tree.edge_count() + 1 != n || !tree.is_connected() {
            return Err(Error::NotRootedTree("graph is not a tree".into()));
        }
        let mut r = VertexSet::new(n);
        for &v in roots {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            r.insert(v);
        }
        for u in r.iter() {
            if tree.degree_into(u, &r) > 0 {
                return Err(Error::NotRootedTree(format!(
                    "root set is not independent at vertex {u}"
                )));
            }
        }
        Ok(RootedTree { tree, roots: r })
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn roots(&self) -> &VertexSet {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn non_roots(&self) -> Vec<usize> {
        (0..self.order()).filter(|v| !self.roots.contains(*v)).collect()
    }

    /// Edges with at least one endpoint in `s`.
    pub fn edges_meeting(&self, s: &VertexSet) -> usize {
        self.tree
            .edges()
            .into_iter()
            .filter(|&(u, v)| s.contains(u) || s.contains(v))
            .count()
    }

    /// ρ_S for a nonempty S ⊆ V(T) \ R.
    pub fn rho(&self, s: &[usize]) -> Result<Rational> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut set = VertexSet::new(self.order());
        for &v in s {
            if v >= self.order() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.order() });
            }
            if self.roots.contains(v) {
                return Err(Error::InvalidParameter(format!("vertex {v} is a root")));
            }
            set.insert(v);
        }
        Ok(Rational::new(self.edges_meeting(&set) as i64, set.len() as i64))
    }

    /// ρ_T = ρ of the full non-root set.
    pub fn rho_t(&self) -> Result<Rational> {
        self.rho(&self.non_roots())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    #[serde(serialize_with = "ser_ratio")]
    pub rho_t: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub min_rho: Rational,
    /// Lexicographically least non-root set attaining `min_rho`.
    pub minimizer: Vec<usize>,
    pub balanced: bool,
    /// 2 − 1/ρ_T.
    #[serde(serialize_with = "ser_ratio")]
    pub exponent: Rational,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub fn format_ratio(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exhaustive scan of all nonempty S ⊆ V(T) \ R in Gray-code order.
pub fn is_balanced(t: &RootedTree) -> Result<DensityReport> {
    let free = t.non_roots();
    let q = free.len();
    if q > BALANCE_CAP {
        return Err(Error::SizeCap {
            what: "balancedness scan",
            n: q,
            cap: BALANCE_CAP,
        });
    }
    if q == 0 {
        return Err(Error::NotRootedTree("every vertex is a root".into()));
    }
    let rho_t = t.rho_t()?;
    // position of each tree vertex among the free vertices
    let mut pos = vec![usize::MAX; t.order()];
    for (i, &v) in free.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<(usize, usize)> = t.tree().edges();
    // for every free vertex, the edges incident to it, as (other endpoint position or MAX)
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); q];
    for &(u, v) in &edges {
        if pos[u] != usize::MAX {
            incident[pos[u]].push(pos[v]);
        }
        if pos[v] != usize::MAX {
            incident[pos[v]].push(pos[u]);
        }
    }

    let mut mask: u32 = 0;
    let mut e_s: i64 = 0;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for step in 1u64..(1u64 << q) {
        let bit = step.trailing_zeros() as usize;
        // an edge meets S iff at least one endpoint is in S
        let adding = mask >> bit & 1 == 0;
        let delta: i64 = incident[bit]
            .iter()
            .filter(|&&o| o == usize::MAX || mask >> o & 1 == 0)
            .count() as i64;
        if adding {
            mask |= 1 << bit;
            e_s += delta;
        } else {
            mask &= !(1 << bit);
            e_s -= delta;
        }
        let size = mask.count_ones() as i64;
        let r = Rational::new(e_s, size);
        let better = match &best {
            None => true,
            Some((b, set)) => {
                r < *b || (r == *b && {
                    let cur = members(mask, &free);
                    cur < *set
                })
            }
        };
        if better {
            best = Some((r, members(mask, &free)));
        }
    }
    let (min_rho, minimizer) = best.expect("q >= 1");
    Ok(DensityReport {
        rho_t,
        min_rho,
        minimizer,
        balanced: min_rho >= rho_t,
        exponent: Rational::from_integer(2) - rho_t.recip(),
    })
}

fn members(mask: u32, free: &[usize]) -> Vec<usize> {
    free.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}
