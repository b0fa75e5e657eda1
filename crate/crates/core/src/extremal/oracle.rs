//! Exhaustive reference values. Deliberately naive: labelled graphs are
//! scanned by decreasing edge count and containment is a plain injective
//! backtracking over pattern vertices in index order.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORACLE_EX_CAP: usize = 7;
/// Largest m·n accepted by [`oracle_z_bruteforce`].
pub const ORACLE_Z_CELLS: usize = 16;

fn naive_contains(adj: &[Vec<bool>], h: &Graph) -> bool {
    let k = h.order();
    let n = adj.len();
    if k > n {
        return false;
    }
    let hedges = h.edges();
    let mut img = vec![usize::MAX; k];
    let mut used = vec![false; n];
    fn go(i: usize, adj: &[Vec<bool>], hedges: &[(usize, usize)], img: &mut [usize], used: &mut [bool]) -> bool {
        if i == img.len() {
            return true;
        }
        for x in 0..adj.len() {
            if used[x] {
                continue;
            }
            img[i] = x;
            let ok = hedges
                .iter()
                .all(|&(a, b)| !(a.max(b) == i) || adj[img[a.min(b)]][x]);
            if ok {
                used[x] = true;
                if go(i + 1, adj, hedges, img, used) {
                    return true;
                }
                used[x] = false;
            }
        }
        img[i] = usize::MAX;
        false
    }
    go(0, adj, &hedges, &mut img, &mut used)
}

/// Masks over `bits` positions with exactly `k` ones, by Gosper's hack.
fn for_each_mask(bits: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << bits;
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        if f(x) {
            return;
        }
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

fn best_by_scan(order: usize, pairs: &[(usize, usize)], patterns: &[Graph]) -> usize {
    for k in (0..=pairs.len()).rev() {
        let mut found = false;
        for_each_mask(pairs.len(), k, |mask| {
            let mut adj = vec![vec![false; order]; order];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
            found = patterns.iter().all(|h| !naive_contains(&adj, h));
            found
        });
        if found {
            return k;
        }
    }
    0
}

/// ex(n, 𝓗) by scanning all labelled graphs on n ≤ 7 vertices.
pub fn oracle_ex_bruteforce(n: usize, patterns: &[Graph]) -> Result<usize> {
    if n > ORACLE_EX_CAP {
        return Err(Error::SizeCap { what: "ex oracle", n, cap: ORACLE_EX_CAP });
    }
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(best_by_scan(n, &pairs, patterns))
}

/// z(m, n, 𝓗) by scanning all m×n biadjacency matrices, m·n ≤ 16.
pub fn oracle_z_bruteforce(m: usize, n: usize, patterns: &[Graph]) -> Result<usize> {
    if m * n > ORACLE_Z_CELLS {
        return Err(Error::SizeCap { what: "z oracle cells", n: m * n, cap: ORACLE_Z_CELLS });
    }
    let pairs: Vec<_> = (0..m).flat_map(|u| (0..n).map(move |j| (u, m + j))).collect();
    Ok(best_by_scan(m + n, &pairs, patterns))
}
