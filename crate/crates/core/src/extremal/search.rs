//! Branch and bound over edge slots.
//!
//! ex: slots (0,1),(0,2),…,(n−2,n−1); each slot is tried included, then
//! excluded. An inclusion is rejected when some pattern copy uses the new
//! edge. A node is cut when current edges plus open slots cannot beat the
//! incumbent. Partial assignments at depth ≤ n are deduplicated up to
//! isomorphism by canonicalising the 3-coloured slot matrix.
//!
//! z: cells of the m×n biadjacency matrix in row-major order, restricted to
//! matrices whose rows and columns are both lexicographically nonincreasing.
//! Every matrix has such a form (the row-major lex-max member of its orbit).

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{
    check_patterns, ex_lower, family_key, z_lower, Budget, Clock, ExtremalResult, Mode, Stats,
    EX_ORDER_CAP, Z_ORDER_CAP,
};
use crate::canon::canonical_matrix_key;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::PatternSet;

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Incumbent shared between workers; value updates are max-merges.
struct Incumbent {
    value: AtomicUsize,
    witness: Mutex<(usize, String)>,
}

impl Incumbent {
    fn new(value: usize, witness: String) -> Self {
        Incumbent {
            value: AtomicUsize::new(value),
            witness: Mutex::new((value, witness)),
        }
    }

    #[inline]
    fn get(&self) -> usize {
        self.value.load(Ordering::Relaxed)
    }

    fn offer(&self, g: &Graph) {
        let v = g.edge_count();
        self.value.fetch_max(v, Ordering::Relaxed);
        let key = graph6::encode(g);
        let mut w = self.witness.lock().expect("incumbent lock");
        if v > w.0 || (v == w.0 && key < w.1) {
            *w = (v, key);
        }
    }

    fn take(self) -> (usize, String) {
        self.witness.into_inner().expect("incumbent lock")
    }
}

/// Shared knobs for one search worker.
struct Ctx<'a> {
    pats: &'a PatternSet,
    clock: &'a Clock,
    best: &'a Incumbent,
    abort: &'a AtomicBool,
}

struct ExWorker<'a> {
    ctx: Ctx<'a>,
    n: usize,
    slots: &'a [(usize, usize)],
    g: Graph,
    cur: usize,
    colour: Vec<u8>,
    seen: HashSet<Vec<u8>>,
    stats: Stats,
}

impl ExWorker<'_> {
    fn set_colour(&mut self, k: usize, c: u8) {
        let (u, v) = self.slots[k];
        self.colour[u * self.n + v] = c;
        self.colour[v * self.n + u] = c;
    }

    fn dfs(&mut self, k: usize) {
        self.stats.nodes += 1;
        if self.ctx.abort.load(Ordering::Relaxed) {
            return;
        }
        if self.ctx.clock.exhausted(self.stats.nodes) {
            self.ctx.abort.store(true, Ordering::Relaxed);
            return;
        }
        let best = self.ctx.best.get();
        if self.cur > best {
            self.ctx.best.offer(&self.g);
        }
        if self.cur + (self.slots.len() - k) <= self.ctx.best.get() {
            self.stats.prunes += 1;
            return;
        }
        if k > 0 && k <= self.n && !self.seen.insert(canonical_matrix_key(self.n, &self.colour)) {
            self.stats.prunes += 1;
            return;
        }
        let (u, v) = self.slots[k];
        self.g.add_edge(u, v);
        if !self.ctx.pats.occurs_through_edge(&self.g, u, v) {
            self.cur += 1;
            self.set_colour(k, IN);
            self.dfs(k + 1);
            self.cur -= 1;
        }
        self.g.remove_edge(u, v);
        self.set_colour(k, OUT);
        self.dfs(k + 1);
        self.set_colour(k, UNDECIDED);
    }
}

/// Exact ex(n, H).
pub fn ex_exact(n: usize, h: &Graph, budget: &Budget) -> Result<ExtremalResult> {
    ex_exact_family(n, std::slice::from_ref(h), budget)
}

/// Exact ex(n, 𝓗) for a finite family.
pub fn ex_exact_family(n: usize, patterns: &[Graph], budget: &Budget) -> Result<ExtremalResult> {
    check_patterns(patterns)?;
    if n > EX_ORDER_CAP && !budget.allow_large {
        return Err(Error::SizeCap { what: "exact ex search", n, cap: EX_ORDER_CAP });
    }
    let clock = Clock::new(budget);
    let seed = ex_lower(n, patterns, budget)?;
    let pats = PatternSet::new(patterns);
    let slots: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let best = Incumbent::new(seed.value, seed.witness_g6.clone());
    let abort = AtomicBool::new(false);
    let worker = |g: Graph, colour: Vec<u8>, cur: usize| ExWorker {
        ctx: Ctx { pats: &pats, clock: &clock, best: &best, abort: &abort },
        n,
        slots: &slots,
        g,
        cur,
        colour,
        seen: HashSet::new(),
        stats: Stats::default(),
    };
    let mut stats = Stats::default();
    if budget.threads <= 1 {
        let mut w = worker(Graph::new(n), vec![UNDECIDED; n * n], 0);
        w.dfs(0);
        stats.merge(w.stats);
    } else {
        // split on the first `depth` slots; infeasible inclusions are dropped
        let depth = split_depth(slots.len(), budget.threads);
        let mut prefixes: Vec<Vec<bool>> = vec![Vec::new()];
        for k in 0..depth {
            let mut next = Vec::new();
            for p in prefixes {
                let mut g = prefix_graph(n, &slots, &p);
                let (u, v) = slots[k];
                g.add_edge(u, v);
                if !pats.occurs_through_edge(&g, u, v) {
                    let mut q = p.clone();
                    q.push(true);
                    next.push(q);
                }
                let mut q = p;
                q.push(false);
                next.push(q);
            }
            prefixes = next;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.threads)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        let parts: Vec<Stats> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|p| {
                    let g = prefix_graph(n, &slots, p);
                    let mut colour = vec![UNDECIDED; n * n];
                    for (k, &inc) in p.iter().enumerate() {
                        let (u, v) = slots[k];
                        let c = if inc { IN } else { OUT };
                        colour[u * n + v] = c;
                        colour[v * n + u] = c;
                    }
                    let cur = g.edge_count();
                    let mut w = worker(g, colour, cur);
                    w.dfs(depth);
                    w.stats
                })
                .collect()
        });
        for s in parts {
            stats.merge(s);
        }
    }
    let aborted = abort.load(Ordering::Relaxed);
    let (value, witness_g6) = best.take();
    Ok(ExtremalResult {
        pattern_g6: family_key(patterns)?,
        orders: vec![n],
        value,
        mode: if aborted { Mode::Lower } else { Mode::Exact },
        witness_g6,
        seed: budget.seed,
        nodes: stats.nodes,
        prunes: stats.prunes,
        millis: clock.millis(),
    })
}

fn split_depth(slots: usize, threads: usize) -> usize {
    let mut d = 0;
    while d < slots && (1usize << d) < 8 * threads {
        d += 1;
    }
    d
}

fn prefix_graph(n: usize, slots: &[(usize, usize)], prefix: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    for (k, &inc) in prefix.iter().enumerate() {
        if inc {
            g.add_edge(slots[k].0, slots[k].1);
        }
    }
    g
}

struct ZWorker<'a> {
    ctx: Ctx<'a>,
    m: usize,
    n: usize,
    g: Graph,
    cur: usize,
    mat: Vec<u8>,
    /// row i is already strictly below row i−1
    row_lt: Vec<bool>,
    /// column j is already strictly below column j−1
    col_lt: Vec<bool>,
    stats: Stats,
}

impl ZWorker<'_> {
    fn dfs(&mut self, k: usize) {
        self.stats.nodes += 1;
        if self.ctx.abort.load(Ordering::Relaxed) {
            return;
        }
        if self.ctx.clock.exhausted(self.stats.nodes) {
            self.ctx.abort.store(true, Ordering::Relaxed);
            return;
        }
        let cells = self.m * self.n;
        if self.cur > self.ctx.best.get() {
            self.ctx.best.offer(&self.g);
        }
        if self.cur + (cells - k) <= self.ctx.best.get() {
            self.stats.prunes += 1;
            return;
        }
        let (i, j) = (k / self.n, k % self.n);
        let above = (i > 0 && !self.row_lt[i]).then(|| self.mat[k - self.n]);
        let left = (j > 0 && !self.col_lt[j]).then(|| self.mat[k - 1]);
        for val in [1u8, 0] {
            if above.is_some_and(|a| val > a) || left.is_some_and(|l| val > l) {
                self.stats.prunes += 1;
                continue;
            }
            let (u, v) = (i, self.m + j);
            if val == 1 {
                self.g.add_edge(u, v);
                if self.ctx.pats.occurs_through_edge(&self.g, u, v) {
                    self.g.remove_edge(u, v);
                    continue;
                }
                self.cur += 1;
            }
            self.mat[k] = val;
            let (r, c) = (self.row_lt[i], self.col_lt[j]);
            if above.is_some_and(|a| val < a) {
                self.row_lt[i] = true;
            }
            if left.is_some_and(|l| val < l) {
                self.col_lt[j] = true;
            }
            self.dfs(k + 1);
            self.row_lt[i] = r;
            self.col_lt[j] = c;
            if val == 1 {
                self.g.remove_edge(u, v);
                self.cur -= 1;
            }
            self.mat[k] = 0;
        }
    }
}

/// Exact z(m, n, H).
pub fn z_exact(m: usize, n: usize, h: &Graph, budget: &Budget) -> Result<ExtremalResult> {
    z_exact_family(m, n, std::slice::from_ref(h), budget)
}

/// Exact z(m, n, 𝓗): host parts are 0..m and m..m+n.
pub fn z_exact_family(m: usize, n: usize, patterns: &[Graph], budget: &Budget) -> Result<ExtremalResult> {
    check_patterns(patterns)?;
    if m + n > Z_ORDER_CAP && !budget.allow_large {
        return Err(Error::SizeCap { what: "exact z search", n: m + n, cap: Z_ORDER_CAP });
    }
    let clock = Clock::new(budget);
    let seed = z_lower(m, n, patterns, budget)?;
    let pats = PatternSet::new(patterns);
    let best = Incumbent::new(seed.value, seed.witness_g6.clone());
    let abort = AtomicBool::new(false);
    let mut w = ZWorker {
        ctx: Ctx { pats: &pats, clock: &clock, best: &best, abort: &abort },
        m,
        n,
        g: Graph::new(m + n),
        cur: 0,
        mat: vec![0; m * n],
        row_lt: vec![false; m.max(1)],
        col_lt: vec![false; n.max(1)],
        stats: Stats::default(),
    };
    if m * n > 0 {
        w.dfs(0);
    }
    let stats = w.stats;
    let aborted = abort.load(Ordering::Relaxed);
    let (value, witness_g6) = best.take();
    Ok(ExtremalResult {
        pattern_g6: family_key(patterns)?,
        orders: vec![m, n],
        value,
        mode: if aborted { Mode::Lower } else { Mode::Exact },
        witness_g6,
        seed: budget.seed,
        nodes: stats.nodes,
        prunes: stats.prunes,
        millis: clock.millis(),
    })
}
