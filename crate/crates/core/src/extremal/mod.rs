//! Exact and lower-bound computation of ex(n, 𝓗) and z(m, n, 𝓗).

mod ledger;
mod lower;
mod oracle;
mod search;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern;

pub use ledger::{Ledger, LedgerKey, Violation};
pub use lower::{ex_lower, z_lower};
pub use oracle::{oracle_ex_bruteforce, oracle_z_bruteforce, ORACLE_EX_CAP, ORACLE_Z_CELLS};
pub use search::{ex_exact, ex_exact_family, z_exact, z_exact_family};

/// Largest n accepted by the exact ex search unless overridden.
pub const EX_ORDER_CAP: usize = 12;
/// Largest m + n accepted by the exact z search unless overridden.
pub const Z_ORDER_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Lower,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Lower => "lower",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "lower" => Ok(Mode::Lower),
            _ => Err(Error::InvalidParameter(format!("unknown mode {s}"))),
        }
    }
}

/// One computed value with its witness; also the ledger line format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    /// Canonical graph6 of the pattern; comma-joined sorted keys for a family.
    pub pattern_g6: String,
    /// `[n]` for ex, `[m, n]` for z.
    pub orders: Vec<usize>,
    pub value: usize,
    pub mode: Mode,
    pub witness_g6: String,
    pub seed: u64,
    pub nodes: u64,
    pub prunes: u64,
    pub millis: u64,
}

impl ExtremalResult {
    pub fn witness(&self) -> Result<Graph> {
        graph6::decode(&self.witness_g6)
    }

    /// Decodes the witness and checks order, edge count, bipartite shape
    /// (for z) and freeness of every pattern.
    pub fn verify(&self, patterns: &[Graph]) -> Result<()> {
        let w = self.witness()?;
        let order: usize = self.orders.iter().sum();
        if w.order() != order {
            return Err(Error::Internal(format!(
                "witness has {} vertices, expected {order}",
                w.order()
            )));
        }
        if w.edge_count() != self.value {
            return Err(Error::Internal(format!(
                "witness has {} edges, value is {}",
                w.edge_count(),
                self.value
            )));
        }
        if let [m, _] = self.orders[..] {
            if w.edges().iter().any(|&(u, v)| (u < m) == (v < m)) {
                return Err(Error::Internal("witness edge inside a part".into()));
            }
        }
        for h in patterns {
            if pattern::contains(&w, h).is_some() {
                return Err(Error::Internal("witness contains a forbidden pattern".into()));
            }
        }
        Ok(())
    }
}

/// Canonical key of a pattern family: sorted, deduplicated member keys.
pub fn family_key(patterns: &[Graph]) -> Result<String> {
    let mut keys = patterns.iter().map(canonical_key).collect::<Result<Vec<_>>>()?;
    keys.sort();
    keys.dedup();
    Ok(keys.join(","))
}

/// Search limits and knobs. Node limits are deterministic; a timeout is not.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
    pub seed: u64,
    /// Exchange-move rounds for the lower-bound heuristic.
    pub lower_effort: usize,
    /// Worker threads; 1 gives a fully reproducible search.
    pub threads: usize,
    /// Lifts the order caps.
    pub allow_large: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            timeout: None,
            seed: 0,
            lower_effort: 200,
            threads: 1,
            allow_large: false,
        }
    }
}

impl Budget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.timeout = Some(t);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Stats {
    pub nodes: u64,
    pub prunes: u64,
}

impl Stats {
    fn merge(&mut self, o: Stats) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
    }
}

pub(crate) struct Clock {
    start: Instant,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
}

impl Clock {
    pub fn new(b: &Budget) -> Self {
        let start = Instant::now();
        Clock {
            start,
            deadline: b.timeout.map(|t| start + t),
            max_nodes: b.max_nodes,
        }
    }

    #[inline]
    pub fn exhausted(&self, nodes: u64) -> bool {
        if self.max_nodes.is_some_and(|m| nodes > m) {
            return true;
        }
        nodes % 512 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn millis(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

fn check_patterns(patterns: &[Graph]) -> Result<()> {
    if patterns.is_empty() {
        return Err(Error::InvalidParameter("no forbidden pattern given".into()));
    }
    if patterns.iter().any(|h| h.edge_count() == 0) {
        return Err(Error::InvalidParameter("forbidden pattern has no edges".into()));
    }
    Ok(())
}
