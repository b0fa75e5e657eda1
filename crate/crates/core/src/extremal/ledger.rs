//! Append-only JSON-lines store of extremal results.
//!
//! Keyed by (pattern, orders, mode): at most one exact record per key, and a
//! lower record is appended only when it beats every stored value for its
//! (pattern, orders). Writers serialise through a `<path>.lock` file.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::{ExtremalResult, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;

const LOCK_WAIT: Duration = Duration::from_secs(10);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LedgerKey {
    pub pattern_g6: String,
    pub orders: Vec<usize>,
}

impl LedgerKey {
    pub fn of(r: &ExtremalResult) -> Self {
        LedgerKey {
            pattern_g6: r.pattern_g6.clone(),
            orders: r.orders.clone(),
        }
    }
}

/// A monotonicity failure between two exact records of one pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pattern_g6: String,
    pub smaller: Vec<usize>,
    pub larger: Vec<usize>,
    pub smaller_value: usize,
    pub larger_value: usize,
}

#[derive(Clone, Debug)]
pub struct Ledger {
    path: PathBuf,
    reproducible: bool,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Ledger {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Ledger {
            path: path.into(),
            reproducible: false,
        }
    }

    /// Writes `millis = 0` so identical searches give identical files.
    pub fn reproducible(mut self, on: bool) -> Self {
        self.reproducible = on;
        self
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> Result<Vec<ExtremalResult>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let r: ExtremalResult = serde_json::from_str(&line)
                .map_err(|e| Error::Ledger(format!("line {}: {e}", i + 1)))?;
            out.push(r);
        }
        Ok(out)
    }

    fn lock(&self) -> Result<LockGuard> {
        let mut lock = self.path.clone().into_os_string();
        lock.push(".lock");
        let lock = PathBuf::from(lock);
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(_) => return Ok(LockGuard(lock)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_WAIT {
                        return Err(Error::Ledger(format!("timed out waiting for {}", lock.display())));
                    }
                    thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    /// Re-verifies the witness against `patterns`, then appends the record if
    /// the store rules allow it. Returns whether a line was written.
    pub fn record(&self, result: &ExtremalResult, patterns: &[Graph]) -> Result<bool> {
        result.verify(patterns)?;
        let _guard = self.lock()?;
        let key = LedgerKey::of(result);
        let existing: Vec<ExtremalResult> = self
            .load()?
            .into_iter()
            .filter(|r| LedgerKey::of(r) == key)
            .collect();
        if let Some(ex) = existing.iter().find(|r| r.mode == Mode::Exact) {
            if result.mode == Mode::Exact && ex.value != result.value {
                return Err(Error::Ledger(format!(
                    "conflicting exact values {} and {} for {:?}",
                    ex.value, result.value, key
                )));
            }
            if result.value > ex.value {
                return Err(Error::Ledger(format!(
                    "witness with {} edges exceeds the stored exact value {}",
                    result.value, ex.value
                )));
            }
            return Ok(false);
        }
        if result.mode == Mode::Lower && existing.iter().any(|r| r.value >= result.value) {
            return Ok(false);
        }
        let mut line = result.clone();
        if self.reproducible {
            line.millis = 0;
        }
        let text = serde_json::to_string(&line).map_err(|e| Error::Ledger(e.to_string()))?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{text}")?;
        Ok(true)
    }

    /// Stored exact value for a key, if any.
    pub fn exact_value(&self, key: &LedgerKey) -> Result<Option<usize>> {
        Ok(self
            .load()?
            .into_iter()
            .find(|r| r.mode == Mode::Exact && LedgerKey::of(r) == *key)
            .map(|r| r.value))
    }

    /// Checks ex(n) ≤ ex(n+1) and z(m,n) ≤ z(m,n+1), z(m,n) ≤ z(m+1,n) over
    /// the exact records.
    pub fn monotonicity_violations(&self) -> Result<Vec<Violation>> {
        let exact: Vec<ExtremalResult> = self.load()?.into_iter().filter(|r| r.mode == Mode::Exact).collect();
        let mut out = Vec::new();
        for a in &exact {
            for b in &exact {
                if a.pattern_g6 != b.pattern_g6 || a.orders.len() != b.orders.len() {
                    continue;
                }
                let step = a.orders.iter().zip(&b.orders).filter(|(x, y)| x != y).count() == 1
                    && a.orders.iter().zip(&b.orders).all(|(x, y)| y == x || *y == x + 1);
                if step && a.value > b.value {
                    out.push(Violation {
                        pattern_g6: a.pattern_g6.clone(),
                        smaller: a.orders.clone(),
                        larger: b.orders.clone(),
                        smaller_value: a.value,
                        larger_value: b.value,
                    });
                }
            }
        }
        Ok(out)
    }
}
