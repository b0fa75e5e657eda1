//! Turán numbers of bipartite graphs: exact small-order search, rooted-tree
//! densities, pattern counting, lemma verifiers and closed-form bounds.

pub mod bitset;
pub mod bounds;
pub mod canon;
pub mod cli;
pub mod density;
pub mod error;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod matching;
pub mod pattern;
pub mod random;

pub use error::{Error, Result};
pub use graph::{BipGraph, Graph};
