//! Test support for kgprof: a plain string-level triple model, brute-force
//! reference implementations of the metrics, and synthetic graph generators.
//!
//! Nothing here depends on `kgprof-core`; the oracles recompute every
//! quantity from the definitions so they can be compared with the indexed
//! implementation.

pub mod generate;
pub mod miniature;
pub mod model;
pub mod oracle;
pub mod strings;

pub use model::{Node, Triple};
