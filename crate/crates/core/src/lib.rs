//! Combinatorial information content and entropy of finite patterns.
//!
//! A pattern of length `n` over `k` symbols carries between
//! `log2(n+1)` bits (a constant pattern) and `log2 Σ_{i=0}^{n} k^i` bits
//! (uniformly random). This crate computes those bounds, estimators that land
//! between them, and the per-element entropy `I / (n+1)`:
//!
//! * [`estimators`]: `min`, `max`, modified Shannon (`mshannon`), classic
//!   Shannon, ensemble minimum, and entropy.
//! * [`compression`]: gzip-calibrated (`gzip`) and oracle-normalized
//!   (`kolmogorov`) estimates.
//! * [`generators`]: seeded corpora (constant, random, Markov, Fibonacci
//!   digits, concentric circles, ...).
//! * [`properties`]: the general properties of information as checks that
//!   count violations over seeded corpora.
//! * [`report`] and [`commands`]: the report schema and the `patinfo` CLI.
//!
//! ```
//! use patinfo::{estimators, Pattern};
//!
//! let p = Pattern::from_chars("ab");
//! let bits = estimators::modified_shannon_info(&p).bits();
//! assert!((bits - 7f64.log2()).abs() < 1e-12);
//! ```
//!
//! Runnable examples live in `examples/`; `cargo run --example` lists them.

pub mod analysis;
pub mod commands;
pub mod compression;
pub mod error;
pub mod estimators;
pub mod generators;
pub mod numeric;
pub mod pattern;
pub mod properties;
pub mod report;

pub use error::{Error, Result};
pub use estimators::{Estimate, Estimator, EstimatorKind};
pub use pattern::{
    frequency_table, infer_alphabet, Alphabet, FrequencyTable, InfoBits, Pattern, Symbol,
    Tokenization,
};
