//! Subset-sum structure of sequences over `Z_p`.
//!
//! Exact sumsets `Σ(A)` and `Σ_l(A)`, classification into zero-sum-free /
//! incomplete / `l`-incomplete sequences, certificate search for the
//! small-norm normal forms, extremal families, counting against bounded
//! partitions, and exhaustive Erdős–Ginzburg–Ziv checks.

pub mod classify;
pub mod counting;
pub mod egz;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod lemmas;
pub mod mask;
pub mod oracle;
pub mod residue;
pub mod suite;
pub mod sumset;
pub mod witness;

pub use error::{Error, Result};
pub use mask::SumsetMask;
pub use residue::{PrimeModulus, ResidueSequence, SignedInteger};
