//! Exact combinatorics and linear algebra of the variety of complete quadrics
//! fixed by a regular unipotent element.
//!
//! - [`composition`]: odd-part compositions `F_n` and the bijections `φ`, `ψ`.
//! - [`poset`]: the cell-closure order on `F_n`, its meets, maxima and Hasse diagram.
//! - [`topology`]: cell dimensions, Poincaré polynomials, component counts.
//! - [`quadric`]: rational-matrix oracle for fixed quadrics, torus limits and fixed flags.
//! - [`verify`]: the end-to-end cross-check report.
//! - [`cli`]: the `qfib` command-line front end.

pub mod cli;
pub mod composition;
pub mod error;
pub mod poset;
pub mod quadric;
pub mod topology;
pub mod verify;

pub use composition::OddComposition;
pub use error::{Error, Result};
