//! Verification lab for anti-Ramsey numbers of small linear forests.
//!
//! The anti-Ramsey number `AR(n, F)` is the largest number of colors in an
//! edge coloring of `K_n` containing no rainbow copy of `F`. This crate works
//! with forests `F = kP3 ∪ tP2` (paths on three vertices plus independent
//! edges) and provides five mutually checking layers:
//!
//! * [`catalog`] — closed-form values from the published literature, in exact
//!   integer arithmetic with explicit domains and branch reporting;
//! * [`constructions`] — extremal colorings meeting the spanning-case bound;
//! * [`detector`] — a complete backtracking search for rainbow copies, plus a
//!   brute-force enumeration twin used to cross-validate it;
//! * [`finder`] — a constructive search that mirrors the inductive existence
//!   argument (dense-triple removal, representative subgraphs, bounded
//!   repair) and records what it did;
//! * [`oracle`] — exact `AR` computation by exhaustive search over normalized
//!   colorings, feasible for small `n`.
//!
//! [`crosscheck`] runs the layers against each other and reports agreements
//! and (expected) disagreements; the `arlab` binary exposes everything on the
//! command line. All searches are deterministic: outputs depend only on
//! inputs, seeds, and budgets, never on thread count or scheduling.

pub mod bits;
pub mod catalog;
pub mod constructions;
pub mod crosscheck;
pub mod detector;
mod error;
pub mod exec;
pub mod finder;
pub mod io;
pub mod model;
pub mod oracle;
pub mod trials;

pub use error::{Error, Result};
