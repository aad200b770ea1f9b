//! Linear network codes for computing linear functions of source messages at a
//! single receiver of a directed acyclic network.
//!
//! The crate decides solvability algebraically (reduced Gröbner basis of the
//! ideal of code constraints), evaluates the min-cut condition, classifies
//! target matrices up to row operations and source relabeling, synthesizes
//! codes for the constructively solvable classes, and builds min-cut-1
//! networks on which a target has no linear solution.

pub mod cli;
pub mod code;
pub mod counterex;
pub mod cuts;
pub mod equiv;
pub mod ff;
pub mod flow;
pub mod linalg;
pub mod mvpoly;
pub mod netmodel;
pub mod synth;

pub use code::{LinearCode, TargetMatrix, TransferMatrix};
pub use cuts::CutReport;
pub use ff::{ExtField, Felem, Field, PrimeField};
pub use netmodel::{EdgeId, Network};
