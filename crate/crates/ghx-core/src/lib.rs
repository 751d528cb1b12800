//! Core algorithms for graph hypersurface computations: multigraphs with
//! stable edge labels, Kirchhoff-style edge polynomials and their matrix
//! pencils, point counting over small finite fields, Lefschetz-class
//! polynomials, and the complete-graph census pipeline.
//!
//! This crate is `no_std` (alloc required); IO, file formats, and the CLI
//! live in the companion `ghx` crate.

#![no_std]

extern crate alloc;

pub mod census;
pub mod classes;
pub mod count;
pub mod field;
pub mod graph;
pub mod pencil;
pub mod poly;

pub use graph::{EdgeSubset, Graph};
pub use poly::EdgePoly;
