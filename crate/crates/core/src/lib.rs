//! Total coloring lower bounds and total matching polyhedra.
//!
//! The crate bundles everything that does not need an operating system:
//!
//! * [`graph`]: simple graphs, elements (vertices and edges), total graphs,
//!   named and random instances, maximal cliques;
//! * [`mp`]: a small linear/integer programming layer (bounded simplex with
//!   dual values, LP-based branch-and-bound);
//! * [`matching`]: total matchings, the maximum weighted total matching model
//!   and its brute-force oracle;
//! * [`separation`]: vertex-clique, congruent-2k3 cycle and even-clique cuts;
//! * [`cutloop`]: the total matching upper-bound driver;
//! * [`coloring`]: assignment and set-covering lower bounds for total coloring;
//! * [`polytope`]: exact small-scale checks of dimension, validity and facetness.
//!
//! File formats, the experiment harness and the command line live in the
//! `totalmatch` companion crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coloring;
pub mod cutloop;
mod error;
pub mod graph;
pub mod matching;
pub mod mp;
pub mod polytope;
pub mod separation;

pub use error::{Error, Result};
pub use graph::{Element, ElementSet, Graph};

/// Violation threshold shared by every separator and by the cut loop.
pub const VIOLATION_EPS: f64 = 1e-6;
