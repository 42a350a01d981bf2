//! Exact piecewise-linear dynamics on finite topological graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`topograph`]: graphs, points, arcs, the geodesic metric and Hausdorff distance.
//! * [`plmap`]: continuous piecewise-linear self-maps with exact evaluation and preimages.
//! * [`orbits`]: forward dynamics (ω-limit estimates, periodic orbits, Bowen balls, covering chains).
//! * [`backward`]: backward branches, steering, α-limit estimates, chain transitivity.
//! * [`structure`]: Markov partitions, transition matrices, entropy, mixing, inaccessible points.
//! * [`suites`] and [`report`]: verification suites and the JSON report format used by the CLI.

pub mod backward;
pub mod builtins;
pub mod cli;
pub mod error;
pub mod limits;
pub mod orbits;
pub mod plmap;
pub mod rational;
pub mod report;
pub mod structure;
pub mod suites;
pub mod topograph;

pub use error::{Error, Result};
pub use limits::Limits;
pub use plmap::PlMap;
pub use rational::Q;
pub use topograph::{Arc, ArcSet, GraphPoint, GraphSpace, PointSet};
