//! Staircase subsemigroups of `Z x Z` built from doubling sequences.
//!
//! A doubling sequence `c_2 = 1, c_{k+1} >= 2 c_k` determines a subsemigroup
//! of the integer lattice: every point on or above the diagonal in the left
//! half-plane, plus, for each `k >= 2`, the vertical rays starting at
//! `(x, x + k)` for `1 <= x <= c_k`. Intersecting with the five coordinate
//! domains `Z x Z`, `Z x N0`, `Z x N`, `N0 x N0`, `N0 x N` yields subdirect
//! products whose indecomposable elements fingerprint the sequence.
//!
//! The crate provides exact membership queries, indecomposability tests and
//! decomposition enumeration, exhaustive desk-scale verifiers with
//! machine-readable reports, and deterministic ASCII/SVG staircase pictures.

pub mod decomp;
pub mod error;
pub mod lattice;
pub mod render;
pub mod sequence;
pub mod verify;

pub use decomp::{Decomposition, Sense};
pub use error::{Error, Result};
pub use lattice::{GroundSet, Point, Window};
pub use sequence::{DoublingSequence, TailPolicy};
pub use verify::{CheckReport, Fingerprint, Status};
