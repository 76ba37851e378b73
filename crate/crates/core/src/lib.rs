//! Perimeter-minimizing double bubbles in the plane under the hexagonal norm.
//!
//! The norm `D(x, y) = max(|x| + |y|/√3, 2|y|/√3)` has the regular hexagon as
//! its unit ball. For every volume ratio `α ∈ (0, 1]` this crate computes the
//! two candidate minimizing configurations (a small hexagon embedded in a
//! notch of the large one, or two hexagons kissing along a common side),
//! compares them, and locates the volume ratio where the optimum switches.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering and
//! the command line live in `hexbubble-cli`.
//!
//! Module map:
//! - [`hexnorm`]: the norm, geodesics, lengths, areas and A-hexagons of polygons.
//! - [`singlebubble`]: one hexagon with a prescribed side and volume.
//! - [`kissing`]: two hexagons sharing (part of) one side.
//! - [`embedded`]: a hexagon sitting in a notch of a larger one.
//! - [`solver`]: comparison of both cases, the phase transition, sweeps.
//! - [`oracle`]: derivative-free brute-force minimization used for cross-checks.

#![no_std]
// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub(crate) mod math;
pub mod search;

pub mod embedded;
pub mod hexnorm;
pub mod kissing;
pub mod oracle;
pub mod singlebubble;
pub mod solver;

pub use error::{Error, Result};
pub use hexnorm::{HexRegion, PlanePoint, PolyChain};
pub use solver::{find_alpha0, solve, sweep, Case, Configuration, DoubleBubbleResult};
