//! Classical and relative invariants of Legendrian and transverse knots,
//! computed on grid diagrams.
//!
//! * [`grid`]: grid diagrams, their rectilinear crossings and front cusps.
//! * [`invariants`]: tb, rotation and self-linking per component (two
//!   independent tb computations), and the relative invariants of a pair.
//! * [`moves`]: commutation, translation and (de)stabilization moves, plus
//!   move scripts with per-step invariant traces.
//! * [`ledger`]: how the relative invariants depend on the relative homology
//!   class of the bounding surface.
//! * [`crossing`]: framing and winding bookkeeping while one knot is isotoped
//!   across the other.
//! * [`selftest`]: the seeded property suite behind `legrid selftest`.

pub mod crossing;
pub mod grid;
pub mod invariants;
pub mod ledger;
pub mod moves;
pub mod random;
pub mod selftest;
mod sign;

pub use grid::{parse_grid, ComponentId, FrontConvention, FrontData, GridDiagram, GridError, Marker};
pub use invariants::{classical, relative_invariants, ClassicalInvariants, OrientationFlag, RelativeInvariants};
pub use sign::{Sign, SignParseError};
