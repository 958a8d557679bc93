//! Rearrangements of functions and sets on regular grids: polarization,
//! Steiner and Schwarz symmetrization, chord-movement maps, and randomized
//! checks of the properties that characterize them.

pub mod chord;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod harness;
pub mod parallel;
pub mod rearrange;

pub use error::{Result, SymmError};
pub use geometry::*;
pub use rearrange::*;
