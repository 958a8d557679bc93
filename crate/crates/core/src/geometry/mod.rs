//! Grids, grid functions and sets, oriented hyperplanes, convex polygons and
//! piecewise-linear contractions.

pub mod contraction;
pub mod grid;
pub mod hyperplane;
pub mod io;
pub mod polygon;

pub use contraction::PLContraction;
pub use grid::{Axis, DistributionProfile, Grid, GridFunction, GridSet, Level};
pub use hyperplane::{reflect_grid_function, reflect_grid_set, LatticeReflection, OrientedHyperplane, Side};
pub use polygon::{ChordProfile, ConvexPolygon, Frame, PlGraph, Point2};
