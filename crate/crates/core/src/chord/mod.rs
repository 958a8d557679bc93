//! Chord-movement set maps: exact on convex polygons, rasterized on grids,
//! with the named contractions and the counterexample maps.

pub mod contractions;
pub mod grid_ops;
pub mod region;
pub mod translates;

pub use contractions::{canonical_contraction, sawtooth_contraction, CANONICAL_NAMES};
pub use grid_ops::{blaschke_composite, chord_move_gridset, cog_reflect, near_swap, shake_set};
pub use region::{chord_move_polygon, perimeter_region, region_of_polygon, ChordMovedRegion};
pub use translates::{hausdorff_to_region, union_of_translates, SampledUnion};
