//! Function-level rearrangements, pointwise maps, set maps and the
//! layer-cake reconstruction.

pub mod config;
pub mod layer_cake;
pub mod monotone;
pub mod pointwise;
pub mod polarize;
pub mod set_map;
pub mod steiner;
pub mod transform;

pub use config::{parse_orientation, MapConfig};
pub use layer_cake::{layer_cake_rearrangement, layer_cake_strict, LayerCake};
pub use monotone::{compose_monotone, MonotoneMap};
pub use pointwise::{
    build_pointwise_map, check_fvalues, diagonal_coincides, AssociatedFunctionPair, FvaluesCheck, PointwiseMap,
};
pub use polarize::{apply_pointwise, polarize, polarize_reflected, polarize_set, polarize_set_reflected};
pub use set_map::{induced_set_map, SetMap};
pub use steiner::{
    schwarz_symmetrize_function, schwarz_symmetrize_set, steiner_symmetrize_function, steiner_symmetrize_set,
};
pub use transform::{Canonical, CanonicalKind, CellScramble, ConstantMap, FunctionMap, Scale, Shift};
