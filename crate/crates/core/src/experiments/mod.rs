//! The iterated-polarization experiment and the counterexample gallery.

mod convergence;
mod gallery;

pub use convergence::{
    converge, parallel_hyperplane, run_convergence, ConvergenceTrace, ExperimentConfig, Strategy, TraceRecord,
};
pub use gallery::{
    build_gallery, cone_fixture, gallery_grid, gallery_hyperplane, mirrored_disks, run_gallery, sawtooth_map,
    straddling_square, GalleryConfig, GalleryReport, GalleryRow, RowStatus, SummaryRow,
};
