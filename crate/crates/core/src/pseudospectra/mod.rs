//! Pseudospectra of the rotated Dirac oscillator: resolvent norms, grids,
//! ray scans and the closed-form regions that bracket the level sets.

mod field;
mod level_sets;
mod rays;
mod regions;
mod resolvent;
mod svg;

pub use field::{format_value, is_reliable, pseudospectrum_grid, Grid, PseudospectrumField};
pub use level_sets::{
    calibrate, level_set_consistency, level_set_report, Calibration, LevelSetReport, BOUND_SLACK,
    C2_SAFETY,
};
pub use rays::{ray_scan, RaySample, RayScan};
pub use regions::{
    inner_region_member, outer_region_member, resolvent_upper_bound, transition_angle, RegionParams,
};
pub use resolvent::{resolvent_norm, resolvent_norm_dense, Resolvent, SINGULAR_RELATIVE};
pub use svg::{contour_segments, contour_svg, Segment};
