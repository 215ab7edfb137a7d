//! Range-free localization with colanders.
//!
//! A transmitter at `p` with range `R` is heard by the anchors in
//! `B(p, R) ∩ S`. An anchor set `S` is an (R, ε)-colander for a region when
//! that set of anchors pins `p` down to within `ε`. This crate builds the
//! grid colander, verifies arbitrary anchor sets (exactly from the disk
//! arrangement or by sampling), decodes signatures to positions, and
//! provides the range-space and Monte Carlo tooling used to study how many
//! anchors are needed.
//!
//! ```
//! use colander::{construct_grid_colander, verify_colander, ColanderSpec, VerificationMethod};
//!
//! let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0)?;
//! let anchors = construct_grid_colander(&spec)?;
//! let report = verify_colander(&anchors, &spec, VerificationMethod::Sampling, spec.epsilon / 10.0)?;
//! assert!(report.is_colander);
//! # Ok::<(), colander::Error>(())
//! ```

pub mod anchors;
pub mod arrangement;
pub mod bounds;
pub mod cli;
pub mod colander;
pub mod error;
pub mod experiments;
pub mod format;
pub mod geom;
pub mod hull;
pub mod rng;
pub mod sampling;
pub mod signature;
pub mod svg;
pub mod vc;

pub use crate::anchors::{AnchorSet, Provenance};
pub use crate::arrangement::{
    build_arrangement, count_faces, face_diameter, Arrangement, ConfusableRegion,
};
pub use crate::bounds::{
    audit_bounds, strong_lower_bound, uniform_anchor_estimate, vc_shape_lower_bound,
    weak_lower_bound, BoundsReport,
};
pub use crate::colander::{
    construct_grid_colander, localize, restrict_colander, verify_colander, verify_region,
    ColanderSpec, RegionEstimate, VerificationMethod, VerificationReport,
};
pub use crate::error::{Error, Result};
pub use crate::experiments::{
    expected_region_scaling, grid_epsilon_estimate, required_anchors_for_epsilon,
    run_uniform_trial, ScalingFit, TrialResult,
};
pub use crate::geom::{circle_circle_intersection, contains, dist, Disk, DomainSquare, Point};
pub use crate::sampling::signatures_via_sampling;
pub use crate::signature::{point_signature, Signature};
pub use crate::vc::{
    can_realize_subset, distinct_signature_count, is_shattered, sauer_g, vc_dimension_estimate,
    RangeFamily, ShatterResult,
};
