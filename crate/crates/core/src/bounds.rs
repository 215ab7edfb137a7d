//! Closed-form lower bounds on colander size, and an audit of a concrete
//! anchor set against them.

use serde::{Deserialize, Serialize};

use crate::anchors::AnchorSet;
use crate::colander::{ColanderSpec, VerificationReport};
use crate::error::{Error, Result};

/// `√(A / ε²)`, evaluated as `√A / ε`.
pub fn weak_lower_bound(area: f64, epsilon: f64) -> f64 {
    area.sqrt() / epsilon
}

/// `a² / (16 R ε)`. Requires `R < a/2`.
pub fn strong_lower_bound(side: f64, radius: f64, epsilon: f64) -> Result<f64> {
    if !(side > 0.0 && radius > 0.0 && epsilon > 0.0) || radius >= side / 2.0 {
        return Err(Error::SpecInvalid(format!(
            "need 0 < R < a/2 and epsilon > 0 (a={side}, R={radius}, epsilon={epsilon})"
        )));
    }
    Ok(side * side / (16.0 * radius * epsilon))
}

/// `1 / (R^(2 - 2/d) ε^(2/d))`: the order of the bound for a range family of
/// VC dimension `d`, with unit constant.
pub fn vc_shape_lower_bound(radius: f64, epsilon: f64, d: u32) -> f64 {
    let d = f64::from(d.max(1));
    1.0 / (radius.powf(2.0 - 2.0 / d) * epsilon.powf(2.0 / d))
}

/// A formula value that carries a warning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedEstimate {
    pub value: f64,
    pub dimensionally_suspect: bool,
    pub note: String,
}

/// `√ε` anchors for uniform deployment. The value scales like a length, not
/// a count; it is returned as is and flagged.
pub fn uniform_anchor_estimate(epsilon: f64) -> FlaggedEstimate {
    FlaggedEstimate {
        value: epsilon.sqrt(),
        dimensionally_suspect: true,
        note: "sqrt(epsilon) has units of length^(1/2), not a count; \
               1/sqrt(epsilon) matches the region-count argument"
            .into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub weak_lower: f64,
    pub strong_lower: f64,
    /// Order-only; not part of `consistent`.
    pub vc_shape_lower: f64,
    pub construction_size: usize,
    /// `|S| / a²`.
    pub density: f64,
    pub is_colander: bool,
    /// False only when a verified colander is smaller than the weak or the
    /// strong bound.
    pub consistent: bool,
}

pub fn audit_bounds(
    anchors: &AnchorSet,
    spec: &ColanderSpec,
    verified: &VerificationReport,
) -> Result<BoundsReport> {
    let a = spec.side();
    let weak_lower = weak_lower_bound(a * a, spec.epsilon);
    let strong_lower = strong_lower_bound(a, spec.radius, spec.epsilon)?;
    let size = anchors.len();
    let n = size as f64;
    Ok(BoundsReport {
        weak_lower,
        strong_lower,
        vc_shape_lower: vc_shape_lower_bound(spec.radius, spec.epsilon, 3),
        construction_size: size,
        density: n / (a * a),
        is_colander: verified.is_colander,
        consistent: !verified.is_colander || (n >= weak_lower && n >= strong_lower),
    })
}
