//! Lower-bound formulas and an audit of the grid colander against them.
//!
//! cargo run --example bounds_audit

use colander::{
    audit_bounds, construct_grid_colander, strong_lower_bound, uniform_anchor_estimate,
    vc_shape_lower_bound, verify_colander, weak_lower_bound, BoundsReport, ColanderSpec, Result,
    VerificationMethod,
};

pub fn run() -> Result<BoundsReport> {
    println!("weak bound, A = 1, eps = 0.1:          {}", weak_lower_bound(1.0, 0.1));
    println!("strong bound, a = 1, R = 0.1, eps = 0.01: {}", strong_lower_bound(1.0, 0.1, 0.01)?);
    println!("VC-shape order, d = 3:                 {:.2}", vc_shape_lower_bound(0.1, 0.01, 3));
    let u = uniform_anchor_estimate(0.01);
    println!("uniform deployment formula at eps = 0.01: {} (suspect: {})", u.value, u.dimensionally_suspect);

    let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0)?;
    let anchors = construct_grid_colander(&spec)?;
    let report = verify_colander(&anchors, &spec, VerificationMethod::Sampling, spec.default_resolution())?;
    let audit = audit_bounds(&anchors, &spec, &report)?;
    println!(
        "grid colander: |S| = {}, weak {:.1}, strong {:.1}, verified {}, consistent {}",
        audit.construction_size, audit.weak_lower, audit.strong_lower, audit.is_colander, audit.consistent
    );
    Ok(audit)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
