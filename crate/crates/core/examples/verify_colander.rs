//! Verify anchor sets: the grid colander passes, a single anchor does not.
//! Both the exact arrangement method and grid sampling are shown.
//!
//! cargo run --example verify_colander

use colander::{
    construct_grid_colander, verify_colander, AnchorSet, ColanderSpec, Point, Result,
    VerificationMethod, VerificationReport,
};

pub fn run() -> Result<Vec<VerificationReport>> {
    let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0)?;
    let pitch = spec.default_resolution();
    let grid = construct_grid_colander(&spec)?;
    let lone = AnchorSet::from_points([Point::new(0.5, 0.5)]);

    let mut reports = Vec::new();
    for (name, set) in [("grid colander", &grid), ("single anchor", &lone)] {
        let report = verify_colander(set, &spec, VerificationMethod::Both, pitch)?;
        println!(
            "{name:<14} |S| = {:<4} interior: colander = {:<5} widest class {:.5} (eps {:.5}, sampled {:.5})",
            set.len(),
            report.is_colander,
            report.max_region_diameter,
            spec.epsilon,
            report.interior.sampled_diameter.unwrap_or(f64::NAN),
        );
        println!(
            "{:<14} full square: colander = {:<5} widest class {:.5}",
            "",
            report.full_domain.is_colander,
            report.full_domain.max_region_diameter
        );
        reports.push(report);
    }
    Ok(reports)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
