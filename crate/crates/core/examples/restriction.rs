//! Restrict a colander to the anchors near a point and verify the piece on
//! the disk around it.
//!
//! cargo run --example restriction

use colander::geom::{Disk, Region};
use colander::{
    construct_grid_colander, restrict_colander, verify_region, ColanderSpec, Point, Result,
    VerificationMethod,
};

/// Returns `(kept anchors, widest class)` per center.
pub fn run() -> Result<Vec<(usize, f64)>> {
    let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0)?;
    let grid = construct_grid_colander(&spec)?;
    let pitch = spec.default_resolution();
    let mut out = Vec::new();
    for center in [Point::new(0.5, 0.5), Point::new(0.3, 0.62), Point::new(0.7, 0.3)] {
        let piece = restrict_colander(&grid, center, spec.radius);
        let region = Region::Disk(Disk::new(center, spec.radius));
        let v = verify_region(piece.points(), spec.radius, spec.epsilon, &region, VerificationMethod::Sampling, pitch)?;
        println!(
            "center ({:.2}, {:.2}): {} of {} anchors kept, widest class {:.4}, colander {}",
            center.x,
            center.y,
            piece.len(),
            grid.len(),
            v.max_region_diameter,
            v.is_colander
        );
        out.push((piece.len(), v.max_region_diameter));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
