//! Build the grid colander for a few parameter choices and compare its size
//! with the density ceiling and the lower bound.
//!
//! cargo run --example construct_grid

use colander::{construct_grid_colander, strong_lower_bound, ColanderSpec, Result};

pub fn run() -> Result<Vec<(f64, f64, usize)>> {
    let side = 1.0;
    let mut rows = Vec::new();
    for (radius, epsilon) in [(0.25, 0.1 * std::f64::consts::SQRT_2), (0.1, 0.05), (0.1, 0.01)] {
        let spec = ColanderSpec::new(radius, epsilon, side)?;
        let anchors = construct_grid_colander(&spec)?;
        let density = anchors.len() as f64 / (side * side);
        println!(
            "R = {radius:<5} eps = {epsilon:<8.5} |S| = {:<6} density {density:>9.1}  ceiling {:>9.1}  lower {:>8.1}",
            anchors.len(),
            8.0 / (radius * epsilon),
            strong_lower_bound(side, radius, epsilon)?,
        );
        rows.push((radius, epsilon, anchors.len()));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
