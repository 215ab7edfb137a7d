//! How fine must a plain square grid of anchors be to localize to ε?
//! Scans the spacing and measures the widest signature class.
//!
//! cargo run --release --example grid_scan

use colander::{grid_epsilon_estimate, Result};

pub fn run() -> Result<Vec<(f64, f64)>> {
    let (radius, side) = (0.25, 1.0);
    let mut rows = Vec::new();
    for delta in [radius, radius / 2.0, radius / 4.0] {
        let est = grid_epsilon_estimate(delta, radius, side, delta / 10.0)?;
        println!("delta = {delta:<8} widest class on the interior {est:.5}");
        rows.push((delta, est));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
