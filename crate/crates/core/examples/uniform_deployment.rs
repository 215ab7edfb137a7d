//! Uniformly random anchors: how the number of signature classes grows with
//! the anchor count, and how many anchors reach a target uncertainty.
//!
//! cargo run --release --example uniform_deployment

use colander::experiments::required_anchors_with_cap;
use colander::{expected_region_scaling, uniform_anchor_estimate, Result, ScalingFit};

pub fn run() -> Result<(ScalingFit, usize)> {
    let (side, seed) = (1.0, 11);
    let fit = expected_region_scaling(&[4, 8, 16, 32], 10, side, side, seed)?;
    for (r, m) in fit.r_values.iter().zip(&fit.mean_face_counts) {
        println!("r = {r:>3}: mean faces {m:>7.1} (ceiling {})", r * r - r + 2);
    }
    println!("fitted exponent {:.3}", fit.exponent);

    let (epsilon, radius) = (0.3, 0.4);
    let found = required_anchors_with_cap(epsilon, radius, side, 10, seed, 256)?;
    println!(
        "eps = {epsilon}, R = {radius}: {} anchors reach it in {}/{} trials; printed formula gives {}",
        found.r,
        found.successes,
        found.trials,
        uniform_anchor_estimate(epsilon).value
    );
    Ok((fit, found.r))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
