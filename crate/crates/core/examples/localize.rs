//! Decode transmitter positions from the anchors that hear them.
//!
//! cargo run --example localize

use colander::{
    construct_grid_colander, localize, point_signature, ColanderSpec, Point, Result,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Returns the largest decoding error over the sampled positions.
pub fn run() -> Result<f64> {
    let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0)?;
    let anchors = construct_grid_colander(&spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (lo, hi) = (spec.radius, spec.side() - spec.radius);

    let mut worst: f64 = 0.0;
    for k in 0..40 {
        let truth = Point::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        let heard = point_signature(truth, anchors.points(), spec.radius);
        let est = localize(&heard, &anchors, &spec)?;
        let err = truth.dist(est.representative);
        worst = worst.max(err);
        if k < 5 {
            println!(
                "true ({:.4}, {:.4}) heard by {:>2} anchors -> ({:.4}, {:.4}), error {:.4}",
                truth.x,
                truth.y,
                heard.len(),
                est.representative.x,
                est.representative.y,
                err
            );
        }
    }
    println!("worst error over 40 positions: {worst:.4} (eps = {:.4})", spec.epsilon);
    Ok(worst)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
