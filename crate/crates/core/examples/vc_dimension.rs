//! Shattering by disks, Sauer's bound, and VC-dimension search for the
//! three range families.
//!
//! cargo run --example vc_dimension

use colander::{
    distinct_signature_count, is_shattered, sauer_g, vc_dimension_estimate, Point, RangeFamily,
    Result,
};

/// Returns the VC estimates for all disks, equal disks and square translates.
pub fn run() -> Result<[usize; 3]> {
    let triangle = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)];
    let square = [
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ];
    let fam = RangeFamily::AllDisks;
    println!("triangle shattered by disks: {}", is_shattered(&triangle, &fam)?.shattered);
    let sq = is_shattered(&square, &fam)?;
    println!(
        "square shattered by disks: {} (first missing subset {:?})",
        sq.shattered, sq.missing_subset
    );
    for n in 1..=8usize {
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let t = k as f64 * 2.399;
                Point::new(t.cos() * (1.0 + 0.1 * k as f64), t.sin())
            })
            .collect();
        println!(
            "n = {n}: {:>3} distinct subsets cut by disks, g(n, 3) = {}",
            distinct_signature_count(&pts, &fam, 1.0)?,
            sauer_g(n as u64, 3)?
        );
    }
    let families = [
        RangeFamily::AllDisks,
        RangeFamily::EqualDisks { radius: 1.0 },
        RangeFamily::SquareTranslates { side: 1.0 },
    ];
    let mut out = [0; 3];
    for (slot, fam) in out.iter_mut().zip(families) {
        *slot = vc_dimension_estimate(&fam, 5, 60, 7)?;
        println!("{fam:?}: VC dimension estimate {slot}");
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
