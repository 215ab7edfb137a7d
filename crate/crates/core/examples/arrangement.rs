//! Enumerate the faces of a small disk arrangement, compare with the
//! sampling oracle and draw it.
//!
//! cargo run --example arrangement -- [out.svg]

use colander::svg::Scene;
use colander::{
    build_arrangement, count_faces, signatures_via_sampling, AnchorSet, DomainSquare, Point,
    Result,
};

/// Returns (analytic face count, sampled class count).
pub fn run(svg_path: Option<&str>) -> Result<(usize, usize)> {
    let radius = 0.3;
    let domain = DomainSquare::new(1.0)?;
    let anchors = AnchorSet::from_points([
        Point::new(0.3, 0.35),
        Point::new(0.62, 0.4),
        Point::new(0.45, 0.7),
        Point::new(0.8, 0.75),
    ]);
    let arr = build_arrangement(&anchors, radius, Some(domain))?;
    let sampled = signatures_via_sampling(&anchors, radius, domain, radius / 200.0)?;
    println!(
        "{} disks: {} faces ({} vertices), sampling finds {}",
        anchors.len(),
        count_faces(&arr),
        arr.vertex_count,
        sampled.class_count()
    );
    for face in &arr.faces {
        println!(
            "  {:<12} rep ({:.3}, {:.3})  diameter {:.4}",
            face.signature.to_string(),
            face.representative.x,
            face.representative.y,
            face.diameter
        );
    }
    if let Some(path) = svg_path {
        let scene = Scene {
            anchors: anchors.points(),
            radius,
            domain: Some(domain),
            arrangement: Some(&arr),
            marks: Vec::new(),
        };
        std::fs::write(path, scene.render())?;
        println!("wrote {path}");
    }
    Ok((count_faces(&arr), sampled.class_count()))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let path = std::env::args().nth(1);
    run(path.as_deref()).map(|_| ())
}
