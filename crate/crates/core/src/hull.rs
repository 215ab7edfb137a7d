//! Convex hull and diameter of planar point sets.

use crate::geom::Point;

/// Convex hull by Andrew's monotone chain, counter-clockwise, no collinear
/// points kept. Returns the input (deduplicated) when it has fewer than three
/// distinct points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }

    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Farthest pair of a point set as `(distance, p, q)`; `None` for empty input.
///
/// Rotating calipers over the convex hull, O(n log n).
pub fn diameter(points: &[Point]) -> Option<(f64, Point, Point)> {
    let hull = convex_hull(points);
    match hull.len() {
        0 => None,
        1 => Some((0.0, hull[0], hull[0])),
        2 => Some((hull[0].dist(hull[1]), hull[0], hull[1])),
        n => {
            let area2 = |i: usize, j: usize, k: usize| (hull[j] - hull[i]).cross(hull[k] - hull[i]);
            let mut best = (0.0, hull[0], hull[0]);
            let mut consider = |a: Point, b: Point| {
                let d = a.dist(b);
                if d > best.0 {
                    best = (d, a, b);
                }
            };
            let mut j = 1;
            for i in 0..n {
                let next = (i + 1) % n;
                // advance the antipodal pointer while the triangle grows
                while area2(i, next, (j + 1) % n).abs() > area2(i, next, j).abs() {
                    j = (j + 1) % n;
                }
                consider(hull[i], hull[j]);
                consider(hull[next], hull[j]);
            }
            Some(best)
        }
    }
}
