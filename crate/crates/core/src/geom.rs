//! Planar primitives: points, closed disks, the square domain, and the
//! circle–circle intersection used to enumerate arrangement vertices.
//!
//! Everything is plain `f64`. Boundary membership goes through an explicit
//! additive tolerance; [`Disk::tolerance`] gives the default `1e-9 * radius`.

use std::ops::{Add, Mul, Sub};

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance applied to radii for closed-ball membership and
/// tangency decisions.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Unit vector at angle `theta`.
    pub fn polar(theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c, s)
    }

    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Euclidean distance.
pub fn dist(p: Point, q: Point) -> f64 {
    p.dist(q)
}

/// A closed disk `B(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Disk { center, radius }
    }

    /// Default membership tolerance, `1e-9 * radius`.
    pub fn tolerance(&self) -> f64 {
        REL_TOL * self.radius
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        contains(self, p, tol)
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::polar(theta) * self.radius
    }
}

/// Closed-ball membership: `dist(center, p) <= radius + tol`.
pub fn contains(d: &Disk, p: Point, tol: f64) -> bool {
    d.center.dist(p) <= d.radius + tol
}

/// Boundary/boundary intersection of two circles.
///
/// Tangency (external or internal) within `1e-9 * max(r1, r2)` yields a single
/// point. Identical circles are an error since their boundary intersection is
/// not a finite set.
pub fn circle_circle_intersection(d1: &Disk, d2: &Disk) -> Result<ArrayVec<Point, 2>> {
    let mut out = ArrayVec::new();
    let tol = REL_TOL * d1.radius.max(d2.radius);
    let delta = d2.center - d1.center;
    let d = delta.norm();
    let (r1, r2) = (d1.radius, d2.radius);

    if d <= tol {
        if (r1 - r2).abs() <= tol {
            return Err(Error::CoincidentCircles {
                x: d1.center.x,
                y: d1.center.y,
                radius: r1,
            });
        }
        // concentric
        return Ok(out);
    }
    if d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
        return Ok(out);
    }

    let u = delta * (1.0 / d);
    // Tangent within tolerance: place the contact point so the residual is
    // split between the two circles in proportion to their radii.
    let external = d - (r1 + r2);
    if external.abs() <= tol {
        out.push(d1.center + u * (r1 + external * r1 / (r1 + r2)));
        return Ok(out);
    }
    let internal = d - (r1 - r2).abs();
    if internal.abs() <= tol {
        let (big, small, dir) = if r1 >= r2 {
            (d1, d2, u)
        } else {
            (d2, d1, u * -1.0)
        };
        let w = big.radius / (big.radius + small.radius);
        out.push(big.center + dir * (big.radius + internal * w));
        return Ok(out);
    }

    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let base = d1.center + u * a;
    let n = u.perp();
    out.push(base + n * h);
    out.push(base - n * h);
    Ok(out)
}

/// The square domain `[0, side]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainSquare {
    pub side: f64,
}

impl DomainSquare {
    pub fn new(side: f64) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::SpecInvalid(format!(
                "domain side must be positive, got {side}"
            )));
        }
        Ok(DomainSquare { side })
    }

    pub fn rect(&self) -> Rect {
        Rect::new(Point::new(0.0, 0.0), Point::new(self.side, self.side))
    }

    /// `[margin, side - margin]²`; `None` when that square is empty.
    pub fn inset(&self, margin: f64) -> Option<Rect> {
        let lo = margin;
        let hi = self.side - margin;
        (lo <= hi).then(|| Rect::new(Point::new(lo, lo), Point::new(hi, hi)))
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * self.side, 0.5 * self.side)
    }

    pub fn diagonal(&self) -> f64 {
        self.side * std::f64::consts::SQRT_2
    }
}

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn around(center: Point, half: f64) -> Self {
        Rect::new(
            Point::new(center.x - half, center.y - half),
            Point::new(center.x + half, center.y + half),
        )
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        p.x >= self.min.x - tol
            && p.x <= self.max.x + tol
            && p.y >= self.min.y - tol
            && p.y <= self.max.y + tol
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let min = Point::new(self.min.x.max(other.min.x), self.min.y.max(other.min.y));
        let max = Point::new(self.max.x.min(other.max.x), self.max.y.min(other.max.y));
        (min.x <= max.x && min.y <= max.y).then_some(Rect::new(min, max))
    }

    /// Corners in counter-clockwise order starting at `min`.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }

    /// Distance from an interior point to the nearest edge.
    pub fn clearance(&self, p: Point) -> f64 {
        (p.x - self.min.x)
            .min(self.max.x - p.x)
            .min(p.y - self.min.y)
            .min(self.max.y - p.y)
    }
}

/// A region of interest for sampling: a rectangle, or a disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Region {
    Rect(Rect),
    Disk(Disk),
}

impl Region {
    pub fn bounding_box(&self) -> Rect {
        match self {
            Region::Rect(r) => *r,
            Region::Disk(d) => Rect::around(d.center, d.radius),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            Region::Rect(r) => r.contains(p, 0.0),
            Region::Disk(d) => d.contains(p, 0.0),
        }
    }

    /// Euclidean diameter of the region.
    pub fn diameter(&self) -> f64 {
        match self {
            Region::Rect(r) => r.width().hypot(r.height()),
            Region::Disk(d) => 2.0 * d.radius,
        }
    }
}

impl From<Rect> for Region {
    fn from(r: Rect) -> Self {
        Region::Rect(r)
    }
}

impl From<DomainSquare> for Region {
    fn from(d: DomainSquare) -> Self {
        Region::Rect(d.rect())
    }
}
