//! Arrangements of equal-radius disks and their signature classes.
//!
//! Faces are enumerated by signature rather than by building a planar
//! subdivision. Every face of the arrangement touches at least one circular
//! arc (or, when clipped, a piece of the clip rectangle), so probing both sides
//! of every arc and every clip-edge segment visits every face. Faces that
//! share a signature but are disconnected are merged into one class, which
//! can only overestimate diameters.
//!
//! Face diameters come from boundary samples: arc endpoints (arrangement
//! vertices), the axis-extreme points of each arc, arc points every
//! `arc_step` radians, and clip-segment endpoints. A chord of angular width
//! `arc_step` is within `radius * arc_step` of its arc, so the estimate
//! undershoots the true diameter by at most `2 * radius * arc_step`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::anchors::{dedup_points, AnchorSet};
use crate::error::{Error, Result};
use crate::geom::{circle_circle_intersection, Disk, DomainSquare, Point, Rect, REL_TOL};
use crate::hull;
use crate::signature::{AnchorIndex, Signature};

pub const DEFAULT_ANCHOR_CAP: usize = 2000;
pub const DEFAULT_ARC_STEP: f64 = PI / 180.0;
pub const DEFAULT_VERTEX_OFFSET: f64 = 1e-5;

/// Candidate points closer than this (times the radius) to a circle boundary
/// are discarded: the tolerant membership test cannot classify them reliably.
const MIN_CLEARANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ArrangementOptions {
    pub anchor_cap: usize,
    /// Angular step for arc boundary samples.
    pub arc_step: f64,
    /// Offset of the vertex-adjacent probes, as a fraction of the radius.
    pub vertex_offset: f64,
}

impl Default for ArrangementOptions {
    fn default() -> Self {
        ArrangementOptions {
            anchor_cap: DEFAULT_ANCHOR_CAP,
            arc_step: DEFAULT_ARC_STEP,
            vertex_offset: DEFAULT_VERTEX_OFFSET,
        }
    }
}

/// One signature class of the arrangement.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusableRegion {
    pub signature: Signature,
    /// Interior point of the class, chosen for the largest distance to any
    /// circle among the probes.
    pub representative: Point,
    /// Boundary-sample diameter; `f64::INFINITY` for the unbounded class.
    pub diameter: f64,
    /// Boundary samples the diameter was computed from.
    pub sample_points: Vec<Point>,
}

impl ConfusableRegion {
    pub fn is_unbounded(&self) -> bool {
        self.diameter.is_infinite()
    }
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub radius: f64,
    pub disks: Vec<Disk>,
    pub faces: Vec<ConfusableRegion>,
    /// Distinct circle–circle intersection points.
    pub vertex_count: usize,
    pub face_count: usize,
    pub clip: Option<Rect>,
    pub arc_step: f64,
}

impl Arrangement {
    pub fn face(&self, signature: &Signature) -> Option<&ConfusableRegion> {
        self.faces
            .binary_search_by(|f| f.signature.cmp(signature))
            .ok()
            .map(|i| &self.faces[i])
    }

    /// Largest diameter any face can be underestimated by.
    pub fn diameter_accuracy(&self) -> f64 {
        2.0 * self.radius * self.arc_step
    }

    /// Widest bounded face.
    pub fn widest_face(&self) -> Option<&ConfusableRegion> {
        self.faces
            .iter()
            .filter(|f| f.diameter.is_finite())
            .fold(None, |best: Option<&ConfusableRegion>, f| match best {
                Some(b) if b.diameter >= f.diameter => Some(b),
                _ => Some(f),
            })
    }

    pub fn to_document(&self) -> ArrangementDocument {
        ArrangementDocument {
            radius: self.radius,
            disks: self.disks.iter().map(|d| d.center).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceDocument {
                    signature: f.signature.clone(),
                    rep: f.representative,
                    diameter: f.diameter.is_finite().then_some(f.diameter),
                })
                .collect(),
        }
    }
}

/// JSON export shape: `{radius, disks:[{x,y}], faces:[{signature, rep, diameter}]}`.
/// An unbounded face has `diameter: null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementDocument {
    pub radius: f64,
    pub disks: Vec<Point>,
    pub faces: Vec<FaceDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceDocument {
    pub signature: Signature,
    pub rep: Point,
    pub diameter: Option<f64>,
}

/// Arrangement of the disks `B(t, radius)` for `t` in `anchors`, optionally
/// clipped to the domain square.
pub fn build_arrangement(
    anchors: &AnchorSet,
    radius: f64,
    domain: Option<DomainSquare>,
) -> Result<Arrangement> {
    build_arrangement_in(
        anchors.points(),
        radius,
        domain.map(|d| d.rect()),
        &ArrangementOptions::default(),
    )
}

pub fn count_faces(arr: &Arrangement) -> usize {
    arr.face_count
}

/// Boundary-sample diameter of a face. The empty-signature face of an
/// unclipped arrangement is unbounded.
pub fn face_diameter(face: &ConfusableRegion, arr: &Arrangement) -> Result<f64> {
    if arr.clip.is_none() && face.signature.is_empty() {
        return Ok(f64::INFINITY);
    }
    hull::diameter(&face.sample_points)
        .map(|(d, _, _)| d)
        .ok_or(Error::EmptyFace)
}

#[derive(Default)]
struct FaceAccumulator {
    representative: Option<(Point, f64)>,
    boundary: Vec<Point>,
    probes: Vec<Point>,
}

impl FaceAccumulator {
    fn offer(&mut self, p: Point, clearance: f64) {
        self.probes.push(p);
        match self.representative {
            Some((_, c)) if c >= clearance => {}
            _ => self.representative = Some((p, clearance)),
        }
    }
}

struct ClipEdge {
    start: Point,
    dir: Point,
    inward: Point,
    length: f64,
    crossings: Vec<f64>,
}

fn clip_edges(r: &Rect) -> Vec<ClipEdge> {
    let [a, b, c, d] = r.corners();
    let edge = |start: Point, end: Point, inward: Point| {
        let length = start.dist(end);
        ClipEdge {
            start,
            dir: (end - start) * (1.0 / length),
            inward,
            length,
            crossings: Vec::new(),
        }
    };
    vec![
        edge(a, b, Point::new(0.0, 1.0)),
        edge(b, c, Point::new(-1.0, 0.0)),
        edge(c, d, Point::new(0.0, -1.0)),
        edge(d, a, Point::new(1.0, 0.0)),
    ]
}

/// Parameters along the edge where the circle crosses it.
fn circle_edge_crossings(disk: &Disk, edge: &ClipEdge, tol: f64) -> Vec<f64> {
    let w = edge.start - disk.center;
    let b = edge.dir.dot(w);
    let c = w.dot(w) - disk.radius * disk.radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    [-b - s, -b + s]
        .into_iter()
        .filter(|&t| t >= -tol && t <= edge.length + tol)
        .map(|t| t.clamp(0.0, edge.length))
        .collect()
}

fn angle_of(v: Point) -> f64 {
    let a = v.y.atan2(v.x);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn arc_samples(disk: &Disk, t0: f64, t1: f64, step: f64, out: &mut Vec<Point>) {
    out.push(disk.point_at(t0));
    out.push(disk.point_at(t1));
    let mut k = (t0 / FRAC_PI_2).ceil();
    while k * FRAC_PI_2 < t1 {
        out.push(disk.point_at(k * FRAC_PI_2));
        k += 1.0;
    }
    let mut t = t0 + step;
    while t < t1 {
        out.push(disk.point_at(t));
        t += step;
    }
}

/// Arrangement over raw points with an optional clip rectangle.
pub fn build_arrangement_in(
    points: &[Point],
    radius: f64,
    clip: Option<Rect>,
    opts: &ArrangementOptions,
) -> Result<Arrangement> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::DegenerateInput(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if points.len() > opts.anchor_cap {
        return Err(Error::TooManyAnchors {
            count: points.len(),
            cap: opts.anchor_cap,
        });
    }
    if let Some(r) = &clip {
        if !(r.width() > 0.0 && r.height() > 0.0) {
            return Err(Error::DegenerateInput(format!(
                "clip rectangle must have positive area, got {r:?}"
            )));
        }
    }
    let n = points.len();
    let tol = REL_TOL * radius;
    let disks: Vec<Disk> = points.iter().map(|&c| Disk::new(c, radius)).collect();
    let index = AnchorIndex::new(points, radius);

    // arrangement vertices, recorded as angles on each circle
    let mut angles: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut vertices: Vec<Point> = Vec::new();
    for i in 0..n {
        let mut near: Vec<u32> = Vec::new();
        index.for_each_within(points[i], 2.0 * radius + tol, |j, _| {
            if j as usize > i {
                near.push(j);
            }
        });
        near.sort_unstable();
        for j in near {
            let j = j as usize;
            if points[i].dist(points[j]) <= tol {
                return Err(Error::DegenerateInput(format!(
                    "anchors {i} and {j} coincide; deduplicate first"
                )));
            }
            for v in circle_circle_intersection(&disks[i], &disks[j])? {
                angles[i].push(angle_of(v - points[i]));
                angles[j].push(angle_of(v - points[j]));
                vertices.push(v);
            }
        }
    }

    let mut edges = clip.as_ref().map(clip_edges).unwrap_or_default();
    for (i, disk) in disks.iter().enumerate() {
        for edge in edges.iter_mut() {
            for t in circle_edge_crossings(disk, edge, tol) {
                angles[i].push(angle_of(edge.start + edge.dir * t - disk.center));
                edge.crossings.push(t);
            }
        }
    }

    let mut faces: BTreeMap<Signature, FaceAccumulator> = BTreeMap::new();
    let in_clip = |p: Point| clip.map_or(true, |r| r.contains(p, 0.0));
    let min_clearance = MIN_CLEARANCE * radius;

    // both sides of every arc
    let mut samples = Vec::new();
    for (i, disk) in disks.iter().enumerate() {
        let mut a = std::mem::take(&mut angles[i]);
        a.sort_by(f64::total_cmp);
        a.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
        let arcs: Vec<(f64, f64)> = match a.len() {
            0 => vec![(0.0, TAU)],
            1 => vec![(a[0], a[0] + TAU)],
            k => (0..k)
                .map(|s| {
                    if s + 1 < k {
                        (a[s], a[s + 1])
                    } else {
                        (a[k - 1], a[0] + TAU)
                    }
                })
                .collect(),
        };
        for (t0, t1) in arcs {
            if t1 - t0 <= 1e-12 {
                continue;
            }
            let tm = 0.5 * (t0 + t1);
            let mid = disk.point_at(tm);
            if !in_clip(mid) {
                continue;
            }
            let mut gap = index.boundary_clearance(mid, Some(i as u32));
            if let Some(r) = &clip {
                gap = gap.min(r.clearance(mid));
            }
            let eta = 0.5 * gap.min(radius);
            if eta <= min_clearance {
                continue;
            }
            samples.clear();
            arc_samples(disk, t0, t1, opts.arc_step, &mut samples);
            let u = Point::polar(tm);
            for q in [mid - u * eta, mid + u * eta] {
                if !in_clip(q) {
                    continue;
                }
                let face = faces.entry(index.signature(q)).or_default();
                face.offer(q, eta);
                face.boundary.extend_from_slice(&samples);
            }
        }
    }

    // clip-edge segments between circle crossings
    if let Some(r) = &clip {
        let depth = 0.5 * r.width().min(r.height());
        for edge in edges.iter_mut() {
            let mut ts = std::mem::take(&mut edge.crossings);
            ts.push(0.0);
            ts.push(edge.length);
            ts.sort_by(f64::total_cmp);
            ts.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * edge.length);
            for w in ts.windows(2) {
                let (ta, tb) = (w[0], w[1]);
                let mid = edge.start + edge.dir * (0.5 * (ta + tb));
                let gap = index.boundary_clearance(mid, None).min(0.5 * (tb - ta));
                let shift = 0.5 * gap.min(depth);
                if shift <= min_clearance {
                    continue;
                }
                let q = mid + edge.inward * shift;
                let face = faces.entry(index.signature(q)).or_default();
                face.offer(q, shift);
                face.boundary.push(edge.start + edge.dir * ta);
                face.boundary.push(edge.start + edge.dir * tb);
            }
        }
    }

    // supplementary probes: centers, axis extremes, vertex neighbourhoods,
    // clip corners
    let eta = opts.vertex_offset * radius;
    let mut probes: Vec<Point> = Vec::new();
    for d in &disks {
        probes.push(d.center);
        for k in 0..4 {
            let u = Point::polar(k as f64 * FRAC_PI_2);
            let p = d.center + u * radius;
            probes.push(p + u * eta);
            probes.push(p - u * eta);
        }
    }
    let diag = std::f64::consts::FRAC_1_SQRT_2 * eta;
    for v in &vertices {
        for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            probes.push(*v + Point::new(sx * diag, sy * diag));
        }
    }
    if let Some(r) = &clip {
        let c = Point::new(0.5 * (r.min.x + r.max.x), 0.5 * (r.min.y + r.max.y));
        for corner in r.corners() {
            probes.push(corner.lerp(c, 1e-6));
        }
    }
    for q in probes {
        if !in_clip(q) {
            continue;
        }
        let clearance = index.boundary_clearance(q, None);
        if clearance > min_clearance {
            faces.entry(index.signature(q)).or_default().offer(q, clearance);
        }
    }

    if faces.is_empty() {
        // no circles and no clip: the whole plane
        faces.entry(Signature::empty()).or_default().offer(Point::default(), f64::INFINITY);
    }

    let faces: Vec<ConfusableRegion> = faces
        .into_iter()
        .map(|(signature, acc)| {
            let (representative, _) = acc.representative.expect("every face has a probe");
            let sample_points = if acc.boundary.is_empty() {
                acc.probes
            } else {
                acc.boundary
            };
            let diameter = if clip.is_none() && signature.is_empty() {
                f64::INFINITY
            } else {
                hull::diameter(&sample_points).map_or(0.0, |(d, _, _)| d)
            };
            ConfusableRegion {
                signature,
                representative,
                diameter,
                sample_points,
            }
        })
        .collect();

    Ok(Arrangement {
        radius,
        disks,
        face_count: faces.len(),
        faces,
        vertex_count: dedup_points(&vertices, 10.0 * tol).len(),
        clip,
        arc_step: opts.arc_step,
    })
}
