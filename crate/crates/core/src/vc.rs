//! Range spaces over small planar point sets: Sauer's function, which
//! subsets a range family can cut out, shattering, and VC-dimension search.
//!
//! Subsets of a point list `A` are bitmasks (`bit i` set when `A[i]` is in
//! the range), so at most 20 points are supported.
//!
//! Realizable patterns are found by enumerating candidate ranges:
//!
//! * all disks: circles through one, two (diametral) or three
//!   (circumscribed) points of `A`, plus near half-planes (huge circles
//!   through pairs). Points on a candidate circle may go either way, so every
//!   in/out split of them is tried by moving the circle slightly. A moved
//!   circle is only accepted after checking all points against it, so every
//!   reported pattern is genuinely realizable.
//! * equal disks of radius `R`: a disk `B(c, R)` contains `p` iff `c` lies in
//!   `B(p, R)`, so patterns are the signature classes of the arrangement of
//!   the disks around `A`.
//! * translates of an axis-aligned square: membership splits into an `x` and
//!   a `y` interval condition, which change only at `p ± side/2`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{build_arrangement_in, ArrangementOptions};
use crate::error::{Error, Result};
use crate::geom::{Disk, Point, REL_TOL};
use crate::rng::stream_seed;
use crate::signature::point_signature;

/// Largest point set for subset realizability and shattering.
pub const MAX_SHATTER_POINTS: usize = 16;
/// Largest point set for pattern counting.
pub const MAX_PATTERN_POINTS: usize = 20;
/// Largest set size the VC search will try.
pub const MAX_VC_SEARCH: usize = 8;

/// Radius of the near-half-plane circles, relative to the point spread.
const HALF_PLANE_SCALE: f64 = 1e6;
const MAX_HALF_PLANE_SCALE: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RangeFamily {
    AllDisks,
    EqualDisks { radius: f64 },
    SquareTranslates { side: f64 },
}

impl RangeFamily {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            RangeFamily::AllDisks => true,
            RangeFamily::EqualDisks { radius } => radius > 0.0 && radius.is_finite(),
            RangeFamily::SquareTranslates { side } => side > 0.0 && side.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DegenerateInput(format!("range parameter must be positive: {self:?}")))
        }
    }

    /// Size of point clouds whose patterns are not trivially constrained.
    fn natural_scale(&self) -> f64 {
        match *self {
            RangeFamily::AllDisks => 1.0,
            RangeFamily::EqualDisks { radius } => radius / 2.0,
            RangeFamily::SquareTranslates { side } => side / 2.0,
        }
    }
}

/// A concrete range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RangeWitness {
    Disk { center: Point, radius: f64 },
    Square { center: Point, side: f64 },
}

impl RangeWitness {
    /// Bitmask of the points of `a` inside the range.
    pub fn pattern(&self, a: &[Point]) -> u32 {
        a.iter().enumerate().fold(0, |m, (i, &p)| {
            if self.contains(p) {
                m | (1 << i)
            } else {
                m
            }
        })
    }

    pub fn contains(&self, p: Point) -> bool {
        match *self {
            RangeWitness::Disk { center, radius } => center.dist(p) <= radius,
            RangeWitness::Square { center, side } => {
                let h = side / 2.0;
                let tol = REL_TOL * h;
                (p.x - center.x).abs() <= h + tol && (p.y - center.y).abs() <= h + tol
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterResult {
    pub shattered: bool,
    /// One realizing range per realized subset (subset as sorted indices).
    pub witness_ranges: Vec<(Vec<usize>, RangeWitness)>,
    /// First subset, in bitmask order, that no range realizes.
    pub missing_subset: Option<Vec<usize>>,
}

/// `g(n, d) = Σ_{i ≤ d} C(n, i)`, exact.
pub fn sauer_g(n: u64, d: u64) -> Result<u128> {
    let overflow = || Error::Overflow { n, d };
    let mut term: u128 = 1;
    let mut total: u128 = 1;
    for i in 0..d.min(n) {
        // C(n, i+1) = C(n, i) (n - i) / (i + 1), exact at each step
        term = term
            .checked_mul(u128::from(n - i))
            .ok_or_else(overflow)?
            / u128::from(i + 1);
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(total)
}

fn mask_to_indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn check_points(a: &[Point], limit: usize) -> Result<()> {
    if a.len() > limit {
        return Err(Error::TooManyPoints {
            count: a.len(),
            limit,
        });
    }
    if let Some(p) = a.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("non-finite point {p:?}")));
    }
    Ok(())
}

/// Every pattern the family realizes on `a`, each with one witness.
pub fn realizable_patterns(a: &[Point], fam: &RangeFamily) -> Result<BTreeMap<u32, RangeWitness>> {
    check_points(a, MAX_PATTERN_POINTS)?;
    fam.validate()?;
    let mut out = BTreeMap::new();
    match *fam {
        RangeFamily::AllDisks => disk_patterns(a, &mut out),
        RangeFamily::EqualDisks { radius } => equal_disk_patterns(a, radius, &mut out)?,
        RangeFamily::SquareTranslates { side } => square_patterns(a, side, &mut out),
    }
    Ok(out)
}

fn record(out: &mut BTreeMap<u32, RangeWitness>, a: &[Point], w: RangeWitness) {
    out.entry(w.pattern(a)).or_insert(w);
}

fn spread(a: &[Point]) -> f64 {
    let mut s: f64 = 0.0;
    for (i, p) in a.iter().enumerate() {
        for q in &a[i + 1..] {
            s = s.max(p.dist(*q));
        }
    }
    s
}

fn centroid(a: &[Point]) -> Point {
    let sum = a.iter().fold(Point::default(), |acc, &p| acc + p);
    sum * (1.0 / a.len().max(1) as f64)
}

fn circumcircle(p: Point, q: Point, r: Point) -> Option<(Point, f64)> {
    let b = q - p;
    let c = r - p;
    let d = 2.0 * b.cross(c);
    let scale = b.norm() * c.norm();
    if d.abs() <= 1e-12 * scale {
        return None;
    }
    let (bb, cc) = (b.dot(b), c.dot(c));
    let center = Point::new(c.y * bb - b.y * cc, b.x * cc - c.x * bb) * (1.0 / d);
    Some((p + center, center.norm()))
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    let norm: f64 = m.iter().flatten().map(|v| v.abs()).sum();
    if d.abs() <= 1e-14 * norm.powi(3) {
        return None;
    }
    let mut x = [0.0; 3];
    for (col, xc) in x.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = rhs[row];
        }
        *xc = det(&mc) / d;
    }
    Some(x)
}

/// Direction `(dρ, dcx, dcy)` with `sign(dρ + u·dc) = sign` for every row,
/// where `u` is the unit vector from the center to the boundary point.
/// Growing the radius by `dρ` and shifting the center by `dc` then moves
/// each boundary point to the requested side, to first order.
fn boundary_move(units: &[Point], signs: &[f64]) -> Option<[f64; 3]> {
    let rows: Vec<[f64; 3]> = units.iter().map(|u| [1.0, u.x, u.y]).collect();
    let ok = |w: &[f64; 3]| {
        rows.iter()
            .zip(signs)
            .all(|(r, s)| s * (r[0] * w[0] + r[1] * w[1] + r[2] * w[2]) > 1e-9)
    };
    // all on one side: change the radius alone
    if signs.iter().all(|&s| s == signs[0]) {
        return Some([signs[0], 0.0, 0.0]);
    }
    // minimum-norm solution of rows · w = signs (least squares past 3 rows)
    let mut gram = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (r, s) in rows.iter().zip(signs) {
        for i in 0..3 {
            rhs[i] += r[i] * s;
            for j in 0..3 {
                gram[i][j] += r[i] * r[j];
            }
        }
    }
    if rows.len() < 3 {
        // w = Rᵀ (R Rᵀ)⁻¹ s
        let k = rows.len();
        let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let coef: Vec<f64> = if k == 1 {
            vec![signs[0] / dot(&rows[0], &rows[0])]
        } else {
            let (g00, g01, g11) = (
                dot(&rows[0], &rows[0]),
                dot(&rows[0], &rows[1]),
                dot(&rows[1], &rows[1]),
            );
            let det = g00 * g11 - g01 * g01;
            if det.abs() <= 1e-14 * g00 * g11 {
                return None;
            }
            vec![
                (g11 * signs[0] - g01 * signs[1]) / det,
                (g00 * signs[1] - g01 * signs[0]) / det,
            ]
        };
        let mut w = [0.0; 3];
        for (r, c) in rows.iter().zip(coef) {
            for i in 0..3 {
                w[i] += c * r[i];
            }
        }
        return ok(&w).then_some(w);
    }
    if let Some(w) = solve3(gram, rhs) {
        if ok(&w) {
            return Some(w);
        }
    }
    // more than three cocircular points: perceptron on the sign constraints
    let mut w = [0.0; 3];
    for _ in 0..2000 {
        let mut changed = false;
        for (r, s) in rows.iter().zip(signs) {
            if s * (r[0] * w[0] + r[1] * w[1] + r[2] * w[2]) <= 1e-3 {
                for i in 0..3 {
                    w[i] += s * r[i];
                }
                changed = true;
            }
        }
        if !changed {
            return Some(w);
        }
    }
    None
}

/// Tries every in/out split of the points on circle `(center, radius)`.
fn circle_candidates(a: &[Point], center: Point, radius: f64, out: &mut BTreeMap<u32, RangeWitness>) {
    let scale = spread(a).max(radius).max(f64::MIN_POSITIVE);
    let roundoff = 1e-15 * (radius + center.norm());
    // relative to the point cloud, plus roundoff from a huge circle
    let on_tol = 1e-9 * spread(a) + 2.0 * roundoff;
    let mut boundary = Vec::new();
    let mut gap = f64::INFINITY;
    for (i, &p) in a.iter().enumerate() {
        let off = p.dist(center) - radius;
        if off.abs() <= on_tol {
            boundary.push(i);
        } else {
            gap = gap.min(off.abs());
        }
    }
    if boundary.is_empty() || boundary.len() > 12 {
        record(out, a, RangeWitness::Disk { center, radius });
        return;
    }
    let units: Vec<Point> = boundary
        .iter()
        .map(|&i| {
            let v = a[i] - center;
            v * (1.0 / v.norm())
        })
        .collect();
    for split in 0u32..(1 << boundary.len()) {
        let signs: Vec<f64> = (0..boundary.len())
            .map(|k| if split & (1 << k) != 0 { 1.0 } else { -1.0 })
            .collect();
        let Some(w) = boundary_move(&units, &signs) else {
            continue;
        };
        let shift = Point::new(w[1], w[2]);
        let size = w[0].abs() + shift.norm();
        let margin = units
            .iter()
            .zip(&signs)
            .map(|(u, s)| s * (w[0] + u.dot(shift)))
            .fold(f64::INFINITY, f64::min);
        // keep the move below the gap to the other points and small enough
        // that the second-order term stays under the first-order margin
        let mut t = 0.25 * gap.min(scale) / size;
        t = t.min(0.25 * margin * radius / (shift.dot(shift) + f64::MIN_POSITIVE));
        for _ in 0..8 {
            let w = RangeWitness::Disk {
                center: center + shift * t,
                radius: radius + w[0] * t,
            };
            let want = boundary
                .iter()
                .zip(&signs)
                .all(|(&i, &s)| w.contains(a[i]) == (s > 0.0));
            if want && strictly_separates(a, &w, 1e-12 * spread(a) + roundoff) {
                record(out, a, w);
                break;
            }
            t *= 0.1;
        }
    }
}

/// Every point is at least `margin` away from the circle.
fn strictly_separates(a: &[Point], w: &RangeWitness, margin: f64) -> bool {
    let RangeWitness::Disk { center, radius } = *w else {
        return true;
    };
    a.iter().all(|p| (p.dist(center) - radius).abs() >= margin)
}

fn disk_patterns(a: &[Point], out: &mut BTreeMap<u32, RangeWitness>) {
    let n = a.len();
    let s = spread(a).max(1.0);
    let c = centroid(a);
    // nothing: a tiny disk far away; everything: a disk around all points
    record(out, a, RangeWitness::Disk {
        center: c + Point::new(10.0 * s, 0.0),
        radius: 1e-3 * s,
    });
    if n == 0 {
        return;
    }
    record(out, a, RangeWitness::Disk { center: c, radius: 2.0 * s });

    let mut circles: Vec<(Point, f64)> = Vec::new();
    for i in 0..n {
        circles.push((a[i], 0.0));
        for j in i + 1..n {
            let d = a[i].dist(a[j]);
            if d == 0.0 {
                continue;
            }
            circles.push((a[i].lerp(a[j], 0.5), d / 2.0));
            // near half-planes on either side of the line through i and j
            let normal = (a[j] - a[i]).perp() * (1.0 / d);
            // sagitta d²/(8ρ) stays a quarter below the nearest off-line
            // point; a larger ρ only adds roundoff
            let off_line = a
                .iter()
                .map(|&q| (q - a[i]).dot(normal).abs())
                .filter(|&h| h > 0.0)
                .fold(f64::INFINITY, f64::min);
            let big = (HALF_PLANE_SCALE * s).max((d * d / (2.0 * off_line)).min(MAX_HALF_PLANE_SCALE * s));
            let h = (big * big - d * d / 4.0).sqrt();
            for side in [1.0, -1.0] {
                circles.push((a[i].lerp(a[j], 0.5) + normal * (side * h), big));
            }
            for k in j + 1..n {
                if let Some(cc) = circumcircle(a[i], a[j], a[k]) {
                    circles.push(cc);
                }
            }
        }
    }

    let found: Vec<BTreeMap<u32, RangeWitness>> = circles
        .par_iter()
        .map(|&(center, radius)| {
            let mut local = BTreeMap::new();
            if radius == 0.0 {
                // a point alone: shrink to a disk that excludes its neighbours
                let p = center;
                let nearest = a
                    .iter()
                    .map(|q| q.dist(p))
                    .filter(|&d| d > 0.0)
                    .fold(f64::INFINITY, f64::min);
                let r = if nearest.is_finite() { nearest / 2.0 } else { 1.0 };
                record(&mut local, a, RangeWitness::Disk { center: p, radius: r });
            } else {
                circle_candidates(a, center, radius, &mut local);
            }
            local
        })
        .collect();
    for local in found {
        for (m, w) in local {
            out.entry(m).or_insert(w);
        }
    }
}

fn equal_disk_patterns(a: &[Point], radius: f64, out: &mut BTreeMap<u32, RangeWitness>) -> Result<()> {
    let arr = build_arrangement_in(a, radius, None, &ArrangementOptions::default())?;
    for face in &arr.faces {
        let w = RangeWitness::Disk {
            center: face.representative,
            radius,
        };
        let sig = point_signature(face.representative, a, radius);
        let mask = sig.members().iter().fold(0u32, |m, &i| m | (1 << i));
        out.entry(mask).or_insert(w);
    }
    Ok(())
}

fn critical_offsets(values: &[f64], h: f64) -> Vec<f64> {
    let mut cuts: Vec<f64> = values.iter().flat_map(|&v| [v - h, v + h]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out = cuts.clone();
    out.extend(cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    if let (Some(&lo), Some(&hi)) = (cuts.first(), cuts.last()) {
        out.push(lo - h);
        out.push(hi + h);
    } else {
        out.push(0.0);
    }
    out
}

fn square_patterns(a: &[Point], side: f64, out: &mut BTreeMap<u32, RangeWitness>) {
    let h = side / 2.0;
    let xs: Vec<f64> = a.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = a.iter().map(|p| p.y).collect();
    let cy = critical_offsets(&ys, h);
    for cx in critical_offsets(&xs, h) {
        for &y in &cy {
            record(out, a, RangeWitness::Square {
                center: Point::new(cx, y),
                side,
            });
        }
    }
}

/// Whether some range of the family contains exactly the points `a[i]` for
/// `i` in `subset`, with a witness when it does.
pub fn can_realize_subset(
    a: &[Point],
    subset: &[usize],
    fam: &RangeFamily,
) -> Result<Option<RangeWitness>> {
    check_points(a, MAX_SHATTER_POINTS)?;
    if let Some(&bad) = subset.iter().find(|&&i| i >= a.len()) {
        return Err(Error::DegenerateInput(format!("subset index {bad} out of range")));
    }
    let mask = subset.iter().fold(0u32, |m, &i| m | (1 << i));
    Ok(realizable_patterns(a, fam)?.remove(&mask))
}

pub fn is_shattered(a: &[Point], fam: &RangeFamily) -> Result<ShatterResult> {
    check_points(a, MAX_SHATTER_POINTS)?;
    let patterns = realizable_patterns(a, fam)?;
    let n = a.len();
    let mut witness_ranges = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        match patterns.get(&mask) {
            Some(w) => witness_ranges.push((mask_to_indices(mask, n), *w)),
            None => {
                return Ok(ShatterResult {
                    shattered: false,
                    witness_ranges,
                    missing_subset: Some(mask_to_indices(mask, n)),
                })
            }
        }
    }
    Ok(ShatterResult {
        shattered: true,
        witness_ranges,
        missing_subset: None,
    })
}

/// Number of distinct subsets of `a` cut out by the family. Besides the
/// candidate ranges, `probe_density * n²` random ranges are tried.
pub fn distinct_signature_count(a: &[Point], fam: &RangeFamily, probe_density: f64) -> Result<usize> {
    check_points(a, MAX_PATTERN_POINTS)?;
    let mut patterns = realizable_patterns(a, fam)?;
    let n = a.len();
    let probes = (probe_density.max(0.0) * (n * n) as f64).ceil() as usize;
    if probes > 0 && n > 0 {
        let s = spread(a).max(fam.natural_scale());
        let c = centroid(a);
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(0x5eed, n as u64, probes as u64));
        for _ in 0..probes {
            let center = c + Point::new(rng.gen_range(-s..s), rng.gen_range(-s..s));
            let w = match *fam {
                RangeFamily::AllDisks => RangeWitness::Disk {
                    center,
                    radius: rng.gen_range(0.0..2.0 * s),
                },
                RangeFamily::EqualDisks { radius } => RangeWitness::Disk {
                    center,
                    radius: radius * (1.0 + REL_TOL),
                },
                RangeFamily::SquareTranslates { side } => RangeWitness::Square { center, side },
            };
            record(&mut patterns, a, w);
        }
    }
    Ok(patterns.len())
}

/// Candidate `n`-point sets that are always tried: a regular polygon, a
/// slightly perturbed one, and a perturbed grid.
pub fn structured_candidates(n: usize, scale: f64) -> Vec<Vec<Point>> {
    let polygon = |phase: f64| -> Vec<Point> {
        (0..n)
            .map(|k| Point::polar(phase + std::f64::consts::TAU * k as f64 / n as f64) * (scale / 2.0))
            .collect()
    };
    let mut sets = vec![polygon(0.1)];
    let mut wobble = polygon(0.3);
    for (k, p) in wobble.iter_mut().enumerate() {
        *p = *p * (1.0 + 0.05 * ((k as f64 * 1.7).sin()));
    }
    sets.push(wobble);
    let cols = (n as f64).sqrt().ceil() as usize;
    let step = scale / cols as f64;
    sets.push(
        (0..n)
            .map(|k| {
                let (i, j) = ((k % cols) as f64, (k / cols) as f64);
                Point::new(
                    i * step + 0.013 * step * (j + 1.0),
                    j * step + 0.021 * step * (i + 1.0),
                )
            })
            .collect(),
    );
    sets
}

/// Largest `n ≤ n_max` for which a shattered `n`-point set was found among
/// the structured candidates and `trials` random sets. Deterministic in
/// `seed`. This certifies a lower bound on the VC dimension; it is exact
/// when the search at `n + 1` is exhaustive enough.
pub fn vc_dimension_estimate(fam: &RangeFamily, n_max: usize, trials: usize, seed: u64) -> Result<usize> {
    if n_max > MAX_VC_SEARCH {
        return Err(Error::TooManyPoints {
            count: n_max,
            limit: MAX_VC_SEARCH,
        });
    }
    fam.validate()?;
    let scale = fam.natural_scale();
    let mut best = 0;
    for n in 1..=n_max {
        let mut sets = structured_candidates(n, scale);
        sets.extend((0..trials).map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, n as u64, t as u64));
            random_cloud(&mut rng, n, fam)
        }));
        let found = sets
            .par_iter()
            .map(|a| is_shattered(a, fam).map(|r| r.shattered))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|s| s);
        if !found {
            // any subset of a shattered set is shattered
            break;
        }
        best = n;
    }
    Ok(best)
}

/// `n` random points; for equal disks they lie in a disk of diameter `R`, so
/// all pairs are within `R` of each other.
fn random_cloud(rng: &mut ChaCha8Rng, n: usize, fam: &RangeFamily) -> Vec<Point> {
    let scale = fam.natural_scale();
    (0..n)
        .map(|_| match fam {
            RangeFamily::EqualDisks { .. } => {
                let d = Disk::new(Point::default(), scale);
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                d.center + Point::polar(t) * (scale * rng.gen_range(0.0f64..1.0).sqrt())
            }
            _ => Point::new(rng.gen_range(0.0..scale), rng.gen_range(0.0..scale)),
        })
        .collect()
}
