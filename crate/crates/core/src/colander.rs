//! (R, ε)-colanders: the grid construction, verification, decoding a
//! signature back to a position, and restriction to a neighbourhood.
//!
//! A set `S` is an (R, ε)-colander for a region `D` when any two points of
//! `D` that hear the same anchors of `S` (within distance `R`) are at most
//! `ε` apart. Verification measures the widest signature class inside the
//! region, either from the disk arrangement clipped to the region
//! (`Analytic`) or from a sampling grid (`Sampling`).
//!
//! [`verify_colander`] reports two verdicts: one on the interior
//! `[R, a - R]²`, which is the headline `is_colander`, and one on the whole
//! square, which is informational.

use serde::{Deserialize, Serialize};

use crate::anchors::{AnchorSet, Provenance};
use crate::arrangement::{build_arrangement_in, ArrangementOptions};
use crate::error::{Error, Result};
use crate::geom::{Disk, DomainSquare, Point, Rect, Region, REL_TOL};
use crate::hull;
use crate::sampling::{sample_region, SampleGrid, SampledClasses};
use crate::signature::{AnchorIndex, Signature};

/// Problem parameters: radius `R`, target uncertainty `ε` and the domain
/// `[0, a]²`, with `R < a/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColanderSpec {
    pub radius: f64,
    pub epsilon: f64,
    pub domain: DomainSquare,
}

impl ColanderSpec {
    pub fn new(radius: f64, epsilon: f64, side: f64) -> Result<Self> {
        let domain = DomainSquare::new(side)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::SpecInvalid(format!("radius must be positive, got {radius}")));
        }
        if radius >= side / 2.0 {
            return Err(Error::SpecInvalid(format!(
                "radius {radius} must be below half the side ({})",
                side / 2.0
            )));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::SpecInvalid(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(ColanderSpec {
            radius,
            epsilon,
            domain,
        })
    }

    pub fn side(&self) -> f64 {
        self.domain.side
    }

    /// `[R, a - R]²`, non-empty because `R < a/2`.
    pub fn interior(&self) -> Rect {
        self.domain
            .inset(self.radius)
            .expect("R < a/2 leaves a non-empty interior")
    }

    /// Default sampling pitch for verification, `ε / 10`.
    pub fn default_resolution(&self) -> f64 {
        self.epsilon / 10.0
    }
}

/// The two coordinate sets of the grid construction: `K` (multiples of `R`)
/// and `J` (multiples of `ε/√2`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridIndexSets {
    pub k_values: Vec<f64>,
    pub j_values: Vec<f64>,
}

/// `K = {xR : 0 ≤ x ≤ a/R + 1}` and `J = {y ε/√2 : 0 ≤ y ≤ a√2/ε + 1}` over
/// integers `x`, `y`. No validation; see [`construct_grid_colander`].
pub fn grid_index_sets(radius: f64, epsilon: f64, side: f64) -> GridIndexSets {
    let step = epsilon / std::f64::consts::SQRT_2;
    // the 1e-9 guards exact integer bounds against rounding (e.g. √2/(0.1√2))
    let k_max = (side / radius + 1.0 + 1e-9).floor() as u64;
    let j_max = (side * std::f64::consts::SQRT_2 / epsilon + 1.0 + 1e-9).floor() as u64;
    GridIndexSets {
        k_values: (0..=k_max).map(|x| x as f64 * radius).collect(),
        j_values: (0..=j_max).map(|y| y as f64 * step).collect(),
    }
}

const SHARED_COORD_TOL: f64 = 1e-6;

/// `S = (K × J) ∪ (J × K)` with points common to both products listed once.
pub fn grid_anchor_points(radius: f64, epsilon: f64, side: f64) -> Vec<Point> {
    let sets = grid_index_sets(radius, epsilon, side);
    // relative to the finer spacing, so a rounded ε still merges shared points
    let tol = SHARED_COORD_TOL * radius.min(epsilon / std::f64::consts::SQRT_2);
    let shared = |v: f64, pool: &[f64]| pool.iter().any(|&w| (v - w).abs() <= tol);

    let mut points = Vec::with_capacity(2 * sets.k_values.len() * sets.j_values.len());
    // vertical lines x ∈ K, spaced ε/√2 apart along y
    for &k in &sets.k_values {
        for &j in &sets.j_values {
            points.push(Point::new(k, j));
        }
    }
    // horizontal lines y ∈ K; skip (j, k) already present as some (k', j')
    for &j in &sets.j_values {
        for &k in &sets.k_values {
            if shared(j, &sets.k_values) && shared(k, &sets.j_values) {
                continue;
            }
            points.push(Point::new(j, k));
        }
    }
    points
}

pub fn construct_grid_colander(spec: &ColanderSpec) -> Result<AnchorSet> {
    let spec = ColanderSpec::new(spec.radius, spec.epsilon, spec.side())?;
    Ok(AnchorSet::new(
        grid_anchor_points(spec.radius, spec.epsilon, spec.side()),
        Provenance::GridConstruction,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationMethod {
    Analytic,
    Sampling,
    Both,
}

impl std::str::FromStr for VerificationMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic" => Ok(VerificationMethod::Analytic),
            "sampling" => Ok(VerificationMethod::Sampling),
            "both" => Ok(VerificationMethod::Both),
            other => Err(format!("unknown method `{other}` (analytic|sampling|both)")),
        }
    }
}

/// Verdict for one region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: Region,
    pub is_colander: bool,
    pub max_region_diameter: f64,
    pub worst_signature: Signature,
    pub worst_pair: (Point, Point),
    pub class_count: usize,
    /// Allowance added to ε before comparing.
    pub slack: f64,
    /// Sampled diameter when both methods ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_diameter: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Interior verdict.
    pub is_colander: bool,
    pub max_region_diameter: f64,
    pub worst_signature: Signature,
    pub worst_pair: (Point, Point),
    pub method: VerificationMethod,
    pub resolution_used: f64,
    pub epsilon: f64,
    pub interior: RegionVerdict,
    pub full_domain: RegionVerdict,
}

/// Verifies `anchors` on the interior `[R, a - R]²` and on the full square.
///
/// `resolution` is the sampling pitch; it should be at most `ε/4` for a
/// meaningful sampling verdict, whose slack is `2 * resolution`.
pub fn verify_colander(
    anchors: &AnchorSet,
    spec: &ColanderSpec,
    method: VerificationMethod,
    resolution: f64,
) -> Result<VerificationReport> {
    let interior = verify_region(
        anchors.points(),
        spec.radius,
        spec.epsilon,
        &Region::Rect(spec.interior()),
        method,
        resolution,
    )?;
    let full_domain = verify_region(
        anchors.points(),
        spec.radius,
        spec.epsilon,
        &Region::Rect(spec.domain.rect()),
        method,
        resolution,
    )?;
    Ok(VerificationReport {
        is_colander: interior.is_colander,
        max_region_diameter: interior.max_region_diameter,
        worst_signature: interior.worst_signature.clone(),
        worst_pair: interior.worst_pair,
        method,
        resolution_used: resolution,
        epsilon: spec.epsilon,
        interior,
        full_domain,
    })
}

/// Colander check on an arbitrary region. Disk regions support sampling
/// only; the analytic route clips to rectangles.
pub fn verify_region(
    anchors: &[Point],
    radius: f64,
    epsilon: f64,
    region: &Region,
    method: VerificationMethod,
    resolution: f64,
) -> Result<RegionVerdict> {
    let sampled = || -> Result<RegionVerdict> {
        if !(resolution > 0.0) {
            return Err(Error::DegenerateInput(format!(
                "resolution must be positive, got {resolution}"
            )));
        }
        let grid = SampleGrid::new(Point::new(0.0, 0.0), resolution);
        let classes = sample_region(anchors, radius, region, &grid)?;
        Ok(verdict_from_samples(&classes, region, epsilon, 2.0 * resolution))
    };
    let analytic = || -> Result<RegionVerdict> {
        let Region::Rect(rect) = region else {
            return Err(Error::DegenerateInput(
                "analytic verification needs a rectangular region".into(),
            ));
        };
        let arr = build_arrangement_in(anchors, radius, Some(*rect), &ArrangementOptions::default())?;
        let widest = arr
            .widest_face()
            .expect("a clipped arrangement has at least one bounded face");
        let (d, a, b) = hull::diameter(&widest.sample_points).expect("non-empty face");
        let slack = 10.0 * REL_TOL * radius;
        Ok(RegionVerdict {
            region: *region,
            is_colander: d <= epsilon + slack,
            max_region_diameter: d,
            worst_signature: widest.signature.clone(),
            worst_pair: (a, b),
            class_count: arr.face_count,
            slack,
            sampled_diameter: None,
        })
    };
    match method {
        VerificationMethod::Sampling => sampled(),
        VerificationMethod::Analytic => analytic(),
        VerificationMethod::Both => {
            let mut exact = analytic()?;
            let approx = sampled()?;
            let slack = 2.0 * resolution;
            if approx.max_region_diameter > exact.max_region_diameter + slack {
                return Err(Error::CrossCheckFailure {
                    sampled: approx.max_region_diameter,
                    analytic: exact.max_region_diameter,
                    slack,
                });
            }
            exact.sampled_diameter = Some(approx.max_region_diameter);
            Ok(exact)
        }
    }
}

fn verdict_from_samples(
    classes: &SampledClasses,
    region: &Region,
    epsilon: f64,
    slack: f64,
) -> RegionVerdict {
    match classes.widest() {
        Some(w) => RegionVerdict {
            region: *region,
            is_colander: w.diameter <= epsilon + slack,
            max_region_diameter: w.diameter,
            worst_signature: w.signature,
            worst_pair: w.pair,
            class_count: classes.class_count(),
            slack,
            sampled_diameter: Some(w.diameter),
        },
        // region too small to hold a sample
        None => RegionVerdict {
            region: *region,
            is_colander: true,
            max_region_diameter: 0.0,
            worst_signature: Signature::empty(),
            worst_pair: (Point::default(), Point::default()),
            class_count: 0,
            slack,
            sampled_diameter: None,
        },
    }
}

/// Result of decoding a signature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionEstimate {
    pub representative: Point,
    pub diameter_bound: f64,
    pub signature: Signature,
    pub sample_count: usize,
}

/// Estimates the transmitter position from the set of anchors that heard
/// it: the centroid of all sampled domain points with the same signature.
/// Sampling pitch is `min(ε/10, R/50)`. Classes thinner than the pitch are
/// found in the exact arrangement of the nearby anchors instead, with
/// `sample_count` zero.
pub fn localize(sig: &Signature, anchors: &AnchorSet, spec: &ColanderSpec) -> Result<RegionEstimate> {
    let radius = spec.radius;
    let domain = spec.domain.rect();
    let points = anchors.points();
    if let Some(&bad) = sig.members().iter().find(|&&i| i as usize >= points.len()) {
        return Err(Error::DegenerateInput(format!("signature member {bad} out of range")));
    }

    // nobody can hear anything in the domain: the whole square is consistent
    let reach = radius * (1.0 + REL_TOL);
    if sig.is_empty() && points.iter().all(|p| !disk_meets_rect(&Disk::new(*p, reach), &domain)) {
        return Ok(RegionEstimate {
            representative: spec.domain.center(),
            diameter_bound: spec.domain.diagonal(),
            signature: sig.clone(),
            sample_count: 0,
        });
    }

    // consistent points lie within R of every heard anchor
    let mut search = Some(domain);
    for &i in sig.members() {
        let around = Rect::around(points[i as usize], reach);
        search = search.and_then(|s| s.intersect(&around));
    }
    let Some(search) = search else {
        return Err(Error::InfeasibleSignature);
    };

    let pitch = (spec.epsilon / 10.0).min(radius / 50.0);
    let grid = SampleGrid::new(Point::new(0.0, 0.0), pitch);
    let index = AnchorIndex::new(points, radius);
    let mut hits = Vec::new();
    for row in grid.rows(&Region::Rect(search))? {
        hits.extend(row.into_iter().filter(|&p| index.signature(p) == *sig));
    }
    if hits.is_empty() {
        // a sliver thinner than the pitch: fall back to the exact arrangement
        return localize_exact(sig, points, radius, search);
    }
    let n = hits.len() as f64;
    let sum = hits.iter().fold(Point::default(), |acc, &p| acc + p);
    let (diameter_bound, _, _) = hull::diameter(&hits).expect("non-empty");
    Ok(RegionEstimate {
        representative: sum * (1.0 / n),
        diameter_bound,
        signature: sig.clone(),
        sample_count: hits.len(),
    })
}

/// Looks `sig` up in the arrangement of the anchors that reach `search`.
fn localize_exact(sig: &Signature, points: &[Point], radius: f64, search: Rect) -> Result<RegionEstimate> {
    let reach = radius * (1.0 + REL_TOL);
    let (parents, local): (Vec<u32>, Vec<Point>) = points
        .iter()
        .enumerate()
        .filter(|(_, p)| disk_meets_rect(&Disk::new(**p, reach), &search))
        .map(|(i, p)| (i as u32, *p))
        .unzip();
    let arr = build_arrangement_in(&local, radius, Some(search), &ArrangementOptions::default())?;
    let face = arr
        .faces
        .iter()
        .find(|f| Signature::new(f.signature.members().iter().map(|&k| parents[k as usize]).collect()) == *sig)
        .ok_or(Error::InfeasibleSignature)?;
    Ok(RegionEstimate {
        representative: face.representative,
        diameter_bound: face.diameter,
        signature: sig.clone(),
        sample_count: 0,
    })
}

fn disk_meets_rect(d: &Disk, r: &Rect) -> bool {
    let nearest = Point::new(
        d.center.x.clamp(r.min.x, r.max.x),
        d.center.y.clamp(r.min.y, r.max.y),
    );
    nearest.dist(d.center) <= d.radius
}

/// `S ∩ B(p, 2R)`, recording the parent index of every kept anchor.
pub fn restrict_colander(anchors: &AnchorSet, center: Point, radius: f64) -> AnchorSet {
    let reach = 2.0 * radius * (1.0 + REL_TOL);
    let (parent_indices, points): (Vec<usize>, Vec<Point>) = anchors
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.dist(center) <= reach)
        .map(|(i, p)| (i, *p))
        .unzip();
    AnchorSet::new(
        points,
        Provenance::Restriction {
            center,
            parent_indices,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::point_signature;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::SQRT_2;

    #[test]
    fn sliver_classes_decode() {
        let spec = ColanderSpec::new(0.25, 0.1 * std::f64::consts::SQRT_2, 1.0).unwrap();
        let s = construct_grid_colander(&spec).unwrap();
        let p = Point::new(0.2513518706519787, 0.255259859910719);
        let est = localize(&point_signature(p, s.points(), spec.radius), &s, &spec).unwrap();
        assert_eq!(est.sample_count, 0);
        assert!(est.representative.dist(p) <= spec.epsilon);
    }

    #[test]
    fn spec_validation() {
        assert!(ColanderSpec::new(0.25, 0.1, 1.0).is_ok());
        assert!(matches!(ColanderSpec::new(0.5, 0.1, 1.0), Err(Error::SpecInvalid(_))));
        assert!(matches!(ColanderSpec::new(0.25, 0.0, 1.0), Err(Error::SpecInvalid(_))));
        assert!(matches!(ColanderSpec::new(0.0, 0.1, 1.0), Err(Error::SpecInvalid(_))));
        assert!(matches!(ColanderSpec::new(0.1, 0.1, -1.0), Err(Error::SpecInvalid(_))));
    }

    /// Independent count: enumerate the index sets with integer arithmetic
    /// where the values are commensurate.
    #[test]
    fn unit_grid_has_twenty_anchors() {
        let sets = grid_index_sets(0.5, SQRT_2, 1.0);
        assert_eq!(sets.k_values, vec![0.0, 0.5, 1.0, 1.5]);
        assert_eq!(sets.j_values.len(), 3);
        assert!((sets.j_values[2] - 2.0).abs() < 1e-15);
        assert_eq!(grid_anchor_points(0.5, SQRT_2, 1.0).len(), 20);
        assert_eq!(grid_anchor_points(0.5, 1.41421356, 1.0).len(), 20);
        // the same anchors with a valid spec (a slightly larger domain)
        let spec = ColanderSpec::new(0.5, SQRT_2, 1.01).unwrap();
        assert_eq!(construct_grid_colander(&spec).unwrap().len(), 20);
    }

    #[test]
    fn quarter_radius_grid_count() {
        // K = {0, .25, ..., 1.25} (6), J = {0, .1, ..., 1.1} (12); the values
        // common to both are 0, 0.5 and 1, so 3² points are shared.
        let sets = grid_index_sets(0.25, 0.1 * SQRT_2, 1.0);
        assert_eq!(sets.k_values.len(), 6);
        assert_eq!(sets.j_values.len(), 12);
        let s = grid_anchor_points(0.25, 0.1 * SQRT_2, 1.0);
        assert_eq!(s.len(), 2 * 6 * 12 - 9);
        assert_eq!(crate::anchors::dedup_points(&s, 1e-9).len(), s.len());
    }

    #[test]
    fn grid_rejects_invalid_spec() {
        let bad = ColanderSpec {
            radius: 0.6,
            epsilon: 0.1,
            domain: DomainSquare::new(1.0).unwrap(),
        };
        assert!(matches!(construct_grid_colander(&bad), Err(Error::SpecInvalid(_))));
    }

    #[test]
    fn grid_density_bound_in_fine_regime() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = rng.gen_range(0.5..3.0);
            let r = rng.gen_range(0.02..0.499) * a;
            let eps = rng.gen_range(0.01..0.25) * a;
            let spec = ColanderSpec::new(r, eps, a).unwrap();
            let n = construct_grid_colander(&spec).unwrap().len() as f64;
            assert!(n / (a * a) <= 8.0 / (r * eps), "a={a} R={r} eps={eps} n={n}");
            assert!(n >= a * a / (16.0 * r * eps));
        }
    }

    #[test]
    fn grid_colander_verifies_on_interior() {
        let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
        let s = construct_grid_colander(&spec).unwrap();
        let res = spec.epsilon / 10.0;
        let report = verify_colander(&s, &spec, VerificationMethod::Sampling, res).unwrap();
        assert!(report.is_colander, "{report:?}");
        assert!(report.max_region_diameter <= spec.epsilon + 2.0 * res);
    }

    #[test]
    fn grid_colander_analytic_agrees_with_sampling() {
        let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
        let s = construct_grid_colander(&spec).unwrap();
        let report = verify_colander(&s, &spec, VerificationMethod::Both, spec.epsilon / 10.0).unwrap();
        assert!(report.interior.is_colander, "{:?}", report.interior);
        assert!(report.interior.sampled_diameter.unwrap() <= report.max_region_diameter + spec.epsilon / 5.0);
    }

    #[test]
    fn single_anchor_is_not_a_colander() {
        let spec = ColanderSpec::new(0.1, 0.05, 1.0).unwrap();
        let s = AnchorSet::from_points([spec.domain.center()]);
        for method in [VerificationMethod::Analytic, VerificationMethod::Sampling] {
            let report = verify_colander(&s, &spec, method, 0.01).unwrap();
            assert!(!report.is_colander);
            assert_eq!(report.worst_signature, Signature::empty());
        }
    }

    #[test]
    fn empty_set_worst_pair_is_the_diagonal() {
        let spec = ColanderSpec::new(0.2, 0.5, 1.0).unwrap();
        let report =
            verify_colander(&AnchorSet::empty(), &spec, VerificationMethod::Analytic, 0.05).unwrap();
        assert!(!report.is_colander);
        let (p, q) = report.full_domain.worst_pair;
        let mut ends = [p, q];
        ends.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert!((p.dist(q) - SQRT_2).abs() < 1e-12);
        assert!(ends[0].x == 0.0 && ends[1].x == 1.0);
        assert!(!report.full_domain.is_colander);
    }

    #[test]
    fn analytic_on_disk_region_is_rejected() {
        let region = Region::Disk(Disk::new(Point::new(0.5, 0.5), 0.1));
        let err = verify_region(&[], 0.1, 0.1, &region, VerificationMethod::Analytic, 0.01);
        assert!(matches!(err, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn localize_corner_anchor() {
        let spec = ColanderSpec::new(1.0, 0.5, 4.0).unwrap();
        let s = AnchorSet::from_points([Point::new(0.0, 0.0)]);
        let est = localize(&Signature::new(vec![0]), &s, &spec).unwrap();
        let p = est.representative;
        assert!(p.norm() <= 1.0 && p.x >= 0.0 && p.y >= 0.0);
        // centroid of a quarter disk sits at 4/(3π) on both axes
        let c = 4.0 / (3.0 * std::f64::consts::PI);
        assert!((p.x - c).abs() < 0.02 && (p.y - c).abs() < 0.02, "{p:?}");
        let pitch = 0.02;
        assert!(est.diameter_bound <= SQRT_2 && est.diameter_bound >= SQRT_2 - 2.0 * pitch);
    }

    #[test]
    fn localize_with_no_anchors() {
        let spec = ColanderSpec::new(0.1, 0.5, 2.0).unwrap();
        let est = localize(&Signature::empty(), &AnchorSet::empty(), &spec).unwrap();
        assert_eq!(est.representative, Point::new(1.0, 1.0));
        assert_eq!(est.diameter_bound, 2.0 * SQRT_2);
    }

    #[test]
    fn localize_infeasible() {
        let spec = ColanderSpec::new(0.1, 0.05, 1.0).unwrap();
        let s = AnchorSet::from_points([Point::new(0.2, 0.2), Point::new(0.8, 0.8)]);
        assert!(matches!(
            localize(&Signature::new(vec![0, 1]), &s, &spec),
            Err(Error::InfeasibleSignature)
        ));
        assert!(matches!(
            localize(&Signature::new(vec![7]), &s, &spec),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn localize_round_trip_on_grid_colander() {
        let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
        let s = construct_grid_colander(&spec).unwrap();
        let pitch = (spec.epsilon / 10.0).min(spec.radius / 50.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = Point::new(rng.gen_range(0.25..0.75), rng.gen_range(0.25..0.75));
            let sig = point_signature(p, s.points(), spec.radius);
            let est = localize(&sig, &s, &spec).unwrap();
            assert!(est.representative.dist(p) <= spec.epsilon + 2.0 * pitch);
        }
    }

    #[test]
    fn restriction_examples() {
        let s = AnchorSet::from_points([Point::new(0.0, 0.0), Point::new(5.0, 5.0)]);
        assert!(restrict_colander(&s, Point::new(2.5, 2.5), 0.5).is_empty());

        let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
        let grid = construct_grid_colander(&spec).unwrap();
        let center = spec.domain.center();
        let sub = restrict_colander(&grid, center, spec.radius);
        let by_hand = grid.points().iter().filter(|p| p.dist(center) <= 0.5 + 1e-12).count();
        assert_eq!(sub.len(), by_hand);
        let Provenance::Restriction { parent_indices, .. } = sub.provenance() else {
            panic!("restriction provenance expected");
        };
        for (i, &pi) in parent_indices.iter().enumerate() {
            assert_eq!(sub.points()[i], grid.points()[pi]);
        }
    }

    #[test]
    fn restriction_preserves_heard_points() {
        let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
        let grid = construct_grid_colander(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let p = Point::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let sub = restrict_colander(&grid, p, spec.radius);
            for _ in 0..50 {
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                let q = p + Point::polar(t) * (spec.radius * rng.gen_range(0.0f64..1.0).sqrt());
                let heard = |set: &AnchorSet| {
                    let mut v: Vec<(u64, u64)> = point_signature(q, set.points(), spec.radius)
                        .members()
                        .iter()
                        .map(|&i| {
                            let a = set.points()[i as usize];
                            (a.x.to_bits(), a.y.to_bits())
                        })
                        .collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(heard(&sub), heard(&grid));
            }
        }
    }
}
