//! Brute-force signature classes by evaluating signatures on a regular grid.
//!
//! This is the independent oracle for the arrangement code: it knows nothing
//! about circles beyond point membership.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::anchors::AnchorSet;
use crate::error::{Error, Result};
use crate::geom::{DomainSquare, Point, Rect, Region};
use crate::hull;
use crate::signature::{AnchorIndex, Signature};

/// Upper limit on the number of grid cells a single sampling run may visit.
pub const MAX_GRID_CELLS: f64 = 1e8;

/// Grid phase as a fraction of the pitch: the fractional part of √2/2. An
/// irrational offset keeps sample points off rational boundaries.
pub const GRID_PHASE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Sample lattice `origin + (GRID_PHASE + k) * pitch` on both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub origin: Point,
    pub pitch: f64,
}

impl SampleGrid {
    pub fn new(origin: Point, pitch: f64) -> Self {
        SampleGrid { origin, pitch }
    }

    fn axis(&self, lo: f64, hi: f64, origin: f64) -> Vec<f64> {
        let first = ((lo - origin) / self.pitch - GRID_PHASE).ceil();
        let last = ((hi - origin) / self.pitch - GRID_PHASE).floor();
        if last < first {
            return Vec::new();
        }
        (first as i64..=last as i64)
            .map(|k| origin + (GRID_PHASE + k as f64) * self.pitch)
            .filter(|&v| v >= lo && v <= hi)
            .collect()
    }

    /// Checks the cell budget for `bbox` before any allocation.
    pub fn check_budget(&self, bbox: &Rect) -> Result<()> {
        let cells = (bbox.width() / self.pitch + 1.0) * (bbox.height() / self.pitch + 1.0);
        if !(cells <= MAX_GRID_CELLS) {
            return Err(Error::GridTooLarge {
                cells,
                limit: MAX_GRID_CELLS,
            });
        }
        Ok(())
    }

    /// Grid points inside `region`, row by row (rows bottom-to-top).
    pub fn rows(&self, region: &Region) -> Result<Vec<Vec<Point>>> {
        let bbox = region.bounding_box();
        self.check_budget(&bbox)?;
        let xs = self.axis(bbox.min.x, bbox.max.x, self.origin.x);
        let ys = self.axis(bbox.min.y, bbox.max.y, self.origin.y);
        Ok(ys
            .iter()
            .map(|&y| {
                xs.iter()
                    .map(|&x| Point::new(x, y))
                    .filter(|&p| region.contains(p))
                    .collect::<Vec<_>>()
            })
            .filter(|row| !row.is_empty())
            .collect())
    }
}

/// Sampled signature classes: each realized signature with the grid points
/// that produced it, in row-major order.
#[derive(Debug, Clone, Default)]
pub struct SampledClasses {
    pub classes: BTreeMap<Signature, Vec<Point>>,
    pub resolution: f64,
    pub sample_count: usize,
}

/// Diameter of one sampled class with the pair realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDiameter {
    pub signature: Signature,
    pub diameter: f64,
    pub pair: (Point, Point),
    pub samples: usize,
}

impl SampledClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.classes.keys()
    }

    /// Per-class diameters (convex hull + rotating calipers on the samples).
    pub fn diameters(&self) -> Vec<ClassDiameter> {
        self.classes
            .par_iter()
            .map(|(sig, pts)| {
                let (d, a, b) = hull::diameter(pts).expect("classes are non-empty");
                ClassDiameter {
                    signature: sig.clone(),
                    diameter: d,
                    pair: (a, b),
                    samples: pts.len(),
                }
            })
            .collect()
    }

    /// The class with the largest diameter; ties go to the smaller signature.
    pub fn widest(&self) -> Option<ClassDiameter> {
        self.diameters()
            .into_iter()
            .fold(None, |best: Option<ClassDiameter>, c| match best {
                Some(b) if b.diameter >= c.diameter => Some(b),
                _ => Some(c),
            })
    }

    /// Keeps only samples inside `region` (classes left empty are dropped).
    pub fn restricted_to(&self, region: &Region) -> SampledClasses {
        let mut classes = BTreeMap::new();
        let mut sample_count = 0;
        for (sig, pts) in &self.classes {
            let kept: Vec<Point> = pts.iter().copied().filter(|&p| region.contains(p)).collect();
            if !kept.is_empty() {
                sample_count += kept.len();
                classes.insert(sig.clone(), kept);
            }
        }
        SampledClasses {
            classes,
            resolution: self.resolution,
            sample_count,
        }
    }

    /// Classes that have at least one sample inside `region`, kept whole.
    pub fn meeting(&self, region: &Region) -> SampledClasses {
        let classes: BTreeMap<_, _> = self
            .classes
            .iter()
            .filter(|(_, pts)| pts.iter().any(|&p| region.contains(p)))
            .map(|(s, p)| (s.clone(), p.clone()))
            .collect();
        SampledClasses {
            sample_count: classes.values().map(Vec::len).sum(),
            classes,
            resolution: self.resolution,
        }
    }
}

/// Signature classes over `region` on `grid`. Rows are evaluated in parallel
/// and merged in row order, so the result does not depend on scheduling.
pub fn sample_region(
    anchors: &[Point],
    radius: f64,
    region: &Region,
    grid: &SampleGrid,
) -> Result<SampledClasses> {
    let rows = grid.rows(region)?;
    let index = AnchorIndex::new(anchors, radius);
    let partials: Vec<BTreeMap<Signature, Vec<Point>>> = rows
        .par_iter()
        .map(|row| {
            let mut local: BTreeMap<Signature, Vec<Point>> = BTreeMap::new();
            for &p in row {
                local.entry(index.signature(p)).or_default().push(p);
            }
            local
        })
        .collect();

    let mut classes: BTreeMap<Signature, Vec<Point>> = BTreeMap::new();
    let mut sample_count = 0;
    for part in partials {
        for (sig, mut pts) in part {
            sample_count += pts.len();
            classes.entry(sig).or_default().append(&mut pts);
        }
    }
    Ok(SampledClasses {
        classes,
        resolution: grid.pitch,
        sample_count,
    })
}

/// Distinct signatures over `[0, a]²` sampled at pitch `resolution`.
pub fn signatures_via_sampling(
    anchors: &AnchorSet,
    radius: f64,
    domain: DomainSquare,
    resolution: f64,
) -> Result<SampledClasses> {
    if !(resolution > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let grid = SampleGrid::new(Point::new(0.0, 0.0), resolution);
    sample_region(anchors.points(), radius, &domain.into(), &grid)
}
