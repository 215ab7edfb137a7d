//! Signatures: which anchors hear a transmitter at a given point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{Point, Rect, REL_TOL};

/// Canonical (sorted, duplicate-free) set of anchor indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Signature(members)
    }

    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: u32) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// FNV-1a over the member list; stable across runs and platforms.
    pub fn stable_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &m in &self.0 {
            for b in m.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u32> for Signature {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        Signature::new(iter.into_iter().collect())
    }
}

/// `B(p, radius) ∩ anchors` as a signature, with closed-ball tolerance
/// `1e-9 * radius`. Linear scan; see [`AnchorIndex`] for repeated queries.
pub fn point_signature(p: Point, anchors: &[Point], radius: f64) -> Signature {
    let reach = radius * (1.0 + REL_TOL);
    Signature(
        anchors
            .iter()
            .enumerate()
            .filter(|(_, a)| a.dist(p) <= reach)
            .map(|(i, _)| i as u32)
            .collect(),
    )
}

/// Uniform bucket grid over anchor positions for fixed-radius queries.
#[derive(Debug, Clone)]
pub struct AnchorIndex<'a> {
    points: &'a [Point],
    radius: f64,
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    // CSR layout: anchors of cell c are items[starts[c]..starts[c + 1]]
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl<'a> AnchorIndex<'a> {
    pub fn new(points: &'a [Point], radius: f64) -> Self {
        let bounds = bounding_box(points).unwrap_or(Rect::new(Point::default(), Point::default()));
        let max_cells = 4 * points.len() + 64;
        let mut cell = radius.max(f64::MIN_POSITIVE);
        let extent = bounds.width().max(bounds.height());
        if extent > 0.0 {
            // keep the grid proportional to the number of anchors
            let floor = (bounds.width() * bounds.height()).sqrt() / (max_cells as f64).sqrt();
            cell = cell.max(floor).max(extent / (max_cells - 1) as f64);
        }
        let cols = ((bounds.width() / cell).floor() as usize + 1).min(max_cells);
        let rows = ((bounds.height() / cell).floor() as usize + 1).min(max_cells);

        let origin = bounds.min;
        let cell_of = |p: Point| {
            let cx = (((p.x - origin.x) / cell) as usize).min(cols - 1);
            let cy = (((p.y - origin.y) / cell) as usize).min(rows - 1);
            cy * cols + cx
        };
        let mut counts = vec![0u32; cols * rows + 1];
        for &p in points {
            counts[cell_of(p) + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut items = vec![0u32; points.len()];
        for (i, &p) in points.iter().enumerate() {
            let c = cell_of(p);
            items[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        AnchorIndex {
            points,
            radius,
            origin,
            cell,
            cols,
            rows,
            starts,
            items,
        }
    }

    pub fn points(&self) -> &'a [Point] {
        self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Calls `f(index, anchor)` for every anchor within `reach` of `p`.
    pub fn for_each_within(&self, p: Point, reach: f64, mut f: impl FnMut(u32, Point)) {
        if self.points.is_empty() {
            return;
        }
        let to_cell = |v: f64, o: f64, n: usize| -> Option<(usize, usize)> {
            let lo = ((v - reach - o) / self.cell).floor();
            let hi = ((v + reach - o) / self.cell).floor();
            if hi < 0.0 || lo > (n - 1) as f64 {
                return None;
            }
            Some((lo.max(0.0) as usize, (hi as usize).min(n - 1)))
        };
        let Some((x0, x1)) = to_cell(p.x, self.origin.x, self.cols) else {
            return;
        };
        let Some((y0, y1)) = to_cell(p.y, self.origin.y, self.rows) else {
            return;
        };
        // loose squared prefilter; the hypot test below decides, as in point_signature
        let reach_sq = reach * reach * (1.0 + 1e-12);
        for cy in y0..=y1 {
            let row = cy * self.cols;
            let (s, e) = (
                self.starts[row + x0] as usize,
                self.starts[row + x1 + 1] as usize,
            );
            for &i in &self.items[s..e] {
                let a = self.points[i as usize];
                if a.dist_sq(p) <= reach_sq && a.dist(p) <= reach {
                    f(i, a);
                }
            }
        }
    }

    /// Same result as [`point_signature`] with this index's radius.
    pub fn signature(&self, p: Point) -> Signature {
        let mut members = Vec::new();
        self.for_each_within(p, self.radius * (1.0 + REL_TOL), |i, _| members.push(i));
        members.sort_unstable();
        Signature(members)
    }

    /// Smallest `|dist(p, anchor) - radius|` over anchors within `2 * radius`
    /// of `p`, capped at `radius`: how far `p` is from every circle boundary.
    pub fn boundary_clearance(&self, p: Point, skip: Option<u32>) -> f64 {
        let mut best = self.radius;
        self.for_each_within(p, 2.0 * self.radius, |i, a| {
            if Some(i) != skip {
                best = best.min((a.dist(p) - self.radius).abs());
            }
        });
        best
    }
}

pub(crate) fn bounding_box(points: &[Point]) -> Option<Rect> {
    let first = *points.first()?;
    let mut r = Rect::new(first, first);
    for p in &points[1..] {
        r.min.x = r.min.x.min(p.x);
        r.min.y = r.min.y.min(p.y);
        r.max.x = r.max.x.max(p.x);
        r.max.y = r.max.y.max(p.y);
    }
    Some(r)
}
