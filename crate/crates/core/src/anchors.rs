//! Anchor sets (candidate colanders) and their CSV file format.
//!
//! The file format is one `x,y` pair per line with 17 significant digits;
//! blank lines and lines starting with `#` are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::g17;
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    GridConstruction,
    File,
    Random { seed: u64 },
    /// Sub-set of a parent anchor set; `parent_indices[i]` is the index in the
    /// parent of anchor `i` here.
    Restriction { center: Point, parent_indices: Vec<usize> },
    Manual,
}

/// Ordered list of anchor positions. Indices are stable and are what
/// signatures refer to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorSet {
    points: Vec<Point>,
    provenance: Provenance,
}

impl AnchorSet {
    pub fn new(points: Vec<Point>, provenance: Provenance) -> Self {
        AnchorSet { points, provenance }
    }

    pub fn empty() -> Self {
        AnchorSet::new(Vec::new(), Provenance::Manual)
    }

    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        AnchorSet::new(points.into_iter().collect(), Provenance::Manual)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Point> {
        self.points.get(i).copied()
    }

    /// Drops every point within `tol` of an earlier one, keeping the first
    /// occurrence.
    pub fn dedup(mut self, tol: f64) -> Self {
        self.points = dedup_points(&self.points, tol);
        self
    }

    /// Reads anchors from CSV text. With `dedup_tol`, duplicates within that
    /// distance are dropped.
    pub fn read_csv<R: BufRead>(reader: R, dedup_tol: Option<f64>) -> Result<Self> {
        let mut points = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (xs, ys) = line
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected `x,y`, got `{line}`")))?;
            let x: f64 = xs
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad x `{xs}`: {e}")))?;
            let y: f64 = ys
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad y `{ys}`: {e}")))?;
            let p = Point::new(x, y);
            if !p.is_finite() {
                return Err(parse_err("non-finite coordinate".into()));
            }
            points.push(p);
        }
        let set = AnchorSet::new(points, Provenance::File);
        Ok(match dedup_tol {
            Some(tol) => set.dedup(tol),
            None => set,
        })
    }

    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "# x,y ({} anchors)", self.points.len())?;
        for p in &self.points {
            writeln!(writer, "{},{}", g17(p.x), g17(p.y))?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>, dedup_tol: Option<f64>) -> Result<Self> {
        let file = File::open(path)?;
        AnchorSet::read_csv(BufReader::new(file), dedup_tol)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = File::create(path)?;
        self.write_csv(BufWriter::new(file))
    }
}

/// Order-preserving dedup. Sorts a copy by x so only a sliding window of
/// candidates is compared.
pub(crate) fn dedup_points(points: &[Point], tol: f64) -> Vec<Point> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let mut keep = vec![true; points.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in order[pos + 1..].iter() {
            if points[j].x - points[i].x > tol {
                break;
            }
            if points[i].dist(points[j]) <= tol {
                // drop whichever came later in the original order
                keep[i.max(j)] = false;
            }
        }
    }
    points
        .iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(*p))
        .collect()
}
