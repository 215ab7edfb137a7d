//! Monte Carlo experiments on uniformly deployed anchors, and the uniform
//! `δ`-grid scan.
//!
//! Deployment `(seed, r)` is the first `r` points drawn from a `ChaCha8Rng`
//! seeded with `seed`, uniform on `[0, a]²`. Deployments with the same seed
//! are therefore nested, which makes the measured uncertainty monotone in `r`.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{build_arrangement_in, Arrangement, ArrangementOptions};
use crate::colander::{verify_region, VerificationMethod};
use crate::error::{Error, Result};
use crate::format::g17;
use crate::geom::{DomainSquare, Point, Rect, Region};
use crate::rng::stream_seed;
use crate::sampling::SampleGrid;
use crate::signature::AnchorIndex;

/// Default ceiling for [`required_anchors_for_epsilon`].
pub const DEFAULT_ANCHOR_SEARCH_CAP: usize = 10_000;
/// Fraction of trials that must reach the target uncertainty.
pub const SUCCESS_FRACTION: f64 = 0.9;
/// Finest sampling pitch used by a trial, as a fraction of the side.
const MIN_TRIAL_PITCH: f64 = 1.0 / 2000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub r: usize,
    pub radius: f64,
    pub side: f64,
    pub seed: u64,
    /// Faces of the whole-plane arrangement of the deployed disks.
    pub face_count: usize,
    /// Signature classes that meet the square.
    pub domain_face_count: usize,
    /// Widest signature class over the whole square.
    pub max_region_diameter: f64,
    pub mean_region_diameter: f64,
    /// Widest class among those that meet the interior `[R, a - R]²`.
    pub achieved_epsilon: f64,
}

impl TrialResult {
    pub const CSV_HEADER: &'static str = "r,seed,face_count,max_diam,mean_diam";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.r,
            self.seed,
            self.face_count,
            g17(self.max_region_diameter),
            g17(self.mean_region_diameter)
        )
    }
}

pub fn write_trials_csv<W: Write>(trials: &[TrialResult], mut out: W) -> Result<()> {
    writeln!(out, "{}", TrialResult::CSV_HEADER)?;
    for t in trials {
        writeln!(out, "{}", t.csv_row())?;
    }
    Ok(())
}

/// The first `r` points of deployment `seed`.
pub fn uniform_deployment(r: usize, side: f64, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..r)
        .map(|_| Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side)))
        .collect()
}

fn check_params(radius: f64, side: f64) -> Result<DomainSquare> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::DegenerateInput(format!("radius must be positive, got {radius}")));
    }
    DomainSquare::new(side)
}

fn clipped_arrangement(points: &[Point], radius: f64, domain: &DomainSquare) -> Result<Arrangement> {
    let opts = ArrangementOptions {
        anchor_cap: points.len().max(ArrangementOptions::default().anchor_cap),
        ..ArrangementOptions::default()
    };
    build_arrangement_in(points, radius, Some(domain.rect()), &opts)
}

fn plane_face_count(points: &[Point], radius: f64) -> Result<usize> {
    let opts = ArrangementOptions {
        anchor_cap: points.len().max(ArrangementOptions::default().anchor_cap),
        ..ArrangementOptions::default()
    };
    Ok(build_arrangement_in(points, radius, None, &opts)?.face_count)
}

/// Face count of the whole-plane arrangement of deployment `seed`.
pub fn uniform_face_count(r: usize, radius: f64, side: f64, seed: u64) -> Result<usize> {
    check_params(radius, side)?;
    plane_face_count(&uniform_deployment(r, side, seed), radius)
}

/// Counts the faces of deployment `seed`, then measures its classes on the
/// arrangement clipped to the square. Diameters are the arrangement's boundary-sample diameters;
/// which classes meet the interior is decided by sampling the interior at
/// pitch `min(R, a) / 100` (no finer than `a / 2000`).
pub fn run_uniform_trial(r: usize, radius: f64, side: f64, seed: u64) -> Result<TrialResult> {
    let domain = check_params(radius, side)?;
    let points = uniform_deployment(r, side, seed);
    let arr = clipped_arrangement(&points, radius, &domain)?;

    let diameters: Vec<f64> = arr.faces.iter().map(|f| f.diameter).collect();
    let max_region_diameter = diameters.iter().copied().fold(0.0, f64::max);
    let mean_region_diameter = diameters.iter().sum::<f64>() / diameters.len() as f64;

    let interior = domain.inset(radius).unwrap_or_else(|| domain.rect());
    let pitch = (radius.min(side) / 100.0).max(side * MIN_TRIAL_PITCH);
    let index = AnchorIndex::new(&points, radius);
    let rows = SampleGrid::new(Point::default(), pitch).rows(&Region::Rect(interior))?;
    let mut seen: Vec<bool> = vec![false; arr.faces.len()];
    for row in &rows {
        for &p in row {
            let sig = index.signature(p);
            if let Ok(i) = arr.faces.binary_search_by(|f| f.signature.cmp(&sig)) {
                seen[i] = true;
            }
        }
    }
    let achieved_epsilon = arr
        .faces
        .iter()
        .zip(&seen)
        .filter(|(_, &s)| s)
        .map(|(f, _)| f.diameter)
        .fold(0.0, f64::max);

    Ok(TrialResult {
        r,
        radius,
        side,
        seed,
        face_count: plane_face_count(&points, radius)?,
        domain_face_count: arr.face_count,
        max_region_diameter,
        mean_region_diameter,
        achieved_epsilon,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// Slope of `ln(mean face count)` against `ln r`.
    pub exponent: f64,
    pub intercept: f64,
    pub r_values: Vec<usize>,
    pub mean_face_counts: Vec<f64>,
    pub trials_per_r: usize,
}

/// Least-squares line through `(xs, ys)`: `(slope, intercept)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit("x values have no spread".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Mean whole-plane face count over `trials` deployments for each `r`, with a
/// log-log fit. Trial `t` at anchor count `r` uses seed
/// `stream_seed(seed, r, t)`.
pub fn expected_region_scaling(
    r_values: &[usize],
    trials: usize,
    radius: f64,
    side: f64,
    seed: u64,
) -> Result<ScalingFit> {
    check_params(radius, side)?;
    if trials == 0 {
        return Err(Error::DegenerateFit("need at least one trial".into()));
    }
    if r_values.len() < 2 || r_values.windows(2).any(|w| w[0] >= w[1]) || r_values[0] == 0 {
        return Err(Error::DegenerateFit(format!(
            "r values must be positive and strictly increasing, got {r_values:?}"
        )));
    }
    let jobs: Vec<(usize, usize)> = r_values
        .iter()
        .flat_map(|&r| (0..trials).map(move |t| (r, t)))
        .collect();
    let counts = jobs
        .par_iter()
        .map(|&(r, t)| uniform_face_count(r, radius, side, stream_seed(seed, r as u64, t as u64)))
        .collect::<Result<Vec<usize>>>()?;
    let mean_face_counts: Vec<f64> = counts
        .chunks(trials)
        .map(|c| c.iter().sum::<usize>() as f64 / trials as f64)
        .collect();
    let xs: Vec<f64> = r_values.iter().map(|&r| (r as f64).ln()).collect();
    let ys: Vec<f64> = mean_face_counts.iter().map(|m| m.ln()).collect();
    let (exponent, intercept) = least_squares(&xs, &ys)?;
    Ok(ScalingFit {
        exponent,
        intercept,
        r_values: r_values.to_vec(),
        mean_face_counts,
        trials_per_r: trials,
    })
}

/// Outcome of the anchor-count search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorSearch {
    pub r: usize,
    pub successes: usize,
    pub trials: usize,
    pub success_fraction: f64,
    /// Trial achieved-ε values at the returned `r`.
    pub achieved: Vec<f64>,
}

/// Smallest `r` for which at least 90% of `trials` deployments reach
/// `achieved_epsilon ≤ ε`, searching up to [`DEFAULT_ANCHOR_SEARCH_CAP`].
pub fn required_anchors_for_epsilon(
    epsilon: f64,
    radius: f64,
    side: f64,
    trials: usize,
    seed: u64,
) -> Result<AnchorSearch> {
    required_anchors_with_cap(epsilon, radius, side, trials, seed, DEFAULT_ANCHOR_SEARCH_CAP)
}

/// As [`required_anchors_for_epsilon`] with an explicit cap. Doubles `r`
/// until the target is met, then bisects.
pub fn required_anchors_with_cap(
    epsilon: f64,
    radius: f64,
    side: f64,
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<AnchorSearch> {
    check_params(radius, side)?;
    if !(epsilon > 0.0) || trials == 0 {
        return Err(Error::DegenerateInput(format!(
            "need epsilon > 0 and trials > 0 (epsilon={epsilon}, trials={trials})"
        )));
    }
    let need = (SUCCESS_FRACTION * trials as f64).ceil() as usize;
    let evaluate = |r: usize| -> Result<AnchorSearch> {
        let achieved = (0..trials)
            .into_par_iter()
            .map(|t| {
                run_uniform_trial(r, radius, side, stream_seed(seed, u64::MAX, t as u64))
                    .map(|tr| tr.achieved_epsilon)
            })
            .collect::<Result<Vec<f64>>>()?;
        let successes = achieved.iter().filter(|&&e| e <= epsilon).count();
        Ok(AnchorSearch {
            r,
            successes,
            trials,
            success_fraction: successes as f64 / trials as f64,
            achieved,
        })
    };

    let mut fail = None;
    let mut r = 0;
    let found = loop {
        let out = evaluate(r)?;
        if out.successes >= need {
            break out;
        }
        fail = Some(r);
        if r >= cap {
            return Err(Error::SearchExhausted { cap, epsilon });
        }
        r = (2 * r).max(1).min(cap);
    };
    let Some(mut lo) = fail else {
        return Ok(found);
    };
    let mut best = found;
    while best.r - lo > 1 {
        let mid = lo + (best.r - lo) / 2;
        let out = evaluate(mid)?;
        if out.successes >= need {
            best = out;
        } else {
            lo = mid;
        }
    }
    Ok(best)
}

/// `{(iδ, jδ) : 0 ≤ i, j ≤ a/δ + 1}`.
pub fn uniform_grid_anchors(delta: f64, side: f64) -> Vec<Point> {
    let k = (side / delta + 1.0 + 1e-9).floor() as usize;
    (0..=k)
        .flat_map(|i| (0..=k).map(move |j| Point::new(i as f64 * delta, j as f64 * delta)))
        .collect()
}

/// Widest signature class on the interior `[R, a - R]²` for the uniform
/// `δ`-grid, by sampling at `resolution`: an empirical upper estimate of
/// the smallest `ε` for which the grid is a colander there.
pub fn grid_epsilon_estimate(delta: f64, radius: f64, side: f64, resolution: f64) -> Result<f64> {
    let domain = check_params(radius, side)?;
    if !(delta > 0.0) || !(resolution > 0.0) || resolution > delta / 10.0 {
        return Err(Error::DegenerateInput(format!(
            "need delta > 0 and 0 < resolution <= delta/10 (delta={delta}, resolution={resolution})"
        )));
    }
    let region = domain.inset(radius).unwrap_or_else(|| domain.rect());
    let anchors = uniform_grid_anchors(delta, side);
    let verdict = verify_region(
        &anchors,
        radius,
        f64::INFINITY,
        &Region::Rect(region),
        VerificationMethod::Sampling,
        resolution,
    )?;
    Ok(verdict.max_region_diameter)
}

/// Summary of a batch of trials, for JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub r: usize,
    pub trials: usize,
    pub mean_face_count: f64,
    pub max_face_count: usize,
    pub mean_achieved_epsilon: f64,
    pub face_ceiling: usize,
}

pub fn summarize(r: usize, trials: &[TrialResult]) -> TrialSummary {
    let n = trials.len().max(1) as f64;
    TrialSummary {
        r,
        trials: trials.len(),
        mean_face_count: trials.iter().map(|t| t.face_count as f64).sum::<f64>() / n,
        max_face_count: trials.iter().map(|t| t.face_count).max().unwrap_or(0),
        mean_achieved_epsilon: trials.iter().map(|t| t.achieved_epsilon).sum::<f64>() / n,
        face_ceiling: (r * r + 2).saturating_sub(r),
    }
}

/// `trials` independent trials at anchor count `r`, seeds
/// `stream_seed(seed, r, t)`, in trial order.
pub fn run_trials(r: usize, trials: usize, radius: f64, side: f64, seed: u64) -> Result<Vec<TrialResult>> {
    (0..trials)
        .into_par_iter()
        .map(|t| run_uniform_trial(r, radius, side, stream_seed(seed, r as u64, t as u64)))
        .collect()
}

/// The interior `[R, a - R]²`, or the whole square when `R ≥ a/2`.
pub fn interior_or_domain(radius: f64, side: f64) -> Result<Rect> {
    let domain = check_params(radius, side)?;
    Ok(domain.inset(radius).unwrap_or_else(|| domain.rect()))
}
