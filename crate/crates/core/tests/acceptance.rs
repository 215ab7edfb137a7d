//! Acceptance suite: one PASS/FAIL line per criterion, with tolerances and
//! runtime budgets pinned below.
//!
//! Criteria listed in `KNOWN_FAILURES` are still run and still print FAIL;
//! they do not change the exit status. Any other failure exits non-zero.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use colander::arrangement::{build_arrangement_in, ArrangementOptions};
use colander::colander::grid_anchor_points;
use colander::experiments::{expected_region_scaling, least_squares, required_anchors_with_cap, run_trials};
use colander::geom::{Disk, Rect, Region};
use colander::sampling::{sample_region, SampleGrid};
use colander::{
    construct_grid_colander, distinct_signature_count, is_shattered, localize, point_signature,
    restrict_colander, sauer_g, strong_lower_bound, uniform_anchor_estimate, verify_colander, verify_region,
    weak_lower_bound, ColanderSpec, Point, RangeFamily, VerificationMethod,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated. Criterion 10 expects
/// `a² / (16 R ε)` at (1, 0.1, 0.01) to equal 625; the formula gives 62.5.
const KNOWN_FAILURES: &[u32] = &[10];

// budgets
const BUDGET_1: Duration = Duration::from_secs(30);
const BUDGET_2: Duration = Duration::from_secs(60);
const BUDGET_3: Duration = Duration::from_secs(60);
const BUDGET_4: Duration = Duration::from_secs(60);
const BUDGET_5: Duration = Duration::from_secs(120);
const BUDGET_6: Duration = Duration::from_secs(1);
const BUDGET_7: Duration = Duration::from_secs(120);
const BUDGET_8: Duration = Duration::from_secs(60);
const BUDGET_9: Duration = Duration::from_secs(120);
const BUDGET_10: Duration = Duration::from_secs(1);

// tolerances and sizes
const C1_CONFIGS: usize = 200;
const C1_MAX_N: usize = 12;
const C2_CONFIGS: usize = 50;
const C2_MAX_N: usize = 8;
const C2_PITCH_PER_R: f64 = 1.0 / 400.0;
const C2_EQUAL_FRACTION: f64 = 0.9;
const C3_TRIPLES: usize = 50;
const C3_QUADS: usize = 500;
const C3_COLLINEAR_TOL: f64 = 1e-9;
const C4_SETS: usize = 100;
const C4_MAX_N: usize = 12;
const C5_SPECS: [(f64, f64); 2] = [(0.25, 0.1 * SQRT_2), (0.1, 0.05 * SQRT_2)];
const C5_PITCH_PER_EPS: f64 = 0.1;
const C6_SPECS: usize = 20;
const C6_DENSITY_CONST: f64 = 8.0;
const C6_LOWER_CONST: f64 = 16.0;
const C7_CENTERS: usize = 10;
const C8_POSITIONS: usize = 1000;
const C9_R_VALUES: [usize; 4] = [8, 16, 32, 64];
const C9_TRIALS: usize = 30;
const C9_EXPONENT: (f64, f64) = (1.6, 2.2);
const C9_INFO_TRIALS: usize = 10;
const C9_SEARCH: (f64, f64) = (0.2, 0.25);
const C9_SEARCH_CAP: usize = 4000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, extent: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.gen_range(0.0..extent), rng.gen_range(0.0..extent)))
        .collect()
}

fn padded_box(points: &[Point], pad: f64) -> Rect {
    let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    Rect::new(lo - Point::new(pad, pad), hi + Point::new(pad, pad))
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let mut worst = String::new();
    for _ in 0..C1_CONFIGS {
        let n = rng.gen_range(1..=C1_MAX_N);
        let radius = rng.gen_range(0.2..1.5);
        let pts = random_points(&mut rng, n, 2.0);
        let arr = match build_arrangement_in(&pts, radius, None, &ArrangementOptions::default()) {
            Ok(a) => a,
            Err(e) => return outcome(false, format!("n={n}: {e}")),
        };
        let ceiling = n * n - n + 2;
        let sauer = sauer_g(n as u64, 3).unwrap();
        if arr.face_count > ceiling || arr.face_count as u128 > sauer {
            return outcome(false, format!("n={n}: {} faces > min({ceiling}, {sauer})", arr.face_count));
        }
        if worst.is_empty() && arr.face_count == ceiling {
            worst = format!("ceiling attained at n={n}");
        }
    }
    outcome(true, format!("{C1_CONFIGS} configurations within n^2-n+2 and g(n,3); {worst}"))
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut equal = 0;
    for _ in 0..C2_CONFIGS {
        let n = rng.gen_range(1..=C2_MAX_N);
        let radius = 1.0;
        let pts: Vec<Point> = random_points(&mut rng, n, 2.5)
            .into_iter()
            .map(|p| p + Point::new(rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3)))
            .collect();
        let arr = build_arrangement_in(&pts, radius, None, &ArrangementOptions::default()).unwrap();
        let region = Region::Rect(padded_box(&pts, 1.5 * radius));
        let grid = SampleGrid::new(Point::default(), C2_PITCH_PER_R * radius);
        let sampled = sample_region(&pts, radius, &region, &grid).unwrap();
        if let Some(extra) = sampled.signatures().find(|s| arr.face(s).is_none()) {
            return outcome(false, format!("sampled signature {extra} missing from the arrangement"));
        }
        if sampled.class_count() > arr.face_count {
            return outcome(false, format!("{} sampled > {} analytic", sampled.class_count(), arr.face_count));
        }
        equal += usize::from(sampled.class_count() == arr.face_count);
    }
    let frac = equal as f64 / C2_CONFIGS as f64;
    outcome(
        frac >= C2_EQUAL_FRACTION,
        format!("sampled <= analytic in all {C2_CONFIGS}; equal in {equal}/{C2_CONFIGS} (need {C2_EQUAL_FRACTION})"),
    )
}

fn adversarial_quads() -> Vec<Vec<Point>> {
    let p = Point::new;
    let mut sets = vec![
        vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)],
        vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(0.0, 1.0)],
        vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(3.0, 0.0)],
        vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, 0.9), p(0.5, 0.3)],
        vec![p(0.0, 1.0), p(1.0, 0.0), p(0.0, -1.0), p(-1.0, 0.0)],
        vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, 1e-6), p(0.5, 2.0)],
        vec![p(0.0, 0.0), p(4.0, 0.0), p(2.0, 0.05), p(2.0, -0.05)],
        vec![p(0.0, 0.0), p(1.0, 0.2), p(2.0, 0.0), p(1.0, 3.0)],
        vec![p(0.0, 0.0), p(3.0, 0.0), p(2.0, 1.0), p(1.0, 1.0)],
        vec![p(0.0, 0.0), p(1.0, 1e-9), p(2.0, 0.0), p(1.0, 1.0)],
    ];
    // points on a common circle at random angles
    let mut r = rng(33);
    for _ in 0..20 {
        sets.push((0..4).map(|_| Point::polar(r.gen_range(0.0..std::f64::consts::TAU))).collect());
    }
    sets
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let fam = RangeFamily::AllDisks;
    let mut checked = 0;
    for _ in 0..C3_TRIPLES {
        let a = random_points(&mut r, 3, 1.0);
        let area = (a[1] - a[0]).cross(a[2] - a[0]).abs();
        if area <= C3_COLLINEAR_TOL {
            continue;
        }
        checked += 1;
        let res = is_shattered(&a, &fam).unwrap();
        if !res.shattered {
            return outcome(false, format!("triple {a:?} misses {:?}", res.missing_subset));
        }
    }
    let mut quads = adversarial_quads();
    let adversarial = quads.len();
    while quads.len() < C3_QUADS {
        quads.push(random_points(&mut r, 4, 1.0));
    }
    for q in &quads {
        if is_shattered(q, &fam).unwrap().shattered {
            return outcome(false, format!("4-point set shattered: {q:?}"));
        }
    }
    outcome(
        true,
        format!("{checked}/{C3_TRIPLES} non-collinear triples shattered; 0 of {C3_QUADS} 4-point sets ({adversarial} adversarial) shattered"),
    )
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut tight = 0;
    for _ in 0..C4_SETS {
        let n = r.gen_range(1..=C4_MAX_N);
        let a = random_points(&mut r, n, 1.0);
        let count = distinct_signature_count(&a, &RangeFamily::AllDisks, 1.0).unwrap();
        let g = sauer_g(n as u64, 3).unwrap();
        if count as u128 > g {
            return outcome(false, format!("n={n}: {count} > g = {g}"));
        }
        tight += usize::from(count as u128 == g);
    }
    outcome(true, format!("{C4_SETS} sets within g(|A|,3); bound attained in {tight}"))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (radius, eps) in C5_SPECS {
        let spec = ColanderSpec::new(radius, eps, 1.0).unwrap();
        let s = construct_grid_colander(&spec).unwrap();
        let pitch = C5_PITCH_PER_EPS * eps;
        let rep = verify_colander(&s, &spec, VerificationMethod::Sampling, pitch).unwrap();
        let ok = rep.max_region_diameter <= eps + 2.0 * pitch;
        pass &= ok;
        parts.push(format!(
            "R={radius}: widest {:.6} vs {:.6}",
            rep.max_region_diameter,
            eps + 2.0 * pitch
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..C6_SPECS {
        let a = r.gen_range(0.5..4.0);
        let radius = r.gen_range(0.01..0.5) * a;
        let eps = r.gen_range(0.005..=0.25) * a;
        let spec = ColanderSpec::new(radius, eps, a).unwrap();
        let n = construct_grid_colander(&spec).unwrap().len() as f64;
        let density = n / (a * a);
        let ceiling = C6_DENSITY_CONST / (radius * eps);
        let lower = a * a / (C6_LOWER_CONST * radius * eps);
        if density > ceiling || n < lower {
            return outcome(false, format!("a={a} R={radius} eps={eps}: |S|={n}, ceiling {ceiling}, lower {lower}"));
        }
        worst_ratio = worst_ratio.max(density * radius * eps);
    }
    // the spec's own first example sits outside this regime
    let big = grid_anchor_points(0.5, SQRT_2, 1.0).len() as f64;
    outcome(
        true,
        format!(
            "{C6_SPECS} specs (eps <= a/4): max |S| R eps / a^2 = {worst_ratio:.3} <= 8, lower bound held; \
             note: R=0.5, eps=sqrt2 gives {:.2} > 8",
            big * 0.5 * SQRT_2
        ),
    )
}

fn criterion_7() -> Outcome {
    let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
    let s = construct_grid_colander(&spec).unwrap();
    let pitch = spec.default_resolution();
    let base = verify_colander(&s, &spec, VerificationMethod::Sampling, pitch).unwrap();
    if !base.is_colander {
        return outcome(false, "base colander did not verify");
    }
    let mut r = rng(7);
    let mut widest: f64 = 0.0;
    for _ in 0..C7_CENTERS {
        let p = Point::new(r.gen_range(0.25..0.75), r.gen_range(0.25..0.75));
        let piece = restrict_colander(&s, p, spec.radius);
        let region = Region::Disk(Disk::new(p, spec.radius));
        let v = verify_region(piece.points(), spec.radius, spec.epsilon, &region, VerificationMethod::Sampling, pitch)
            .unwrap();
        if !v.is_colander {
            return outcome(false, format!("center {p:?}: widest {}", v.max_region_diameter));
        }
        widest = widest.max(v.max_region_diameter);
    }
    outcome(true, format!("{C7_CENTERS} restrictions verified; widest class {widest:.6} (eps {:.6})", spec.epsilon))
}

fn criterion_8() -> Outcome {
    let spec = ColanderSpec::new(0.25, 0.1 * SQRT_2, 1.0).unwrap();
    let s = construct_grid_colander(&spec).unwrap();
    if !verify_colander(&s, &spec, VerificationMethod::Sampling, spec.default_resolution())
        .unwrap()
        .is_colander
    {
        return outcome(false, "colander did not verify");
    }
    let pitch = (spec.epsilon / 10.0).min(spec.radius / 50.0);
    let limit = spec.epsilon + 2.0 * pitch;
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..C8_POSITIONS {
        let p = Point::new(r.gen_range(0.25..0.75), r.gen_range(0.25..0.75));
        let sig = point_signature(p, s.points(), spec.radius);
        match localize(&sig, &s, &spec) {
            Ok(est) => {
                let e = est.representative.dist(p);
                worst = worst.max(e);
                failures += usize::from(e > limit);
            }
            Err(_) => failures += 1,
        }
    }
    outcome(failures == 0, format!("{failures} failures of {C8_POSITIONS}; worst error {worst:.6} (limit {limit:.6})"))
}

fn criterion_9() -> Outcome {
    let fit = expected_region_scaling(&C9_R_VALUES, C9_TRIALS, 1.0, 1.0, 9).unwrap();
    let ok = fit.exponent >= C9_EXPONENT.0 && fit.exponent <= C9_EXPONENT.1;

    // informational: classes clipped to the square, and a measured anchor count
    let (xs, ys): (Vec<f64>, Vec<f64>) = C9_R_VALUES
        .iter()
        .map(|&r| {
            let trials = run_trials(r, C9_INFO_TRIALS, 1.0, 1.0, 9).unwrap();
            let mean = trials.iter().map(|t| t.domain_face_count as f64).sum::<f64>() / trials.len() as f64;
            ((r as f64).ln(), mean.ln())
        })
        .unzip();
    let (clipped, _) = least_squares(&xs, &ys).unwrap();
    let (eps, radius) = C9_SEARCH;
    let search = required_anchors_with_cap(eps, radius, 1.0, C9_INFO_TRIALS, 9, C9_SEARCH_CAP).unwrap();
    let formula = uniform_anchor_estimate(eps).value;
    outcome(
        ok,
        format!(
            "exponent {:.4} in [{}, {}]; mean faces {:?}; info: clipped exponent {clipped:.4}, \
             R={radius} eps={eps:.3} needs r={} ({}/{} trials) vs formula {formula:.3}",
            fit.exponent, C9_EXPONENT.0, C9_EXPONENT.1, fit.mean_face_counts, search.r, search.successes, search.trials
        ),
    )
}

fn criterion_10() -> Outcome {
    let strong = strong_lower_bound(1.0, 0.1, 0.01).unwrap();
    let weak = weak_lower_bound(1.0, 0.1);
    let g = sauer_g(4, 3).unwrap();
    let checks = [
        (strong == 625.0, format!("strong_lower_bound(1, 0.1, 0.01) = {strong} (expected 625)")),
        (weak == 10.0, format!("weak_lower_bound(1, 0.1) = {weak}")),
        (g == 15, format!("sauer_g(4, 3) = {g}")),
    ];
    let pass = checks.iter().all(|(ok, _)| *ok);
    let detail = checks
        .iter()
        .map(|(ok, s)| format!("{s} [{}]", if *ok { "ok" } else { "mismatch" }))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (1, "region-count ceiling", BUDGET_1, criterion_1),
        (2, "duality: sampled vs analytic classes", BUDGET_2, criterion_2),
        (3, "VC dimension of disks is 3", BUDGET_3, criterion_3),
        (4, "Sauer bound", BUDGET_4, criterion_4),
        (5, "grid construction verifies", BUDGET_5, criterion_5),
        (6, "grid construction density", BUDGET_6, criterion_6),
        (7, "restriction", BUDGET_7, criterion_7),
        (8, "end-to-end decoding", BUDGET_8, criterion_8),
        (9, "uniform deployment scaling", BUDGET_9, criterion_9),
        (10, "bound formulas bit-exact", BUDGET_10, criterion_10),
    ];
    let mut unexpected = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let in_time = took <= budget;
        let pass = out.pass && in_time;
        let timing = format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs());
        let known = KNOWN_FAILURES.contains(&id);
        println!(
            "{} [{id:>2}] {name}: {} ({timing}{}){}",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            if in_time { "" } else { ", over budget" },
            if !pass && known { " [known failure]" } else { "" }
        );
        if !pass && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} unexpected acceptance failure(s)");
        std::process::exit(1);
    }
}
