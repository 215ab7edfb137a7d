//! Command-line front end.
//!
//! stdout carries only JSON (or nothing when `--out` is given); prose goes
//! to stderr with `--verbose`. Exit codes: 0 success, 1 runtime or I/O
//! failure, 2 usage or invalid parameters. `COLANDER_THREADS` caps the
//! worker pool.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::anchors::AnchorSet;
use crate::arrangement::build_arrangement;
use crate::bounds::{
    audit_bounds, strong_lower_bound, uniform_anchor_estimate, vc_shape_lower_bound, weak_lower_bound,
};
use crate::colander::{
    construct_grid_colander, localize, verify_colander, ColanderSpec, VerificationMethod,
};
use crate::error::{Error, Result};
use crate::experiments::{
    expected_region_scaling, grid_epsilon_estimate, required_anchors_with_cap, run_trials, summarize,
    write_trials_csv, DEFAULT_ANCHOR_SEARCH_CAP, SUCCESS_FRACTION,
};
use crate::format::g17;
use crate::geom::{DomainSquare, Point, REL_TOL};
use crate::signature::{point_signature, Signature};
use crate::svg::Scene;
use crate::vc::{distinct_signature_count, is_shattered, vc_dimension_estimate, RangeFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "colander", version, about = "Construct, verify and analyze (R, epsilon)-colanders")]
pub struct Cli {
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct SpecArgs {
    /// Transmission radius R.
    #[arg(long)]
    pub radius: f64,
    /// Target localization uncertainty.
    #[arg(long)]
    pub epsilon: f64,
    /// Side a of the domain [0, a]^2.
    #[arg(long)]
    pub side: f64,
}

impl SpecArgs {
    fn spec(&self) -> Result<ColanderSpec> {
        ColanderSpec::new(self.radius, self.epsilon, self.side)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Analytic,
    Sampling,
    Both,
}

impl From<MethodArg> for VerificationMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => VerificationMethod::Analytic,
            MethodArg::Sampling => VerificationMethod::Sampling,
            MethodArg::Both => VerificationMethod::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    AllDisks,
    EqualDisks,
    SquareTranslates,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the grid colander and write it as CSV.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Anchor CSV destination.
        #[arg(long, default_value = "anchors.csv")]
        anchors: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the colander property of an anchor file.
    Verify {
        #[arg(long)]
        anchors: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "sampling")]
        method: MethodArg,
        /// Sampling pitch; defaults to epsilon / 10.
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decode a signature (or the signature heard at a point) to a position.
    Localize {
        #[arg(long)]
        anchors: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated anchor indices; empty for the empty signature.
        #[arg(long, conflicts_with = "point", allow_hyphen_values = true)]
        signature: Option<String>,
        /// True position `x,y`; its signature is decoded.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Enumerate the arrangement of the anchor disks.
    Arrange {
        #[arg(long)]
        anchors: PathBuf,
        #[arg(long)]
        radius: f64,
        /// Clip to [0, side]^2.
        #[arg(long)]
        side: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// VC-dimension search, or shattering of a given point file.
    Vc {
        #[arg(long, value_enum, default_value = "all-disks")]
        family: FamilyArg,
        /// Disk radius or square side for the fixed-size families.
        #[arg(long, default_value_t = 1.0)]
        size: f64,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points to test for shattering instead of searching.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Lower-bound formulas, with an optional audit of an anchor file.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// Audit this anchor set (sampling verification at epsilon / 10).
        #[arg(long)]
        anchors: Option<PathBuf>,
    },
    /// Uniform random deployments: face-count scaling and anchor search.
    Montecarlo {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        side: f64,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        r_values: Vec<usize>,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-trial CSV rows destination.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also search the anchor count needed for this epsilon.
        #[arg(long)]
        search_epsilon: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ANCHOR_SEARCH_CAP)]
        search_cap: usize,
    },
    /// Colander uncertainty of uniform delta-grids.
    Gridscan {
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<f64>,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        side: f64,
        /// Sampling pitch; defaults to delta / 10.
        #[arg(long)]
        resolution: Option<f64>,
    },
}

/// JSON formatter printing every float with 17 significant digits.
struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(g17(value).as_bytes())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("JSON is UTF-8"))
}

/// Errors that mean "bad arguments" rather than "the run failed".
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::SpecInvalid(_) | Error::DegenerateInput(_) | Error::TooManyPoints { .. }
    )
}

struct Output {
    verbose: bool,
    out: Option<PathBuf>,
}

impl Output {
    fn note(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn emit<T: Serialize>(&self, value: &T) -> Result<()> {
        let text = to_json(value)?;
        match &self.out {
            Some(path) => fs::write(path, text + "\n")?,
            None => println!("{text}"),
        }
        Ok(())
    }
}

fn write_svg(path: &Path, scene: Scene<'_>) -> Result<()> {
    fs::write(path, scene.render())?;
    Ok(())
}

fn parse_point(text: &str) -> Result<Point> {
    let bad = || Error::DegenerateInput(format!("expected `x,y`, got `{text}`"));
    let (x, y) = text.split_once(',').ok_or_else(bad)?;
    let p = Point::new(
        x.trim().parse().map_err(|_| bad())?,
        y.trim().parse().map_err(|_| bad())?,
    );
    if p.is_finite() {
        Ok(p)
    } else {
        Err(bad())
    }
}

fn parse_signature(text: &str) -> Result<Signature> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::DegenerateInput(format!("bad anchor index `{s}`")))
        })
        .collect::<Result<Vec<u32>>>()
        .map(Signature::new)
}

fn thread_count() -> std::result::Result<Option<usize>, String> {
    match std::env::var("COLANDER_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(format!("COLANDER_THREADS must be an integer >= 1, got `{v}`")),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match thread_count() {
        Ok(Some(n)) => {
            // fails only if a pool already exists, e.g. when run twice in-process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    }
    let out = Output {
        verbose: cli.verbose,
        out: cli.out.clone(),
    };
    match execute(cli.command, &out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_RUNTIME
            }
        }
    }
}

fn load_anchors(path: &Path, radius: Option<f64>) -> Result<AnchorSet> {
    AnchorSet::load(path, radius.map(|r| REL_TOL * r))
}

fn execute(command: Command, out: &Output) -> Result<()> {
    match command {
        Command::Construct { spec, anchors, svg } => {
            let spec = spec.spec()?;
            let set = construct_grid_colander(&spec)?;
            set.save(&anchors)?;
            let a = spec.side();
            let n = set.len() as f64;
            let density = n / (a * a);
            let density_ceiling = 8.0 / (spec.radius * spec.epsilon);
            out.note(format!(
                "grid colander: {} anchors, density {} (ceiling 8/(R eps) = {})",
                set.len(),
                g17(density),
                g17(density_ceiling)
            ));
            if let Some(path) = svg {
                write_svg(&path, Scene {
                    anchors: set.points(),
                    radius: spec.radius,
                    domain: Some(spec.domain),
                    ..Scene::default()
                })?;
            }
            out.emit(&json!({
                "anchor_count": set.len(),
                "density": density,
                "density_ceiling": density_ceiling,
                "within_ceiling": density <= density_ceiling,
                "strong_lower": strong_lower_bound(a, spec.radius, spec.epsilon)?,
                "anchors_path": anchors,
            }))
        }
        Command::Verify {
            anchors,
            spec,
            method,
            resolution,
            svg,
        } => {
            let spec = spec.spec()?;
            let set = load_anchors(&anchors, Some(spec.radius))?;
            let res = resolution.unwrap_or_else(|| spec.default_resolution());
            let report = verify_colander(&set, &spec, method.into(), res)?;
            out.note(format!(
                "{} anchors: interior colander = {}, widest class {} (epsilon {}); full square = {}, widest {}",
                set.len(),
                report.is_colander,
                g17(report.max_region_diameter),
                g17(spec.epsilon),
                report.full_domain.is_colander,
                g17(report.full_domain.max_region_diameter)
            ));
            if let Some(path) = svg {
                write_svg(&path, Scene {
                    anchors: set.points(),
                    radius: spec.radius,
                    domain: Some(spec.domain),
                    marks: vec![report.worst_pair.0, report.worst_pair.1],
                    ..Scene::default()
                })?;
            }
            out.emit(&report)
        }
        Command::Localize {
            anchors,
            spec,
            signature,
            point,
        } => {
            let spec = spec.spec()?;
            let set = load_anchors(&anchors, Some(spec.radius))?;
            let (sig, truth) = match (signature, point) {
                (Some(s), _) => (parse_signature(&s)?, None),
                (None, Some(p)) => {
                    let p = parse_point(&p)?;
                    (point_signature(p, set.points(), spec.radius), Some(p))
                }
                (None, None) => {
                    return Err(Error::DegenerateInput("give --signature or --point".into()))
                }
            };
            let est = localize(&sig, &set, &spec)?;
            out.note(format!(
                "signature {} -> {}, {} (region diameter {})",
                sig,
                g17(est.representative.x),
                g17(est.representative.y),
                g17(est.diameter_bound)
            ));
            let error = truth.map(|p| p.dist(est.representative));
            out.emit(&json!({ "estimate": est, "true_point": truth, "error": error }))
        }
        Command::Arrange {
            anchors,
            radius,
            side,
            svg,
        } => {
            let domain = side.map(DomainSquare::new).transpose()?;
            let set = load_anchors(&anchors, Some(radius))?;
            let arr = build_arrangement(&set, radius, domain)?;
            out.note(format!(
                "{} disks: {} faces, {} vertices (ceiling n^2 - n + 2 = {})",
                set.len(),
                arr.face_count,
                arr.vertex_count,
                (set.len() * set.len() + 2).saturating_sub(set.len())
            ));
            if let Some(path) = svg {
                write_svg(&path, Scene {
                    anchors: set.points(),
                    radius,
                    domain,
                    arrangement: Some(&arr),
                    ..Scene::default()
                })?;
            }
            out.emit(&json!({
                "face_count": arr.face_count,
                "vertex_count": arr.vertex_count,
                "diameter_accuracy": arr.diameter_accuracy(),
                "arrangement": arr.to_document(),
            }))
        }
        Command::Vc {
            family,
            size,
            nmax,
            trials,
            seed,
            points,
        } => {
            let fam = match family {
                FamilyArg::AllDisks => RangeFamily::AllDisks,
                FamilyArg::EqualDisks => RangeFamily::EqualDisks { radius: size },
                FamilyArg::SquareTranslates => RangeFamily::SquareTranslates { side: size },
            };
            if let Some(path) = points {
                let a = AnchorSet::load(&path, None)?;
                let shatter = is_shattered(a.points(), &fam)?;
                let count = distinct_signature_count(a.points(), &fam, 1.0)?;
                out.note(format!(
                    "{} points: shattered = {}, {} distinct subsets",
                    a.len(),
                    shatter.shattered,
                    count
                ));
                return out.emit(&json!({
                    "family": fam,
                    "shattered": shatter.shattered,
                    "missing_subset": shatter.missing_subset,
                    "distinct_subsets": count,
                    "witness_ranges": shatter.witness_ranges,
                }));
            }
            let d = vc_dimension_estimate(&fam, nmax, trials, seed)?;
            out.note(format!(
                "VC dimension estimate for {fam:?}: {d} (searched n <= {nmax}, {trials} random sets per n)"
            ));
            out.emit(&json!({
                "family": fam,
                "vc_dimension_estimate": d,
                "label": "estimated (lower bound certified, upper bound by exhaustion up to n_max)",
                "n_max": nmax,
                "trials": trials,
                "seed": seed,
            }))
        }
        Command::Bounds { spec, anchors } => {
            let spec = spec.spec()?;
            let a = spec.side();
            let uniform = uniform_anchor_estimate(spec.epsilon);
            let audit = match anchors {
                Some(path) => {
                    let set = load_anchors(&path, Some(spec.radius))?;
                    let report = verify_colander(
                        &set,
                        &spec,
                        VerificationMethod::Sampling,
                        spec.default_resolution(),
                    )?;
                    Some(audit_bounds(&set, &spec, &report)?)
                }
                None => None,
            };
            let construction = construct_grid_colander(&spec)?.len();
            let report = json!({
                "weak_lower": weak_lower_bound(a * a, spec.epsilon),
                "strong_lower": strong_lower_bound(a, spec.radius, spec.epsilon)?,
                "vc_shape_lower": vc_shape_lower_bound(spec.radius, spec.epsilon, 3),
                "vc_shape_lower_is_order_only": true,
                "grid_construction_size": construction,
                "grid_construction_density": construction as f64 / (a * a),
                "uniform_anchor_estimate": uniform,
                "audit": audit,
            });
            out.note(format!("{report:#}"));
            out.emit(&report)
        }
        Command::Montecarlo {
            radius,
            side,
            r_values,
            trials,
            seed,
            csv,
            search_epsilon,
            search_cap,
        } => {
            let mut all = Vec::new();
            let mut summaries = Vec::new();
            for &r in &r_values {
                let batch = run_trials(r, trials, radius, side, seed)?;
                summaries.push(summarize(r, &batch));
                all.extend(batch);
            }
            if let Some(path) = csv {
                write_trials_csv(&all, io::BufWriter::new(fs::File::create(path)?))?;
            }
            let fit = if r_values.len() >= 2 {
                Some(expected_region_scaling(&r_values, trials, radius, side, seed)?)
            } else {
                None
            };
            let search = match search_epsilon {
                Some(eps) => Some(json!({
                    "epsilon": eps,
                    "result": required_anchors_with_cap(eps, radius, side, trials, seed, search_cap)?,
                    "success_fraction_required": SUCCESS_FRACTION,
                    "formula_estimate": uniform_anchor_estimate(eps),
                })),
                None => None,
            };
            for s in &summaries {
                out.note(format!(
                    "r = {:>5}: mean faces {} (ceiling {}), mean achieved epsilon {}",
                    s.r,
                    g17(s.mean_face_count),
                    s.face_ceiling,
                    g17(s.mean_achieved_epsilon)
                ));
            }
            out.emit(&json!({ "summaries": summaries, "fit": fit, "search": search }))
        }
        Command::Gridscan {
            delta,
            radius,
            side,
            resolution,
        } => {
            let mut rows = Vec::new();
            for d in delta {
                let res = resolution.unwrap_or(d / 10.0);
                let est = grid_epsilon_estimate(d, radius, side, res)?;
                out.note(format!("delta {}: epsilon estimate {}", g17(d), g17(est)));
                rows.push(json!({ "delta": d, "resolution": res, "epsilon_estimate": est }));
            }
            out.emit(&json!({ "radius": radius, "side": side, "scan": rows }))
        }
    }
}
