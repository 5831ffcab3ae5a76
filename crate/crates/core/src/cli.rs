//! Command-line surface: subcommands for every computation plus CSV/SVG
//! emission. Identical invocations produce byte-identical output (fixed
//! 17-significant-digit float formatting, deterministic reductions).

use crate::bodyspec::{BodySpec, RadialSpec};
use crate::convolution::{convbody, convbody_volume, BodyOracle};
use crate::counterexample::{certify, inequality_suite, CertifyOptions, Verdict};
use crate::error::Error;
use crate::lens::{lens_area, lens_boundary, lens_derivatives, LensParams};
use crate::polygon::{ConvexPolygon, Vec2};
use crate::radial::{analyze, RadialFunction};
use crate::spectral::SpectralBody;
use crate::variation::{
    analytic_second_derivative, f_m, fd_derivatives, fourier_limit_value, limit_second_derivative,
    PerturbationFamily, VolumeEngine,
};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "convbody-lab", version, about = "convolution body laboratory")]
struct Cli {
    /// JSON config file; flags take precedence over its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Config {
    /// Angle-grid resolution for emitted radial profiles.
    grid: usize,
    /// Directions used in convolution-body volume quadrature.
    n_dir: usize,
    /// Search bound for the counterexample frequency m.
    m_max: u32,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            grid: 4096,
            n_dir: 1024,
            m_max: 200,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lens geometry L, L', L'', S, S' at a given s, alpha or delta.
    Lens(LensArgs),
    /// Covariogram g(s·v) along a ray, as CSV (s, g).
    Covariogram(CovariogramArgs),
    /// Radial profile of C_delta K, as CSV (theta, rho).
    Convbody(ConvbodyArgs),
    /// Volume of C_delta K over a delta range, as CSV (delta, volume).
    Sweep(SweepArgs),
    /// Finite-difference and analytic variations of vol(C_delta K_t).
    Variation(VariationArgs),
    /// CSV scan of (alpha, sin(alpha)^2 F_m(alpha)).
    FmScan(FmScanArgs),
    /// Delta -> 1 limit values for a perturbation profile.
    Limits(LimitsArgs),
    /// Certify the counterexample at a given delta (exit 2 if inconclusive).
    Counterexample(CounterexampleArgs),
    /// Run the inequality suite on the standard comparison bodies.
    Inequalities(InequalitiesArgs),
    /// Render a two-column CSV as an SVG polyline plot.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct LensArgs {
    #[arg(long, conflicts_with_all = ["alpha", "delta"])]
    s: Option<f64>,
    #[arg(long, conflicts_with = "delta")]
    alpha: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Debug, Args)]
struct CovariogramArgs {
    /// JSON body spec (polygon or radial).
    #[arg(long)]
    body: PathBuf,
    /// Ray direction in radians.
    #[arg(long, default_value_t = 0.0)]
    dir: f64,
    #[arg(long, default_value_t = 0.0)]
    s_min: f64,
    /// Defaults to the covariogram support bound in the ray direction.
    #[arg(long)]
    s_max: Option<f64>,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConvbodyArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long)]
    delta: f64,
    /// Number of emitted directions (defaults to the config grid).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    delta_min: f64,
    #[arg(long, default_value_t = 0.95)]
    delta_max: f64,
    #[arg(long, default_value_t = 19)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VariationArgs {
    /// Radial spec of the perturbation profile rho_K.
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0.02)]
    h: f64,
}

#[derive(Debug, Args)]
struct FmScanArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 0.05)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.52)]
    alpha_max: f64,
    #[arg(long, default_value_t = 500)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LimitsArgs {
    #[arg(long)]
    base: PathBuf,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    mmax: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InequalitiesArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
}

/// Entry point. Exit codes: 0 success, 1 validation/computation error,
/// 2 inconclusive certificate.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not validation errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match dispatch(cli.command, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_config(path: Option<&std::path::Path>) -> Result<Config, String> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn config_hash(config: &Config) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn csv_header(config: &Config) -> String {
    format!(
        "# convolution-body-lab v{VERSION} config={}",
        config_hash(config)
    )
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: Option<&PathBuf>, text: &str) -> crate::Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidPolygon(format!("write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_csv(
    out: Option<&PathBuf>,
    config: &Config,
    columns: &str,
    rows: impl Iterator<Item = (f64, f64)>,
) -> crate::Result<()> {
    let mut text = String::new();
    text.push_str(&csv_header(config));
    text.push('\n');
    text.push_str(columns);
    text.push('\n');
    for (a, b) in rows {
        text.push_str(&fmt(a));
        text.push(',');
        text.push_str(&fmt(b));
        text.push('\n');
    }
    emit(out, &text)
}

/// Runtime-dispatched covariogram oracle for CLI bodies.
enum CliBody {
    Polygon(ConvexPolygon),
    Spectral(SpectralBody),
}

impl BodyOracle for CliBody {
    fn covariogram(&self, x: Vec2) -> f64 {
        match self {
            CliBody::Polygon(p) => BodyOracle::covariogram(p, x),
            CliBody::Spectral(s) => BodyOracle::covariogram(s, x),
        }
    }

    fn area(&self) -> f64 {
        match self {
            CliBody::Polygon(p) => BodyOracle::area(p),
            CliBody::Spectral(s) => BodyOracle::area(s),
        }
    }

    fn support_bound(&self, theta: f64) -> f64 {
        match self {
            CliBody::Polygon(p) => p.support_bound(theta),
            CliBody::Spectral(s) => s.support_bound(theta),
        }
    }
}

fn load_body(path: &PathBuf, config: &Config) -> crate::Result<CliBody> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidPolygon(format!("read {}: {e}", path.display())))?;
    let spec = BodySpec::parse(&text)?;
    Ok(match &spec {
        BodySpec::Polygon(_) | BodySpec::Radial(RadialSpec::Samples { .. }) => {
            CliBody::Polygon(spec.to_polygon(8192)?)
        }
        BodySpec::Radial(r) => {
            let f = r.to_radial(config.grid)?;
            let series = f.spectral().expect("non-sample radial specs carry a form");
            CliBody::Spectral(SpectralBody::new(series)?)
        }
    })
}

fn load_radial(path: &PathBuf, config: &Config) -> crate::Result<RadialFunction> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidPolygon(format!("read {}: {e}", path.display())))?;
    match BodySpec::parse(&text)? {
        BodySpec::Radial(r) => r.to_radial(config.grid),
        BodySpec::Polygon(_) => Err(Error::InvalidPolygon(
            "this command needs a radial spec, not a polygon".into(),
        )),
    }
}

fn dispatch(command: Command, config: &Config) -> crate::Result<i32> {
    match command {
        Command::Lens(args) => {
            let params = match (args.s, args.alpha, args.delta) {
                (Some(s), None, None) => LensParams::from_s(s)?,
                (None, Some(a), None) => LensParams::from_alpha(a)?,
                (None, None, Some(d)) => LensParams::from_delta(d)?,
                _ => {
                    return Err(Error::InvalidPolygon(
                        "lens needs exactly one of --s, --alpha, --delta".into(),
                    ))
                }
            };
            let (l1, l2) = lens_derivatives(params.s)?;
            let (bs, bsp) = lens_boundary(params.s)?;
            println!("alpha = {}", fmt(params.alpha));
            println!("s = {}", fmt(params.s));
            println!("delta = {}", fmt(params.delta));
            println!("L = {}", fmt(lens_area(params.s)?));
            println!("L' = {}", fmt(l1));
            println!("L'' = {}", fmt(l2));
            println!("S = {}", fmt(bs));
            println!("S' = {}", fmt(bsp));
            Ok(0)
        }
        Command::Covariogram(args) => {
            let body = load_body(&args.body, config)?;
            let s_max = args.s_max.unwrap_or_else(|| body.support_bound(args.dir));
            if args.steps < 2 || s_max <= args.s_min {
                return Err(Error::InvalidPolygon(
                    "need steps >= 2 and s_max > s_min".into(),
                ));
            }
            let v = Vec2::unit(args.dir);
            let rows = (0..args.steps).map(|i| {
                let s = args.s_min + (s_max - args.s_min) * i as f64 / (args.steps - 1) as f64;
                (s, body.covariogram(v * s))
            });
            write_csv(args.out.as_ref(), config, "s,g", rows)?;
            Ok(0)
        }
        Command::Convbody(args) => {
            let body = load_body(&args.body, config)?;
            let n = args.n.unwrap_or(config.grid);
            let rho = convbody(&body, args.delta, n)?;
            let rows = rho
                .samples()
                .iter()
                .enumerate()
                .map(|(j, &r)| (std::f64::consts::TAU * j as f64 / n as f64, r))
                .collect::<Vec<_>>();
            write_csv(args.out.as_ref(), config, "theta,rho", rows.into_iter())?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let body = load_body(&args.body, config)?;
            if args.steps < 2 {
                return Err(Error::InvalidPolygon("need steps >= 2".into()));
            }
            let mut rows = Vec::with_capacity(args.steps);
            for i in 0..args.steps {
                let delta = args.delta_min
                    + (args.delta_max - args.delta_min) * i as f64 / (args.steps - 1) as f64;
                rows.push((delta, convbody_volume(&body, delta, config.n_dir)?));
            }
            write_csv(args.out.as_ref(), config, "delta,volume", rows.into_iter())?;
            Ok(0)
        }
        Command::Variation(args) => {
            let fam = PerturbationFamily::new(load_radial(&args.base, config)?);
            let engine = VolumeEngine {
                n_dir: config.n_dir,
                ..VolumeEngine::default()
            };
            let fd = fd_derivatives(&fam, args.delta, args.h, &engine)?;
            let analytic = analytic_second_derivative(&fam, args.delta)?;
            println!("first_fd = {}", fmt(fd.first));
            println!("second_fd = {}", fmt(fd.second));
            println!("second_analytic = {}", fmt(analytic));
            println!("first_order = {}", fmt(fd.first_order()));
            Ok(0)
        }
        Command::FmScan(args) => {
            if args.steps < 2 {
                return Err(Error::InvalidPolygon("need steps >= 2".into()));
            }
            let mut rows = Vec::with_capacity(args.steps);
            for i in 0..args.steps {
                let alpha = args.alpha_min
                    + (args.alpha_max - args.alpha_min) * i as f64 / (args.steps - 1) as f64;
                rows.push((alpha, alpha.sin().powi(2) * f_m(alpha, args.m)?));
            }
            write_csv(args.out.as_ref(), config, "alpha,sin2_fm", rows.into_iter())?;
            Ok(0)
        }
        Command::Limits(args) => {
            let base = load_radial(&args.base, config)?;
            let limit = limit_second_derivative(&base);
            let series = match base.spectral() {
                Some(s) => s,
                None => analyze(&base, base.len() / 2 - 1)?,
            };
            let fourier = fourier_limit_value(&series);
            println!("limit_second_derivative = {}", fmt(limit));
            println!("fourier_limit_value = {}", fmt(fourier));
            println!(
                "normalization_residual = {}",
                fmt(limit - 0.25 * std::f64::consts::PI * fourier)
            );
            Ok(0)
        }
        Command::Counterexample(args) => {
            let opts = CertifyOptions {
                m_max: args.mmax.unwrap_or(config.m_max),
                n_dir: config.n_dir,
                ..CertifyOptions::default()
            };
            let report = certify(args.delta, opts)?;
            let mut value = serde_json::to_value(&report)
                .map_err(|e| Error::InvalidPolygon(format!("serialize: {e}")))?;
            value["config"] = serde_json::Value::String(config_hash(config));
            let text = serde_json::to_string_pretty(&value)
                .map_err(|e| Error::InvalidPolygon(format!("serialize: {e}")))?;
            emit(args.out.as_ref(), &format!("{text}\n"))?;
            Ok(if report.verdict == Verdict::Pass {
                0
            } else {
                2
            })
        }
        Command::Inequalities(args) => {
            let bodies = standard_bodies()?;
            let reports = inequality_suite(&bodies)?;
            let text = serde_json::to_string_pretty(&reports)
                .map_err(|e| Error::InvalidPolygon(format!("serialize: {e}")))?;
            emit(args.out.as_ref(), &format!("{text}\n"))?;
            Ok(0)
        }
        Command::Plot(args) => {
            let svg = render_plot(&args)?;
            fs::write(&args.out, svg)
                .map_err(|e| Error::InvalidPolygon(format!("write {}: {e}", args.out.display())))?;
            Ok(0)
        }
    }
}

fn standard_bodies() -> crate::Result<Vec<(String, ConvexPolygon)>> {
    Ok(vec![
        ("square".into(), ConvexPolygon::rectangle(1.0, 1.0)?),
        ("rectangle-1x2".into(), ConvexPolygon::rectangle(1.0, 2.0)?),
        ("pentagon".into(), ConvexPolygon::regular(5, 1.0)?),
        ("triangle".into(), ConvexPolygon::regular(3, 1.0)?),
    ])
}

fn render_plot(args: &PlotArgs) -> crate::Result<String> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Error::InvalidPolygon(format!("read {}: {e}", args.input.display())))?;
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',');
        let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
            continue;
        };
        if let (Ok(x), Ok(y)) = (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            points.push((x, y));
        }
        // Non-numeric rows (the column header) fall through silently.
    }
    if points.len() < 2 {
        return Err(Error::InvalidPolygon(
            "plot input has fewer than 2 data rows".into(),
        ));
    }
    let (w, h) = (args.width as f64, args.height as f64);
    let margin = 50.0;
    let (xmin, xmax) = min_max(points.iter().map(|p| p.0));
    let (ymin, ymax) = min_max(points.iter().map(|p| p.1));
    let xspan = if xmax > xmin { xmax - xmin } else { 1.0 };
    let yspan = if ymax > ymin { ymax - ymin } else { 1.0 };
    let map = |&(x, y): &(f64, f64)| {
        (
            margin + (x - xmin) / xspan * (w - 2.0 * margin),
            h - margin - (y - ymin) / yspan * (h - 2.0 * margin),
        )
    };
    let mut path = String::new();
    for p in &points {
        let (px, py) = map(p);
        path.push_str(&format!("{px:.3},{py:.3} "));
    }
    Ok(format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect x=\"{m}\" y=\"{m}\" width=\"{iw}\" height=\"{ih}\" ",
            "fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n",
            "<polyline points=\"{points}\" fill=\"none\" stroke=\"#1f77b4\" ",
            "stroke-width=\"1.5\"/>\n",
            "<text x=\"{m}\" y=\"{ty}\" font-size=\"12\">x: [{xmin:.6}, {xmax:.6}] ",
            "y: [{ymin:.6}, {ymax:.6}]</text>\n",
            "</svg>\n"
        ),
        w = args.width,
        h = args.height,
        m = margin,
        iw = w - 2.0 * margin,
        ih = h - 2.0 * margin,
        points = path.trim_end(),
        ty = h - margin / 2.0,
        xmin = xmin,
        xmax = xmax,
        ymin = ymin,
        ymax = ymax,
    ))
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}
