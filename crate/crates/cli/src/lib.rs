//! Command-line front end for `fixdyn`.
//!
//! Maps are read from JSON documents, reports are written as JSON, and
//! Julia pictures as binary PPM. Exit status is 0 on success, 1 on a
//! domain error (a JSON object `{"error", "message"}` goes to standard
//! error) and 2 on a usage error.

pub mod doc;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fixdyn::{
    analyze, construct_from_fixed_points, construct_ngon, construct_real_part_one_family,
    construct_remark5, equidistance_check, periodic_points, real_part_one_check, render,
    secondary_witnesses, write_image, Complex64, ContourConfig, GeometryVerdict, NGonSpec,
    Polynomial, RenderConfig, Tolerances,
};
use serde_json::json;

pub use doc::{parse_map, parse_map_str, LoadedMap, MapDocument};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Usage(String),
    Domain(fixdyn::Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.name(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<fixdyn::Error> for CliError {
    fn from(e: fixdyn::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "fixdyn", version, about = "Fixed points, indices and multipliers of complex rational maps")]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Root-finder convergence tolerance.
    #[arg(long, global = true, value_name = "X")]
    tol_root: Option<f64>,
    /// Residual allowed when checking |R(z) - z|.
    #[arg(long, global = true, value_name = "X")]
    tol_fix: Option<f64>,
    /// Multiplier comparisons (|λ| vs 1, λ vs 1).
    #[arg(long, global = true, value_name = "X")]
    tol_mult: Option<f64>,
    /// Root separation for coprimality checks.
    #[arg(long, global = true, value_name = "X")]
    tol_coprime: Option<f64>,
    /// Geometric comparisons (equidistance, shapes).
    #[arg(long, global = true, value_name = "X")]
    tol_geo: Option<f64>,
    /// Singularity threshold for Möbius determinants.
    #[arg(long, global = true, value_name = "X")]
    tol_det: Option<f64>,
    /// Any tolerance field by name, e.g. `--config tau_mult=1e-7`.
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    config: Vec<String>,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        let flags = [
            ("--tol-root", "root_tol", self.tol_root),
            ("--tol-fix", "tau_fix", self.tol_fix),
            ("--tol-mult", "tau_mult", self.tol_mult),
            ("--tol-coprime", "tau_root", self.tol_coprime),
            ("--tol-geo", "tau_geo", self.tol_geo),
            ("--tol-det", "tau_det", self.tol_det),
        ];
        for (flag, key, value) in flags {
            if let Some(x) = value {
                tol.set(key, &x.to_string()).map_err(|e| CliError::Usage(format!("{flag}: {e}")))?;
            }
        }
        for entry in &self.config {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--config: expected KEY=VALUE, got {entry}")))?;
            tol.set(key.trim(), value.trim()).map_err(|e| CliError::Usage(format!("--config: {e}")))?;
        }
        Ok(tol)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed points, multipliers, indices and witnesses of a map.
    Analyze {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quadrature nodes for contour indices.
        #[arg(long, default_value_t = 512)]
        contour_nodes: usize,
        /// Contour radius as a fraction of the distance to the nearest obstacle.
        #[arg(long, default_value_t = 0.5)]
        contour_fraction: f64,
    },
    /// Multiplier geometry of a polynomial.
    Geometry { map: PathBuf },
    /// Emit a map document for one of the built-in families.
    #[command(subcommand)]
    Construct(Construct),
    /// Escape-time picture of a filled Julia set.
    Julia(JuliaArgs),
    /// Points of exact period p of a polynomial.
    Periodic {
        map: PathBuf,
        #[arg(short = 'p', long = "period")]
        period: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// z + M((z - a)^n - (r e^{iθ})^n), fixed points on a regular n-gon.
    Ngon {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        center: Complex64,
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, allow_negative_numbers = true)]
        phase: f64,
        #[arg(long)]
        n: usize,
        #[arg(long = "M", value_parser = parse_complex, allow_hyphen_values = true)]
        m: Complex64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// z + k ∏ (z - α_i).
    Fixedpoints {
        /// Semicolon-separated, e.g. `0;1;0.3,0.4`.
        #[arg(long, value_delimiter = ';', required = true, value_parser = parse_complex, allow_hyphen_values = true)]
        alphas: Vec<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// z + ik ∏ (z - a_i) ∏ (z - b_j)^p_j, every multiplier with real part 1.
    Realpart1 {
        #[arg(long, num_args = 0.., allow_negative_numbers = true)]
        simple: Vec<f64>,
        /// Comma-separated `b:p` entries with p >= 2, e.g. `1:2,-3:3`.
        #[arg(long, value_delimiter = ',', value_parser = parse_multiple, allow_hyphen_values = true)]
        multiple: Vec<(f64, u32)>,
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k z^3 - (k + kα) z^2 + (kα + 1) z with k = i·k_imag.
    Remark5 {
        #[arg(long, allow_negative_numbers = true)]
        k_imag: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["map", "figure"])))]
struct JuliaArgs {
    map: Option<PathBuf>,
    /// Built-in cubic: 2a (k = 1.2i, α = 1/1.2) or 2b (k = 0.01i, α = 100).
    #[arg(long, value_parser = ["2a", "2b"])]
    figure: Option<String>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    center: Option<Complex64>,
    #[arg(long)]
    half_width: Option<f64>,
    /// Resolution as WxH.
    #[arg(long, value_parser = parse_size)]
    size: Option<(usize, usize)>,
    #[arg(long)]
    max_iter: Option<u32>,
    #[arg(long)]
    escape_radius: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

/// `re,im` or a bare real number.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(num(re)?, num(im)?),
        None => Complex64::new(num(s)?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

fn parse_multiple(s: &str) -> Result<(f64, u32), String> {
    let (b, p) = s.split_once(':').ok_or_else(|| format!("expected POINT:POWER, got {s:?}"))?;
    let b = b.trim().parse::<f64>().map_err(|_| format!("not a number: {b:?}"))?;
    let p = p.trim().parse::<u32>().map_err(|_| format!("not a power: {p:?}"))?;
    Ok((b, p))
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w = w.parse().map_err(|_| format!("bad width in {s:?}"))?;
    let h = h.parse().map_err(|_| format!("bad height in {s:?}"))?;
    Ok((w, h))
}

/// The two built-in figure polynomials.
pub fn figure_polynomial(name: &str, tol: &Tolerances) -> Result<Polynomial, CliError> {
    let (k, alpha) = match name {
        "2a" => (1.2, 1.0 / 1.2),
        "2b" => (0.01, 100.0),
        other => return Err(CliError::Usage(format!("--figure: unknown figure {other}"))),
    };
    Ok(construct_remark5(Complex64::new(0.0, k), alpha, tol)?)
}

/// Real-part-one and equidistance checks merged into one verdict.
pub fn geometry_verdict(p: &Polynomial, tol: &Tolerances) -> Result<GeometryVerdict, CliError> {
    let rp = real_part_one_check(p, tol)?;
    let eq = equidistance_check(p, tol)?;
    Ok(GeometryVerdict { all_real_part_one: rp.all_real_part_one, theorem_consistent: rp.theorem_consistent, ..eq })
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let tol = cli.tol.resolve()?;
    match cli.command {
        Command::Analyze { map, out, contour_nodes, contour_fraction } => {
            let cfg = ContourConfig::new(contour_nodes, contour_fraction)
                .map_err(|e| CliError::Usage(format!("--contour-nodes/--contour-fraction: {e}")))?;
            let loaded = parse_map(&map, &tol)?;
            let report = analyze(&loaded.to_rational(), &tol, &cfg)?;
            let mut v = doc::analysis_json(&report, secondary_witnesses(&report, &tol).ok());
            if let Some(p) = loaded.as_polynomial().filter(|p| p.degree() >= 2) {
                v["geometry"] = doc::geometry_json(&geometry_verdict(&p, &tol)?);
            }
            emit(&doc::to_pretty(&v), out.as_ref(), stdout)
        }
        Command::Geometry { map } => {
            let p = parse_map(&map, &tol)?.as_polynomial().ok_or_else(|| {
                fixdyn::Error::PreconditionUnmet("geometry checks need a polynomial".into())
            })?;
            if p.degree() < 2 {
                return Err(fixdyn::Error::PreconditionUnmet("geometry checks need degree >= 2".into()).into());
            }
            emit(&doc::to_pretty(&doc::geometry_json(&geometry_verdict(&p, &tol)?)), None, stdout)
        }
        Command::Construct(c) => {
            let (p, out) = match c {
                Construct::Ngon { center, radius, phase, n, m, out } => {
                    let spec = NGonSpec::new(center, radius, phase, n)?;
                    (construct_ngon(&spec, m)?, out)
                }
                Construct::Fixedpoints { alphas, k, out } => (construct_from_fixed_points(&alphas, k, &tol)?, out),
                Construct::Realpart1 { simple, multiple, k, out } => {
                    (construct_real_part_one_family(&simple, &multiple, k, &tol)?, out)
                }
                Construct::Remark5 { k_imag, alpha, out } => {
                    (construct_remark5(Complex64::new(0.0, k_imag), alpha, &tol)?, out)
                }
            };
            emit(&MapDocument::from_polynomial(&p).to_json(), out.as_ref(), stdout)
        }
        Command::Julia(args) => {
            let p = match (&args.map, &args.figure) {
                (_, Some(fig)) => figure_polynomial(fig, &tol)?,
                (Some(path), None) => parse_map(path, &tol)?.as_polynomial().ok_or_else(|| {
                    fixdyn::Error::PreconditionUnmet("julia rendering needs a polynomial".into())
                })?,
                (None, None) => unreachable!("clap enforces the source group"),
            };
            let mut cfg = RenderConfig::default();
            if let Some(c) = args.center {
                cfg.center = c;
            }
            if let Some(hw) = args.half_width {
                cfg.half_width = hw;
            }
            if let Some((w, h)) = args.size {
                cfg.width = w;
                cfg.height = h;
            }
            if let Some(n) = args.max_iter {
                cfg.max_iter = n;
            }
            cfg.escape_radius_override = args.escape_radius;
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            let grid = render(&p, &cfg)?;
            write_image(&grid, &args.out)?;
            let inside = grid.cells.iter().filter(|&&n| n >= grid.max_iter).count();
            let summary = json!({
                "out": args.out.display().to_string(),
                "width": grid.width,
                "height": grid.height,
                "max_iter": grid.max_iter,
                "non_escaping": inside,
            });
            emit(&doc::to_pretty(&summary), None, stdout)
        }
        Command::Periodic { map, period } => {
            let p = parse_map(&map, &tol)?.as_polynomial().ok_or_else(|| {
                fixdyn::Error::PreconditionUnmet("the periodic probe needs a polynomial".into())
            })?;
            let report = periodic_points(&p, period, &tol, &ContourConfig::default())?;
            emit(&doc::to_pretty(&doc::periodic_json(&report)), None, stdout)
        }
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let body = json!({ "error": e.name(), "message": e.to_string() });
            let _ = writeln!(stderr, "{body}");
            e.exit_code()
        }
    }
}
