//! `squarepeg` — generate curves, analyze curvature and pi-distance, search
//! for inscribed square-like quadrilaterals, and run approximation
//! experiments. JSON for structured output, CSV for anything plotted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use squarepeg::approx::{convergence_report, fillet_smooth, inscribe_polygon, sample, verify_length_bound};
use squarepeg::io::{self, CsvField, CurveJson, PiDistanceJson, SolutionSetJson};
use squarepeg::pidist::{pi_distance, PiMode};
use squarepeg::shapes;
use squarepeg::solver::find_quads;
use squarepeg::{PolyCurve, SolverConfig};

#[derive(Parser, Debug)]
#[command(name = "squarepeg", version, about = "Inscribed square-like quadrilaterals on polygonal curves")]
struct Cli {
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Residual tolerance for accepted quadrilaterals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a curve file.
    Generate {
        #[command(subcommand)]
        kind: Generator,
    },
    /// Length, total curvature, cusps, embeddedness and pi-distances.
    Analyze(AnalyzeArgs),
    /// Search for inscribed square-like quadrilaterals.
    Find(FindArgs),
    /// Inscribed-polygon convergence experiment, one CSV row per N.
    Converge(ConvergeArgs),
    /// Discrete Frechet distance and the length bound between two curves.
    Frechet { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Generator {
    Circle {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    Ellipse {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
    #[command(name = "regular_polygon", alias = "regular-polygon")]
    RegularPolygon {
        #[arg(long)]
        sides: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    #[command(name = "star_polygon", alias = "star-polygon")]
    StarPolygon {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        outer: f64,
        #[arg(long, default_value_t = 0.5)]
        inner: f64,
    },
    /// Coefficients as JSON `[[[a0, b0], [a1, b1], ...], ...]`, one list per
    /// coordinate; prefix with `@` to read them from a file.
    Fourier {
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
    Trefoil {
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
    #[command(name = "random_jordan", alias = "random-jordan")]
    RandomJordan {
        #[arg(long, default_value_t = 4)]
        harmonics: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Re-read and normalize an existing curve file.
    File { path: PathBuf },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Window resolution (default: L/720).
    #[arg(long)]
    step: Option<f64>,
    /// Capped-mode window cap as a fraction of L.
    #[arg(long, default_value_t = 0.5)]
    cap_frac: f64,
}

#[derive(Args, Debug)]
struct FindArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 24)]
    grid: usize,
    /// Also write one CSV row per solution here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    file: PathBuf,
    /// Increasing vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512")]
    n: Vec<usize>,
    /// Fillet corners with radius `frac * L / N`, then resample.
    #[arg(long)]
    fillet: Option<f64>,
    /// Resampling points per inscribed edge after filleting.
    #[arg(long, default_value_t = 8)]
    resample: usize,
    #[arg(long, default_value_t = 24)]
    grid: usize,
    #[arg(long, default_value_t = 6)]
    depth: u32,
}

enum Outcome {
    Done,
    NoSolutions,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NoSolutions) => {
            eprintln!("no inscribed quadrilateral found at this resolution");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Generate { kind } => {
            let curve = generate(kind, cli.seed)?;
            emit(cli, &io::to_json(&CurveJson::from_curve(&curve)))?;
        }
        Command::Analyze(args) => {
            let curve = read_curve(&args.file)?;
            emit(cli, &io::to_json(&analyze(&curve, args)?))?;
        }
        Command::Find(args) => return find(cli, args),
        Command::Converge(args) => {
            let curve = read_curve(&args.file)?;
            emit(cli, &converge(cli, &curve, args)?)?;
        }
        Command::Frechet { a, b } => {
            let (ca, cb) = (read_curve(a)?, read_curve(b)?);
            let bound = verify_length_bound(&ca, &cb)?;
            emit(cli, &io::to_json(&bound))?;
        }
    }
    Ok(Outcome::Done)
}

fn generate(kind: &Generator, seed: u64) -> Result<PolyCurve> {
    let curve = match kind {
        Generator::Circle { radius, samples } => shapes::circle(*radius, *samples)?,
        Generator::Ellipse { a, b, samples } => shapes::ellipse(*a, *b, *samples)?,
        Generator::RegularPolygon { sides, radius } => shapes::regular_polygon(*sides, *radius)?,
        Generator::StarPolygon { points, outer, inner } => shapes::star_polygon(*points, *outer, *inner)?,
        Generator::Fourier { coeffs, samples } => {
            let text = match coeffs.strip_prefix('@') {
                Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
                None => coeffs.clone(),
            };
            let parsed: Vec<Vec<(f64, f64)>> =
                serde_json::from_str(&text).context("coefficients must be [[[a, b], ...], ...]")?;
            shapes::fourier(&parsed, *samples)?
        }
        Generator::Trefoil { samples } => shapes::trefoil(*samples)?,
        Generator::RandomJordan { harmonics, samples } => shapes::random_jordan(seed, *harmonics, *samples)?,
        Generator::File { path } => read_curve(path)?,
    };
    Ok(curve)
}

#[derive(Serialize)]
struct PiReport {
    literal: PiDistanceJson,
    /// Literal value at most two steps: the near-full-wrap degeneracy.
    literal_degenerate: bool,
    capped: PiDistanceJson,
}

#[derive(Serialize)]
struct AnalyzeReport {
    dimension: usize,
    closed: bool,
    vertices: usize,
    length: f64,
    total_curvature: f64,
    cusps: Vec<usize>,
    embedded: bool,
    pi_distance: PiReport,
}

fn analyze(curve: &PolyCurve, args: &AnalyzeArgs) -> Result<AnalyzeReport> {
    let len = curve.length();
    let step = args.step.unwrap_or(len / 720.0);
    if !(step > 0.0) {
        bail!("--step must be positive");
    }
    let embedded = curve.is_embedded(0.0);
    if !embedded {
        eprintln!("warning: curve is not embedded");
    }
    let literal = pi_distance(curve, PiMode::Literal, 0.0, step);
    let capped = pi_distance(curve, PiMode::Capped, args.cap_frac * len, step);
    Ok(AnalyzeReport {
        dimension: curve.dim(),
        closed: curve.is_closed(),
        vertices: curve.num_vertices(),
        length: len,
        total_curvature: curve.total_curvature(),
        cusps: curve.detect_cusps(1e-9),
        embedded,
        pi_distance: PiReport {
            literal_degenerate: literal.value.finite().is_some_and(|v| v <= 2.0 * step),
            literal: PiDistanceJson::from_result(&literal),
            capped: PiDistanceJson::from_result(&capped),
        },
    })
}

fn solver_config(cli: &Cli, curve: &PolyCurve, grid: usize) -> SolverConfig {
    let mut config = SolverConfig::with_grid(curve, grid);
    if let Some(tol) = cli.tol {
        config.residual_tol = tol;
    }
    config
}

#[derive(Serialize)]
struct FindReport {
    #[serde(flatten)]
    set: SolutionSetJson,
    grid_m: usize,
    dedup_tol: f64,
    residual_tol: f64,
}

fn find(cli: &Cli, args: &FindArgs) -> Result<Outcome> {
    let curve = read_curve(&args.file)?;
    if !curve.is_closed() {
        bail!("find needs a closed curve");
    }
    if !curve.is_embedded(0.0) {
        eprintln!("warning: curve is not embedded");
    }
    let config = solver_config(cli, &curve, args.grid);
    let set = find_quads(&curve, &config)?;
    let report = FindReport {
        set: SolutionSetJson::from_set(&set),
        grid_m: config.grid_m,
        dedup_tol: config.dedup_tol,
        residual_tol: config.residual_tol,
    };
    emit(cli, &io::to_json(&report))?;
    if let Some(path) = &args.csv {
        let mut text = String::from("i,t1,t2,t3,t4,mean_side,theta,open_turning,residual,arc_kappa_ok\n");
        for (i, s) in set.solutions.iter().enumerate() {
            let mut row = vec![CsvField::Int(i as i64)];
            row.extend(s.params.0.iter().map(|&t| CsvField::Num(t)));
            row.push(CsvField::Num(s.quad.mean_side()));
            row.push(CsvField::Num(s.metrics.theta.unwrap_or(f64::NAN)));
            row.push(CsvField::Num(s.metrics.open_turning));
            row.push(CsvField::Num(s.residual_norm));
            row.push(CsvField::Text(s.arc_kappa_ok.to_string()));
            text.push_str(&io::csv_row(&row));
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if set.solutions.is_empty() { Outcome::NoSolutions } else { Outcome::Done })
}

fn converge(cli: &Cli, target: &PolyCurve, args: &ConvergeArgs) -> Result<String> {
    if !target.is_closed() {
        bail!("converge needs a closed curve");
    }
    if args.n.is_empty() || args.n.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--n must be a non-empty increasing list");
    }
    if args.resample == 0 {
        bail!("--resample must be positive");
    }
    let len = target.length();
    let mut out = String::from(
        "i,N,position_err,length_err,curvature_err,min_side,capped_pi_distance,total_curvature\n",
    );
    for (i, &n) in args.n.iter().enumerate() {
        let mut approx = inscribe_polygon(target, n)?;
        if let Some(frac) = args.fillet {
            let smoothed = fillet_smooth(&approx, frac * len / n as f64)?;
            let step = smoothed.length() / (n * args.resample) as f64;
            approx = sample(&smoothed, step)?.curve;
        }
        let report = convergence_report(target, &approx, args.depth)?;
        let set = find_quads(&approx, &solver_config(cli, &approx, args.grid))?;
        let min_side = set.solutions.iter().map(|s| s.quad.mean_side()).fold(f64::INFINITY, f64::min);
        let alen = approx.length();
        let pid = pi_distance(&approx, PiMode::Capped, alen / 2.0, alen / 720.0);
        out.push_str(&io::csv_row(&[
            CsvField::Int(i as i64),
            CsvField::Int(n as i64),
            CsvField::Num(report.position_err),
            CsvField::Num(report.length_err),
            CsvField::Num(report.curvature_err),
            CsvField::Num(min_side),
            CsvField::Num(pid.value.finite().unwrap_or(f64::INFINITY)),
            CsvField::Num(approx.total_curvature()),
        ]));
    }
    Ok(out)
}

fn read_curve(path: &Path) -> Result<PolyCurve> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_curve(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing stdout")
        }
    }
}
