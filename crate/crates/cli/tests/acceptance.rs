//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use squarepeg::approx::{convergence_report, fillet_smooth, inscribe_polygon, sample, verify_length_bound};
use squarepeg::pidist::{pi_distance, verify_quad_arc_curvature, PiMode};
use squarepeg::quad::make_square_like;
use squarepeg::solver::{find_quads, oracle_clusters};
use squarepeg::{shapes, PolyCurve, Quad, RigidMotion, SolverConfig};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || format!("{what} took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
}

fn c01_open_turning_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst, mut planar_count) = (0f64, 0usize);
    for i in 0..10_000 {
        // every tenth draw is the planar square, half of those placed in the plane
        let (theta, dim) = if i % 10 == 0 {
            (PI / 4.0, if i % 20 == 0 { 2 } else { 3 })
        } else {
            (PI / 4.0 * (1.0 - rng.gen::<f64>()), 3)
        };
        let side = rng.gen_range(0.1..10.0);
        let motion = RigidMotion::random(dim, 10.0, &mut rng);
        let q: Quad = make_square_like(theta, side, &motion).map_err(|e| format!("theta {theta}: {e}"))?;
        let ot = q.open_turning();
        let err = (ot - (2.0 * PI - 4.0 * theta)).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("draw {i}: open turning off by {err:e}"))?;
        ensure(ot >= PI - 1e-12, || format!("draw {i}: open turning {ot} < pi"))?;
        let is_pi = (ot - PI).abs() <= 1e-9;
        let planar = q.is_planar_square(1e-6);
        ensure(is_pi == planar, || format!("draw {i} (theta {theta}): open turning = pi is {is_pi}, planar square is {planar}"))?;
        planar_count += planar as usize;
    }
    within_time(start.elapsed(), 5.0, "10^4 quads")?;
    Ok(format!("10000 quads, {planar_count} planar, max identity error {worst:.1e}, {:.2} s", start.elapsed().as_secs_f64()))
}

fn c02_tetrahedron() -> Outcome {
    let built: Quad = make_square_like(PI / 6.0, 1.0, &RigidMotion::identity(3)).map_err(|e| e.to_string())?;
    let explicit = Quad::from_f64(&[vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]])
        .map_err(|e| e.to_string())?;
    for (name, q) in [("constructed", built), ("explicit", explicit)] {
        let th = q.theta().map_err(|e| e.to_string())?;
        ensure((th - PI / 6.0).abs() <= 1e-12, || format!("{name}: theta {th}"))?;
        ensure((q.open_turning() - 4.0 * PI / 3.0).abs() <= 1e-12, || format!("{name}: open turning {}", q.open_turning()))?;
        ensure(q.residual_norm() <= 1e-12, || format!("{name}: residual {}", q.residual_norm()))?;
    }
    Ok("theta = pi/6, open turning = 4pi/3, residual 0 (constructed and explicit)".into())
}

/// Star-shaped planar polygon: embedded by construction.
fn random_star(rng: &mut ChaCha8Rng, n: usize) -> PolyCurve {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup();
    let v: Vec<Vec<f64>> = angles
        .iter()
        .map(|&a| {
            let r = rng.gen_range(0.3..1.0);
            vec![r * a.cos(), r * a.sin()]
        })
        .collect();
    PolyCurve::from_f64(&v, true).unwrap()
}

/// Random closed polygon in space with vertices near a wobbly loop.
fn random_space_polygon(rng: &mut ChaCha8Rng, n: usize) -> PolyCurve {
    let v: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            let r = 1.0 + rng.gen_range(-0.3..0.3);
            vec![r * a.cos(), r * a.sin(), rng.gen_range(-0.5..0.5)]
        })
        .collect();
    PolyCurve::from_f64(&v, true).unwrap()
}

fn c03_fenchel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_tc = f64::INFINITY;
    let mut count = 0;
    while count < 1000 {
        let n = rng.gen_range(10..=200);
        let c = if count % 2 == 0 { random_star(&mut rng, n) } else { random_space_polygon(&mut rng, n) };
        if !c.is_embedded(0.0) {
            continue;
        }
        let tc = c.total_curvature();
        ensure(tc >= 2.0 * PI - 1e-9, || format!("polygon {count}: total curvature {tc}"))?;
        min_tc = min_tc.min(tc);
        count += 1;
    }
    Ok(format!("1000 embedded polygons, min total curvature - 2pi = {:.3e}", min_tc - 2.0 * PI))
}

fn c04_fillet() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0f64;
    let mut count = 0;
    while count < 1000 {
        let n = rng.gen_range(3..=200);
        let c = if count % 2 == 0 { random_star(&mut rng, n) } else { random_space_polygon(&mut rng, n.max(3)) };
        if c.num_vertices() < 3 || !c.detect_cusps(1e-9).is_empty() {
            continue;
        }
        let radius = rng.gen_range(1e-4..1.0) * c.length() / c.num_edges() as f64;
        let s = fillet_smooth(&c, radius).map_err(|e| format!("polygon {count}: {e}"))?;
        let err = (s.total_curvature() - c.total_curvature()).abs();
        worst = worst.max(err);
        ensure(err <= 1e-12, || format!("polygon {count}: curvature changed by {err:e}"))?;
        count += 1;
    }
    Ok(format!("1000 cusp-free polygons, max |dTC| = {worst:.1e}"))
}

fn stairstep(k: usize) -> PolyCurve {
    let h = 1.0 / k as f64;
    let mut v = vec![vec![0.0, 0.0]];
    for i in 0..k {
        v.push(vec![(i + 1) as f64 * h, i as f64 * h]);
        v.push(vec![(i + 1) as f64 * h, (i + 1) as f64 * h]);
    }
    PolyCurve::from_f64(&v, false).unwrap()
}

fn diagonal(k: usize) -> PolyCurve {
    let v: Vec<Vec<f64>> = (0..=k).map(|i| vec![i as f64 / k as f64; 2]).collect();
    PolyCurve::from_f64(&v, false).unwrap()
}

fn c05_length_bound(corpus: &[(String, PolyCurve)]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (name, c) in corpus {
        let inscribed = inscribe_polygon(c, c.num_vertices().min(64)).map_err(|e| format!("{name}: {e}"))?;
        let radius = 0.1 * c.length() / c.num_edges() as f64;
        let smoothed = fillet_smooth(c, radius).map_err(|e| format!("{name}: {e}"))?;
        let resampled = sample(&smoothed, c.length() / 128.0).map_err(|e| format!("{name}: {e}"))?.curve;
        for (what, other) in [("inscription", inscribed), ("smoothed resample", resampled)] {
            let b = verify_length_bound(c, &other).map_err(|e| format!("{name}: {e}"))?;
            ensure(b.holds, || format!("{name} vs {what}: {} > {}", b.lhs, b.rhs))?;
            pairs += 1;
        }
    }
    for k in [4usize, 16, 64, 256] {
        let b = verify_length_bound(&stairstep(k), &diagonal(k)).map_err(|e| e.to_string())?;
        ensure(b.holds, || format!("stairstep {k}: {} > {}", b.lhs, b.rhs))?;
        ensure((b.lhs - (2.0 - 2f64.sqrt())).abs() < 1e-12, || format!("stairstep {k}: lhs {}", b.lhs))?;
        pairs += 1;
    }
    within_time(start.elapsed(), 10.0, "length bound checks")?;
    Ok(format!("{pairs} pairs hold, {:.2} s", start.elapsed().as_secs_f64()))
}

fn c06_ellipse() -> Outcome {
    let c: PolyCurve = shapes::ellipse(2.0, 1.0, 512).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let cfg = SolverConfig::with_grid(&c, 24);
    let set = find_quads(&c, &cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(set.solutions.len() == 1, || format!("{} symmetry classes", set.solutions.len()))?;
    let side = set.solutions[0].quad.mean_side();
    let target = 4.0 / 5f64.sqrt();
    ensure((side - target).abs() <= 1e-4, || format!("mean side {side}, target {target}"))?;
    let clusters = oracle_clusters(&c, 24, 0.5).map_err(|e| e.to_string())?;
    ensure(
        clusters.len() == 1 && clusters[0].distance_to(&set.solutions[0].params, c.length()) < cfg.dedup_tol,
        || format!("oracle disagrees: {} clusters", clusters.len()),
    )?;
    within_time(elapsed, 60.0, "find_quads")?;
    Ok(format!("1 class, mean side {side:.9} (|err| {:.1e}), {:.2} s", (side - target).abs(), elapsed.as_secs_f64()))
}

fn c07_circle() -> Outcome {
    let c: PolyCurve = shapes::circle(1.0, 360).map_err(|e| e.to_string())?;
    let cfg = SolverConfig::for_curve(&c);
    let set = find_quads(&c, &cfg).map_err(|e| e.to_string())?;
    ensure(!set.solutions.is_empty(), || "no solutions".into())?;
    let len = c.length();
    let grid = len / cfg.grid_m as f64;
    let mut worst = 0f64;
    for s in &set.solutions {
        for side in s.metrics.sides {
            worst = worst.max((side - 2f64.sqrt()).abs());
        }
        for k in 1..4 {
            let gap = (s.params.0[k] - s.params.0[k - 1]).rem_euclid(len);
            ensure((gap - len / 4.0).abs() <= grid, || format!("gap {gap} vs L/4 = {}", len / 4.0))?;
        }
    }
    ensure(worst <= 1e-6, || format!("side deviates from sqrt 2 by {worst:e}"))?;
    Ok(format!("{} representatives, max |side - sqrt2| = {worst:.1e}, family flagged: {}", set.solutions.len(), set.non_generic))
}

fn c08_oracle() -> Outcome {
    let curves: Vec<(&str, PolyCurve)> = vec![
        ("ellipse", shapes::ellipse(2.0, 1.0, 512).map_err(|e| e.to_string())?),
        (
            "scalene triangle",
            PolyCurve::from_f64(&[vec![0.0, 0.0], vec![4.0, 0.0], vec![1.2, 3.0]], true).map_err(|e| e.to_string())?,
        ),
        ("random jordan (seed 42)", shapes::random_jordan(42, 4, 256).map_err(|e| e.to_string())?),
    ];
    let mut summary = Vec::new();
    for (name, c) in &curves {
        let cfg = SolverConfig::for_curve(c);
        let len = c.length();
        let set = find_quads(c, &cfg).map_err(|e| e.to_string())?;
        let clusters = oracle_clusters(c, 24, 0.5).map_err(|e| e.to_string())?;
        for cl in &clusters {
            let near = set.solutions.iter().filter(|s| cl.distance_to(&s.params, len) < cfg.dedup_tol).count();
            ensure(near == 1, || format!("{name}: oracle cluster matches {near} solutions"))?;
        }
        let big = set.solutions.iter().filter(|s| s.quad.mean_side() >= 4.0 * len / 24.0);
        for s in big {
            let near = clusters.iter().filter(|cl| cl.distance_to(&s.params, len) < cfg.dedup_tol).count();
            ensure(near == 1, || format!("{name}: solution matches {near} oracle clusters"))?;
        }
        summary.push(format!("{name}: {}/{}", clusters.len(), set.solutions.len()));
    }
    Ok(format!("clusters/solutions {}", summary.join(", ")))
}

fn c09_arc_curvature(corpus: &[(String, PolyCurve)]) -> Outcome {
    let mut total = 0;
    for (name, c) in corpus.iter().filter(|(_, c)| c.is_closed()) {
        let set = find_quads(c, &SolverConfig::for_curve(c)).map_err(|e| format!("{name}: {e}"))?;
        for s in &set.solutions {
            let ok = verify_quad_arc_curvature(c, &s.params, 1e-6).map_err(|e| format!("{name}: {e}"))?;
            ensure(ok, || format!("{name}: solution {:?} fails", s.params.0))?;
            total += 1;
        }
    }
    Ok(format!("{total} solutions over the closed corpus all pass"))
}

fn c10_pi_distance(corpus: &[(String, PolyCurve)]) -> Outcome {
    let c: PolyCurve = shapes::circle(1.0, 360).map_err(|e| e.to_string())?;
    let l = c.length();
    let capped = pi_distance(&c, PiMode::Capped, l / 2.0, l / 720.0);
    let v = capped.value.finite().ok_or("capped pi-distance unbounded")?;
    ensure((v - 2.0).abs() <= 0.02, || format!("capped pi-distance {v}"))?;
    let mut checked = 0;
    for (name, c) in corpus.iter().filter(|(_, c)| c.is_closed()) {
        let step = c.length() / 720.0;
        let r = pi_distance(c, PiMode::Literal, 0.0, step);
        let lit = r.value.finite().ok_or_else(|| format!("{name}: literal pi-distance unbounded"))?;
        ensure(lit <= 2.0 * step, || format!("{name}: literal {lit} > 2 step"))?;
        let w = r.witness.ok_or_else(|| format!("{name}: no witness"))?;
        ensure(w.arclen >= c.length() - 2.0 * step, || format!("{name}: witness arclength {}", w.arclen))?;
        checked += 1;
    }
    Ok(format!("capped circle value {v:.6}; literal degenerate on {checked} closed curves"))
}

fn c11_convergence() -> Outcome {
    let ns = [16usize, 32, 64, 128, 256, 512];
    let ellipse: PolyCurve = shapes::ellipse(2.0, 1.0, 4096).map_err(|e| e.to_string())?;
    let circle: PolyCurve = shapes::circle(1.0, 8192).map_err(|e| e.to_string())?;
    let target_side = 4.0 / 5f64.sqrt();
    let mut prev: Option<[f64; 3]> = None;
    let mut last_side = f64::NAN;
    for &n in &ns {
        let approx = inscribe_polygon(&ellipse, n).map_err(|e| e.to_string())?;
        let r = convergence_report(&ellipse, &approx, 6).map_err(|e| e.to_string())?;
        let cur = [r.position_err, r.length_err, r.curvature_err];
        if let Some(p) = prev {
            for (k, what) in ["position", "length", "curvature"].iter().enumerate() {
                ensure(cur[k] < p[k], || format!("N={n}: {what} error {} not below {}", cur[k], p[k]))?;
            }
        }
        prev = Some(cur);
        let set = find_quads(&approx, &SolverConfig::for_curve(&approx)).map_err(|e| e.to_string())?;
        let min_side = set.solutions.iter().map(|s| s.quad.mean_side()).fold(f64::INFINITY, f64::min);
        ensure(min_side.is_finite() && min_side >= 0.5, || format!("N={n}: min side {min_side}"))?;
        last_side = min_side;

        let capprox = inscribe_polygon(&circle, n).map_err(|e| e.to_string())?;
        let cr = convergence_report(&circle, &capprox, 6).map_err(|e| e.to_string())?;
        let sagitta = 1.0 - (PI / n as f64).cos();
        ensure((cr.position_err - sagitta).abs() <= 0.1 * sagitta, || {
            format!("N={n}: circle position error {} vs sagitta {sagitta}", cr.position_err)
        })?;
    }
    ensure((last_side - target_side).abs() <= 1e-3, || format!("N=512 min side {last_side}"))?;
    Ok(format!("errors strictly decreasing, sagitta within 10%, min side at N=512 = {last_side:.6}"))
}

fn run_cli(dir: &Path, args: &[&str], out: &str) -> Result<Vec<u8>, String> {
    let path = dir.join(out);
    let status = Command::new(env!("CARGO_BIN_EXE_squarepeg"))
        .args(["--seed", "42", "--threads", "4", "--out"])
        .arg(&path)
        .args(args)
        .current_dir(dir)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), || format!("{args:?} exited with {status}"))?;
    std::fs::read(&path).map_err(|e| e.to_string())
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let commands: Vec<(Vec<&str>, &str)> = vec![
        (vec!["generate", "ellipse", "--a", "2", "--b", "1", "--samples", "512"], "ellipse.json"),
        (vec!["generate", "circle", "--samples", "360"], "circle.json"),
        (vec!["generate", "trefoil", "--samples", "1024"], "trefoil.json"),
        (vec!["generate", "random_jordan", "--samples", "64"], "jordan.json"),
        (vec!["generate", "regular_polygon", "--sides", "12"], "dodecagon.json"),
        (vec!["generate", "star_polygon", "--points", "5"], "star.json"),
        (vec!["generate", "fourier", "--coeffs", "[[[0,0],[1,0],[0.1,0]],[[0,0],[0,1],[0,0.1]],[[0,0],[0,0],[0.3,0]]]"], "fourier.json"),
        (vec!["analyze", "ellipse.json"], "analyze_ellipse.json"),
        (vec!["analyze", "trefoil.json"], "analyze_trefoil.json"),
        (vec!["find", "ellipse.json", "--csv", "find_ellipse.csv"], "find_ellipse.json"),
        (vec!["find", "circle.json"], "find_circle.json"),
        (vec!["find", "jordan.json"], "find_jordan.json"),
        (vec!["find", "trefoil.json"], "find_trefoil.json"),
        (vec!["converge", "ellipse.json", "--n", "16,32,64"], "converge.csv"),
        (vec!["converge", "circle.json", "--n", "16,32", "--fillet", "0.2"], "converge_fillet.csv"),
        (vec!["frechet", "circle.json", "dodecagon.json"], "frechet.json"),
    ];
    for (args, out) in &commands {
        let first = run_cli(d, args, out)?;
        let csv_first = args.contains(&"--csv").then(|| std::fs::read(d.join("find_ellipse.csv")).unwrap());
        let second = run_cli(d, args, out)?;
        ensure(first == second, || format!("{args:?}: outputs differ"))?;
        if let Some(a) = csv_first {
            let b = std::fs::read(d.join("find_ellipse.csv")).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{args:?}: CSV differs"))?;
        }
        ensure(!first.is_empty(), || format!("{args:?}: empty output"))?;
    }
    Ok(format!("{} commands byte-identical across runs", commands.len()))
}

fn main() {
    let corpus: Vec<(String, PolyCurve)> = shapes::corpus().expect("corpus");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("open-turning identity suite", Box::new(c01_open_turning_identity)),
        ("regular tetrahedron", Box::new(c02_tetrahedron)),
        ("Fenchel property", Box::new(c03_fenchel)),
        ("fillet curvature preservation", Box::new(c04_fillet)),
        ("length bound", Box::new(|| c05_length_bound(&corpus))),
        ("ellipse target", Box::new(c06_ellipse)),
        ("circle target", Box::new(c07_circle)),
        ("oracle equivalence", Box::new(c08_oracle)),
        ("arc curvature of every solution", Box::new(|| c09_arc_curvature(&corpus))),
        ("pi-distance", Box::new(|| c10_pi_distance(&corpus))),
        ("convergence experiment", Box::new(c11_convergence)),
        ("CLI determinism", Box::new(c12_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
