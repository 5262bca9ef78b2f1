//! Search for inscribed square-like quadrilaterals: grid seeding of the
//! 4-parameter configuration space, Levenberg-Marquardt refinement of the
//! equal-sides/equal-diagonals residual, and deduplication modulo the
//! dihedral relabelings of a quadrilateral.

mod lm;
mod oracle;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::pidist::{is_cyclically_ordered, verify_quad_arc_curvature};
use crate::quad::{Quad, QuadMetrics};
use crate::scalar::Scalar;

pub use oracle::{brute_force_oracle, oracle_clusters, OracleCluster};

/// Arclength parameters `(t1, t2, t3, t4)` in forward cyclic order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParams<T>(pub [T; 4]);

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub grid_m: usize,
    pub max_iter: usize,
    /// Bound on `max |residual| / mean_side^2`.
    pub residual_tol: T,
    pub dedup_tol: T,
    pub gap_min: T,
    pub min_side: T,
    pub fd_step: T,
}

impl<T: Scalar> SolverConfig<T> {
    /// Defaults scaled to the curve length `L`.
    pub fn for_curve(curve: &PolyCurve<T>) -> Self {
        Self::with_grid(curve, 24)
    }

    pub fn with_grid(curve: &PolyCurve<T>, grid_m: usize) -> Self {
        let len = curve.length();
        let m = T::from_usize_lossy(grid_m);
        Self {
            grid_m,
            max_iter: 100,
            residual_tol: T::lit(1e-10),
            dedup_tol: len / m * T::lit(0.75),
            gap_min: len / (T::lit(4.0) * m),
            min_side: len / T::lit(1000.0),
            fd_step: len / (T::lit(16.0) * m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefineFailure {
    Diverged,
    Collapsed,
    OrderingBroken,
    SmallSide,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refined<T> {
    pub params: QuadParams<T>,
    pub residual_norm: T,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub params: QuadParams<T>,
    pub quad: Quad<T>,
    pub metrics: QuadMetrics<T>,
    pub residual_norm: T,
    /// Curvature of the open arc `t1 -> t4` reaches `pi` (within `1e-6`).
    pub arc_kappa_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<T> {
    pub solutions: Vec<Solution<T>>,
    pub raw_count: usize,
    /// Some solution sits in a continuous family (singular Jacobian).
    pub non_generic: bool,
    pub parity_note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub count: usize,
    pub odd: bool,
    pub non_generic: bool,
    pub text: String,
}

fn cyc_dist<T: Scalar>(x: T, y: T, len: T) -> T {
    let d = ((x - y) % len).abs();
    d.min(len - d)
}

/// Minimum over the eight relabelings of `b` of the largest cyclic
/// parameter distance to `a`.
pub fn symmetric_distance<T: Scalar>(a: &QuadParams<T>, b: &QuadParams<T>, len: T) -> T {
    let b = b.0;
    let reversed = [b[0], b[3], b[2], b[1]];
    let mut best = T::infinity();
    for base in [b, reversed] {
        for k in 0..4 {
            let d = (0..4).fold(T::zero(), |m, i| m.max(cyc_dist(a.0[i], base[(i + k) % 4], len)));
            best = best.min(d);
        }
    }
    best
}

/// Reduces parameters into `[0, L)` and rotates the labels so that `t1` is smallest.
pub fn canonicalize<T: Scalar>(curve: &PolyCurve<T>, p: &QuadParams<T>) -> Result<QuadParams<T>> {
    let mut n = [T::zero(); 4];
    for i in 0..4 {
        n[i] = curve.normalize(p.0[i])?;
    }
    let k = (0..4).fold(0, |best, i| if n[i] < n[best] { i } else { best });
    Ok(QuadParams(std::array::from_fn(|i| n[(i + k) % 4])))
}

fn realize<T: Scalar>(curve: &PolyCurve<T>, p: &QuadParams<T>) -> Result<Quad<T>> {
    let [a, b, c, d] = p.0;
    Quad::new(curve.eval(a)?, curve.eval(b)?, curve.eval(c)?, curve.eval(d)?)
}

fn min_gap<T: Scalar>(curve: &PolyCurve<T>, t: &[T; 4]) -> T {
    let len = curve.length();
    (0..4).fold(T::infinity(), |m, i| {
        let mut g = (t[(i + 1) % 4] - t[i]) % len;
        if g < T::zero() {
            g = g + len;
        }
        m.min(g)
    })
}

/// All cyclically ordered 4-subsets of `grid_m` equispaced samples with
/// cyclic gaps at least `gap_min`, keeping those whose residual norm is at
/// or below the 25th percentile.
pub fn seed_grid<T: Scalar>(curve: &PolyCurve<T>, config: &SolverConfig<T>) -> Result<Vec<QuadParams<T>>> {
    let m = config.grid_m;
    if m < 8 {
        return Err(GeomError::InvalidArgument(format!("grid_m must be at least 8, got {m}")));
    }
    let len = curve.length();
    let step = len / T::from_usize_lossy(m);
    let grid: Vec<T> = (0..m).map(|i| step * T::from_usize_lossy(i)).collect();
    let mut cands: Vec<(QuadParams<T>, T)> = Vec::new();
    for i1 in 0..m {
        for i2 in (i1 + 1)..m {
            for i3 in (i2 + 1)..m {
                for i4 in (i3 + 1)..m {
                    let t = [grid[i1], grid[i2], grid[i3], grid[i4]];
                    if min_gap(curve, &t) < config.gap_min {
                        continue;
                    }
                    if let Some((g, _)) = lm::residual_at(curve, &t) {
                        cands.push((QuadParams(t), lm::max_abs(&g)));
                    }
                }
            }
        }
    }
    if cands.is_empty() {
        return Ok(Vec::new());
    }
    let mut norms: Vec<T> = cands.iter().map(|c| c.1).collect();
    norms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q25 = norms[(norms.len() - 1) / 4];
    Ok(cands.into_iter().filter(|c| c.1 <= q25).map(|c| c.0).collect())
}

/// Refines one seed; `Err` carries the reason the seed was rejected.
pub fn refine<T: Scalar>(
    curve: &PolyCurve<T>,
    seed: &QuadParams<T>,
    config: &SolverConfig<T>,
) -> std::result::Result<Refined<T>, RefineFailure> {
    let (params, residual_norm, iterations) = lm::levenberg_marquardt(curve, seed, config)?;
    let t = params.0;
    if !is_cyclically_ordered(curve, &t).unwrap_or(false) {
        return Err(RefineFailure::OrderingBroken);
    }
    if min_gap(curve, &t) < config.gap_min {
        return Err(RefineFailure::Collapsed);
    }
    let quad = realize(curve, &params).map_err(|_| RefineFailure::Collapsed)?;
    if quad.mean_side() < config.min_side {
        return Err(RefineFailure::SmallSide);
    }
    let params = canonicalize(curve, &params).map_err(|_| RefineFailure::Collapsed)?;
    Ok(Refined { params, residual_norm, iterations })
}

/// Detects a singular configuration Jacobian: a continuous family of
/// solutions through `p` (circle, square).
fn in_family<T: Scalar>(curve: &PolyCurve<T>, p: &QuadParams<T>) -> bool {
    let h = curve.length() * T::lit(1e-6);
    let Some(jac) = lm::jacobian(curve, &p.0, h) else {
        return false;
    };
    let col_norms: [T; 4] =
        std::array::from_fn(|j| (0..4).fold(T::zero(), |a, i| a + jac[i][j] * jac[i][j]).sqrt());
    let denom = col_norms.iter().fold(T::one(), |a, &b| a * b);
    if !(denom > T::zero()) {
        return true;
    }
    det4(jac).abs() / denom < T::lit(1e-6)
}

/// Unit vector spanning the (numerical) null space of the configuration
/// Jacobian at `p`, by inverse iteration.
fn family_direction<T: Scalar>(curve: &PolyCurve<T>, p: &QuadParams<T>) -> Option<[T; 4]> {
    let jac = lm::jacobian(curve, &p.0, curve.length() * T::lit(1e-6))?;
    let mut jtj = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            jtj[a][b] = (0..4).fold(T::zero(), |s, i| s + jac[i][a] * jac[i][b]);
        }
    }
    let shift = (0..4).fold(T::zero(), |s, i| s + jtj[i][i]) * T::lit(1e-12) + T::min_positive_value();
    for (i, row) in jtj.iter_mut().enumerate() {
        row[i] = row[i] + shift;
    }
    let mut v = [T::one(); 4];
    for _ in 0..4 {
        let x = lm::solve4(jtj, v)?;
        let n = x.iter().fold(T::zero(), |s, &c| s + c * c).sqrt();
        if !(n > T::zero()) {
            return None;
        }
        v = x.map(|c| c / n);
    }
    Some(v)
}

/// Moves a member of a continuous solution family along the family until
/// `t1` sits on a vertex of the polygon, then re-refines there. Between
/// vertices the family is an artefact of the linear edges; the members
/// through vertices are the ones that carry over to the limiting curve.
fn snap_to_vertex<T: Scalar>(
    curve: &PolyCurve<T>,
    p: &QuadParams<T>,
    config: &SolverConfig<T>,
) -> Option<(QuadParams<T>, T)> {
    let v = family_direction(curve, p)?;
    if v[0].abs() < T::lit(0.1) {
        return None;
    }
    let t1 = p.0[0];
    let cum = curve.cum_len();
    let k = cum.partition_point(|&c| c <= t1);
    let below = cum[k.saturating_sub(1)];
    let above = if k < cum.len() { cum[k] } else { below };
    let target = if t1 - below <= above - t1 { below } else { above };
    let delta = (target - t1) / v[0];
    let moved = QuadParams(std::array::from_fn(|i| p.0[i] + delta * v[i]));
    let r = refine(curve, &moved, config).ok()?;
    Some((r.params, r.residual_norm))
}

fn det4<T: Scalar>(mut a: [[T; 4]; 4]) -> T {
    let mut d = T::one();
    for c in 0..4 {
        let piv = (c..4).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        if a[piv][c] == T::zero() {
            return T::zero();
        }
        if piv != c {
            a.swap(c, piv);
            d = -d;
        }
        d = d * a[c][c];
        for r in (c + 1)..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] = a[r][k] - f * a[c][k];
            }
        }
    }
    d
}

pub(crate) fn build_solution<T: Scalar>(
    curve: &PolyCurve<T>,
    params: QuadParams<T>,
    residual_norm: T,
) -> Option<Solution<T>> {
    let quad = realize(curve, &params).ok()?;
    let arc_kappa_ok = verify_quad_arc_curvature(curve, &params, T::lit(1e-6)).unwrap_or(false);
    Some(Solution { params, metrics: quad.metrics(), quad, residual_norm, arc_kappa_ok })
}

/// Greedy clustering: candidates are visited by increasing residual and
/// each one joins the first kept representative closer than `tol`.
pub(crate) fn dedup<T: Scalar>(mut cands: Vec<(QuadParams<T>, T)>, tol: T, len: T) -> Vec<(QuadParams<T>, T)> {
    let key = |c: &(QuadParams<T>, T)| (c.1, c.0 .0);
    cands.sort_by(|x, y| {
        let (kx, ky) = (key(x), key(y));
        kx.0.partial_cmp(&ky.0)
            .unwrap()
            .then_with(|| kx.1.partial_cmp(&ky.1).unwrap())
    });
    let mut kept: Vec<(QuadParams<T>, T)> = Vec::new();
    for c in cands {
        if kept.iter().all(|k| symmetric_distance(&k.0, &c.0, len) >= tol) {
            kept.push(c);
        }
    }
    kept.sort_by(|x, y| x.0 .0.partial_cmp(&y.0 .0).unwrap());
    kept
}

/// Seeds, refines and deduplicates inscribed square-like quadrilaterals.
pub fn find_quads<T: Scalar>(curve: &PolyCurve<T>, config: &SolverConfig<T>) -> Result<SolutionSet<T>> {
    if !curve.is_closed() {
        return Err(GeomError::InvalidArgument("inscribed quadrilateral search needs a closed curve".into()));
    }
    let seeds = seed_grid(curve, config)?;
    let refined: Vec<Refined<T>> = seeds
        .par_iter()
        .map(|s| refine(curve, s, config).ok())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let raw_count = refined.len();
    let kept = dedup(
        refined.into_iter().map(|r| (r.params, r.residual_norm)).collect(),
        config.dedup_tol,
        curve.length(),
    );
    let family: Vec<bool> = kept.iter().map(|(p, _)| in_family(curve, p)).collect();
    let non_generic = family.iter().any(|&f| f);
    let kept = if non_generic {
        let snapped = kept
            .into_iter()
            .zip(family)
            .map(|(c, f)| if f { snap_to_vertex(curve, &c.0, config).unwrap_or(c) } else { c })
            .collect();
        dedup(snapped, config.dedup_tol, curve.length())
    } else {
        kept
    };
    let solutions: Vec<Solution<T>> =
        kept.into_iter().filter_map(|(p, r)| build_solution(curve, p, r)).collect();
    let mut set = SolutionSet { solutions, raw_count, non_generic, parity_note: String::new() };
    set.parity_note = parity_report(&set).text;
    Ok(set)
}

/// Solution count and parity, with the caveats that apply.
pub fn parity_report<T: Scalar>(set: &SolutionSet<T>) -> ParityReport {
    let count = set.solutions.len();
    let odd = count % 2 == 1;
    let text = if set.non_generic {
        format!("count {count}: non-generic family, parity not meaningful")
    } else if count == 0 {
        "count 0, even — investigate resolution".to_string()
    } else {
        format!(
            "count {count}, {}; coincident or limiting solutions can break parity at finite resolution",
            if odd { "odd" } else { "even" }
        )
    };
    ParityReport { count, odd, non_generic: set.non_generic, text }
}
