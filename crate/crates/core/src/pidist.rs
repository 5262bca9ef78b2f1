//! The pi-distance of a polygonal curve: the infimum of chord lengths over
//! open subarcs carrying curvature mass at least `pi`.
//!
//! A window is fixed by the edge holding its start `a`, the number `k` of
//! vertices strictly inside it, and the two endpoint offsets. For a fixed
//! vertex range the squared chord is a convex quadratic in the offsets, so
//! the minimum over the box of admissible offsets (cut by the length cap)
//! is computed exactly: the unconstrained segment-segment closest pair,
//! or, when that violates the cap, the minimum along the cap line.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::PolyCurve;
use crate::error::Result;
use crate::point::{segment_distance, Point};
use crate::scalar::Scalar;
use crate::solver::{QuadParams, SolutionSet};

/// Slack on the `kappa >= pi` test; sums of exact right angles may land one
/// ulp below `pi`.
pub const PI_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureWindow<T> {
    pub a: T,
    pub b: T,
    pub kappa: T,
    pub chord: T,
    pub arclen: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PiMode {
    /// All subarcs up to a full wrap minus one step.
    Literal,
    /// Subarcs of length at most `cap`.
    Capped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PiValue<T> {
    Finite(T),
    Unbounded,
}

impl<T: Scalar> PiValue<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            PiValue::Finite(v) => Some(v),
            PiValue::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiDistanceResult<T> {
    pub value: PiValue<T>,
    pub witness: Option<CurvatureWindow<T>>,
    pub mode: PiMode,
    /// Effective arclength cap applied to windows.
    pub cap: T,
    pub resolution: T,
}

/// Enumerates, for every start edge and every vertex range reaching
/// curvature `pi`, the window of minimal chord with `arclen <= cap`.
/// On closed curves the cap is additionally limited to `L - step`.
pub fn scan_windows<T: Scalar>(curve: &PolyCurve<T>, cap: T, step: T) -> Vec<CurvatureWindow<T>> {
    let len = curve.length();
    let cap = effective_cap(curve, cap, step);
    let n = curve.num_vertices();
    let edges = curve.num_edges();
    let pi_min = T::PI() - T::lit(PI_SLACK);
    // unwrapped arclength of vertex index i in 0..2n
    let upos = |i: usize| -> T {
        if i < n {
            curve.vertex_param(i)
        } else {
            curve.vertex_param(i - n) + len
        }
    };
    // atom sum over unwrapped vertex indices lo..=hi
    let kappa = |lo: usize, hi: usize| -> T {
        if hi < n {
            curve.atom_sum(lo, hi + 1)
        } else if lo >= n {
            curve.atom_sum(lo - n, hi - n + 1)
        } else {
            curve.atom_sum(lo, n) + curve.atom_sum(0, hi - n + 1)
        }
    };
    let verts = curve.vertices();

    (0..edges)
        .into_par_iter()
        .map(|ea| {
            let mut out = Vec::new();
            let kmax = if curve.is_closed() { edges } else { edges - 1 - ea };
            let first = ea + 1;
            for k in 1..=kmax {
                let last = ea + k;
                let mid = upos(last) - upos(first);
                if mid > cap {
                    break;
                }
                let kap = kappa(first, last);
                if kap < pi_min {
                    continue;
                }
                let eb = last % edges;
                let a0 = &verts[first % n];
                let a1 = &verts[ea];
                let b0 = &verts[eb];
                let b1 = &verts[(eb + 1) % n];
                let (la, lb) = (curve.edge_len(ea), curve.edge_len(eb));
                let (u, w, chord) = min_chord(a0, a1, la, b0, b1, lb, cap - mid);
                let a = wrap(upos(first) - u, len);
                let b = wrap(upos(last) + w, len);
                out.push(CurvatureWindow { a, b, kappa: kap, chord, arclen: mid + u + w });
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn effective_cap<T: Scalar>(curve: &PolyCurve<T>, cap: T, step: T) -> T {
    if curve.is_closed() {
        cap.min(curve.length() - step)
    } else {
        cap
    }
}

fn wrap<T: Scalar>(s: T, len: T) -> T {
    let mut r = s % len;
    if r < T::zero() {
        r = r + len;
    }
    if r >= len {
        r = T::zero();
    }
    r
}

/// Minimizes `|A(u) - B(w)|` with `A(u) = a0 + u e_a`, `B(w) = b0 + w e_b`,
/// `u in [0, la]`, `w in [0, lb]`, `u + w <= budget`.
fn min_chord<T: Scalar>(a0: &Point<T>, a1: &Point<T>, la: T, b0: &Point<T>, b1: &Point<T>, lb: T, budget: T) -> (T, T, T) {
    let (s, t, d) = segment_distance(a0, a1, b0, b1);
    let (u, w) = (s * la, t * lb);
    if u + w <= budget {
        return (u, w, d);
    }
    let zero = T::zero();
    let da = a1.sub(a0).scale(T::one() / la);
    let db = b1.sub(b0).scale(T::one() / lb);
    let lo = zero.max(budget - lb);
    let hi = la.min(budget);
    if lo > hi {
        // only reachable through rounding when budget is ~0
        return (zero, zero, a0.dist(b0));
    }
    // f(u) = |g + u h|^2 along u + w = budget
    let g = a0.sub(b0).axpy(-budget, &db);
    let h = da.add(&db);
    let hh = h.norm_sq();
    let u = if hh > zero { (-g.dot(&h) / hh).max(lo).min(hi) } else { lo };
    let w = (budget - u).max(zero);
    let chord = a0.axpy(u, &da).dist(&b0.axpy(w, &db));
    (u, w, chord)
}

fn best_window<T: Scalar>(windows: &[CurvatureWindow<T>]) -> Option<CurvatureWindow<T>> {
    windows.iter().copied().min_by(|x, y| {
        x.chord
            .partial_cmp(&y.chord)
            .unwrap()
            .then(x.a.partial_cmp(&y.a).unwrap())
            .then(x.b.partial_cmp(&y.b).unwrap())
    })
}

/// pi-distance in the chosen mode. In literal mode `cap` is ignored.
pub fn pi_distance<T: Scalar>(curve: &PolyCurve<T>, mode: PiMode, cap: T, step: T) -> PiDistanceResult<T> {
    let cap = match mode {
        PiMode::Literal => T::infinity(),
        PiMode::Capped => cap,
    };
    let windows = scan_windows(curve, cap, step);
    let witness = best_window(&windows);
    PiDistanceResult {
        value: witness.map_or(PiValue::Unbounded, |w| PiValue::Finite(w.chord)),
        witness,
        mode,
        cap: effective_cap(curve, cap.min(curve.length()), step),
        resolution: step,
    }
}

/// Checks that four parameters appear in forward cyclic order, then that
/// the open subarc from the first to the last through the middle two
/// carries curvature at least `pi - tol`.
pub fn verify_quad_arc_curvature<T: Scalar>(curve: &PolyCurve<T>, params: &QuadParams<T>, tol: T) -> Result<bool> {
    let t = params.0;
    if !is_cyclically_ordered(curve, &t)? {
        return Err(crate::error::GeomError::NotCyclicallyOrdered);
    }
    let k = curve.subarc_curvature(t[0], t[3])?;
    Ok(k >= T::PI() - tol)
}

pub(crate) fn is_cyclically_ordered<T: Scalar>(curve: &PolyCurve<T>, t: &[T; 4]) -> Result<bool> {
    let mut n = [T::zero(); 4];
    for i in 0..4 {
        n[i] = curve.normalize(t[i])?;
    }
    if !curve.is_closed() {
        return Ok(n[0] < n[1] && n[1] < n[2] && n[2] < n[3]);
    }
    let len = curve.length();
    let off = |x: T| wrap(x - n[0], len);
    let (d1, d2, d3) = (off(n[1]), off(n[2]), off(n[3]));
    Ok(T::zero() < d1 && d1 < d2 && d2 < d3)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord<T> {
    pub sidelength: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub mode: PiMode,
    /// `None` encodes an unbounded pi-distance.
    pub pi_distance: Option<T>,
    pub vacuous: bool,
    pub note: String,
    pub records: Vec<BoundRecord<T>>,
}

/// Compares each solution's mean side with the pi-distance.
pub fn sidelength_bound_report<T: Scalar>(
    curve: &PolyCurve<T>,
    solutions: &SolutionSet<T>,
    pid: &PiDistanceResult<T>,
) -> BoundReport<T> {
    let value = pid.value.finite();
    let records = solutions
        .solutions
        .iter()
        .map(|s| {
            let side = s.quad.mean_side();
            BoundRecord { sidelength: side, holds: value.map_or(true, |v| side >= v) }
        })
        .collect();
    let (vacuous, note) = match (pid.mode, value) {
        (_, None) => (true, "pi-distance unbounded: every side-length bound holds".to_string()),
        (PiMode::Literal, Some(_)) if curve.is_closed() => (
            true,
            "literal pi-distance of a closed curve degenerates to ~0 via near-full-wrap windows; bound is vacuous"
                .to_string(),
        ),
        (PiMode::Literal, Some(_)) => (false, "literal pi-distance lower-bounds inscribed side lengths".to_string()),
        (PiMode::Capped, Some(_)) => (
            false,
            "capped variant is diagnostic only and is not a valid side-length lower bound".to_string(),
        ),
    };
    BoundReport { mode: pid.mode, pi_distance: value, vacuous, note, records }
}
