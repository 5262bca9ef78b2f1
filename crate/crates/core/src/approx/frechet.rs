//! Discrete Frechet distance (Eiter-Mannila coupling) and the length bound
//! `|Len K - Len L| <= delta (pi max(TC K, TC L) + 2)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::point::Point;
use crate::scalar::Scalar;

fn coupling<T: Scalar>(a: &[&Point<T>], b: &[&Point<T>]) -> T {
    let m = b.len();
    let mut prev = vec![T::zero(); m];
    let mut cur = vec![T::zero(); m];
    for (i, pa) in a.iter().enumerate() {
        for (j, pb) in b.iter().enumerate() {
            let d = pa.dist(pb);
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Discrete Frechet distance between the vertex sequences. Closed curves
/// are traversed as loops and the start of `b` is minimized over all shifts.
pub fn discrete_frechet<T: Scalar>(a: &PolyCurve<T>, b: &PolyCurve<T>) -> Result<T> {
    if a.is_closed() != b.is_closed() {
        return Err(GeomError::InvalidArgument("Frechet distance needs two open or two closed curves".into()));
    }
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch { index: 0, expected: a.dim(), got: b.dim() });
    }
    let av = a.vertices();
    let bv = b.vertices();
    if !a.is_closed() {
        let sa: Vec<_> = av.iter().collect();
        let sb: Vec<_> = bv.iter().collect();
        return Ok(coupling(&sa, &sb));
    }
    let sa: Vec<_> = av.iter().chain(std::iter::once(&av[0])).collect();
    let n = bv.len();
    let best = (0..n)
        .into_par_iter()
        .map(|k| {
            let sb: Vec<_> = (0..=n).map(|j| &bv[(k + j) % n]).collect();
            coupling(&sa, &sb)
        })
        .reduce(|| T::infinity(), |x, y| x.min(y));
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthBound<T> {
    pub len_a: T,
    pub len_b: T,
    pub tc_a: T,
    pub tc_b: T,
    pub frechet: T,
    /// `|Len A - Len B|`
    pub lhs: T,
    /// `delta (pi max(TC) + 2)` with the discrete Frechet distance as `delta`.
    pub rhs: T,
    pub holds: bool,
}

pub fn verify_length_bound<T: Scalar>(a: &PolyCurve<T>, b: &PolyCurve<T>) -> Result<LengthBound<T>> {
    let delta = discrete_frechet(a, b)?;
    let (len_a, len_b) = (a.length(), b.length());
    let (tc_a, tc_b) = (a.total_curvature(), b.total_curvature());
    let lhs = (len_a - len_b).abs();
    let rhs = delta * (T::PI() * tc_a.max(tc_b) + T::lit(2.0));
    Ok(LengthBound { len_a, len_b, tc_a, tc_b, frechet: delta, lhs, rhs, holds: lhs <= rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    type PolyCurve = crate::curve::PolyCurve<f64>;
    use std::f64::consts::PI;

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

    /// Textbook recursive definition with memoization.
    fn frechet_oracle(a: &[Point<f64>], b: &[Point<f64>]) -> f64 {
        fn rec(i: usize, j: usize, a: &[Point<f64>], b: &[Point<f64>], memo: &mut Vec<Vec<f64>>) -> f64 {
            if memo[i][j] >= 0.0 {
                return memo[i][j];
            }
            let d = a[i].dist(&b[j]);
            let v = if i == 0 && j == 0 {
                d
            } else if i == 0 {
                rec(0, j - 1, a, b, memo).max(d)
            } else if j == 0 {
                rec(i - 1, 0, a, b, memo).max(d)
            } else {
                rec(i - 1, j, a, b, memo).min(rec(i - 1, j - 1, a, b, memo)).min(rec(i, j - 1, a, b, memo)).max(d)
            };
            memo[i][j] = v;
            v
        }
        let mut memo = vec![vec![-1.0; b.len()]; a.len()];
        rec(a.len() - 1, b.len() - 1, a, b, &mut memo)
    }

    #[test]
    fn identical_and_translated() {
        let a = PolyCurve::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0]], false).unwrap();
        assert_eq!(discrete_frechet(&a, &a).unwrap(), 0.0);
        let b = PolyCurve::from_f64(&[vec![0.0, 0.5], vec![1.0, 0.5]], false).unwrap();
        assert_eq!(discrete_frechet(&a, &b).unwrap(), 0.5);
        let bound = verify_length_bound(&a, &a).unwrap();
        assert!(bound.holds && bound.lhs == 0.0 && bound.rhs == 0.0);
    }

    #[test]
    fn stairstep_converges_in_frechet_not_length() {
        for k in [4, 16, 64] {
            let s = stairstep(k);
            let d = diagonal(k);
            let f = discrete_frechet(&s, &d).unwrap();
            assert!(f <= 1.0 / k as f64 + 1e-12);
            assert!((f - frechet_oracle(s.vertices(), d.vertices())).abs() < 1e-15);
            let b = verify_length_bound(&s, &d).unwrap();
            assert!((b.lhs - (2.0 - 2f64.sqrt())).abs() < 1e-12);
            assert!((b.tc_a - (2 * k - 1) as f64 * PI / 2.0).abs() < 1e-9);
            assert!(b.holds);
        }
    }

    #[test]
    fn closed_shift_invariance_and_symmetry() {
        let v: Vec<Vec<f64>> = (0..9).map(|k| {
            let a = 2.0 * PI * k as f64 / 9.0;
            vec![a.cos(), 0.7 * a.sin()]
        }).collect();
        let mut rolled = v.clone();
        rolled.rotate_left(4);
        let a = PolyCurve::from_f64(&v, true).unwrap();
        let b = PolyCurve::from_f64(&rolled, true).unwrap();
        assert_eq!(discrete_frechet(&a, &b).unwrap(), 0.0);
        let c = crate::approx::inscribe_polygon(&a, 5).unwrap();
        let (x, y) = (discrete_frechet(&a, &c).unwrap(), discrete_frechet(&c, &a).unwrap());
        assert!((x - y).abs() < 1e-15);
        assert!(discrete_frechet(&a, &PolyCurve::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0]], false).unwrap()).is_err());
    }

    #[test]
    fn dominates_vertex_hausdorff() {
        let a = stairstep(5);
        let b = diagonal(3);
        let f = discrete_frechet(&a, &b).unwrap();
        let directed = |x: &PolyCurve, y: &PolyCurve| {
            x.vertices().iter().map(|p| y.vertices().iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        };
        assert!(f >= directed(&a, &b).max(directed(&b, &a)) - 1e-15);
    }
}
