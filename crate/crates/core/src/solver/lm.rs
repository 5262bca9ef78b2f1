//! Damped Gauss-Newton refinement of a 4-parameter inscription.

use crate::curve::PolyCurve;
use crate::scalar::Scalar;

use super::{QuadParams, RefineFailure, SolverConfig};

/// Normalized residual `r(t) / mean_side^2` of the quad realized at `t`,
/// with the mean squared side.
pub(crate) fn residual_at<T: Scalar>(curve: &PolyCurve<T>, t: &[T; 4]) -> Option<([T; 4], T)> {
    let pts: Vec<_> = t.iter().map(|&s| curve.eval(s)).collect::<Result<_, _>>().ok()?;
    let r = crate::quad::quad_residual(&pts[0], &pts[1], &pts[2], &pts[3]);
    let msq = (pts[0].dist_sq(&pts[1]) + pts[1].dist_sq(&pts[2]) + pts[2].dist_sq(&pts[3]) + pts[3].dist_sq(&pts[0]))
        / T::lit(4.0);
    if !(msq > T::zero()) {
        return None;
    }
    let g = r.map(|x| x / msq);
    if g.iter().all(|x| x.is_finite()) {
        Some((g, msq))
    } else {
        None
    }
}

pub(crate) fn max_abs<T: Scalar>(v: &[T; 4]) -> T {
    v.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

fn sum_sq<T: Scalar>(v: &[T; 4]) -> T {
    v.iter().fold(T::zero(), |m, &x| m + x * x)
}

/// Central-difference Jacobian, column `j` = d residual / d t_j.
pub(crate) fn jacobian<T: Scalar>(curve: &PolyCurve<T>, t: &[T; 4], h: T) -> Option<[[T; 4]; 4]> {
    let mut jac = [[T::zero(); 4]; 4];
    for j in 0..4 {
        let mut tp = *t;
        let mut tm = *t;
        tp[j] = tp[j] + h;
        tm[j] = tm[j] - h;
        let (fp, _) = residual_at(curve, &tp)?;
        let (fm, _) = residual_at(curve, &tm)?;
        for i in 0..4 {
            jac[i][j] = (fp[i] - fm[i]) / (T::lit(2.0) * h);
        }
    }
    Some(jac)
}

/// Solves the 4x4 system `a x = b` by partial-pivot elimination.
pub(crate) fn solve4<T: Scalar>(mut a: [[T; 4]; 4], mut b: [T; 4]) -> Option<[T; 4]> {
    for c in 0..4 {
        let piv = (c..4).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if !(a[piv][c].abs() > T::zero()) {
            return None;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for r in (c + 1)..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] = a[r][k] - f * a[c][k];
            }
            b[r] = b[r] - f * b[c];
        }
    }
    let mut x = [T::zero(); 4];
    for r in (0..4).rev() {
        let mut acc = b[r];
        for k in (r + 1)..4 {
            acc = acc - a[r][k] * x[k];
        }
        x[r] = acc / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Levenberg-Marquardt on the normalized residual. The finite-difference
/// step starts at `fd_step` and follows the size of accepted steps down to
/// `1e-7 L`, so that late iterations differentiate within a single edge.
pub(crate) fn levenberg_marquardt<T: Scalar>(
    curve: &PolyCurve<T>,
    seed: &QuadParams<T>,
    config: &SolverConfig<T>,
) -> Result<(QuadParams<T>, T, usize), RefineFailure> {
    let len = curve.length();
    let h_min = T::lit(1e-7) * len;
    let mut h = config.fd_step;
    let mut x = seed.0;
    let (mut f, _) = residual_at(curve, &x).ok_or(RefineFailure::Collapsed)?;
    let mut cost = sum_sq(&f);
    let mut lambda = T::lit(1e-3);
    for iter in 0..config.max_iter {
        if max_abs(&f) <= config.residual_tol {
            return Ok((QuadParams(x), max_abs(&f), iter));
        }
        let jac = jacobian(curve, &x, h).ok_or(RefineFailure::Collapsed)?;
        let mut jtj = [[T::zero(); 4]; 4];
        let mut jtf = [T::zero(); 4];
        for i in 0..4 {
            for j in 0..4 {
                jtj[i][j] = (0..4).fold(T::zero(), |acc, k| acc + jac[k][i] * jac[k][j]);
            }
            jtf[i] = (0..4).fold(T::zero(), |acc, k| acc + jac[k][i] * f[k]);
        }
        let mut accepted = false;
        for _ in 0..30 {
            let mut a = jtj;
            for i in 0..4 {
                a[i][i] = a[i][i] * (T::one() + lambda) + T::min_positive_value();
            }
            let Some(delta) = solve4(a, jtf.map(|v| -v)) else {
                lambda = lambda * T::lit(10.0);
                continue;
            };
            let mut xn = x;
            for i in 0..4 {
                xn[i] = xn[i] + delta[i];
            }
            if let Some((fn_, _)) = residual_at(curve, &xn) {
                let cn = sum_sq(&fn_);
                if cn < cost {
                    let step = max_abs(&delta);
                    x = xn;
                    f = fn_;
                    cost = cn;
                    lambda = (lambda / T::lit(3.0)).max(T::lit(1e-12));
                    h = step.max(h_min).min(config.fd_step);
                    accepted = true;
                    break;
                }
            }
            lambda = lambda * T::lit(4.0);
        }
        if !accepted {
            break;
        }
    }
    if max_abs(&f) <= config.residual_tol {
        Ok((QuadParams(x), max_abs(&f), config.max_iter))
    } else {
        Err(RefineFailure::Diverged)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve4_matches_known_solution() {
        let a = [[4.0, 1.0, 0.0, 2.0], [1.0, 3.0, 1.0, 0.0], [0.0, 1.0, 5.0, 1.0], [2.0, 0.0, 1.0, 6.0]];
        let x = [1.0, -2.0, 0.5, 3.0];
        let b: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| a[i][j] * x[j]).sum());
        let got = solve4(a, b).unwrap();
        for i in 0..4 {
            assert!((got[i] - x[i]).abs() < 1e-13);
        }
        assert!(solve4([[0.0; 4]; 4], [1.0; 4]).is_none());
    }
}
