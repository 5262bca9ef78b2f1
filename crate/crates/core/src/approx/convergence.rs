//! Uniform convergence in position, arclength and total curvature, measured
//! under arclength-fraction matching of parameters.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// Number of parameters at which positions are compared.
pub const POSITION_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceReport<T> {
    pub position_err: T,
    pub length_err: T,
    pub curvature_err: T,
}

/// Sup-errors of `approximant` against `target`; subarc errors are
/// maximized over all dyadic arcs `[j, k] L / 2^depth`.
pub fn convergence_report<T: Scalar>(
    target: &PolyCurve<T>,
    approximant: &PolyCurve<T>,
    dyadic_depth: u32,
) -> Result<ConvergenceReport<T>> {
    if target.is_closed() != approximant.is_closed() {
        return Err(GeomError::InvalidArgument("target and approximant must both be open or both closed".into()));
    }
    if dyadic_depth > 12 {
        return Err(GeomError::InvalidArgument(format!("dyadic depth {dyadic_depth} too large")));
    }
    let len = target.length();
    let alen = approximant.length();
    let ratio = alen / len;
    let to_approx = |s: T| (s * ratio).min(alen);

    let samples = if target.is_closed() { POSITION_SAMPLES } else { POSITION_SAMPLES + 1 };
    let position_err = (0..samples)
        .into_par_iter()
        .map(|j| {
            let s = len * T::from_usize_lossy(j) / T::from_usize_lossy(POSITION_SAMPLES);
            let s = s.min(len);
            let p = target.eval(s)?;
            let q = approximant.eval(to_approx(s))?;
            Ok(p.dist(&q))
        })
        .collect::<Result<Vec<T>>>()?
        .into_iter()
        .fold(T::zero(), T::max);

    let cells = 1usize << dyadic_depth;
    let knots: Vec<T> =
        (0..=cells).map(|j| (len * T::from_usize_lossy(j) / T::from_usize_lossy(cells)).min(len)).collect();
    let (length_err, curvature_err) = (0..cells)
        .into_par_iter()
        .map(|j| {
            let mut worst = (T::zero(), T::zero());
            for k in (j + 1)..=cells {
                let (a, b) = (knots[j], knots[k]);
                let (aa, ab) = (to_approx(a), to_approx(b));
                let dl = ((ab - aa) - (b - a)).abs();
                let kt = target.subarc_curvature_span(a, b - a)?;
                let ka = approximant.subarc_curvature_span(aa, ab - aa)?;
                worst = (worst.0.max(dl), worst.1.max((ka - kt).abs()));
            }
            Ok(worst)
        })
        .collect::<Result<Vec<(T, T)>>>()?
        .into_iter()
        .fold((T::zero(), T::zero()), |x, y| (x.0.max(y.0), x.1.max(y.1)));

    Ok(ConvergenceReport { position_err, length_err, curvature_err })
}
