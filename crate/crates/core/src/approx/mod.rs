//! Approximating sequences of curves: arclength-equispaced inscription,
//! curvature-preserving corner rounding, discrete Frechet distance, the
//! Frechet/total-curvature length bound and convergence measurements.

mod convergence;
mod frechet;
mod smooth;

pub use convergence::{convergence_report, ConvergenceReport};
pub use frechet::{discrete_frechet, verify_length_bound, LengthBound};
pub use smooth::{fillet_smooth, sample, Arc, Piece, Sample, SmoothedCurve};

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// Polygon with `count` vertices equally spaced by arclength, starting at
/// parameter 0. Open curves keep both endpoints.
pub fn inscribe_polygon<T: Scalar>(curve: &PolyCurve<T>, count: usize) -> Result<PolyCurve<T>> {
    let needed = if curve.is_closed() { 3 } else { 2 };
    if count < needed {
        return Err(GeomError::TooFewVertices { needed, got: count });
    }
    let len = curve.length();
    let denom = T::from_usize_lossy(if curve.is_closed() { count } else { count - 1 });
    let pts = (0..count)
        .map(|k| {
            let s = (len * T::from_usize_lossy(k) / denom).min(len);
            curve.eval(s)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyCurve::new(pts, curve.is_closed())
}
