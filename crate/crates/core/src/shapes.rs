//! Curve generators for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::inscribe_polygon;
use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::point::Point;
use crate::scalar::Scalar;

fn closed_from_fn<T: Scalar, F: Fn(f64) -> Vec<f64>>(samples: usize, f: F) -> Result<PolyCurve<T>> {
    if samples < 3 {
        return Err(GeomError::TooFewVertices { needed: 3, got: samples });
    }
    let pts = (0..samples)
        .map(|k| Point::from_f64(&f(2.0 * std::f64::consts::PI * k as f64 / samples as f64)))
        .collect();
    PolyCurve::new(pts, true)
}

pub fn circle<T: Scalar>(radius: f64, samples: usize) -> Result<PolyCurve<T>> {
    ellipse(radius, radius, samples)
}

/// Ellipse sampled uniformly in the angle parameter.
pub fn ellipse<T: Scalar>(a: f64, b: f64, samples: usize) -> Result<PolyCurve<T>> {
    if !(a > 0.0 && b > 0.0) {
        return Err(GeomError::InvalidArgument("ellipse semi-axes must be positive".into()));
    }
    closed_from_fn(samples, |t| vec![a * t.cos(), b * t.sin()])
}

pub fn regular_polygon<T: Scalar>(sides: usize, radius: f64) -> Result<PolyCurve<T>> {
    circle(radius, sides)
}

/// Star-shaped polygon alternating between the outer and inner radius.
pub fn star_polygon<T: Scalar>(points: usize, outer: f64, inner: f64) -> Result<PolyCurve<T>> {
    if points < 2 || !(outer > 0.0 && inner > 0.0) {
        return Err(GeomError::InvalidArgument("star needs >= 2 points and positive radii".into()));
    }
    let n = 2 * points;
    let pts = (0..n)
        .map(|k| {
            let r = if k % 2 == 0 { outer } else { inner };
            let t = std::f64::consts::PI * k as f64 / points as f64;
            Point::from_f64(&[r * t.cos(), r * t.sin()])
        })
        .collect();
    PolyCurve::new(pts, true)
}

/// Coordinate `d` is `sum_k a_k cos(k t) + b_k sin(k t)` with
/// `coeffs[d][k] = (a_k, b_k)`.
pub fn fourier<T: Scalar>(coeffs: &[Vec<(f64, f64)>], samples: usize) -> Result<PolyCurve<T>> {
    if coeffs.len() < 2 {
        return Err(GeomError::BadDimension(coeffs.len()));
    }
    closed_from_fn(samples, |t| {
        coeffs
            .iter()
            .map(|c| c.iter().enumerate().map(|(k, &(a, b))| a * (k as f64 * t).cos() + b * (k as f64 * t).sin()).sum())
            .collect()
    })
}

/// `(sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)`, uniform in `t`.
pub fn trefoil<T: Scalar>(samples: usize) -> Result<PolyCurve<T>> {
    closed_from_fn(samples, |t| vec![t.sin() + 2.0 * (2.0 * t).sin(), t.cos() - 2.0 * (2.0 * t).cos(), -(3.0 * t).sin()])
}

pub const RANDOM_JORDAN_RETRIES: usize = 100;

/// Random planar trigonometric polynomial perturbing the unit circle,
/// resampled by arclength and rejected until embedded.
pub fn random_jordan<T: Scalar>(seed: u64, harmonics: usize, samples: usize) -> Result<PolyCurve<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_JORDAN_RETRIES {
        let mut cx = vec![(0.0, 0.0), (1.0, 0.0)];
        let mut cy = vec![(0.0, 0.0), (0.0, 1.0)];
        for k in 2..=harmonics.max(2) {
            let amp = 0.6 / (k * k) as f64;
            cx.push((amp * rng.gen_range(-1.0..1.0), amp * rng.gen_range(-1.0..1.0)));
            cy.push((amp * rng.gen_range(-1.0..1.0), amp * rng.gen_range(-1.0..1.0)));
        }
        let dense: PolyCurve<T> = fourier(&[cx, cy], (8 * samples).max(256))?;
        if !dense.is_embedded(T::zero()) {
            continue;
        }
        let curve = inscribe_polygon(&dense, samples)?;
        if curve.is_embedded(T::zero()) {
            return Ok(curve);
        }
    }
    Err(GeomError::InvalidArgument(format!("no embedded curve after {RANDOM_JORDAN_RETRIES} attempts")))
}

/// The standard experiment corpus: the generators at their usual sizes,
/// a unit square, an acute scalene triangle, and two open polylines.
pub fn corpus<T: Scalar>() -> Result<Vec<(String, PolyCurve<T>)>> {
    let quarter: Vec<Vec<f64>> = (0..=30)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 * k as f64 / 30.0;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let zigzag: Vec<Vec<f64>> = (0..12).map(|k| vec![k as f64 * 0.5, if k % 2 == 0 { 0.0 } else { 0.4 }]).collect();
    Ok(vec![
        ("unit_square".into(), PolyCurve::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]], true)?),
        ("scalene_triangle".into(), PolyCurve::from_f64(&[vec![0.0, 0.0], vec![4.0, 0.0], vec![1.2, 3.0]], true)?),
        ("hexagon".into(), regular_polygon(6, 1.0)?),
        ("circle_360".into(), circle(1.0, 360)?),
        ("ellipse_512".into(), ellipse(2.0, 1.0, 512)?),
        ("star_5".into(), star_polygon(5, 1.0, 0.5)?),
        ("trefoil_1024".into(), trefoil(1024)?),
        ("random_jordan_42_64".into(), random_jordan(42, 4, 64)?),
        ("random_jordan_42_256".into(), random_jordan(42, 4, 256)?),
        ("quarter_arc".into(), PolyCurve::from_f64(&quarter, false)?),
        ("zigzag".into(), PolyCurve::from_f64(&zigzag, false)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trefoil_curvature_resolved() {
        let c: PolyCurve<f64> = trefoil(1024).unwrap();
        let fine: PolyCurve<f64> = trefoil(10240).unwrap();
        assert_eq!(c.dim(), 3);
        assert!((c.total_curvature() - fine.total_curvature()).abs() < 1e-3);
        assert!(c.is_embedded(0.0));
    }

    #[test]
    fn basic_generators() {
        let hex: PolyCurve<f64> = regular_polygon(6, 1.0).unwrap();
        assert!((hex.total_curvature() - 2.0 * PI).abs() < 1e-12);
        let e: PolyCurve<f64> = ellipse(2.0, 1.0, 512).unwrap();
        assert_eq!(e.num_vertices(), 512);
        let star: PolyCurve<f64> = star_polygon(5, 1.0, 0.4).unwrap();
        assert!(star.is_embedded(0.0));
        assert!(ellipse::<f64>(0.0, 1.0, 10).is_err());
    }

    #[test]
    fn random_jordan_deterministic_and_embedded() {
        let a: PolyCurve<f64> = random_jordan(42, 6, 64).unwrap();
        let b: PolyCurve<f64> = random_jordan(42, 6, 64).unwrap();
        assert_eq!(a, b);
        assert!(a.is_embedded(0.0));
        let c: PolyCurve<f64> = random_jordan(43, 6, 64).unwrap();
        assert_ne!(a, c);
    }
}
