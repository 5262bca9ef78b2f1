//! Points in R^n and the small amount of vector algebra the crate needs.

use std::ops::Index;

use crate::scalar::Scalar;

/// A point (or vector) in R^n. The dimension is a runtime property.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![T::zero(); dim] }
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Self { coords: coords.iter().map(|&c| T::lit(c)).collect() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.as_f64()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a - b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + b).collect() }
    }

    pub fn scale(&self, k: T) -> Self {
        Self { coords: self.coords.iter().map(|&a| a * k).collect() }
    }

    /// `self + k * dir`
    pub fn axpy(&self, k: T, dir: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&dir.coords).map(|(&a, &d)| a + k * d).collect() }
    }

    /// Linear interpolation `self + t (other - self)`.
    pub fn lerp(&self, other: &Self, t: T) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + t * (b - a)).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords.iter().zip(&other.coords).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn dist_sq(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
    }

    pub fn dist(&self, other: &Self) -> T {
        self.dist_sq(other).sqrt()
    }

    pub fn normalized(&self) -> Self {
        self.scale(T::one() / self.norm())
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

/// Magnitude of the wedge product `|u ^ v|`, the n-dimensional cross-product norm.
pub fn wedge_norm<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    let (a, b) = (u.coords(), v.coords());
    let mut acc = T::zero();
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let w = a[i] * b[j] - a[j] * b[i];
            acc = acc + w * w;
        }
    }
    acc.sqrt()
}

/// Angle in `[0, pi]` between two nonzero vectors, via `atan2(|u ^ v|, u . v)`.
pub fn angle_between<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    let ang = wedge_norm(u, v).atan2(u.dot(v));
    ang.max(T::zero()).min(T::PI())
}

/// Closest-point parameters `(s, t)` in `[0,1]^2` and the distance between
/// segments `p0 + s (p1 - p0)` and `q0 + t (q1 - q0)`.
pub fn segment_distance<T: Scalar>(
    p0: &Point<T>,
    p1: &Point<T>,
    q0: &Point<T>,
    q1: &Point<T>,
) -> (T, T, T) {
    let d1 = p1.sub(p0);
    let d2 = q1.sub(q0);
    let r = p0.sub(q0);
    let a = d1.norm_sq();
    let e = d2.norm_sq();
    let f = d2.dot(&r);
    let zero = T::zero();
    let one = T::one();
    let eps = T::epsilon() * T::epsilon();

    let (s, t);
    if a <= eps && e <= eps {
        s = zero;
        t = zero;
    } else if a <= eps {
        s = zero;
        t = (f / e).max(zero).min(one);
    } else {
        let c = d1.dot(&r);
        if e <= eps {
            t = zero;
            s = (-c / a).max(zero).min(one);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > eps * a * e { ((b * f - c * e) / denom).max(zero).min(one) } else { zero };
            let mut t0 = (b * s0 + f) / e;
            if t0 < zero {
                t0 = zero;
                s0 = (-c / a).max(zero).min(one);
            } else if t0 > one {
                t0 = one;
                s0 = ((b - c) / a).max(zero).min(one);
            }
            s = s0;
            t = t0;
        }
    }
    let cp = p0.axpy(s, &d1);
    let cq = q0.axpy(t, &d2);
    (s, t, cp.dist(&cq))
}
