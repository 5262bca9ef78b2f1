//! Quadrilaterals in R^n: square-likeness, the apex half-angle `theta` and
//! the turning of the open three-edge chain `p -> q -> r -> s`.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::motion::RigidMotion;
use crate::point::{angle_between, wedge_norm, Point};
use crate::scalar::Scalar;

/// Four points `p, q, r, s` of equal dimension, pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Quad<T> {
    pts: [Point<T>; 4],
}

/// Derived measurements of a quadrilateral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadMetrics<T> {
    /// `|pq|, |qr|, |rs|, |sp|`
    pub sides: [T; 4],
    /// `|pr|, |qs|`
    pub diagonals: [T; 2],
    /// `None` when the diagonal/side ratio is not realizable.
    pub theta: Option<T>,
    pub open_turning: T,
    pub planarity_defect: T,
    pub residual_norm: T,
}

impl<T: Scalar> Quad<T> {
    pub fn new(p: Point<T>, q: Point<T>, r: Point<T>, s: Point<T>) -> Result<Self> {
        let pts = [p, q, r, s];
        let dim = pts[0].dim();
        for (i, x) in pts.iter().enumerate() {
            if x.dim() != dim {
                return Err(GeomError::DimensionMismatch { index: i, expected: dim, got: x.dim() });
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if pts[i] == pts[j] {
                    return Err(GeomError::DegenerateQuad);
                }
            }
        }
        Ok(Self { pts })
    }

    pub fn from_f64(pts: &[Vec<f64>; 4]) -> Result<Self> {
        Self::new(
            Point::from_f64(&pts[0]),
            Point::from_f64(&pts[1]),
            Point::from_f64(&pts[2]),
            Point::from_f64(&pts[3]),
        )
    }

    pub fn points(&self) -> &[Point<T>; 4] {
        &self.pts
    }

    /// Cyclic relabeling `(p, q, r, s) -> (q, r, s, p)`.
    pub fn rotated(&self) -> Self {
        let [p, q, r, s] = self.pts.clone();
        Self { pts: [q, r, s, p] }
    }

    /// Reversal `(p, q, r, s) -> (p, s, r, q)`.
    pub fn reversed(&self) -> Self {
        let [p, q, r, s] = self.pts.clone();
        Self { pts: [p, s, r, q] }
    }

    pub fn sides(&self) -> [T; 4] {
        let p = &self.pts;
        [p[0].dist(&p[1]), p[1].dist(&p[2]), p[2].dist(&p[3]), p[3].dist(&p[0])]
    }

    pub fn diagonals(&self) -> [T; 2] {
        [self.pts[0].dist(&self.pts[2]), self.pts[1].dist(&self.pts[3])]
    }

    pub fn mean_side(&self) -> T {
        self.sides().iter().fold(T::zero(), |a, &b| a + b) / T::lit(4.0)
    }

    fn mean_side_sq(&self) -> T {
        let p = &self.pts;
        (p[0].dist_sq(&p[1]) + p[1].dist_sq(&p[2]) + p[2].dist_sq(&p[3]) + p[3].dist_sq(&p[0])) / T::lit(4.0)
    }

    /// `(|pq|^2 - |qr|^2, |qr|^2 - |rs|^2, |rs|^2 - |sp|^2, |pr|^2 - |qs|^2)`.
    pub fn residual(&self) -> [T; 4] {
        quad_residual(&self.pts[0], &self.pts[1], &self.pts[2], &self.pts[3])
    }

    /// Max absolute residual component divided by the mean squared side.
    pub fn residual_norm(&self) -> T {
        let r = self.residual();
        r.iter().fold(T::zero(), |m, &x| m.max(x.abs())) / self.mean_side_sq()
    }

    pub fn is_square_like(&self, tol: T) -> bool {
        self.residual_norm() <= tol
    }

    /// Apex half-angle: `asin(mean diagonal / (2 mean side))`.
    pub fn theta(&self) -> Result<T> {
        let [d1, d2] = self.diagonals();
        let ratio = (d1 + d2) / T::lit(2.0) / (T::lit(2.0) * self.mean_side());
        if ratio > T::one() + T::lit(1e-9) {
            return Err(GeomError::NotRealizable(ratio.as_f64()));
        }
        Ok(ratio.min(T::one()).max(T::zero()).asin())
    }

    /// Turning at `q` plus turning at `r` of the chain `p -> q -> r -> s`.
    pub fn open_turning(&self) -> T {
        let p = &self.pts;
        let (e1, e2, e3) = (p[1].sub(&p[0]), p[2].sub(&p[1]), p[3].sub(&p[2]));
        angle_between(&e1, &e2) + angle_between(&e2, &e3)
    }

    /// Distance of the remaining vertex from the plane of the most spread
    /// triple; zero in the plane.
    pub fn planarity_defect(&self) -> T {
        if self.pts[0].dim() == 2 {
            return T::zero();
        }
        let triples = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)];
        let (a, b, c, x) = triples
            .into_iter()
            .map(|t| {
                let area = wedge_norm(&self.pts[t.1].sub(&self.pts[t.0]), &self.pts[t.2].sub(&self.pts[t.0]));
                (area, t)
            })
            .fold((T::neg_infinity(), triples[0]), |best, cur| if cur.0 > best.0 { cur } else { best })
            .1;
        let o = &self.pts[a];
        let u = self.pts[b].sub(o);
        let e1 = u.normalized();
        let v = self.pts[c].sub(o);
        let v_perp = v.axpy(-v.dot(&e1), &e1);
        let scale = self.mean_side_sq();
        if v_perp.norm_sq() <= T::epsilon() * scale {
            return T::zero();
        }
        let e2 = v_perp.normalized();
        let w = self.pts[x].sub(o);
        let w1 = w.axpy(-w.dot(&e1), &e1);
        w1.axpy(-w1.dot(&e2), &e2).norm()
    }

    pub fn is_planar_square(&self, tol: T) -> bool {
        if !self.is_square_like(tol) {
            return false;
        }
        if self.planarity_defect() > tol * self.mean_side() {
            return false;
        }
        match self.theta() {
            Ok(th) => (th - T::FRAC_PI_4()).abs() <= tol,
            Err(_) => false,
        }
    }

    pub fn metrics(&self) -> QuadMetrics<T> {
        QuadMetrics {
            sides: self.sides(),
            diagonals: self.diagonals(),
            theta: self.theta().ok(),
            open_turning: self.open_turning(),
            planarity_defect: self.planarity_defect(),
            residual_norm: self.residual_norm(),
        }
    }
}

pub(crate) fn quad_residual<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>, s: &Point<T>) -> [T; 4] {
    let pq = p.dist_sq(q);
    let qr = q.dist_sq(r);
    let rs = r.dist_sq(s);
    let sp = s.dist_sq(p);
    [pq - qr, qr - rs, rs - sp, p.dist_sq(r) - q.dist_sq(s)]
}

/// Square-like quadrilateral with apex half-angle `theta` and side `side`.
///
/// Canonical frame: midpoint of `qs` at the origin, `q, s = (0, +-sin theta, 0)`,
/// `p = (cos theta, 0, 0)` and `r` rotated out of the `pq` plane by `phi`,
/// `cos phi = 1 - 2 tan^2 theta`. A two-dimensional `placement` only accepts
/// `theta = pi/4` (the planar square).
pub fn make_square_like<T: Scalar>(theta: T, side: T, placement: &RigidMotion<T>) -> Result<Quad<T>> {
    let quarter = T::FRAC_PI_4();
    if !(theta > T::zero() && theta <= quarter) {
        return Err(GeomError::ThetaOutOfRange(theta.as_f64()));
    }
    if !(side > T::zero()) {
        return Err(GeomError::InvalidArgument(format!("side must be positive, got {side}")));
    }
    let (st, ct) = theta.sin_cos();
    let cos2 = (T::lit(2.0) * theta).cos();
    let planar = cos2 <= T::lit(4.0) * T::epsilon();
    let (cphi, sphi) = if planar {
        (-T::one(), T::zero())
    } else {
        let tan = st / ct;
        (T::one() - T::lit(2.0) * tan * tan, T::lit(2.0) * tan * cos2.sqrt() / ct)
    };
    let z = T::zero();
    let canonical: [Vec<T>; 4] = if placement.dim() == 2 {
        if !planar {
            return Err(GeomError::InvalidArgument("non-planar square-like quad needs dimension >= 3".into()));
        }
        [vec![ct, z], vec![z, st], vec![-ct, z], vec![z, -st]]
    } else {
        [vec![ct, z, z], vec![z, st, z], vec![ct * cphi, z, ct * sphi], vec![z, -st, z]]
    };
    let [p, q, r, s] = canonical.map(|c| placement.apply(&Point::new(c).scale(side)));
    Quad::new(p, q, r, s)
}
