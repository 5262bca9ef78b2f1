//! Corner rounding with tangent circular arcs.

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::point::{angle_between, Point};
use crate::scalar::Scalar;

/// Circular arc `center + radius (cos phi e1 + sin phi e2)` for `phi` from
/// `start` to `end`; `e1, e2` orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc<T> {
    pub center: Point<T>,
    pub radius: T,
    pub e1: Point<T>,
    pub e2: Point<T>,
    pub start: T,
    pub end: T,
}

impl<T: Scalar> Arc<T> {
    pub fn sweep(&self) -> T {
        (self.end - self.start).abs()
    }

    pub fn point(&self, phi: T) -> Point<T> {
        let (s, c) = phi.sin_cos();
        self.center.axpy(self.radius * c, &self.e1).axpy(self.radius * s, &self.e2)
    }

    fn tangent(&self, phi: T) -> Point<T> {
        let (s, c) = phi.sin_cos();
        let sign = if self.end >= self.start { T::one() } else { -T::one() };
        self.e1.scale(-s * sign).axpy(c * sign, &self.e2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Piece<T> {
    Segment { from: Point<T>, to: Point<T> },
    Arc(Arc<T>),
}

impl<T: Scalar> Piece<T> {
    pub fn length(&self) -> T {
        match self {
            Piece::Segment { from, to } => from.dist(to),
            Piece::Arc(a) => a.radius * a.sweep(),
        }
    }

    /// Point at arclength `s` into the piece.
    pub fn point_at(&self, s: T) -> Point<T> {
        match self {
            Piece::Segment { from, to } => {
                let l = self.length();
                if s >= l {
                    to.clone()
                } else {
                    from.lerp(to, s / l)
                }
            }
            Piece::Arc(a) => {
                let dphi = s / a.radius;
                let phi = if a.end >= a.start { a.start + dphi } else { a.start - dphi };
                a.point(phi)
            }
        }
    }

    #[cfg(test)]
    fn start_point(&self) -> Point<T> {
        match self {
            Piece::Segment { from, .. } => from.clone(),
            Piece::Arc(a) => a.point(a.start),
        }
    }

    fn end_point(&self) -> Point<T> {
        match self {
            Piece::Segment { to, .. } => to.clone(),
            Piece::Arc(a) => a.point(a.end),
        }
    }

    fn start_tangent(&self) -> Option<Point<T>> {
        match self {
            Piece::Segment { from, to } => (from != to).then(|| to.sub(from).normalized()),
            Piece::Arc(a) => Some(a.tangent(a.start)),
        }
    }

    fn end_tangent(&self) -> Option<Point<T>> {
        match self {
            Piece::Segment { from, to } => (from != to).then(|| to.sub(from).normalized()),
            Piece::Arc(a) => Some(a.tangent(a.end)),
        }
    }
}

/// Alternating segments and fillet arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedCurve<T> {
    pub pieces: Vec<Piece<T>>,
    pub closed: bool,
    /// Largest distance a corner was trimmed back; bounds the distance to the source polygon.
    pub max_trim: T,
    /// Arcs meet their neighbours tangentially by construction, so only
    /// segment-to-segment junctions can turn.
    pub tangent_joints: bool,
}

impl<T: Scalar> SmoothedCurve<T> {
    pub fn from_pieces(pieces: Vec<Piece<T>>, closed: bool) -> Self {
        Self { pieces, closed, max_trim: T::zero(), tangent_joints: false }
    }

    pub fn length(&self) -> T {
        self.pieces.iter().fold(T::zero(), |a, p| a + p.length())
    }

    /// Arc sweeps plus every turning at piece junctions.
    pub fn total_curvature(&self) -> T {
        let mut tc = T::zero();
        for p in &self.pieces {
            if let Piece::Arc(a) = p {
                tc = tc + a.sweep();
            }
        }
        let nonempty: Vec<&Piece<T>> = self.pieces.iter().filter(|p| p.length() > T::zero()).collect();
        let pairs = if self.closed { nonempty.len() } else { nonempty.len().saturating_sub(1) };
        for i in 0..pairs {
            let (a, b) = (nonempty[i], nonempty[(i + 1) % nonempty.len()]);
            if self.tangent_joints && (matches!(a, Piece::Arc(_)) || matches!(b, Piece::Arc(_))) {
                continue;
            }
            if let (Some(u), Some(v)) = (a.end_tangent(), b.start_tangent()) {
                tc = tc + angle_between(&u, &v);
            }
        }
        tc
    }

    /// Point at arclength `s` (clamped to the curve).
    pub fn eval(&self, s: T) -> Point<T> {
        let mut rem = s.max(T::zero());
        for p in &self.pieces {
            let l = p.length();
            if rem <= l {
                return p.point_at(rem);
            }
            rem = rem - l;
        }
        self.pieces.last().map(|p| p.end_point()).unwrap_or_default()
    }
}

/// Replaces every corner by a tangent circular arc of radius `radius`,
/// shrunk per corner so that the trim stays below 0.49 of both adjacent
/// edges. Each arc turns exactly the corner's exterior angle.
pub fn fillet_smooth<T: Scalar>(poly: &PolyCurve<T>, radius: T) -> Result<SmoothedCurve<T>> {
    if !(radius > T::zero()) {
        return Err(GeomError::InvalidArgument(format!("fillet radius must be positive, got {radius}")));
    }
    let n = poly.num_vertices();
    let v = poly.vertices();
    let cusp = T::PI() - T::lit(1e-9);
    let half = T::lit(0.5);
    let limit = T::lit(0.49);

    // per-vertex fillet: (arc, trim)
    let mut fillets: Vec<Option<(Arc<T>, T)>> = vec![None; n];
    let corners: Vec<usize> = if poly.is_closed() { (0..n).collect() } else { (1..n - 1).collect() };
    for i in corners {
        let alpha = poly.atom_angles()[i];
        if alpha >= cusp {
            return Err(GeomError::Cusp(i));
        }
        if alpha <= T::lit(1e-12) {
            continue;
        }
        let prev = &v[(i + n - 1) % n];
        let next = &v[(i + 1) % n];
        let (lin, lout) = (v[i].dist(prev), v[i].dist(next));
        let u_in = v[i].sub(prev).normalized();
        let u_out = next.sub(&v[i]).normalized();
        let tan_half = (alpha * half).tan();
        let r = radius.min(limit * lin.min(lout) / tan_half);
        let trim = r * tan_half;
        let t1 = v[i].axpy(-trim, &u_in);
        let bis = u_out.sub(&u_in).normalized();
        let center = v[i].axpy(r / (alpha * half).cos(), &bis);
        let e1 = t1.sub(&center).normalized();
        let e2 = u_in.axpy(-u_in.dot(&e1), &e1).normalized();
        // the sweep is the turning angle itself, not re-measured from geometry
        fillets[i] = Some((Arc { center, radius: r, e1, e2, start: T::zero(), end: alpha }, trim));
    }

    let trim_at = |i: usize| fillets[i].as_ref().map_or(T::zero(), |f| f.1);
    let mut pieces = Vec::new();
    let edges = poly.num_edges();
    for k in 0..edges {
        let j = (k + 1) % n;
        let dir = v[j].sub(&v[k]).normalized();
        let from = v[k].axpy(trim_at(k), &dir);
        let to = v[j].axpy(-trim_at(j), &dir);
        pieces.push(Piece::Segment { from, to });
        if let Some((arc, _)) = &fillets[j] {
            pieces.push(Piece::Arc(arc.clone()));
        }
    }
    let max_trim = (0..n).fold(T::zero(), |m, i| m.max(trim_at(i)));
    Ok(SmoothedCurve { pieces, closed: poly.is_closed(), max_trim, tangent_joints: true })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub curve: PolyCurve<T>,
    /// `step` exceeded the length; only the minimal vertex count was used.
    pub coarse: bool,
}

/// Polygon through points equally spaced by arclength at spacing `<= step`.
pub fn sample<T: Scalar>(smoothed: &SmoothedCurve<T>, step: T) -> Result<Sample<T>> {
    if !(step > T::zero()) {
        return Err(GeomError::InvalidArgument(format!("sample step must be positive, got {step}")));
    }
    let len = smoothed.length();
    let coarse = step >= len;
    let segs = (len / step).ceil().to_usize().unwrap_or(usize::MAX).max(if smoothed.closed { 3 } else { 1 });
    let count = if smoothed.closed { segs } else { segs + 1 };
    let denom = T::from_usize_lossy(segs);
    let pts: Vec<Point<T>> = (0..count).map(|k| smoothed.eval(len * T::from_usize_lossy(k) / denom)).collect();
    Ok(Sample { curve: PolyCurve::new(pts, smoothed.closed)?, coarse })
}
