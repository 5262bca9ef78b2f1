//! Polygonal curves in R^n: arclength parametrization, turning angles, the
//! atomic total-curvature measure, cusps and embeddedness.

use crate::error::{GeomError, Result};
use crate::point::{angle_between, segment_distance, Point};
use crate::scalar::Scalar;

/// A vertex carrying curvature mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureAtom<T> {
    pub vertex_index: usize,
    pub angle: T,
}

/// Ordered vertex chain in R^n, open or closed, with a cached cumulative
/// arclength table and the turning angle at every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve<T> {
    vertices: Vec<Point<T>>,
    closed: bool,
    /// Arclength at each vertex; closed curves carry one extra entry `L`.
    cum_len: Vec<T>,
    /// Turning angle per vertex (zero at the endpoints of an open curve).
    atoms: Vec<T>,
    /// `atom_prefix[k] = atoms[0] + ... + atoms[k-1]`.
    atom_prefix: Vec<T>,
}

impl<T: Scalar> PolyCurve<T> {
    pub fn new(vertices: Vec<Point<T>>, closed: bool) -> Result<Self> {
        let needed = if closed { 3 } else { 2 };
        if vertices.len() < needed {
            return Err(GeomError::TooFewVertices { needed, got: vertices.len() });
        }
        let dim = vertices[0].dim();
        if dim < 2 {
            return Err(GeomError::BadDimension(dim));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(GeomError::DimensionMismatch { index: i, expected: dim, got: v.dim() });
            }
            if !v.is_finite() {
                return Err(GeomError::NonFinite(i));
            }
        }
        let n = vertices.len();
        let edges = if closed { n } else { n - 1 };
        let mut cum_len = Vec::with_capacity(edges + 1);
        cum_len.push(T::zero());
        let mut acc = T::zero();
        for k in 0..edges {
            let j = (k + 1) % n;
            let l = vertices[k].dist(&vertices[j]);
            if !(l > T::zero()) {
                return Err(GeomError::DegenerateEdge(k, j));
            }
            acc = acc + l;
            cum_len.push(acc);
        }

        let mut curve = Self { vertices, closed, cum_len, atoms: Vec::new(), atom_prefix: Vec::new() };
        let atoms: Vec<T> = (0..n).map(|i| curve.raw_turning(i).unwrap_or_else(T::zero)).collect();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(T::zero());
        let mut s = T::zero();
        for &a in &atoms {
            s = s + a;
            prefix.push(s);
        }
        curve.atoms = atoms;
        curve.atom_prefix = prefix;
        Ok(curve)
    }

    pub fn from_f64(vertices: &[Vec<f64>], closed: bool) -> Result<Self> {
        Self::new(vertices.iter().map(|v| Point::from_f64(v)).collect(), closed)
    }

    fn raw_turning(&self, i: usize) -> Option<T> {
        let n = self.vertices.len();
        let (prev, next) = if self.closed {
            ((i + n - 1) % n, (i + 1) % n)
        } else {
            if i == 0 || i + 1 >= n {
                return None;
            }
            (i - 1, i + 1)
        };
        let u = self.vertices[i].sub(&self.vertices[prev]);
        let v = self.vertices[next].sub(&self.vertices[i]);
        Some(angle_between(&u, &v))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    #[inline]
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    #[inline]
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.cum_len.len() - 1
    }

    /// Arclength position of every edge boundary (`num_edges + 1` entries).
    #[inline]
    pub fn cum_len(&self) -> &[T] {
        &self.cum_len
    }

    /// Arclength of vertex `i`.
    #[inline]
    pub fn vertex_param(&self, i: usize) -> T {
        self.cum_len[i]
    }

    /// Total length `L`.
    #[inline]
    pub fn length(&self) -> T {
        *self.cum_len.last().unwrap()
    }

    pub fn edge_len(&self, k: usize) -> T {
        self.cum_len[k + 1] - self.cum_len[k]
    }

    /// Endpoints of edge `k` (vertex `k` to vertex `k + 1`, wrapping if closed).
    pub fn edge(&self, k: usize) -> (&Point<T>, &Point<T>) {
        let n = self.vertices.len();
        (&self.vertices[k], &self.vertices[(k + 1) % n])
    }

    /// Turning angle at every vertex; endpoints of an open chain carry zero.
    pub fn atom_angles(&self) -> &[T] {
        &self.atoms
    }

    pub fn atoms(&self) -> Vec<CurvatureAtom<T>> {
        let range = if self.closed { 0..self.vertices.len() } else { 1..self.vertices.len() - 1 };
        range.map(|i| CurvatureAtom { vertex_index: i, angle: self.atoms[i] }).collect()
    }

    /// Sum of atoms `atoms[lo..hi]` for `lo <= hi <= n`.
    #[inline]
    pub(crate) fn atom_sum(&self, lo: usize, hi: usize) -> T {
        self.atom_prefix[hi] - self.atom_prefix[lo]
    }

    /// Canonical parameter: modulo `L` into `[0, L)` when closed, validated when open.
    pub fn normalize(&self, s: T) -> Result<T> {
        let len = self.length();
        if self.closed {
            if !s.is_finite() {
                return Err(GeomError::InvalidArgument(format!("non-finite parameter {s}")));
            }
            let mut r = s % len;
            if r < T::zero() {
                r = r + len;
            }
            if r >= len {
                r = T::zero();
            }
            Ok(r)
        } else if s >= T::zero() && s <= len {
            Ok(s)
        } else {
            Err(GeomError::ParameterOutOfRange { s: s.as_f64(), len: len.as_f64() })
        }
    }

    /// Index of the edge containing normalized parameter `s`.
    fn edge_at(&self, s: T) -> usize {
        let k = self.cum_len.partition_point(|&c| c <= s);
        k.saturating_sub(1).min(self.num_edges() - 1)
    }

    /// Point at arclength `s`.
    pub fn eval(&self, s: T) -> Result<Point<T>> {
        let s = self.normalize(s)?;
        Ok(self.eval_normalized(s))
    }

    pub(crate) fn eval_normalized(&self, s: T) -> Point<T> {
        let k = self.edge_at(s);
        let (a, b) = self.edge(k);
        let t = (s - self.cum_len[k]) / self.edge_len(k);
        if t >= T::one() {
            b.clone()
        } else {
            a.lerp(b, t.max(T::zero()))
        }
    }

    /// Unit direction of the edge containing `s` (the forward one-sided tangent).
    pub fn tangent(&self, s: T) -> Result<Point<T>> {
        let s = self.normalize(s)?;
        let (a, b) = self.edge(self.edge_at(s));
        Ok(b.sub(a).normalized())
    }

    /// Length of the directed arc from `a` to `b`. Closed curves wrap forward;
    /// open curves use the arc between the two parameters.
    pub fn arc_length(&self, a: T, b: T) -> Result<T> {
        let (na, nb) = (self.normalize(a)?, self.normalize(b)?);
        if self.closed {
            Ok(if nb >= na { nb - na } else { nb - na + self.length() })
        } else {
            Ok((nb - na).abs())
        }
    }

    /// Turning angle at vertex `i`, in `[0, pi]`.
    pub fn turning_angle(&self, i: usize) -> Result<T> {
        if i >= self.vertices.len() {
            return Err(GeomError::VertexIndex(i));
        }
        self.raw_turning(i).ok_or(GeomError::EndpointVertex(i))
    }

    /// Sum of turning angles over all (interior, if open) vertices.
    pub fn total_curvature(&self) -> T {
        *self.atom_prefix.last().unwrap()
    }

    /// Curvature mass of the open subarc `(a, b)`: atoms strictly inside the
    /// directed arc. A vertex hit exactly by `a` or `b` does not count.
    pub fn subarc_curvature(&self, a: T, b: T) -> Result<T> {
        let (na, nb) = (self.normalize(a)?, self.normalize(b)?);
        let n = self.vertices.len();
        let pos = &self.cum_len[..n];
        // first vertex strictly after x / first vertex at or after x
        let after = |x: T| pos.partition_point(|&p| p <= x);
        let before = |x: T| pos.partition_point(|&p| p < x);
        if !self.closed {
            let (lo, hi) = if na <= nb { (na, nb) } else { (nb, na) };
            let (i0, i1) = (after(lo), before(hi));
            return Ok(if i1 > i0 { self.atom_sum(i0, i1) } else { T::zero() });
        }
        if na == nb {
            return Ok(T::zero());
        }
        if na < nb {
            let (i0, i1) = (after(na), before(nb));
            Ok(if i1 > i0 { self.atom_sum(i0, i1) } else { T::zero() })
        } else {
            let tail = self.atom_sum(after(na), n);
            let head = self.atom_sum(0, before(nb));
            Ok(tail + head)
        }
    }

    /// Curvature of the open arc starting at `a` and running `span` forward
    /// (`0 <= span <= L`). A full span keeps every atom except one sitting at `a`.
    pub fn subarc_curvature_span(&self, a: T, span: T) -> Result<T> {
        let len = self.length();
        if !self.closed || span < len {
            let b = if self.closed { a + span } else { (a + span).min(len) };
            return self.subarc_curvature(a, b);
        }
        let na = self.normalize(a)?;
        let n = self.vertices.len();
        let i = self.cum_len[..n].partition_point(|&p| p < na);
        let at_a = if i < n && self.cum_len[i] == na { self.atoms[i] } else { T::zero() };
        Ok(self.total_curvature() - at_a)
    }

    /// Vertex indices whose turning angle is within `tol` of `pi`.
    pub fn detect_cusps(&self, tol: T) -> Vec<usize> {
        let thresh = T::PI() - tol;
        self.atoms()
            .into_iter()
            .filter(|a| a.angle >= thresh)
            .map(|a| a.vertex_index)
            .collect()
    }

    /// True iff no two non-adjacent edges come within `clearance` of each
    /// other and no adjacent pair doubles back onto itself.
    pub fn is_embedded(&self, clearance: T) -> bool {
        let m = self.num_edges();
        let full_reversal = T::PI() - T::lit(1e-12);
        if self.atoms.iter().any(|&a| a >= full_reversal) {
            return false;
        }
        let dim = self.dim();
        // bounding boxes, swept along the first axis
        let boxes: Vec<(Vec<T>, Vec<T>)> = (0..m)
            .map(|k| {
                let (a, b) = self.edge(k);
                let lo = (0..dim).map(|d| a[d].min(b[d])).collect();
                let hi = (0..dim).map(|d| a[d].max(b[d])).collect();
                (lo, hi)
            })
            .collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| boxes[i].0[0].partial_cmp(&boxes[j].0[0]).unwrap().then(i.cmp(&j)));
        let adjacent = |i: usize, j: usize| {
            let d = if i > j { i - j } else { j - i };
            d == 1 || (self.closed && d == m - 1)
        };
        for (oi, &i) in order.iter().enumerate() {
            for &j in &order[oi + 1..] {
                if boxes[j].0[0] > boxes[i].1[0] + clearance {
                    break;
                }
                if adjacent(i, j) || i == j {
                    continue;
                }
                let overlap = (1..dim)
                    .all(|d| boxes[j].0[d] <= boxes[i].1[d] + clearance && boxes[i].0[d] <= boxes[j].1[d] + clearance);
                if !overlap {
                    continue;
                }
                let (a0, a1) = self.edge(i);
                let (b0, b1) = self.edge(j);
                let (_, _, d) = segment_distance(a0, a1, b0, b1);
                if d <= clearance {
                    return false;
                }
            }
        }
        true
    }

    /// Applies `f` to every vertex, producing a new curve.
    pub fn map_points<F: Fn(&Point<T>) -> Point<T>>(&self, f: F) -> Result<Self> {
        Self::new(self.vertices.iter().map(f).collect(), self.closed)
    }
}
