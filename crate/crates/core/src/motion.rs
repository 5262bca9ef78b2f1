//! Rigid motions of R^n.

use rand::Rng;

use crate::point::Point;
use crate::scalar::Scalar;

/// `x -> R x + t` with `R` orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidMotion<T> {
    rows: Vec<Vec<T>>,
    translation: Point<T>,
}

impl<T: Scalar> RigidMotion<T> {
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Self { rows, translation: Point::zeros(dim) }
    }

    /// Random proper rotation (Gram-Schmidt on random vectors) plus a
    /// translation with coordinates in `[-spread, spread]`.
    pub fn random<R: Rng + ?Sized>(dim: usize, spread: f64, rng: &mut R) -> Self {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
        while basis.len() < dim {
            let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-3 {
                v.iter_mut().for_each(|x| *x /= n);
                basis.push(v);
            }
        }
        if det(&basis) < 0.0 {
            basis[0].iter_mut().for_each(|x| *x = -*x);
        }
        let translation = Point::new((0..dim).map(|_| T::lit(rng.gen_range(-spread..=spread))).collect());
        let rows = basis.into_iter().map(|r| r.into_iter().map(T::lit).collect()).collect();
        Self { rows, translation }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Applies the motion; lower-dimensional inputs are first zero-padded.
    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        let n = self.dim();
        let c = p.coords();
        Point::new(
            (0..n)
                .map(|i| {
                    let row = &self.rows[i];
                    let mut acc = self.translation[i];
                    for (j, &x) in c.iter().enumerate().take(n) {
                        acc = acc + row[j] * x;
                    }
                    acc
                })
                .collect(),
        )
    }
}

fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut d = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= a[c][c];
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}
