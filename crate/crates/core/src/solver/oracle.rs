//! Exhaustive grid search, independent of the refinement path.

use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

use super::{build_solution, lm, parity_report, symmetric_distance, QuadParams, SolutionSet};

/// A connected set of grid tuples whose residual norm is at most the oracle
/// tolerance, with its lowest-residual member as representative.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCluster<T> {
    pub representative: QuadParams<T>,
    pub residual_norm: T,
    pub members: Vec<QuadParams<T>>,
}

impl<T: Scalar> OracleCluster<T> {
    /// Symmetry-reduced distance from `p` to the nearest member.
    pub fn distance_to(&self, p: &QuadParams<T>, len: T) -> T {
        self.members.iter().fold(T::infinity(), |d, m| d.min(symmetric_distance(m, p, len)))
    }
}

/// Every cyclically ordered 4-subset of an `m`-point equispaced grid is
/// scored by its normalized residual; the tuples with norm `<= tol` are
/// split into connected components under the 80-neighbour adjacency of the
/// grid. Each component is one cluster.
pub fn oracle_clusters<T: Scalar>(curve: &PolyCurve<T>, m: usize, tol: T) -> Result<Vec<OracleCluster<T>>> {
    if !(4..=48).contains(&m) {
        return Err(GeomError::InvalidArgument(format!("oracle grid must have 4..=48 points, got {m}")));
    }
    let len = curve.length();
    let step = len / T::from_usize_lossy(m);
    let idx = |t: [usize; 4]| ((t[0] * m + t[1]) * m + t[2]) * m + t[3];
    let mut norms = vec![T::nan(); m * m * m * m];
    let mut below = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                for l in (k + 1)..m {
                    let t = [i, j, k, l].map(|x| step * T::from_usize_lossy(x));
                    if let Some((g, _)) = lm::residual_at(curve, &t) {
                        let v = lm::max_abs(&g);
                        norms[idx([i, j, k, l])] = v;
                        if v <= tol {
                            below.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
    }
    // union-find over the sublevel set
    let pos: std::collections::HashMap<usize, usize> = below.iter().enumerate().map(|(n, &t)| (idx(t), n)).collect();
    let mut parent: Vec<usize> = (0..below.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (n, t) in below.iter().enumerate() {
        for code in 0..81usize {
            if code == 40 {
                continue;
            }
            let mut c = code;
            let mut nb = [0usize; 4];
            for (x, &ti) in nb.iter_mut().zip(t) {
                *x = (ti + m + c % 3 - 1) % m;
                c /= 3;
            }
            nb.sort_unstable();
            if nb[0] == nb[1] || nb[1] == nb[2] || nb[2] == nb[3] {
                continue;
            }
            if let Some(&other) = pos.get(&idx(nb)) {
                let (a, b) = (find(&mut parent, n), find(&mut parent, other));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<[usize; 4]>> = Default::default();
    for (n, &t) in below.iter().enumerate() {
        let root = find(&mut parent, n);
        groups.entry(root).or_default().push(t);
    }
    let to_params = |t: [usize; 4]| QuadParams(t.map(|x| step * T::from_usize_lossy(x)));
    let mut clusters: Vec<OracleCluster<T>> = groups
        .into_values()
        .map(|g| {
            // lowest norm, ties to the lexicographically first tuple
            let best = *g
                .iter()
                .min_by(|a, b| norms[idx(**a)].partial_cmp(&norms[idx(**b)]).unwrap().then(a.cmp(b)))
                .unwrap();
            OracleCluster {
                representative: to_params(best),
                residual_norm: norms[idx(best)],
                members: g.into_iter().map(to_params).collect(),
            }
        })
        .collect();
    clusters.sort_by(|a, b| a.residual_norm.partial_cmp(&b.residual_norm).unwrap());
    Ok(clusters)
}

/// The cluster representatives of [`oracle_clusters`] as a solution set.
pub fn brute_force_oracle<T: Scalar>(curve: &PolyCurve<T>, m: usize, tol: T) -> Result<SolutionSet<T>> {
    let clusters = oracle_clusters(curve, m, tol)?;
    let raw_count = clusters.iter().map(|c| c.members.len()).sum();
    let solutions = clusters
        .into_iter()
        .filter_map(|c| build_solution(curve, c.representative, c.residual_norm))
        .collect();
    let mut set = SolutionSet { solutions, raw_count, non_generic: false, parity_note: String::new() };
    set.parity_note = parity_report(&set).text;
    Ok(set)
}
