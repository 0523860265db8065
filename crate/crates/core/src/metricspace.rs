//! Finite metric spaces, metric validation and the three scale invariants
//! δ (smallest distance), ∇ (2-covering diameter) and Δ (diameter).

use serde::Serialize;

use crate::error::{Error, Result};

/// Default absolute tolerance for distance comparisons.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// A finite metric space given by a symmetric distance matrix.
///
/// Instances are only produced by [`validate_metric`] and friends, so every
/// value of this type satisfies the metric axioms up to its stored tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    names: Vec<String>,
    dist: Vec<f64>,
    epsilon: f64,
}

/// δ, ∇ and Δ of a space with at least two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricProfile {
    pub delta: f64,
    pub nabla: f64,
    pub big_delta: f64,
}

/// A 2-covering: every part has at least two points and the parts cover the space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Covering {
    pub parts: Vec<Vec<usize>>,
    pub part_diameters: Vec<f64>,
}

/// Validate `matrix` as a metric with absolute tolerance `epsilon`.
///
/// Points are named `0..n`. The first violating witness is reported.
pub fn validate_metric(matrix: Vec<Vec<f64>>, epsilon: f64) -> Result<FiniteMetricSpace> {
    let names = (0..matrix.len()).map(|i| i.to_string()).collect();
    FiniteMetricSpace::with_names(names, matrix, epsilon)
}

impl FiniteMetricSpace {
    pub fn with_names(names: Vec<String>, matrix: Vec<Vec<f64>>, epsilon: f64) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if names.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} point names for a {n}x{n} matrix",
                names.len()
            )));
        }
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { row, len: entries.len(), expected: n });
            }
            dist.extend_from_slice(entries);
        }
        let space = FiniteMetricSpace { names, dist, epsilon };
        space.check_axioms()?;
        Ok(space)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let eps = self.epsilon;
        for i in 0..n {
            for j in 0..n {
                if !self.d(i, j).is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        for i in 0..n {
            if self.d(i, i) != 0.0 {
                return Err(Error::NonZeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.d(i, j) - self.d(j, i)).abs() > eps {
                    return Err(Error::AsymmetricMatrix { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.d(i, j) <= eps {
                    return Err(Error::NegativeOrZeroOffDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let dij = self.d(i, j);
                for via in 0..n {
                    if via != i && via != j && dij > self.d(i, via) + self.d(via, j) + eps {
                        return Err(Error::TriangleViolation { i, j, via });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of points.
    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Same space, different comparison tolerance. Axioms are re-checked.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        let space = FiniteMetricSpace { epsilon, ..self.clone() };
        space.check_axioms()?;
        Ok(space)
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.len()).map(<[f64]>::to_vec).collect()
    }

    /// `a == b` up to the space's tolerance.
    #[inline]
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.epsilon
    }

    /// Largest pairwise distance within `points` (0 for fewer than two).
    pub fn diameter_of(&self, points: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (a, &p) in points.iter().enumerate() {
            for &q in &points[a + 1..] {
                best = best.max(self.d(p, q));
            }
        }
        best
    }

    /// Distance of `p` to its nearest other point.
    pub fn nearest_neighbor_distance(&self, p: usize) -> Option<f64> {
        (0..self.len()).filter(|&q| q != p).map(|q| self.d(p, q)).reduce(f64::min)
    }

    /// Relabel: point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let mut dist = Vec::with_capacity(n * n);
        for &a in perm {
            for &b in perm {
                dist.push(self.d(a, b));
            }
        }
        Ok(FiniteMetricSpace { names, dist, epsilon: self.epsilon })
    }

    /// Sorted distinct pairwise distances, merging values within ε.
    ///
    /// Each bucket is represented by its largest member so that
    /// `d <= level` selects exactly the pairs in buckets up to `level`.
    pub fn distance_levels(&self) -> Vec<f64> {
        let n = self.len();
        let mut all: Vec<f64> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .collect();
        all.sort_by(f64::total_cmp);
        let mut levels: Vec<f64> = Vec::new();
        let mut bucket_start = f64::NEG_INFINITY;
        for d in all {
            match levels.last_mut() {
                Some(last) if d - bucket_start <= self.epsilon => *last = d,
                _ => {
                    bucket_start = d;
                    levels.push(d);
                }
            }
        }
        levels
    }
}

/// δ, ∇ and Δ. ∇ is the largest nearest-neighbour distance: a 2-covering of
/// diameter η exists iff every point has another point within η.
pub fn profile(space: &FiniteMetricSpace) -> Result<MetricProfile> {
    let n = space.len();
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    let mut delta = f64::INFINITY;
    let mut big_delta = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            delta = delta.min(space.d(i, j));
            big_delta = big_delta.max(space.d(i, j));
        }
    }
    let nabla = (0..n)
        .filter_map(|p| space.nearest_neighbor_distance(p))
        .fold(0.0f64, f64::max);
    Ok(MetricProfile { delta, nabla, big_delta })
}

impl Covering {
    /// Build and validate a 2-covering of `space` from point-index parts.
    pub fn new(space: &FiniteMetricSpace, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = space.len();
        let mut covered = vec![false; n];
        for part in &parts {
            let mut sorted = part.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < 2 {
                return Err(Error::InvalidCovering(format!("part {part:?} has fewer than two points")));
            }
            for &p in &sorted {
                if p >= n {
                    return Err(Error::InvalidCovering(format!("point index {p} out of range")));
                }
                covered[p] = true;
            }
        }
        if let Some(p) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidCovering(format!("point {p} is not covered")));
        }
        let part_diameters = parts.iter().map(|p| space.diameter_of(p)).collect();
        Ok(Covering { parts, part_diameters })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Σ Δ(U_i)^s.
    pub fn weight(&self, s: f64) -> f64 {
        self.part_diameters.iter().map(|d| d.powf(s)).sum()
    }
}

/// Largest part diameter.
pub fn covering_diameter(covering: &Covering) -> f64 {
    covering.part_diameters.iter().copied().fold(0.0, f64::max)
}
