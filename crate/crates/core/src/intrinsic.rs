//! Arcs and geodesics in finite metric spaces, and the test for intrinsic
//! (length) spaces.
//!
//! A pair `{x, y}` is a forced segment when no third point `z` lies strictly
//! between them (`d(x,z) + d(z,y) = d(x,y)`). The segment graph joins forced
//! segments with length `d(x, y)`; its shortest-path metric reproduces the
//! space, and the space is intrinsic exactly when that graph is not complete.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{metric_space_of, Graph};
use crate::metricspace::FiniteMetricSpace;

/// A sequence of points `x_0, …, x_k` with `k ≥ 1` and distinct neighbours.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Arc {
    pub points: Vec<usize>,
    pub length: f64,
}

impl Arc {
    pub fn new(space: &FiniteMetricSpace, points: Vec<usize>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter("an arc needs at least two points".into()));
        }
        if let Some(&p) = points.iter().find(|&&p| p >= space.len()) {
            return Err(Error::InvalidParameter(format!("point {p} out of range")));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("consecutive arc points must differ".into()));
        }
        let length = points.windows(2).map(|w| space.d(w[0], w[1])).sum();
        Ok(Arc { points, length })
    }

    /// Number of segments.
    pub fn count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.points[0], *self.points.last().expect("non-empty"))
    }

    fn tolerance(&self, space: &FiniteMetricSpace) -> f64 {
        space.epsilon() * self.count() as f64
    }

    pub fn is_geodesic(&self, space: &FiniteMetricSpace) -> bool {
        let (x, y) = self.endpoints();
        (self.length - space.d(x, y)).abs() <= self.tolerance(space)
    }
}

/// One geodesic per unordered pair, keyed by `(min, max)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct GeodesicFamily {
    pub geodesics: BTreeMap<(usize, usize), Arc>,
}

impl GeodesicFamily {
    pub fn max_count(&self) -> usize {
        self.geodesics.values().map(Arc::count).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicVerdict {
    pub intrinsic: bool,
    /// The segment graph, when the space is intrinsic.
    pub segment_graph: Option<Graph>,
    pub family: GeodesicFamily,
}

#[inline]
fn strictly_between(space: &FiniteMetricSpace, x: usize, z: usize, y: usize) -> bool {
    z != x && z != y && space.approx_eq(space.d(x, z) + space.d(z, y), space.d(x, y))
}

/// Graph of forced segments, with `g({x, y}) = d(x, y)`.
pub fn segment_graph(space: &FiniteMetricSpace) -> Result<Graph> {
    let n = space.len();
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            if !(0..n).any(|z| strictly_between(space, x, z, y)) {
                edges.push((x, y, space.d(x, y)));
            }
        }
    }
    Graph::new(space.names().to_vec(), edges).map_err(|e| match e {
        Error::Disconnected { component } => {
            Error::Internal(format!("segment graph is disconnected at {component:?}"))
        }
        other => other,
    })
}

/// A geodesic from `x` to `y` with the largest possible count.
///
/// Longest path in the DAG on the points between `x` and `y`, ordered by
/// distance from `x`, with an edge `u → w` when `d(x,u) + d(u,w) = d(x,w)`.
/// Ties go to the lowest point index.
pub fn maximal_geodesic(space: &FiniteMetricSpace, x: usize, y: usize) -> Result<Arc> {
    let n = space.len();
    if x >= n || y >= n {
        return Err(Error::InvalidParameter("point out of range".into()));
    }
    if x == y {
        return Err(Error::InvalidParameter("maximal geodesic needs two distinct points".into()));
    }
    let mut interval: Vec<usize> = (0..n)
        .filter(|&z| z == x || z == y || strictly_between(space, x, z, y))
        .collect();
    interval.sort_by(|&a, &b| space.d(x, a).total_cmp(&space.d(x, b)).then(a.cmp(&b)));
    // x sorts first (distance 0); y is placed last regardless of ε-ties.
    interval.retain(|&z| z != y);
    interval.push(y);
    debug_assert_eq!(interval[0], x);

    let m = interval.len();
    let mut count = vec![0usize; m];
    let mut pred = vec![usize::MAX; m];
    for b in 1..m {
        let w = interval[b];
        let mut best: Option<(usize, usize)> = None;
        for a in 0..b {
            let u = interval[a];
            if a > 0 && count[a] == 0 {
                continue;
            }
            let ok = space.d(x, u) < space.d(x, w) - space.epsilon()
                && space.approx_eq(space.d(x, u) + space.d(u, w), space.d(x, w));
            let ok = ok || (a == 0 && b == m - 1);
            if !ok {
                continue;
            }
            let c = count[a] + 1;
            let better = match best {
                None => true,
                Some((bc, bu)) => c > bc || (c == bc && u < bu),
            };
            if better {
                best = Some((c, u));
                pred[b] = a;
            }
        }
        if let Some((c, _)) = best {
            count[b] = c;
        }
    }
    let mut points = vec![y];
    let mut at = m - 1;
    while at != 0 {
        at = pred[at];
        points.push(interval[at]);
    }
    points.reverse();
    let arc = Arc::new(space, points)?;
    if !arc.is_geodesic(space) {
        return Err(Error::Internal(format!("extracted arc for ({x}, {y}) is not a geodesic")));
    }
    Ok(arc)
}

fn maximal_family(space: &FiniteMetricSpace) -> Result<GeodesicFamily> {
    let n = space.len();
    let mut geodesics = BTreeMap::new();
    for x in 0..n {
        for y in (x + 1)..n {
            geodesics.insert((x, y), maximal_geodesic(space, x, y)?);
        }
    }
    Ok(GeodesicFamily { geodesics })
}

/// Largest entrywise difference between two distance matrices of equal size.
fn metric_gap(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> f64 {
    let n = a.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (a.d(i, j) - b.d(i, j)).abs())
        .fold(0.0, f64::max)
}

fn assert_isometric(space: &FiniteMetricSpace, g: &Graph) -> Result<()> {
    let dg = metric_space_of(g)?;
    let gap = metric_gap(space, &dg);
    if gap > space.epsilon() * space.len() as f64 {
        return Err(Error::Internal(format!("graph metric differs from the space by {gap}")));
    }
    Ok(())
}

/// Decide whether the space is intrinsic; the witness family holds one
/// count-maximal geodesic per pair.
pub fn is_intrinsic(space: &FiniteMetricSpace) -> Result<IntrinsicVerdict> {
    let g = segment_graph(space)?;
    assert_isometric(space, &g)?;
    let family = maximal_family(space)?;
    let intrinsic = !g.is_complete();
    debug_assert_eq!(intrinsic, family.max_count() >= 2);
    Ok(IntrinsicVerdict { intrinsic, segment_graph: intrinsic.then_some(g), family })
}

/// The graph `G(F, 𝒢)`: vertices are the points, edges the count-1 members
/// of the family, lengths the distances.
pub fn representing_graph(space: &FiniteMetricSpace, family: &GeodesicFamily) -> Result<Graph> {
    let n = space.len();
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    for x in 0..n {
        for y in (x + 1)..n {
            let arc = family.geodesics.get(&(x, y)).ok_or_else(|| Error::FamilyInvalid {
                x,
                y,
                reason: "no arc for this pair".into(),
            })?;
            let (a, b) = arc.endpoints();
            if (a.min(b), a.max(b)) != (x, y) {
                return Err(Error::FamilyInvalid { x, y, reason: "arc has the wrong endpoints".into() });
            }
            let recomputed = Arc::new(space, arc.points.clone())
                .map_err(|e| Error::FamilyInvalid { x, y, reason: e.to_string() })?;
            if !recomputed.is_geodesic(space) {
                return Err(Error::FamilyInvalid { x, y, reason: "arc is not a geodesic".into() });
            }
            if recomputed.count() != maximal_geodesic(space, x, y)?.count() {
                return Err(Error::FamilyInvalid { x, y, reason: "arc is not count-maximal".into() });
            }
        }
    }
    if family.geodesics.len() != n * (n - 1) / 2 {
        let (&(x, y), _) = family
            .geodesics
            .iter()
            .find(|(&(x, y), _)| x >= y || y >= n)
            .expect("extra key exists");
        return Err(Error::FamilyInvalid { x, y, reason: "unexpected pair".into() });
    }
    let edges = family
        .geodesics
        .iter()
        .filter(|(_, a)| a.count() == 1)
        .map(|(&(x, y), _)| (x, y, space.d(x, y)));
    let g = Graph::new(space.names().to_vec(), edges)?;
    assert_isometric(space, &g)?;
    Ok(g)
}
