//! Finite Hausdorff and box-counting dimensions.

use serde::Serialize;

use crate::cover::{enumerate_candidates, n_nabla_solution, CoverProblem, SolverConfig};
use crate::error::{Error, Result};
use crate::metricspace::{profile, Covering, FiniteMetricSpace, MetricProfile};

/// Default bisection tolerance on the dimension value.
pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_DOUBLINGS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Dimension {
    Zero,
    Finite(f64),
    Infinite,
}

impl Dimension {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Dimension::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Dimension::Zero => "zero",
            Dimension::Finite(_) => "finite",
            Dimension::Infinite => "infinite",
        }
    }
}

/// A dimension together with the data that witnesses it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionResult {
    pub dimension: Dimension,
    /// δ, ∇, Δ; absent for a single point.
    pub profile: Option<MetricProfile>,
    /// `N_∇`, when computed.
    pub n_nabla: Option<usize>,
    /// Optimal covering at the root (or the counting covering for the box formula).
    pub covering: Option<Covering>,
    /// `H^s(X)` at the returned root.
    pub h_at_root: Option<f64>,
    /// `(N, Δ)` when the value is `ln N / ln Δ` from the hop-count closed form.
    pub closed_form: Option<(usize, usize)>,
}

impl DimensionResult {
    pub(crate) fn bare(dimension: Dimension, profile: Option<MetricProfile>) -> Self {
        DimensionResult { dimension, profile, n_nabla: None, covering: None, h_at_root: None, closed_form: None }
    }
}

/// Parameters of `d' = r · d^β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HoelderParams {
    r: f64,
    beta: f64,
}

impl HoelderParams {
    pub fn new(r: f64, beta: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("Hölder parameters need r > 0, beta > 0 (got r={r}, beta={beta})")));
        }
        Ok(HoelderParams { r, beta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Zero for a point, Infinite when ∇ = Δ, otherwise the profile.
fn classify(space: &FiniteMetricSpace) -> Result<std::result::Result<MetricProfile, DimensionResult>> {
    if space.len() == 1 {
        return Ok(Err(DimensionResult::bare(Dimension::Zero, None)));
    }
    let prof = profile(space)?;
    if space.approx_eq(prof.nabla, prof.big_delta) {
        return Ok(Err(DimensionResult::bare(Dimension::Infinite, Some(prof))));
    }
    Ok(Ok(prof))
}

/// Finite Hausdorff dimension: the root of `H^s(X) = Δ(X)^s`.
///
/// Bisects `f(s) = H^s(X)/Δ^s − 1`. Every candidate part has diameter
/// `≤ ∇ < Δ`, so `f` is a minimum of strictly decreasing functions, with
/// `f(0) = N_∇ − 1 > 0` and `f → −1`.
pub fn dim_fh(space: &FiniteMetricSpace, tol: f64, cfg: &SolverConfig) -> Result<DimensionResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
    }
    let prof = match classify(space)? {
        Ok(p) => p,
        Err(done) => return Ok(done),
    };
    let n = space.len();
    if n > cfg.exact_cap.min(crate::cover::MAX_POINTS) {
        return Err(Error::InstanceTooLarge { what: "finite Hausdorff dimension", size: n, cap: cfg.exact_cap });
    }
    let family = enumerate_candidates(space, prof.nabla)?;
    let problem = CoverProblem::new(n, &family)?;
    let ratios: Vec<f64> = family.sets.iter().map(|c| c.diameter / prof.big_delta).collect();
    let eval = |s: f64| {
        let weights: Vec<f64> = ratios.iter().map(|r| r.powf(s)).collect();
        let (w, chosen) = problem.solve_exact(&weights, cfg);
        (w - 1.0, chosen)
    };

    let (f0, _) = eval(0.0);
    if !(f0 > 0.0) {
        return Err(Error::Internal(format!("f(0) = {f0} is not positive although ∇ < Δ")));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while eval(hi).0 >= 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::Internal("bracket growth did not find a sign change".into()));
        }
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= 2.0 * tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (f, _) = eval(mid);
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let (_, chosen) = eval(root);
    let mut parts: Vec<Vec<usize>> = chosen.iter().map(|&c| family.sets[c].points.clone()).collect();
    parts.sort();
    let covering = Covering::new(space, parts)?;
    let h_at_root = covering.weight(root);
    let n_count = n_nabla_solution(space, cfg)?.covering.len();
    Ok(DimensionResult {
        dimension: Dimension::Finite(root),
        profile: Some(prof),
        n_nabla: Some(n_count),
        covering: Some(covering),
        h_at_root: Some(h_at_root),
        closed_form: None,
    })
}

/// Finite box-counting dimension, `ln N_∇ / ln(Δ/∇)`.
pub fn dim_fb(space: &FiniteMetricSpace, cfg: &SolverConfig) -> Result<DimensionResult> {
    let prof = match classify(space)? {
        Ok(p) => p,
        Err(done) => return Ok(done),
    };
    let sol = n_nabla_solution(space, cfg)?;
    let count = sol.covering.len();
    let value = (count as f64).ln() / (prof.big_delta / prof.nabla).ln();
    Ok(DimensionResult {
        dimension: Dimension::Finite(value),
        profile: Some(prof),
        n_nabla: Some(count),
        covering: Some(sol.covering),
        h_at_root: None,
        closed_form: None,
    })
}

/// δ = ∇ up to the space's tolerance.
pub fn is_locally_uniform(space: &FiniteMetricSpace) -> Result<bool> {
    let p = profile(space)?;
    Ok(space.approx_eq(p.delta, p.nabla))
}

/// The image of `space` under an `(r, β)`-Hölder equivalence.
///
/// β ≤ 1 always yields a metric; β > 1 may break the triangle inequality,
/// which is reported as [`Error::TriangleViolation`].
pub fn apply_hoelder(space: &FiniteMetricSpace, h: HoelderParams) -> Result<FiniteMetricSpace> {
    let m = space
        .matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|d| if d == 0.0 { 0.0 } else { h.r * d.powf(h.beta) }).collect())
        .collect();
    FiniteMetricSpace::with_names(space.names().to_vec(), m, space.epsilon())
}
