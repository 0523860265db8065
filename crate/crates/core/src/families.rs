//! Named graph families, graph products and constructions of graphs with a
//! prescribed dimension.

use num_rational::Rational64;
use serde::Serialize;

use crate::cover::SolverConfig;
use crate::error::{Error, Result};
use crate::graph::{clique_cover_number, default_names, metric_space_of, Graph};
use crate::metricspace::{profile, MetricProfile};

/// Largest `p + q` for which all bridge variants of `L_{p,q}` are generated.
pub const MAX_LPQ_VARIANT_ORDER: usize = 8;
/// Default vertex cap for [`construct_dimension_in_interval`].
pub const DEFAULT_CONSTRUCTION_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `K_n`.
    Complete { n: usize },
    /// `P_n`, `n` vertices.
    Path { n: usize },
    /// `ST_n`: a centre joined to `n - 1` leaves.
    Star { n: usize },
    /// `C_n`.
    Cycle { n: usize },
    /// `K_p` and `K_q` joined by bridges `(i, j)`, `i` a vertex of `K_p`, `j`
    /// of `K_q` (both 0-based). `None` selects the single bridge `(0, 0)`.
    Lpq { p: usize, q: usize, bridges: Option<Vec<(usize, usize)>> },
    /// Two centres joined by an edge of length `x`, carrying `n` and `m`
    /// unit-length leaves.
    DoubleStar { n: usize, m: usize, x: f64 },
    /// The path `v_0 … v_m` with `c` extra leaves attached to `v_1`.
    PathPlusStar { m: usize, c: usize },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParameters(msg.into())
}

pub fn generate(params: &FamilySpec) -> Result<Graph> {
    match *params {
        FamilySpec::Complete { n } => {
            if n < 1 {
                return Err(invalid("K_n needs n >= 1"));
            }
            let e: Vec<_> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            Graph::unit(n, &e)
        }
        FamilySpec::Path { n } => {
            if n < 1 {
                return Err(invalid("P_n needs n >= 1"));
            }
            Graph::unit(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
        }
        FamilySpec::Star { n } => {
            if n < 2 {
                return Err(invalid("ST_n needs n >= 2"));
            }
            Graph::unit(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>())
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(invalid("C_n needs n >= 3"));
            }
            Graph::unit(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        }
        FamilySpec::Lpq { p, q, ref bridges } => {
            let bridges = bridges.clone().unwrap_or_else(|| vec![(0, 0)]);
            lpq(p, q, &bridges)
        }
        FamilySpec::DoubleStar { n, m, x } => {
            if n < 1 || m < 1 {
                return Err(invalid("double star needs n, m >= 1"));
            }
            if !(x > 0.0 && x.is_finite()) {
                return Err(invalid(format!("double star bridge length must be > 0, got {x}")));
            }
            let mut edges = vec![(0, 1, x)];
            edges.extend((0..n).map(|i| (0, 2 + i, 1.0)));
            edges.extend((0..m).map(|i| (1, 2 + n + i, 1.0)));
            Graph::new(default_names(n + m + 2), edges)
        }
        FamilySpec::PathPlusStar { m, c } => {
            if m < 2 || c < 1 {
                return Err(invalid("path plus star needs m >= 2 and c >= 1"));
            }
            let mut edges: Vec<(usize, usize)> = (1..=m).map(|i| (i - 1, i)).collect();
            edges.extend((0..c).map(|i| (1, m + 1 + i)));
            Graph::unit(m + 1 + c, &edges)
        }
    }
}

fn lpq(p: usize, q: usize, bridges: &[(usize, usize)]) -> Result<Graph> {
    if p < 2 || q < 2 {
        return Err(invalid("L_{p,q} needs p, q >= 2"));
    }
    if bridges.is_empty() {
        return Err(invalid("L_{p,q} needs at least one bridge"));
    }
    let mut in_a = vec![false; p];
    let mut in_b = vec![false; q];
    for &(i, j) in bridges {
        if i >= p || j >= q {
            return Err(invalid(format!("bridge ({i}, {j}) is outside K_{p} x K_{q}")));
        }
        in_a[i] = true;
        in_b[j] = true;
    }
    if in_a.iter().all(|&x| x) || in_b.iter().all(|&x| x) {
        return Err(invalid("bridge endpoints must lie in proper subsets of K_p and K_q"));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..p {
        edges.extend(((u + 1)..p).map(|v| (u, v)));
    }
    for u in 0..q {
        edges.extend(((u + 1)..q).map(|v| (p + u, p + v)));
    }
    edges.extend(bridges.iter().map(|&(i, j)| (i, p + j)));
    Graph::unit(p + q, &edges)
}

/// Every member of `L_{p,q}`: all non-empty bridge sets whose endpoints lie
/// in proper subsets of both cliques. Labeled, so isomorphic copies repeat.
pub fn lpq_variants(p: usize, q: usize) -> Result<Vec<Graph>> {
    if p + q > MAX_LPQ_VARIANT_ORDER {
        return Err(Error::InstanceTooLarge { what: "L_{p,q} variants", size: p + q, cap: MAX_LPQ_VARIANT_ORDER });
    }
    if p < 2 || q < 2 {
        return Err(invalid("L_{p,q} needs p, q >= 2"));
    }
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
    let full_a = (1u32 << p) - 1;
    let full_b = (1u32 << q) - 1;
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &b)| b).collect();
        let a = chosen.iter().fold(0u32, |m, &(i, _)| m | 1 << i);
        let b = chosen.iter().fold(0u32, |m, &(_, j)| m | 1 << j);
        if a != full_a && b != full_b {
            out.push(lpq(p, q, &chosen)?);
        }
    }
    Ok(out)
}

/// `Some((p, q))` with `p <= q` iff the hop-metric graph has θ = 2 and
/// diameter 3, i.e. lies in some `L_{p,q}`.
pub fn recognize_lpq(g: &Graph, cap: usize) -> Result<Option<(usize, usize)>> {
    if !g.is_unit() {
        return Err(Error::NonUnitLengths);
    }
    if g.len() < 4 || g.hop_diameter() != 3 {
        return Ok(None);
    }
    let cover = clique_cover_number(g, cap)?;
    if cover.cardinality != 2 {
        return Ok(None);
    }
    let (a, b) = (cover.cliques[0].len(), cover.cliques[1].len());
    Ok(Some((a.min(b), a.max(b))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductMetric {
    /// `d_1`: sum of coordinate distances; the Cartesian product.
    L1,
    /// `d_∞`: max of coordinate distances; the strong product.
    LInf,
}

fn product(g: &Graph, f: &Graph, adjacent: impl Fn(bool, bool, bool, bool) -> bool) -> Result<Graph> {
    if !g.is_unit() || !f.is_unit() {
        return Err(Error::NonUnitLengths);
    }
    let (n, m) = (g.len(), f.len());
    let names = g
        .names()
        .iter()
        .flat_map(|a| f.names().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..m {
            for c in a..n {
                let d_start = if c == a { b + 1 } else { 0 };
                for d in d_start..m {
                    if adjacent(a == c, g.has_edge(a, c), b == d, f.has_edge(b, d)) {
                        edges.push((a * m + b, c * m + d, 1.0));
                    }
                }
            }
        }
    }
    Graph::new(names, edges)
}

/// `G ⊠ F`: coordinates each equal or adjacent, not both equal.
pub fn strong_product(g: &Graph, f: &Graph) -> Result<Graph> {
    product(g, f, |eq1, adj1, eq2, adj2| (eq1 || adj1) && (eq2 || adj2) && !(eq1 && eq2))
}

/// `G □ F`: one coordinate equal, the other adjacent.
pub fn cartesian_product(g: &Graph, f: &Graph) -> Result<Graph> {
    product(g, f, |eq1, adj1, eq2, adj2| (eq1 && adj2) || (adj1 && eq2))
}

/// Whether the hop metric of `prod` equals the `which` combination of the
/// factors' hop metrics (vertex `(a, b)` at index `a·|F| + b`).
pub fn product_metric_matches(g: &Graph, f: &Graph, prod: &Graph, which: ProductMetric) -> bool {
    let (dg, df, dp) = (g.hop_distances(), f.hop_distances(), prod.hop_distances());
    let m = f.len();
    if prod.len() != g.len() * m {
        return false;
    }
    (0..prod.len()).all(|u| {
        (0..prod.len()).all(|v| {
            let (a, b, c, d) = (u / m, u % m, v / m, v % m);
            let expected = match which {
                ProductMetric::L1 => dg[a][c] + df[b][d],
                ProductMetric::LInf => dg[a][c].max(df[b][d]),
            };
            dp[u][v] == expected
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductProfileReport {
    pub metric: ProductMetric,
    pub left: MetricProfile,
    pub right: MetricProfile,
    pub product: MetricProfile,
    pub expected: MetricProfile,
    /// Product hop metric equals the `d_1` / `d_∞` combination of the factors.
    pub metric_matches: bool,
    pub pass: bool,
}

/// Check δ, ∇ (minima) and Δ (max for `d_∞`, sum for `d_1`) of a product
/// against its factors.
pub fn product_profile_check(g: &Graph, f: &Graph, which: ProductMetric) -> Result<ProductProfileReport> {
    let prod = match which {
        ProductMetric::LInf => strong_product(g, f)?,
        ProductMetric::L1 => cartesian_product(g, f)?,
    };
    let left = profile(&metric_space_of(g)?)?;
    let right = profile(&metric_space_of(f)?)?;
    let actual = profile(&metric_space_of(&prod)?)?;
    let expected = MetricProfile {
        delta: left.delta.min(right.delta),
        nabla: left.nabla.min(right.nabla),
        big_delta: match which {
            ProductMetric::LInf => left.big_delta.max(right.big_delta),
            ProductMetric::L1 => left.big_delta + right.big_delta,
        },
    };
    let metric_matches = product_metric_matches(g, f, &prod, which);
    let pass = metric_matches && actual == expected;
    Ok(ProductProfileReport { metric: which, left, right, product: actual, expected, metric_matches, pass })
}

/// Result of [`construct_dimension_in_interval`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalConstruction {
    #[serde(skip)]
    pub graph: Graph,
    /// Common denominator used; `m = 2^denominator`.
    pub denominator: i64,
    pub m: usize,
    pub k: usize,
    /// `ln k / ln m`.
    pub dimension: f64,
}

/// A unit-length graph whose dimension `ln k / ln m` lies in `[lo, hi]`.
///
/// Writes the interval as `[p/q, r/q]` with the smallest `q` admitting
/// integers `p < r`, takes `m = 2^q` and `k = 2^p + 1 ∈ (2^p, 2^r)`, and
/// returns the path `P_{m+1}` with `k − ⌈(m+1)/2⌉` leaves on `v_1`, which
/// has diameter `m` and clique covering number `k`.
pub fn construct_dimension_in_interval(lo: Rational64, hi: Rational64, vertex_cap: usize) -> Result<IntervalConstruction> {
    if lo < Rational64::from_integer(1) {
        return Err(invalid(format!("lower endpoint {lo} is below 1")));
    }
    if lo >= hi {
        return Err(Error::IntervalTooTight { lo: lo.to_string(), hi: hi.to_string() });
    }
    let lcm = {
        let (a, b) = (*lo.denom(), *hi.denom());
        a / gcd(a, b) * b
    };
    let (q, p) = (1..=lcm)
        .find_map(|q| {
            let p = (lo * q).ceil().to_integer();
            let r = (hi * q).floor().to_integer();
            (p < r).then_some((q, p))
        })
        .ok_or_else(|| Error::IntervalTooTight { lo: lo.to_string(), hi: hi.to_string() })?;
    let too_large = || Error::InstanceTooLarge { what: "interval construction", size: usize::MAX, cap: vertex_cap };
    if p >= 40 {
        return Err(too_large());
    }
    let m = 1usize << q;
    let k = (1usize << p) + 1;
    let c = k - (m + 1).div_ceil(2);
    let order = m + 1 + c;
    if order > vertex_cap {
        return Err(Error::InstanceTooLarge { what: "interval construction", size: order, cap: vertex_cap });
    }
    let graph = generate(&FamilySpec::PathPlusStar { m, c })?;
    Ok(IntervalConstruction { graph, denominator: q, m, k, dimension: (k as f64).ln() / (m as f64).ln() })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Result of [`construct_dimension_exact`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactConstruction {
    #[serde(skip)]
    pub graph: Graph,
    pub n: usize,
    pub m: usize,
    pub x: f64,
}

/// Largest target accepted by [`construct_dimension_exact`] under `cfg`.
pub fn max_exact_target(cfg: &SolverConfig) -> f64 {
    ((cfg.exact_cap.saturating_sub(2)) as f64).ln() / 3f64.ln()
}

/// A double star with finite Hausdorff dimension exactly `t`.
///
/// Uses the smallest leaf count `n + m ≥ max(3, 3^t)`, split evenly, and
/// bridge length `x = (n+m)^{1/t} − 2 ≥ 1`, so the space is locally uniform
/// with `N = n + m` and `Δ = 2 + x`.
pub fn construct_dimension_exact(t: f64, cfg: &SolverConfig) -> Result<ExactConstruction> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("target dimension must be > 0, got {t}")));
    }
    let leaves = (3f64.powf(t) - 1e-9).ceil().max(3.0);
    if leaves + 2.0 > cfg.exact_cap as f64 {
        return Err(Error::InstanceTooLarge {
            what: "exact dimension construction",
            size: if leaves.is_finite() && leaves < 1e15 { leaves as usize + 2 } else { usize::MAX },
            cap: cfg.exact_cap,
        });
    }
    let leaves = leaves as usize;
    let mut x = (leaves as f64).powf(1.0 / t) - 2.0;
    if x < 1.0 {
        x = 1.0;
    }
    let (n, m) = (leaves.div_ceil(2), leaves / 2);
    let graph = generate(&FamilySpec::DoubleStar { n, m, x })?;
    Ok(ExactConstruction { graph, n, m, x })
}
