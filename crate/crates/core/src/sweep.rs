//! Exhaustive and seeded random checks of the extremal, tree, product,
//! oracle and intrinsic properties over enumerated graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{brute_force_min_cover, h_s_eta, SolveMode, SolverConfig, BRUTE_FORCE_CAP};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::{cartesian_product, generate, product_metric_matches, recognize_lpq, strong_product, FamilySpec, ProductMetric};
use crate::graph::{clique_cover_number, enumerate_connected_graphs, enumerate_trees, metric_space_of, Graph};
use crate::intrinsic::{is_intrinsic, representing_graph};
use crate::metricspace::{profile, validate_metric, FiniteMetricSpace, DEFAULT_EPSILON};

/// Slack for comparing dimension values computed from the closed formula.
const BOUND_SLACK: f64 = 1e-12;
/// At most this many violations are kept in a report.
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub theorem: String,
    pub n: usize,
    pub checked: usize,
    pub lower: f64,
    pub upper: f64,
    pub observed_min: f64,
    pub observed_max: f64,
    pub minimizers: usize,
    pub maximizers: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductSweepReport {
    pub max_order: usize,
    pub graphs: usize,
    pub pairs: usize,
    /// Largest `dim(G ⊠ F) − dim(G) − dim(F)` seen; non-positive on success.
    pub max_slack: f64,
    pub violation_count: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartesianExample {
    pub name: String,
    pub dim_product: f64,
    pub dim_left: f64,
    pub dim_right: f64,
    pub n_product: usize,
    pub n_left: usize,
    pub n_right: usize,
    pub diameter_product: usize,
}

/// Compact `u-v` edge notation.
pub fn describe(g: &Graph) -> String {
    let names = g.names();
    let edges: Vec<String> = g.edges().map(|(u, v, _)| format!("{}-{}", names[u], names[v])).collect();
    format!("n={} [{}]", g.len(), edges.join(" "))
}

/// `θ`, hop diameter and `ln θ / ln Δ` of a non-complete unit graph.
fn hop_dim(g: &Graph, cap: usize) -> Result<(usize, usize, f64)> {
    let theta = clique_cover_number(g, cap)?.cardinality;
    let diameter = g.hop_diameter();
    Ok((theta, diameter, (theta as f64).ln() / (diameter as f64).ln()))
}

fn is_star(g: &Graph) -> bool {
    g.is_tree() && (0..g.len()).any(|v| g.degree(v) == g.len() - 1)
}

fn is_path(g: &Graph) -> bool {
    g.is_tree() && (0..g.len()).all(|v| g.degree(v) <= 2)
}

struct Outcome {
    dim: f64,
    at_min: bool,
    at_max: bool,
    violation: Option<String>,
}

fn aggregate(theorem: &str, n: usize, lower: f64, upper: f64, outcomes: Vec<Result<Outcome>>) -> Result<SweepReport> {
    let mut r = SweepReport {
        theorem: theorem.into(),
        n,
        checked: 0,
        lower,
        upper,
        observed_min: f64::INFINITY,
        observed_max: f64::NEG_INFINITY,
        minimizers: 0,
        maximizers: 0,
        violation_count: 0,
        violations: Vec::new(),
        pass: false,
    };
    for o in outcomes {
        let o = o?;
        r.checked += 1;
        r.observed_min = r.observed_min.min(o.dim);
        r.observed_max = r.observed_max.max(o.dim);
        r.minimizers += o.at_min as usize;
        r.maximizers += o.at_max as usize;
        if let Some(v) = o.violation {
            r.violation_count += 1;
            if r.violations.len() < MAX_REPORTED {
                r.violations.push(v);
            }
        }
    }
    r.pass = r.violation_count == 0 && r.checked > 0 && r.minimizers > 0 && r.maximizers > 0;
    Ok(r)
}

/// Over all non-complete connected labeled graphs on `n` vertices:
/// `ln 2 / ln 3 ≤ dim ≤ ln(n−1) / ln 2`, the minimum attained exactly by the
/// `L_{p,q}` members and the maximum exactly by the stars.
pub fn extremal_sweep(n: usize, exec: Execution, cap: usize) -> Result<SweepReport> {
    if n < 4 {
        return Err(Error::InvalidParameter("extremal sweep needs n >= 4".into()));
    }
    let lower = 2f64.ln() / 3f64.ln();
    let upper = ((n - 1) as f64).ln() / 2f64.ln();
    let graphs: Vec<Graph> = enumerate_connected_graphs(n)?.filter(|g| !g.is_complete()).collect();
    let outcomes = exec.map(graphs, |g| {
        let (_, _, dim) = hop_dim(&g, cap)?;
        let at_min = (dim - lower).abs() <= BOUND_SLACK;
        let at_max = (dim - upper).abs() <= BOUND_SLACK;
        let in_lpq = recognize_lpq(&g, cap)?.is_some();
        let violation = if dim < lower - BOUND_SLACK || dim > upper + BOUND_SLACK {
            Some(format!("{}: dim {dim} outside bounds", describe(&g)))
        } else if at_min != in_lpq {
            Some(format!("{}: minimum {at_min} but L_pq membership {in_lpq}", describe(&g)))
        } else if at_max != is_star(&g) {
            Some(format!("{}: maximum {at_max} but star {}", describe(&g), is_star(&g)))
        } else {
            None
        };
        Ok(Outcome { dim, at_min, at_max, violation })
    });
    aggregate("extremal", n, lower, upper, outcomes)
}

/// Over all labeled trees on `n` vertices:
/// `ln⌈n/2⌉ / ln(n−1) ≤ dim ≤ ln(n−1) / ln 2`, the minimum attained only by
/// paths and the maximum only by stars.
pub fn tree_sweep(n: usize, exec: Execution, cap: usize) -> Result<SweepReport> {
    if n < 4 {
        return Err(Error::InvalidParameter("tree sweep needs n >= 4".into()));
    }
    let lower = (n.div_ceil(2) as f64).ln() / ((n - 1) as f64).ln();
    let upper = ((n - 1) as f64).ln() / 2f64.ln();
    let trees: Vec<Graph> = enumerate_trees(n)?.collect();
    let outcomes = exec.map(trees, |t| {
        let (_, _, dim) = hop_dim(&t, cap)?;
        let at_min = (dim - lower).abs() <= BOUND_SLACK;
        let at_max = (dim - upper).abs() <= BOUND_SLACK;
        let violation = if dim < lower - BOUND_SLACK || dim > upper + BOUND_SLACK {
            Some(format!("{}: dim {dim} outside bounds", describe(&t)))
        } else if at_min != is_path(&t) {
            Some(format!("{}: minimum {at_min} but path {}", describe(&t), is_path(&t)))
        } else if at_max != is_star(&t) {
            Some(format!("{}: maximum {at_max} but star {}", describe(&t), is_star(&t)))
        } else {
            None
        };
        Ok(Outcome { dim, at_min, at_max, violation })
    });
    aggregate("trees", n, lower, upper, outcomes)
}

/// Over all unordered pairs of non-complete connected labeled graphs with
/// at most `max_order` vertices: `dim(G ⊠ F) ≤ dim G + dim F` and
/// `N(G ⊠ F) ≤ N(G)·N(F)`, with the product's hop metric equal to `d_∞`.
pub fn product_sweep(max_order: usize, exec: Execution, cap: usize) -> Result<ProductSweepReport> {
    let mut graphs = Vec::new();
    for n in 3..=max_order {
        graphs.extend(enumerate_connected_graphs(n)?.filter(|g| !g.is_complete()));
    }
    let stats = exec.map(graphs.iter().collect(), |g| hop_dim(g, cap)).into_iter().collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..graphs.len()).flat_map(|i| (i..graphs.len()).map(move |j| (i, j))).collect();
    let pair_count = pairs.len();
    let outcomes = exec.map(pairs, |(i, j)| -> Result<(f64, Option<String>)> {
        let (g, f) = (&graphs[i], &graphs[j]);
        let prod = strong_product(g, f)?;
        let (theta, _, dim) = hop_dim(&prod, cap)?;
        let (tg, _, dg) = stats[i];
        let (tf, _, df) = stats[j];
        let slack = dim - dg - df;
        let violation = if !product_metric_matches(g, f, &prod, ProductMetric::LInf) {
            Some("product metric is not d_inf".to_string())
        } else if slack > BOUND_SLACK {
            Some(format!("dim {dim} > {dg} + {df}"))
        } else if theta > tg * tf {
            Some(format!("N {theta} > {tg} * {tf}"))
        } else {
            None
        };
        Ok((slack, violation.map(|v| format!("{} x {}: {v}", describe(g), describe(f)))))
    });
    let mut report = ProductSweepReport {
        max_order,
        graphs: graphs.len(),
        pairs: pair_count,
        max_slack: f64::NEG_INFINITY,
        violation_count: 0,
        violations: Vec::new(),
        pass: false,
    };
    for o in outcomes {
        let (slack, violation) = o?;
        report.max_slack = report.max_slack.max(slack);
        if let Some(v) = violation {
            report.violation_count += 1;
            if report.violations.len() < MAX_REPORTED {
                report.violations.push(v);
            }
        }
    }
    report.pass = report.violation_count == 0 && report.pairs > 0;
    Ok(report)
}

fn cartesian_example(name: &str, g: &Graph, f: &Graph, cap: usize) -> Result<CartesianExample> {
    let prod = cartesian_product(g, f)?;
    let (n_product, diameter_product, dim_product) = hop_dim(&prod, cap)?;
    let (n_left, _, dim_left) = hop_dim(g, cap)?;
    let (n_right, _, dim_right) = hop_dim(f, cap)?;
    Ok(CartesianExample { name: name.into(), dim_product, dim_left, dim_right, n_product, n_left, n_right, diameter_product })
}

/// `P_4 □ C_4` and `L_{3,3} □ L_{3,3}`.
pub fn cartesian_examples(cap: usize) -> Result<Vec<CartesianExample>> {
    let p4 = generate(&FamilySpec::Path { n: 4 })?;
    let c4 = generate(&FamilySpec::Cycle { n: 4 })?;
    let l33 = generate(&FamilySpec::Lpq { p: 3, q: 3, bridges: None })?;
    Ok(vec![cartesian_example("P4 x C4", &p4, &c4, cap)?, cartesian_example("L33 x L33", &l33, &l33, cap)?])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomSweepReport {
    pub theorem: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub checked: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

fn random_report(theorem: &str, n: usize, samples: usize, seed: u64, outcomes: Vec<Result<(usize, Vec<String>)>>) -> Result<RandomSweepReport> {
    let mut r = RandomSweepReport {
        theorem: theorem.into(),
        n,
        samples,
        seed,
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        pass: false,
    };
    for o in outcomes {
        let (checked, bad) = o?;
        r.checked += checked;
        r.violation_count += bad.len();
        r.violations.extend(bad.into_iter().take(MAX_REPORTED.saturating_sub(r.violations.len())));
    }
    r.pass = r.violation_count == 0 && r.checked > 0;
    Ok(r)
}

/// Shortest-path closure of independent integer weights in `1..=6`.
pub fn random_integer_metric(n: usize, rng: &mut impl Rng) -> Result<FiniteMetricSpace> {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(1..=6) as f64;
            m[i][j] = w;
            m[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j].min(m[i][k] + m[k][j]);
            }
        }
    }
    validate_metric(m, DEFAULT_EPSILON)
}

/// Exact `H^s_η` against exhaustive search on `samples` seeded random
/// integer metrics with `n` points, at every distance level `η ≥ ∇` and
/// `s ∈ {0, 1/2, 1, 2}`.
pub fn oracle_sweep(n: usize, samples: usize, seed: u64, cfg: &SolverConfig, exec: Execution) -> Result<RandomSweepReport> {
    if !(2..=BRUTE_FORCE_CAP).contains(&n) {
        return Err(Error::InstanceTooLarge { what: "oracle sweep", size: n, cap: BRUTE_FORCE_CAP });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces = (0..samples).map(|_| random_integer_metric(n, &mut rng)).collect::<Result<Vec<_>>>()?;
    let outcomes = exec.map(spaces, |x| {
        let nabla = profile(&x)?.nabla;
        let mut checked = 0;
        let mut bad = Vec::new();
        for eta in x.distance_levels().into_iter().filter(|&e| e >= nabla) {
            for s in [0.0, 0.5, 1.0, 2.0] {
                let exact = h_s_eta(&x, s, eta, SolveMode::Exact, cfg)?.weight;
                let brute = brute_force_min_cover(&x, s, eta)?.weight;
                checked += 1;
                if (exact - brute).abs() > 1e-9 * brute.max(1.0) {
                    bad.push(format!("{:?} s={s} eta={eta}: exact {exact} vs {brute}", x.matrix()));
                }
            }
        }
        Ok((checked, bad))
    });
    random_report("oracle", n, samples, seed, outcomes)
}

fn intrinsic_roundtrip(g: &Graph) -> Result<Option<String>> {
    let x = metric_space_of(g)?;
    let verdict = is_intrinsic(&x)?;
    let Some(seg) = verdict.segment_graph else {
        return Ok(Some(format!("{}: not intrinsic", describe(g))));
    };
    if metric_space_of(&seg)?.matrix() != x.matrix() {
        return Ok(Some(format!("{}: segment graph metric differs", describe(g))));
    }
    if representing_graph(&x, &verdict.family)? != seg {
        return Ok(Some(format!("{}: representing graph differs", describe(g))));
    }
    Ok(None)
}

/// For every non-complete connected labeled graph on `n` vertices, with unit
/// lengths and with `samples` seeded random lengths in `{1, 9/8, …, 3}`:
/// the metric is intrinsic and its segment graph reproduces it exactly.
pub fn intrinsic_sweep(n: usize, samples: usize, seed: u64, exec: Execution) -> Result<RandomSweepReport> {
    if n < 3 {
        return Err(Error::InvalidParameter("intrinsic sweep needs n >= 3".into()));
    }
    let graphs: Vec<(u64, Graph)> =
        enumerate_connected_graphs(n)?.filter(|g| !g.is_complete()).enumerate().map(|(i, g)| (i as u64, g)).collect();
    let outcomes = exec.map(graphs, |(i, g)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let mut bad: Vec<String> = intrinsic_roundtrip(&g)?.into_iter().collect();
        for _ in 0..samples {
            let lengths: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(8..=24) as f64 / 8.0).collect();
            bad.extend(intrinsic_roundtrip(&g.with_lengths(&lengths)?)?);
        }
        Ok((samples + 1, bad))
    });
    random_report("intrinsic", n, samples, seed, outcomes)
}
