//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use findim::cover::{brute_force_min_cover, h_s_eta, n_nabla};
use findim::dimension::{apply_hoelder, dim_fb, dim_fh, is_locally_uniform, HoelderParams, DEFAULT_TOL};
use findim::families::{
    construct_dimension_exact, construct_dimension_in_interval, generate, lpq_variants,
    strong_product, cartesian_product, FamilySpec, DEFAULT_CONSTRUCTION_CAP, MAX_LPQ_VARIANT_ORDER,
};
use findim::graph::{
    brute_force_clique_cover_number, clique_cover_number, dim_f_graph, enumerate_connected_graphs,
    metric_space_of, n_of_graph, DEFAULT_CLIQUE_CAP,
};
use findim::intrinsic::{is_intrinsic, representing_graph, segment_graph};
use findim::metricspace::{validate_metric, DEFAULT_EPSILON};
use findim::sweep::{extremal_sweep, product_sweep, tree_sweep};
use findim::{Dimension, Execution, FiniteMetricSpace, Graph, SolveMode, SolverConfig};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ln(x: f64) -> f64 {
    x.ln()
}

fn graph(params: FamilySpec) -> Graph {
    generate(&params).expect("valid family")
}

fn hop_dim(g: &Graph) -> Dimension {
    dim_f_graph(g, DEFAULT_CLIQUE_CAP).expect("hop dimension").dimension
}

fn finite(d: Dimension) -> Result<f64, String> {
    d.value().ok_or_else(|| format!("expected a finite dimension, got {}", d.kind()))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(took)
}

fn lpq_pairs() -> Vec<(usize, usize)> {
    (2..=MAX_LPQ_VARIANT_ORDER)
        .flat_map(|p| (2..=MAX_LPQ_VARIANT_ORDER - p).map(move |q| (p, q)))
        .collect()
}

fn regression_graphs() -> Vec<(String, Graph)> {
    let mut out = vec![("P4".to_string(), graph(FamilySpec::Path { n: 4 }))];
    for n in 4..=9 {
        out.push((format!("ST{n}"), graph(FamilySpec::Star { n })));
        out.push((format!("P{n}"), graph(FamilySpec::Path { n })));
    }
    for (p, q) in lpq_pairs() {
        out.push((format!("L{p},{q}"), graph(FamilySpec::Lpq { p, q, bridges: None })));
    }
    out
}

/// Exact regression values of the hop dimension.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let tol = 1e-9;
    let min = ln(2.0) / ln(3.0);
    let mut checked = 0;
    ensure!(close(finite(hop_dim(&graph(FamilySpec::Path { n: 4 })))?, min, tol), "P4");
    for n in 4..=9usize {
        let star = finite(hop_dim(&graph(FamilySpec::Star { n })))?;
        ensure!(close(star, ln((n - 1) as f64) / ln(2.0), tol), "ST{n}: {star}");
        let path = finite(hop_dim(&graph(FamilySpec::Path { n })))?;
        let expected = ln(n.div_ceil(2) as f64) / ln((n - 1) as f64);
        ensure!(close(path, expected, tol), "P{n}: {path} vs {expected}");
        checked += 2;
    }
    for n in 2..=7 {
        ensure!(hop_dim(&graph(FamilySpec::Complete { n })) == Dimension::Infinite, "K{n} is not infinite");
        checked += 1;
    }
    let mut variants = 0;
    for (p, q) in lpq_pairs() {
        let graphs = lpq_variants(p, q).map_err(|e| e.to_string())?;
        variants += graphs.len();
        let bad = Execution::Parallel.map(graphs, |g| {
            let d = hop_dim(&g).value();
            (!matches!(d, Some(v) if close(v, min, tol))).then(|| format!("L{p},{q} variant: {d:?}"))
        });
        if let Some(b) = bad.into_iter().flatten().next() {
            return Err(b);
        }
    }
    let took = within(start, Duration::from_secs(1), "regression table")?;
    Ok(format!("{} named graphs, {variants} L_pq variants, {took:.2?}", checked + 1))
}

/// Product examples.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let tol = 1e-9;
    let p3 = graph(FamilySpec::Path { n: 3 });
    let p4 = graph(FamilySpec::Path { n: 4 });
    let c4 = graph(FamilySpec::Cycle { n: 4 });
    let l33 = graph(FamilySpec::Lpq { p: 3, q: 3, bridges: None });
    let e = |r: findim::Result<Graph>| r.map_err(|e| e.to_string());

    let d = finite(hop_dim(&e(strong_product(&p3, &p3))?))?;
    ensure!(close(d, 2.0, tol), "P3 strong P3: {d}");
    let d = finite(hop_dim(&e(strong_product(&p3, &p4))?))?;
    ensure!(close(d, ln(4.0) / ln(3.0), tol), "P3 strong P4: {d}");

    let d = finite(hop_dim(&e(cartesian_product(&p4, &c4))?))?;
    ensure!(close(d, ln(8.0) / ln(5.0), tol), "P4 cart C4: {d}");
    let sum = finite(hop_dim(&p4))? + finite(hop_dim(&c4))?;
    ensure!(d < sum, "P4 cart C4: {d} not below {sum}");

    let d = finite(hop_dim(&e(cartesian_product(&l33, &l33))?))?;
    ensure!(close(d, ln(12.0) / ln(6.0), tol), "L33 cart L33: {d}");
    let twice = 2.0 * ln(2.0) / ln(3.0);
    ensure!(d > twice, "L33 cart L33: {d} not above {twice}");
    let took = within(start, Duration::from_secs(10), "product examples")?;
    Ok(format!("4 products, {took:.2?}"))
}

/// Exhaustive extremal, tree and strong-product sweeps.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let exec = Execution::Parallel;
    let mut summary = Vec::new();
    for n in 4..=6 {
        let r = extremal_sweep(n, exec, DEFAULT_CLIQUE_CAP).map_err(|e| e.to_string())?;
        ensure!(r.pass, "extremal n={n}: {:?}", r.violations);
        summary.push(format!("extremal n={n}: {}", r.checked));
    }
    for n in 4..=8 {
        let r = tree_sweep(n, exec, DEFAULT_CLIQUE_CAP).map_err(|e| e.to_string())?;
        ensure!(r.pass, "trees n={n}: {:?}", r.violations);
        summary.push(format!("trees n={n}: {}", r.checked));
    }
    let r = product_sweep(5, exec, DEFAULT_CLIQUE_CAP).map_err(|e| e.to_string())?;
    ensure!(r.pass, "strong products: {:?}", r.violations);
    summary.push(format!("product pairs: {}", r.pairs));
    let took = within(start, Duration::from_secs(300), "theorem sweeps")?;
    Ok(format!("{}; {took:.2?}", summary.join(", ")))
}

/// Random metric with integer distances: shortest-path closure of random
/// weights in `1..=6`.
fn random_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
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
                m[i][j] = f64::min(m[i][j], m[i][k] + m[k][j]);
            }
        }
    }
    validate_metric(m, DEFAULT_EPSILON).expect("closure is a metric")
}

fn oracle_agrees(space: &FiniteMetricSpace, cfg: &SolverConfig) -> Result<usize, String> {
    let mut checks = 0;
    for eta in space.distance_levels() {
        if eta < findim::metricspace::profile(space).map_err(|e| e.to_string())?.nabla {
            continue;
        }
        for s in [0.0, 0.5, 1.0, 2.0] {
            let exact = h_s_eta(space, s, eta, SolveMode::Exact, cfg).map_err(|e| e.to_string())?;
            let brute = brute_force_min_cover(space, s, eta).map_err(|e| e.to_string())?;
            ensure!(
                close(exact.weight, brute.weight, 1e-9 * brute.weight.max(1.0)),
                "s={s} eta={eta}: exact {} vs brute {} on {:?}",
                exact.weight,
                brute.weight,
                space.matrix()
            );
            checks += 1;
        }
    }
    Ok(checks)
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if let Ok(g) = Graph::unit(n, &edges) {
            return g;
        }
    }
}

/// Exact solvers against brute force.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut cover_checks = 0;
    for n in 2..=5 {
        let graphs: Vec<Graph> = enumerate_connected_graphs(n).map_err(|e| e.to_string())?.collect();
        for r in Execution::Parallel.map(graphs, |g| oracle_agrees(&metric_space_of(&g).unwrap(), &cfg)) {
            cover_checks += r?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spaces: Vec<FiniteMetricSpace> = (0..200).map(|_| random_space(&mut rng, 5)).collect();
    for r in Execution::Parallel.map(spaces, |x| oracle_agrees(&x, &cfg)) {
        cover_checks += r?;
    }

    let mut clique_graphs: Vec<Graph> = Vec::new();
    for n in 1..=6 {
        clique_graphs.extend(enumerate_connected_graphs(n).map_err(|e| e.to_string())?);
    }
    for n in 7..=8 {
        clique_graphs.extend((0..2000).map(|_| random_connected(&mut rng, n)));
    }
    let clique_count = clique_graphs.len();
    let bad = Execution::Parallel.map(clique_graphs, |g| {
        let bnb = clique_cover_number(&g, DEFAULT_CLIQUE_CAP).unwrap().cardinality;
        let brute = brute_force_clique_cover_number(&g).unwrap();
        (bnb != brute).then(|| format!("theta {bnb} vs brute {brute}: {:?}", g.edges().collect::<Vec<_>>()))
    });
    if let Some(b) = bad.into_iter().flatten().next() {
        return Err(b);
    }

    let mut lemma_checks = 0;
    for n in 2..=6 {
        let graphs: Vec<Graph> = enumerate_connected_graphs(n).map_err(|e| e.to_string())?.collect();
        lemma_checks += graphs.len();
        let bad = Execution::Parallel.map(graphs, |g| {
            let a = n_of_graph(&g, DEFAULT_CLIQUE_CAP).unwrap();
            let b = n_nabla(&metric_space_of(&g).unwrap(), &cfg).unwrap();
            (a != b).then(|| format!("N(G) {a} vs N_nabla {b}"))
        });
        if let Some(b) = bad.into_iter().flatten().next() {
            return Err(b);
        }
    }
    let took = within(start, Duration::from_secs(120), "oracle equivalence")?;
    Ok(format!(
        "{cover_checks} cover comparisons, {clique_count} clique covers, {lemma_checks} N=theta checks, {took:.2?}"
    ))
}

fn general_consistent(name: &str, x: &FiniteMetricSpace, cfg: &SolverConfig) -> Result<(), String> {
    if x.len() < 2 {
        return Ok(());
    }
    ensure!(is_locally_uniform(x).map_err(|e| e.to_string())?, "{name} is not locally uniform");
    let fh = dim_fh(x, DEFAULT_TOL, cfg).map_err(|e| format!("{name}: {e}"))?.dimension;
    let fb = dim_fb(x, cfg).map_err(|e| format!("{name}: {e}"))?.dimension;
    let ok = match (fh, fb) {
        (Dimension::Finite(a), Dimension::Finite(b)) => close(a, b, 1e-7),
        (a, b) => a == b,
    };
    ensure!(ok, "{name}: fH {fh:?} vs fB {fb:?}");
    Ok(())
}

/// Root finder against closed formula on locally uniform spaces.
fn criterion_5() -> Outcome {
    let cfg = SolverConfig::default();
    let mut spaces: Vec<(String, FiniteMetricSpace)> = Vec::new();
    for n in 2..=5 {
        for (i, g) in enumerate_connected_graphs(n).map_err(|e| e.to_string())?.enumerate() {
            spaces.push((format!("graph n={n} #{i}"), metric_space_of(&g).unwrap()));
        }
    }
    for (name, g) in regression_graphs() {
        spaces.push((name, metric_space_of(&g).unwrap()));
    }
    let p3 = graph(FamilySpec::Path { n: 3 });
    let p4 = graph(FamilySpec::Path { n: 4 });
    let c4 = graph(FamilySpec::Cycle { n: 4 });
    spaces.push(("P3 strong P3".into(), metric_space_of(&strong_product(&p3, &p3).unwrap()).unwrap()));
    spaces.push(("P4 cart C4".into(), metric_space_of(&cartesian_product(&p4, &c4).unwrap()).unwrap()));
    for x in [1.0, 1.5, 2.0, 5.0] {
        let g = p4.with_lengths(&[1.0, x, 1.0]).unwrap();
        spaces.push((format!("P4 (1,{x},1)"), metric_space_of(&g).unwrap()));
    }
    for t in [0.5, 1.0, 1.5, 2.0] {
        let c = construct_dimension_exact(t, &cfg).map_err(|e| e.to_string())?;
        spaces.push((format!("double star t={t}"), metric_space_of(&c.graph).unwrap()));
    }
    let count = spaces.len();
    for r in Execution::Parallel.map(spaces, |(name, x)| general_consistent(&name, &x, &cfg)) {
        r?;
    }
    Ok(format!("{count} locally uniform spaces"))
}

/// Density constructions re-verified by the solvers.
fn criterion_6() -> Outcome {
    let cfg = SolverConfig::default();
    for t in [0.5, 1.0, 1.5, 2.0] {
        let c = construct_dimension_exact(t, &cfg).map_err(|e| e.to_string())?;
        let x = metric_space_of(&c.graph).unwrap();
        let d = finite(dim_fh(&x, DEFAULT_TOL, &cfg).map_err(|e| e.to_string())?.dimension)?;
        ensure!(close(d, t, 1e-6), "exact construction t={t}: {d}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut largest = 0;
    for _ in 0..50 {
        let q: i64 = rng.gen_range(1..=3);
        let p = rng.gen_range(q..3 * q);
        let r = rng.gen_range(p + 1..=3 * q);
        let (lo, hi) = (Rational64::new(p, q), Rational64::new(r, q));
        let c = construct_dimension_in_interval(lo, hi, DEFAULT_CONSTRUCTION_CAP).map_err(|e| e.to_string())?;
        largest = largest.max(c.graph.len());
        let d = finite(dim_f_graph(&c.graph, DEFAULT_CONSTRUCTION_CAP).map_err(|e| e.to_string())?.dimension)?;
        let (lo_f, hi_f) = (p as f64 / q as f64, r as f64 / q as f64);
        ensure!(lo_f <= d && d <= hi_f, "[{lo}, {hi}]: dimension {d}");
    }
    Ok(format!("4 exact targets, 50 intervals (largest graph {largest} vertices)"))
}

fn roundtrip(g: &Graph, with_family: bool) -> Result<(), String> {
    let x = metric_space_of(g).map_err(|e| e.to_string())?;
    let verdict = is_intrinsic(&x).map_err(|e| e.to_string())?;
    ensure!(verdict.intrinsic, "not intrinsic: {:?}", g.edges().collect::<Vec<_>>());
    let seg = verdict.segment_graph.expect("present when intrinsic");
    let back = metric_space_of(&seg).map_err(|e| e.to_string())?;
    ensure!(back.matrix() == x.matrix(), "segment graph metric differs: {:?}", g.edges().collect::<Vec<_>>());
    if with_family {
        let rep = representing_graph(&x, &verdict.family).map_err(|e| e.to_string())?;
        ensure!(rep == seg, "representing graph differs from the segment graph");
    }
    Ok(())
}

/// Intrinsic roundtrip.
fn criterion_7() -> Outcome {
    let mut graphs = Vec::new();
    for n in 3..=6 {
        graphs.extend(enumerate_connected_graphs(n).map_err(|e| e.to_string())?.filter(|g| !g.is_complete()));
    }
    let count = graphs.len();
    let results = Execution::Parallel.map(graphs.into_iter().enumerate().collect(), |(i, g)| {
        roundtrip(&g, true)?;
        let mut rng = ChaCha8Rng::seed_from_u64(7_000_000 + i as u64);
        for _ in 0..100 {
            let lengths: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(8..=24) as f64 / 8.0).collect();
            roundtrip(&g.with_lengths(&lengths).unwrap(), false)?;
        }
        Ok::<(), String>(())
    });
    for r in results {
        r?;
    }
    let ones = validate_metric(
        (0..5).map(|i| (0..5).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect(),
        DEFAULT_EPSILON,
    )
    .unwrap();
    ensure!(!is_intrinsic(&ones).unwrap().intrinsic, "all-ones 5-point space is intrinsic");
    for n in 2..=7 {
        let k = metric_space_of(&graph(FamilySpec::Complete { n })).unwrap();
        ensure!(!is_intrinsic(&k).unwrap().intrinsic, "K{n} is intrinsic");
    }
    let k3 = Graph::new(vec!["a".into(), "b".into(), "c".into()], [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
    let seg = segment_graph(&metric_space_of(&k3).unwrap()).unwrap();
    let edges: Vec<(usize, usize)> = seg.edges().map(|(u, v, _)| (u, v)).collect();
    ensure!(edges == [(0, 1), (1, 2)], "K3 (1,1,5) segment graph: {edges:?}");
    Ok(format!("{count} graphs x (hop + 100 random lengths)"))
}

/// Hölder and similarity scaling of the Hausdorff dimension.
fn criterion_8() -> Outcome {
    let cfg = SolverConfig::default();
    let mut spaces: Vec<(String, FiniteMetricSpace)> = regression_graphs()
        .into_iter()
        .map(|(name, g)| (name, metric_space_of(&g).unwrap()))
        .collect();
    spaces.push(("K5".into(), metric_space_of(&graph(FamilySpec::Complete { n: 5 })).unwrap()));
    let count = spaces.len();
    let results = Execution::Parallel.map(spaces, |(name, x)| {
        let base = dim_fh(&x, DEFAULT_TOL, &cfg).map_err(|e| e.to_string())?.dimension;
        for beta in [0.5, 1.0] {
            for r in [0.5, 1.0, 3.0] {
                let y = apply_hoelder(&x, HoelderParams::new(r, beta).unwrap()).map_err(|e| e.to_string())?;
                let d = dim_fh(&y, DEFAULT_TOL, &cfg).map_err(|e| e.to_string())?.dimension;
                let ok = match (d, base) {
                    (Dimension::Finite(a), Dimension::Finite(b)) => close(a * beta, b, 1e-6),
                    (a, b) => a == b,
                };
                ensure!(ok, "{name} r={r} beta={beta}: {d:?} vs {base:?}");
            }
        }
        Ok::<(), String>(())
    });
    for r in results {
        r?;
    }
    Ok(format!("{count} spaces x 6 transforms"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("regression table", criterion_1),
        ("product examples", criterion_2),
        ("theorem sweeps", criterion_3),
        ("oracle equivalence", criterion_4),
        ("fH = fB on locally uniform spaces", criterion_5),
        ("density constructions", criterion_6),
        ("intrinsic roundtrip", criterion_7),
        ("Hoelder scaling", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
