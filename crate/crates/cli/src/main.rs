//! `findim`: finite Hausdorff and box-counting dimension from the command line.

mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use findim::cover::{h_s_eta, SolveMode};
use findim::dimension::{dim_fb, dim_fh, is_locally_uniform, DEFAULT_TOL};
use findim::families::{
    cartesian_product, construct_dimension_exact, construct_dimension_in_interval, generate, lpq_variants,
    product_profile_check, strong_product, FamilySpec, ProductMetric, DEFAULT_CONSTRUCTION_CAP,
};
use findim::graph::{clique_cover_number, dim_f_graph, metric_space_of, n_of_graph, DEFAULT_CLIQUE_CAP};
use findim::intrinsic::is_intrinsic;
use findim::io::{graph_to_json, parse_auto, parse_matrix_csv, write_edge_list, Input};
use findim::metricspace::{profile, DEFAULT_EPSILON};
use findim::sweep::{extremal_sweep, intrinsic_sweep, oracle_sweep, product_sweep, tree_sweep};
use findim::{Error, Execution, FiniteMetricSpace, Graph, SolverConfig};

use report::{dimension_fields, dimension_value, round_numbers, table};

#[derive(Parser, Debug)]
#[command(name = "findim", version, about = "Finite Hausdorff and box-counting dimension of finite metric spaces and graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Absolute tolerance for distance comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Root-finder tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Largest space solved exactly by the covering solver.
    #[arg(long, global = true, env = "FINDIM_EXACT_CAP", default_value_t = 24)]
    exact_cap: usize,
    /// Largest graph handled by the clique-cover solver.
    #[arg(long, global = true, default_value_t = DEFAULT_CLIQUE_CAP)]
    clique_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Seed for random sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Args, Debug, Default)]
struct InputArgs {
    /// Input file (edge list, CSV matrix or JSON); standard input when omitted.
    input: Option<PathBuf>,
    /// Graph file (edge list or JSON).
    #[arg(long, conflicts_with_all = ["input", "matrix"])]
    graph: Option<PathBuf>,
    /// Distance matrix file (CSV or JSON).
    #[arg(long, conflicts_with = "input")]
    matrix: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Hop fast path for unit-length graphs, otherwise the root finder.
    Auto,
    /// `ln θ(G) / ln Δ(G)`; unit-length graphs only.
    Hop,
    /// Root of `H^s = Δ^s`.
    Fh,
    /// `ln N_∇ / ln(Δ/∇)`.
    Fb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Complete,
    Path,
    Star,
    Cycle,
    Lpq,
    DoubleStar,
    PathPlusStar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProductKind {
    Strong,
    Cartesian,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Extremal,
    Trees,
    Product,
    Oracle,
    Intrinsic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of a space or graph.
    Dim {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Minimum-weight 2-covering at exponent s and diameter bound eta.
    Cover {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        /// Defaults to the 2-covering diameter.
        #[arg(long)]
        eta: Option<f64>,
        /// Greedy upper bound instead of the exact solver.
        #[arg(long)]
        greedy: bool,
    },
    /// Minimum clique cover of a graph.
    CliqueCover {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Generate a named graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        /// Path-plus-star: clique covering number, sets the leaf count.
        #[arg(long, conflicts_with = "c")]
        k: Option<usize>,
        #[arg(long)]
        x: Option<f64>,
        /// L_{p,q} bridges as `i-j,i-j` (0-based vertices of K_p and K_q).
        #[arg(long)]
        bridges: Option<String>,
        /// Emit every L_{p,q} bridge variant.
        #[arg(long)]
        variants: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Product of two unit-length graphs and its dimension.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = ProductKind::Strong)]
        kind: ProductKind,
        /// Print the product graph as an edge list instead of the report.
        #[arg(long)]
        emit: bool,
    },
    /// Build a graph with a prescribed dimension.
    ConstructDim {
        #[arg(long, required_unless_present = "interval", conflicts_with = "interval")]
        target: Option<f64>,
        /// Rational endpoints such as `3/2` or `1.25`.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        interval: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_CONSTRUCTION_CAP)]
        vertex_cap: usize,
        /// Print the graph as an edge list instead of the report.
        #[arg(long)]
        emit: bool,
    },
    /// Decide whether a finite metric space is intrinsic.
    IntrinsicCheck {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run an exhaustive or seeded theorem check.
    Sweep {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Graph order; the largest factor order for `product`.
        #[arg(long)]
        n: usize,
        /// Random instances (oracle) or length assignments per graph (intrinsic).
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Scale invariants δ, ∇, Δ and structural properties.
    Props {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Usage(_) => "E_USAGE",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, message } => format!("{path}: {message}"),
            CliError::Usage(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx {
    epsilon: f64,
    tol: f64,
    cfg: SolverConfig,
    clique_cap: usize,
    seed: u64,
}

impl Ctx {
    fn new(g: &Global) -> CliResult<Self> {
        if !(g.epsilon >= 0.0 && g.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("--epsilon must be >= 0, got {}", g.epsilon)).into());
        }
        if !(g.tol > 0.0 && g.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("--tol must be > 0, got {}", g.tol)).into());
        }
        if g.exact_cap < 1 || g.clique_cap < 1 {
            return Err(Error::InvalidParameter("caps must be >= 1".into()).into());
        }
        let cfg = SolverConfig { exact_cap: g.exact_cap, ..SolverConfig::default() };
        Ok(Ctx { epsilon: g.epsilon, tol: g.tol, cfg, clique_cap: g.clique_cap, seed: g.seed })
    }

    fn space_of(&self, g: &Graph) -> CliResult<FiniteMetricSpace> {
        Ok(metric_space_of(g)?.with_epsilon(self.epsilon)?)
    }

    fn to_space(&self, input: Input) -> CliResult<FiniteMetricSpace> {
        match input {
            Input::Matrix(x) => Ok(x),
            Input::Graph(g) => self.space_of(&g),
        }
    }
}

fn read_text(path: Option<&PathBuf>) -> CliResult<(String, Option<String>)> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
            let ext = p.extension().map(|e| e.to_string_lossy().to_lowercase());
            Ok((text, ext))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            Ok((text, None))
        }
    }
}

fn load(args: &InputArgs, ctx: &Ctx) -> CliResult<Input> {
    let path = args.graph.as_ref().or(args.matrix.as_ref()).or(args.input.as_ref());
    let (text, ext) = read_text(path)?;
    let parsed = if ext.as_deref() == Some("csv") {
        Input::Matrix(parse_matrix_csv(&text, ctx.epsilon)?)
    } else {
        parse_auto(&text, ctx.epsilon)?
    };
    match (&parsed, args.graph.is_some(), args.matrix.is_some()) {
        (Input::Matrix(_), true, _) => Err(CliError::Usage("--graph expects a graph file".into())),
        (Input::Graph(_), _, true) => Err(CliError::Usage("--matrix expects a distance matrix".into())),
        _ => Ok(parsed),
    }
}

fn load_graph(args: &InputArgs, ctx: &Ctx) -> CliResult<Graph> {
    match load(args, ctx)? {
        Input::Graph(g) => Ok(g),
        Input::Matrix(_) => Err(CliError::Usage("this command needs a graph".into())),
    }
}

fn names(x: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| x[i].clone()).collect()
}

fn profile_fields(out: &mut Map<String, Value>, x: &FiniteMetricSpace) -> CliResult<()> {
    out.insert("points".into(), x.len().into());
    if x.len() >= 2 {
        let p = profile(x)?;
        out.insert("delta".into(), p.delta.into());
        out.insert("nabla".into(), p.nabla.into());
        out.insert("diameter".into(), p.big_delta.into());
        out.insert("locally_uniform".into(), is_locally_uniform(x)?.into());
    }
    Ok(())
}

fn cmd_dim(input: &InputArgs, method: Method, ctx: &Ctx) -> CliResult<Value> {
    let parsed = load(input, ctx)?;
    let mut out = Map::new();
    if let Input::Graph(g) = &parsed {
        if method == Method::Hop || (method == Method::Auto && g.is_unit()) {
            let r = dim_f_graph(g, ctx.clique_cap)?;
            out.insert("method".into(), "hop".into());
            dimension_fields(&mut out, r.dimension);
            out.insert("points".into(), g.len().into());
            if let Some(p) = r.profile {
                out.insert("delta".into(), p.delta.into());
                out.insert("nabla".into(), p.nabla.into());
                out.insert("diameter".into(), p.big_delta.into());
                out.insert("locally_uniform".into(), true.into());
            }
            if let Some((theta, diameter)) = r.closed_form {
                out.insert("N".into(), theta.into());
                out.insert("symbolic".into(), format!("ln({theta})/ln({diameter})").into());
            }
            if let Some(c) = r.covering {
                let parts: Vec<Vec<String>> = c.parts.iter().map(|p| names(g.names(), p)).collect();
                out.insert("covering".into(), json!(parts));
            }
            return Ok(Value::Object(out));
        }
    } else if method == Method::Hop {
        return Err(CliError::Usage("--method hop needs a unit-length graph".into()));
    }
    let x = ctx.to_space(parsed)?;
    let r = match method {
        Method::Fb => dim_fb(&x, &ctx.cfg)?,
        _ => dim_fh(&x, ctx.tol, &ctx.cfg)?,
    };
    out.insert("method".into(), if method == Method::Fb { "fb" } else { "fh" }.into());
    dimension_fields(&mut out, r.dimension);
    profile_fields(&mut out, &x)?;
    if let Some(n) = r.n_nabla {
        out.insert("N".into(), n.into());
        if let Some(p) = r.profile {
            if p.nabla < p.big_delta {
                out.insert("box_value".into(), ((n as f64).ln() / (p.big_delta / p.nabla).ln()).into());
            }
        }
    }
    if let Some(h) = r.h_at_root {
        out.insert("h_at_root".into(), h.into());
    }
    if let Some(c) = r.covering {
        let parts: Vec<Value> = c
            .parts
            .iter()
            .zip(&c.part_diameters)
            .map(|(p, d)| json!({"points": names(x.names(), p), "diameter": d}))
            .collect();
        out.insert("covering".into(), parts.into());
    }
    Ok(Value::Object(out))
}

fn cmd_cover(input: &InputArgs, s: f64, eta: Option<f64>, greedy: bool, ctx: &Ctx) -> CliResult<Value> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("--s must be >= 0, got {s}")).into());
    }
    let x = ctx.to_space(load(input, ctx)?)?;
    let eta = match eta {
        Some(e) => e,
        None => profile(&x)?.nabla,
    };
    let mode = if greedy { SolveMode::Greedy } else { SolveMode::Exact };
    let sol = h_s_eta(&x, s, eta, mode, &ctx.cfg)?;
    let parts: Vec<Value> = sol
        .covering
        .parts
        .iter()
        .zip(&sol.covering.part_diameters)
        .map(|(p, d)| json!({"points": names(x.names(), p), "diameter": d}))
        .collect();
    Ok(json!({
        "s": s,
        "eta": eta,
        "mode": if greedy { "greedy" } else { "exact" },
        "weight": sol.weight,
        "optimal": sol.optimal,
        "parts": parts,
    }))
}

fn cmd_clique_cover(input: &InputArgs, ctx: &Ctx) -> CliResult<Value> {
    let g = load_graph(input, ctx)?;
    let cover = clique_cover_number(&g, ctx.clique_cap)?;
    let cliques: Vec<Vec<String>> = cover.cliques.iter().map(|c| names(g.names(), c)).collect();
    Ok(json!({"vertices": g.len(), "theta": cover.cardinality, "cliques": cliques}))
}

fn need(v: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    v.ok_or_else(|| Error::InvalidFamilyParameters(format!("{family} needs --{flag}")).into())
}

fn parse_bridges(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair
                .trim()
                .split_once('-')
                .ok_or_else(|| CliError::Usage(format!("bridge {pair:?} is not of the form i-j")))?;
            let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad bridge index {t:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn family_spec(
    family: Family,
    n: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
    c: Option<usize>,
    k: Option<usize>,
    x: Option<f64>,
    bridges: Option<&str>,
) -> CliResult<FamilySpec> {
    Ok(match family {
        Family::Complete => FamilySpec::Complete { n: need(n, "n", "complete")? },
        Family::Path => FamilySpec::Path { n: need(n, "n", "path")? },
        Family::Star => FamilySpec::Star { n: need(n, "n", "star")? },
        Family::Cycle => FamilySpec::Cycle { n: need(n, "n", "cycle")? },
        Family::Lpq => FamilySpec::Lpq {
            p: need(p, "p", "lpq")?,
            q: need(q, "q", "lpq")?,
            bridges: bridges.map(parse_bridges).transpose()?,
        },
        Family::DoubleStar => FamilySpec::DoubleStar {
            n: need(n, "n", "double-star")?,
            m: need(m, "m", "double-star")?,
            x: x.unwrap_or(1.0),
        },
        Family::PathPlusStar => {
            let m = need(m, "m", "path-plus-star")?;
            let c = match (c, k) {
                (Some(c), _) => c,
                (None, Some(k)) => k.checked_sub((m + 1).div_ceil(2)).filter(|&c| c >= 1).ok_or_else(|| {
                    Error::InvalidFamilyParameters(format!("--k must exceed ceil((m+1)/2) = {}", (m + 1).div_ceil(2)))
                })?,
                (None, None) => return Err(Error::InvalidFamilyParameters("path-plus-star needs --c or --k".into()).into()),
            };
            FamilySpec::PathPlusStar { m, c }
        }
    })
}

fn render_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edges => write_edge_list(g),
        GraphFormat::Json => format!("{}\n", round_numbers(graph_to_json(g))),
    }
}

fn graph_summary(g: &Graph, ctx: &Ctx) -> CliResult<Value> {
    let mut m = Map::new();
    m.insert("vertices".into(), g.len().into());
    dimension_fields(&mut m, dim_f_graph(g, ctx.clique_cap)?.dimension);
    if g.len() >= 2 {
        m.insert("N".into(), n_of_graph(g, ctx.clique_cap)?.into());
    }
    m.insert("diameter".into(), g.hop_diameter().into());
    Ok(Value::Object(m))
}

fn cmd_product(left: &PathBuf, right: &PathBuf, kind: ProductKind, emit: bool, ctx: &Ctx) -> CliResult<Either> {
    let load_one = |p: &PathBuf| load_graph(&InputArgs { graph: Some(p.clone()), ..Default::default() }, ctx);
    let (g, f) = (load_one(left)?, load_one(right)?);
    let (prod, metric) = match kind {
        ProductKind::Strong => (strong_product(&g, &f)?, ProductMetric::LInf),
        ProductKind::Cartesian => (cartesian_product(&g, &f)?, ProductMetric::L1),
    };
    if emit {
        return Ok(Either::Text(write_edge_list(&prod)));
    }
    let (ls, rs, ps) = (graph_summary(&g, ctx)?, graph_summary(&f, ctx)?, graph_summary(&prod, ctx)?);
    let mut out = Map::new();
    out.insert("kind".into(), format!("{kind:?}").to_lowercase().into());
    let dims = (ls.get("value").and_then(Value::as_f64), rs.get("value").and_then(Value::as_f64));
    if let (Some(a), Some(b)) = dims {
        out.insert("dim_sum".into(), (a + b).into());
        if let Some(d) = ps.get("value").and_then(Value::as_f64) {
            out.insert("dim_subadditive".into(), (d <= a + b + 1e-12).into());
        }
    }
    if let (Some(a), Some(b), Some(c)) = (ls.get("N"), rs.get("N"), ps.get("N")) {
        let bound = a.as_u64().unwrap_or(0) * b.as_u64().unwrap_or(0);
        out.insert("N_bound".into(), bound.into());
        out.insert("N_submultiplicative".into(), (c.as_u64().unwrap_or(0) <= bound).into());
    }
    if g.len() >= 2 && f.len() >= 2 {
        let check = product_profile_check(&g, &f, metric)?;
        out.insert("profile_check".into(), serde_json::to_value(check).map_err(|e| Error::Internal(e.to_string()))?);
    }
    out.insert("left".into(), ls);
    out.insert("right".into(), rs);
    out.insert("product".into(), ps);
    Ok(Either::Json(Value::Object(out)))
}

fn parse_rational(s: &str) -> CliResult<Rational64> {
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let denom = 10i64.pow(frac.len() as u32);
        let negative = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let num = whole.abs() * denom + frac;
        return Ok(Rational64::new(if negative { -num } else { num }, denom));
    }
    Rational64::from_str(s).map_err(|_| bad())
}

fn cmd_construct(target: Option<f64>, interval: Option<&[String]>, vertex_cap: usize, emit: bool, ctx: &Ctx) -> CliResult<Either> {
    if let Some(t) = target {
        let c = construct_dimension_exact(t, &ctx.cfg)?;
        if emit {
            return Ok(Either::Text(write_edge_list(&c.graph)));
        }
        let verified = dim_fh(&ctx.space_of(&c.graph)?, ctx.tol, &ctx.cfg)?.dimension;
        let mut out = Map::new();
        out.insert("construction".into(), "double-star".into());
        out.insert("target".into(), t.into());
        out.insert("n".into(), c.n.into());
        out.insert("m".into(), c.m.into());
        out.insert("x".into(), c.x.into());
        out.insert("verified".into(), dimension_value(verified));
        if let Some(v) = verified.value() {
            out.insert("abs_error".into(), (v - t).abs().into());
        }
        out.insert("graph".into(), graph_to_json(&c.graph));
        return Ok(Either::Json(Value::Object(out)));
    }
    let ends = interval.ok_or_else(|| CliError::Usage("give --target or --interval".into()))?;
    let (lo, hi) = (parse_rational(&ends[0])?, parse_rational(&ends[1])?);
    let c = construct_dimension_in_interval(lo, hi, vertex_cap)?;
    if emit {
        return Ok(Either::Text(write_edge_list(&c.graph)));
    }
    let verified = dim_f_graph(&c.graph, vertex_cap.max(ctx.clique_cap))?.dimension;
    let to_f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
    let inside = verified.value().is_some_and(|v| to_f(lo) <= v && v <= to_f(hi));
    Ok(Either::Json(json!({
        "construction": "path-plus-star",
        "lo": lo.to_string(),
        "hi": hi.to_string(),
        "denominator": c.denominator,
        "m": c.m,
        "k": c.k,
        "c": c.graph.len() - c.m - 1,
        "vertices": c.graph.len(),
        "symbolic": format!("ln({})/ln({})", c.k, c.m),
        "dimension": c.dimension,
        "verified": dimension_value(verified),
        "in_interval": inside,
        "graph": graph_to_json(&c.graph),
    })))
}

fn cmd_intrinsic(input: &InputArgs, ctx: &Ctx) -> CliResult<Value> {
    let x = ctx.to_space(load(input, ctx)?)?;
    let v = is_intrinsic(&x)?;
    let family: Vec<Value> = v
        .family
        .geodesics
        .iter()
        .map(|(&(a, b), arc)| {
            json!({
                "pair": [x.names()[a], x.names()[b]],
                "arc": names(x.names(), &arc.points),
                "count": arc.count(),
                "length": arc.length,
            })
        })
        .collect();
    Ok(json!({
        "intrinsic": v.intrinsic,
        "points": x.len(),
        "max_count": v.family.max_count(),
        "segment_graph": v.segment_graph.as_ref().map(graph_to_json),
        "family": family,
    }))
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()).into())
}

fn cmd_sweep(theorem: Theorem, n: usize, samples: usize, sequential: bool, ctx: &Ctx) -> CliResult<Value> {
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    match theorem {
        Theorem::Extremal => to_json(&extremal_sweep(n, exec, ctx.clique_cap)?),
        Theorem::Trees => to_json(&tree_sweep(n, exec, ctx.clique_cap)?),
        Theorem::Product => to_json(&product_sweep(n, exec, ctx.clique_cap)?),
        Theorem::Oracle => to_json(&oracle_sweep(n, samples, ctx.seed, &ctx.cfg, exec)?),
        Theorem::Intrinsic => to_json(&intrinsic_sweep(n, samples, ctx.seed, exec)?),
    }
}

fn cmd_props(input: &InputArgs, ctx: &Ctx) -> CliResult<Value> {
    let parsed = load(input, ctx)?;
    let mut out = Map::new();
    if let Input::Graph(g) = &parsed {
        out.insert("edges".into(), g.edge_count().into());
        out.insert("unit_lengths".into(), g.is_unit().into());
        out.insert("tree".into(), g.is_tree().into());
        out.insert("complete".into(), g.is_complete().into());
        out.insert("hop_diameter".into(), g.hop_diameter().into());
    }
    let x = ctx.to_space(parsed)?;
    profile_fields(&mut out, &x)?;
    if x.len() >= 2 {
        let p = profile(&x)?;
        out.insert("focal".into(), x.approx_eq(p.nabla, p.big_delta).into());
        if x.len() <= ctx.cfg.exact_cap {
            out.insert("N".into(), findim::cover::n_nabla(&x, &ctx.cfg)?.into());
        }
    }
    Ok(Value::Object(out))
}

enum Either {
    Json(Value),
    Text(String),
}

fn run(cli: &Cli) -> CliResult<Either> {
    let ctx = Ctx::new(&cli.global)?;
    let json = |v: CliResult<Value>| v.map(Either::Json);
    match &cli.command {
        Command::Dim { input, method } => json(cmd_dim(input, *method, &ctx)),
        Command::Cover { input, s, eta, greedy } => json(cmd_cover(input, *s, *eta, *greedy, &ctx)),
        Command::CliqueCover { input } => json(cmd_clique_cover(input, &ctx)),
        Command::Gen { family, n, m, p, q, c, k, x, bridges, variants, format } => {
            let params = family_spec(*family, *n, *m, *p, *q, *c, *k, *x, bridges.as_deref())?;
            if !*variants {
                return Ok(Either::Text(render_graph(&generate(&params)?, *format)));
            }
            let FamilySpec::Lpq { p, q, .. } = params else {
                return Err(CliError::Usage("--variants applies to --family lpq".into()));
            };
            let mut text = String::new();
            for (i, g) in lpq_variants(p, q)?.iter().enumerate() {
                if *format == GraphFormat::Edges {
                    text.push_str(&format!("# variant {i}\n"));
                }
                text.push_str(&render_graph(g, *format));
            }
            Ok(Either::Text(text))
        }
        Command::Product { left, right, kind, emit } => cmd_product(left, right, *kind, *emit, &ctx),
        Command::ConstructDim { target, interval, vertex_cap, emit } => {
            cmd_construct(*target, interval.as_deref(), *vertex_cap, *emit, &ctx)
        }
        Command::IntrinsicCheck { input } => json(cmd_intrinsic(input, &ctx)),
        Command::Sweep { theorem, n, samples, sequential } => json(cmd_sweep(*theorem, *n, *samples, *sequential, &ctx)),
        Command::Props { input } => json(cmd_props(input, &ctx)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let written = match run(&cli) {
        Ok(Either::Text(t)) => stdout.write_all(t.as_bytes()),
        Ok(Either::Json(v)) => {
            let v = round_numbers(v);
            let body = match cli.global.output {
                Output::Json => format!("{}\n", serde_json::to_string_pretty(&v).unwrap_or_default()),
                Output::Table => table(&v),
            };
            stdout.write_all(body.as_bytes())
        }
        Err(e) => {
            let err = json!({"error": {"code": e.code(), "message": e.message()}});
            eprintln!("{err}");
            return ExitCode::from(e.exit_code());
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": {"code": "E_IO", "message": e.to_string()}}));
            ExitCode::from(2)
        }
    }
}
