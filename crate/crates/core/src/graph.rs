//! Simple connected graphs with positive edge lengths.
//!
//! A graph is metrized by its shortest-path distance `d_g`. For unit lengths
//! (the hop metric) the 2-covering count equals the clique covering number
//! θ(G), so the dimension reduces to `ln θ(G) / ln Δ(G)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::dimension::{Dimension, DimensionResult};
use crate::error::{Error, Result};
use crate::metricspace::{Covering, FiniteMetricSpace, MetricProfile, DEFAULT_EPSILON};

/// Default vertex cap for the exact clique cover.
pub const DEFAULT_CLIQUE_CAP: usize = 40;
pub const MAX_ENUMERATED_GRAPH_ORDER: usize = 7;
pub const MAX_ENUMERATED_TREE_ORDER: usize = 9;
/// Size limit of [`brute_force_clique_cover_number`].
pub const BRUTE_FORCE_CLIQUE_CAP: usize = 8;

#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    edges: BTreeMap<(usize, usize), f64>,
    adj: Vec<Vec<usize>>,
}

/// A minimum cover of the vertex set by cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
    pub cardinality: usize,
}

impl Graph {
    /// Build a graph from indexed edges `(u, v, length)`.
    ///
    /// Rejects loops, repeated edges, non-positive lengths, duplicate vertex
    /// names and disconnected graphs.
    pub fn new(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidGraph(format!("invalid vertex name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex name {name:?}")));
            }
        }
        let mut map = BTreeMap::new();
        for (u, v, len) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) refers to a missing vertex")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {:?}", names[u])));
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} has non-positive length {len}",
                    names[u], names[v]
                )));
            }
            let key = (u.min(v), u.max(v));
            if map.insert(key, len).is_some() {
                return Err(Error::InvalidGraph(format!("repeated edge {{{}, {}}}", names[u], names[v])));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in map.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { names, edges: map, adj };
        g.check_connected()?;
        Ok(g)
    }

    /// Unit-length graph on vertices named `0..n`.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(default_names(n), edges.iter().map(|&(u, v)| (u, v, 1.0)))
    }

    /// Build from vertex names and named edges.
    pub fn from_named(names: Vec<String>, edges: &[(String, String, f64)]) -> Result<Self> {
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |s: &str| {
            index.get(s).copied().ok_or_else(|| Error::InvalidGraph(format!("edge refers to unknown vertex {s:?}")))
        };
        let indexed = edges
            .iter()
            .map(|(u, v, l)| Ok((lookup(u)?, lookup(v)?, *l)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, indexed)
    }

    fn check_connected(&self) -> Result<()> {
        let seen = self.reachable_from(0);
        if let Some(first) = seen.iter().position(|s| !s) {
            let comp = self.reachable_from(first);
            let component = (0..self.len()).filter(|&v| comp[v]).map(|v| self.names[v].clone()).collect();
            return Err(Error::Disconnected { component });
        }
        Ok(())
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v, length)` with `u < v`, ordered by index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &l)| (u, v, l))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn length(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    /// True when every edge has length exactly 1.
    pub fn is_unit(&self) -> bool {
        self.edges.values().all(|&l| l == 1.0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.edges.len() == n * (n - 1) / 2
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len()
    }

    /// Same graph with every length multiplied by `a > 0`.
    pub fn scaled(&self, a: f64) -> Result<Self> {
        Self::new(self.names.clone(), self.edges().map(|(u, v, l)| (u, v, l * a)))
    }

    /// Same graph with the given lengths, in [`Graph::edges`] order.
    pub fn with_lengths(&self, lengths: &[f64]) -> Result<Self> {
        if lengths.len() != self.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "{} lengths for {} edges",
                lengths.len(),
                self.edge_count()
            )));
        }
        Self::new(self.names.clone(), self.edges().zip(lengths).map(|((u, v, _), &l)| (u, v, l)))
    }

    /// Hop distances by breadth-first search, ignoring lengths.
    pub fn hop_distances(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|s| {
                let mut dist = vec![usize::MAX; self.len()];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &v in &self.adj[u] {
                        if dist[v] == usize::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    pub fn hop_diameter(&self) -> usize {
        self.hop_distances().into_iter().flatten().max().unwrap_or(0)
    }

    fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut m = vec![vec![false; n]; n];
        for &(u, v) in self.edges.keys() {
            m[u][v] = true;
            m[v][u] = true;
        }
        m
    }
}

/// Graphs are equal when they have the same named vertices and the same
/// named edges with the same lengths; vertex order is irrelevant.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        fn keyed(g: &Graph) -> (BTreeSet<&str>, BTreeMap<(&str, &str), u64>) {
            let names = g.names.iter().map(String::as_str).collect();
            let edges = g
                .edges()
                .map(|(u, v, l)| {
                    let (a, b) = (g.names[u].as_str(), g.names[v].as_str());
                    ((a.min(b), a.max(b)), l.to_bits())
                })
                .collect();
            (names, edges)
        }
        keyed(self) == keyed(other)
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The intrinsic metric `d_g`: all-pairs shortest paths under the edge lengths.
///
/// Floyd-Warshall is repeated until no entry changes, so the result satisfies
/// the triangle inequality exactly in floating point.
pub fn metric_space_of(g: &Graph) -> Result<FiniteMetricSpace> {
    let n = g.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, l) in g.edges() {
        d[u][v] = l;
        d[v][u] = l;
    }
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                let dik = d[i][k];
                if dik == f64::INFINITY {
                    continue;
                }
                for j in 0..n {
                    let via = dik + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if d.iter().flatten().any(|x| x.is_infinite()) {
        return Err(Error::Internal("connected graph produced an infinite distance".into()));
    }
    FiniteMetricSpace::with_names(g.names.clone(), d, 0.0)?.with_epsilon(DEFAULT_EPSILON)
}

/// Exact minimum clique cover, as a minimum coloring of the complement.
///
/// Lower bound: the larger of a greedy independent set and `⌈n/ω⌉`. Upper
/// bound: the better of a greedy clique cover and DSATUR on the complement.
/// When they differ, DSATUR branch-and-bound runs with the independent set
/// pre-coloured.
pub fn clique_cover_number(g: &Graph, cap: usize) -> Result<CliqueCover> {
    let n = g.len();
    if n > cap {
        return Err(Error::InstanceTooLarge { what: "clique cover", size: n, cap });
    }
    let adj = g.adjacency_matrix();
    let independent = greedy_independent_set(g);
    let omega = max_clique_size(g, &adj);
    let lower = independent.len().max(n.div_ceil(omega));

    let greedy = greedy_clique_cover(g, &adj);
    let complement: Vec<Vec<usize>> =
        (0..n).map(|u| (0..n).filter(|&v| v != u && !adj[u][v]).collect()).collect();
    let dsatur = dsatur_greedy(&complement);
    let dsatur_count = dsatur.iter().max().map_or(0, |c| c + 1);

    let mut classes = if dsatur_count < greedy.len() { classes_from_coloring(&dsatur) } else { greedy };
    if classes.len() > lower {
        let mut search = DsaturSearch::new(&complement, classes.len(), lower);
        search.run(&independent);
        if let Some(coloring) = search.best_coloring {
            classes = classes_from_coloring(&coloring);
        }
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    let cardinality = classes.len();
    Ok(CliqueCover { cliques: classes, cardinality })
}

fn classes_from_coloring(coloring: &[usize]) -> Vec<Vec<usize>> {
    let k = coloring.iter().max().map_or(0, |c| c + 1);
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in coloring.iter().enumerate() {
        classes[c].push(v);
    }
    classes
}

/// Repeatedly take a minimum-degree vertex and discard its neighbours.
fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut chosen = Vec::new();
    while let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
        chosen.push(v);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                alive[u] = false;
                for &w in g.neighbors(u) {
                    deg[w] -= 1;
                }
            }
        }
    }
    chosen
}

/// Partition into cliques: grow each clique from a minimum-degree uncovered
/// vertex using uncovered neighbours only. Optimal on forests.
fn greedy_clique_cover(g: &Graph, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut covered = vec![false; n];
    let mut cliques = Vec::new();
    let uncovered_degree = |v: usize, covered: &[bool]| g.neighbors(v).iter().filter(|&&u| !covered[u]).count();
    while let Some(v) = (0..n).filter(|&v| !covered[v]).min_by_key(|&v| (uncovered_degree(v, &covered), v)) {
        let mut clique = vec![v];
        let mut candidates: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !covered[u]).collect();
        candidates.sort_by_key(|&u| (uncovered_degree(u, &covered), u));
        for u in candidates {
            if clique.iter().all(|&w| adj[u][w]) {
                clique.push(u);
            }
        }
        for &u in &clique {
            covered[u] = true;
        }
        cliques.push(clique);
    }
    cliques
}

fn max_clique_size(g: &Graph, adj: &[Vec<bool>]) -> usize {
    fn expand(adj: &[Vec<bool>], size: usize, cand: Vec<usize>, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        // Greedy colouring of the candidates bounds the clique that can grow from here.
        let mut colors: Vec<Vec<usize>> = Vec::new();
        let mut bound = Vec::with_capacity(cand.len());
        for &v in &cand {
            let k = colors.iter().position(|cls| cls.iter().all(|&u| !adj[u][v])).unwrap_or(colors.len());
            if k == colors.len() {
                colors.push(Vec::new());
            }
            colors[k].push(v);
        }
        for (k, cls) in colors.iter().enumerate() {
            for &v in cls {
                bound.push((v, k + 1));
            }
        }
        let mut remaining: Vec<usize> = bound.iter().map(|&(v, _)| v).collect();
        while let Some((v, colour_bound)) = bound.pop() {
            if size + colour_bound <= *best {
                return;
            }
            remaining.pop();
            let next: Vec<usize> = remaining.iter().copied().filter(|&u| adj[v][u]).collect();
            expand(adj, size + 1, next, best);
        }
    }
    let mut best = 1;
    expand(adj, 0, (0..g.len()).collect(), &mut best);
    best
}

fn dsatur_greedy(neighbors: &[Vec<usize>]) -> Vec<usize> {
    let n = neighbors.len();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (seen[v].len(), neighbors[v].len(), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (0..).find(|c| !seen[v].contains(c)).expect("unbounded range");
        color[v] = c;
        for &u in &neighbors[v] {
            seen[u].insert(c);
        }
    }
    color
}

struct DsaturSearch<'a> {
    neighbors: &'a [Vec<usize>],
    color: Vec<usize>,
    /// counts[v][c]: coloured neighbours of v with colour c.
    counts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    lower: usize,
    best_coloring: Option<Vec<usize>>,
}

impl<'a> DsaturSearch<'a> {
    fn new(neighbors: &'a [Vec<usize>], upper: usize, lower: usize) -> Self {
        let n = neighbors.len();
        DsaturSearch {
            neighbors,
            color: vec![usize::MAX; n],
            counts: vec![vec![0; upper + 1]; n],
            saturation: vec![0; n],
            best: upper,
            lower,
            best_coloring: None,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        let neighbors = self.neighbors;
        for &u in &neighbors[v] {
            if self.counts[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.counts[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = std::mem::replace(&mut self.color[v], usize::MAX);
        let neighbors = self.neighbors;
        for &u in &neighbors[v] {
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn run(&mut self, precolor: &[usize]) {
        // The independent set of G is a clique of the complement: distinct colours.
        for (c, &v) in precolor.iter().enumerate() {
            self.assign(v, c);
        }
        self.search(precolor.len(), precolor.len());
    }

    fn search(&mut self, colored: usize, used: usize) {
        if used >= self.best || self.best == self.lower {
            return;
        }
        let n = self.neighbors.len();
        if colored == n {
            self.best = used;
            self.best_coloring = Some(self.color.clone());
            return;
        }
        let v = (0..n)
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| {
                let free = self.neighbors[v].iter().filter(|&&u| self.color[u] == usize::MAX).count();
                (self.saturation[v], free, std::cmp::Reverse(v))
            })
            .expect("an uncoloured vertex remains");
        for c in 0..=used {
            if c == used && used + 1 >= self.best {
                break;
            }
            if self.counts[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.search(colored + 1, used.max(c + 1));
            self.unassign(v);
            if self.best == self.lower {
                return;
            }
        }
    }
}

/// Minimum number of cliques covering the vertices, by exhaustive search.
/// Test oracle for [`clique_cover_number`].
pub fn brute_force_clique_cover_number(g: &Graph) -> Result<usize> {
    let n = g.len();
    if n > BRUTE_FORCE_CLIQUE_CAP {
        return Err(Error::InstanceTooLarge { what: "brute-force clique cover", size: n, cap: BRUTE_FORCE_CLIQUE_CAP });
    }
    let cliques: Vec<u32> = (1u32..(1 << n))
        .filter(|&m| {
            let vs: Vec<usize> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .collect();
    let full = (1u32 << n) - 1;
    fn fits(cliques: &[u32], full: u32, covered: u32, left: usize) -> bool {
        if covered == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let v = (!covered).trailing_zeros();
        cliques.iter().filter(|&&c| c & (1 << v) != 0).any(|&c| fits(cliques, full, covered | c, left - 1))
    }
    Ok((1..=n).find(|&k| fits(&cliques, full, 0, k)).expect("singletons always cover"))
}

fn require_unit(g: &Graph) -> Result<()> {
    if g.is_unit() {
        Ok(())
    } else {
        Err(Error::NonUnitLengths)
    }
}

/// `N(G)` for the hop metric, computed as θ(G).
pub fn n_of_graph(g: &Graph, cap: usize) -> Result<usize> {
    require_unit(g)?;
    if g.len() < 2 {
        return Err(Error::SinglePoint);
    }
    Ok(clique_cover_number(g, cap)?.cardinality)
}

/// Hop-metric dimension `ln θ(G) / ln Δ(G)`.
pub fn dim_f_graph(g: &Graph, cap: usize) -> Result<DimensionResult> {
    require_unit(g)?;
    let n = g.len();
    if n == 1 {
        return Ok(DimensionResult::bare(Dimension::Zero, None));
    }
    let diameter = g.hop_diameter();
    let profile = MetricProfile { delta: 1.0, nabla: 1.0, big_delta: diameter as f64 };
    if g.is_complete() {
        return Ok(DimensionResult::bare(Dimension::Infinite, Some(profile)));
    }
    let cover = clique_cover_number(g, cap)?;
    let theta = cover.cardinality;
    // A clique cover becomes a 2-covering of diameter 1 by giving each
    // singleton one neighbour.
    let parts: Vec<Vec<usize>> = cover
        .cliques
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if c.len() == 1 {
                c.push(g.neighbors(c[0])[0]);
                c.sort_unstable();
            }
            c
        })
        .collect();
    let part_diameters = vec![1.0; parts.len()];
    Ok(DimensionResult {
        dimension: Dimension::Finite((theta as f64).ln() / (diameter as f64).ln()),
        profile: Some(profile),
        n_nabla: Some(theta),
        covering: Some(Covering { parts, part_diameters }),
        h_at_root: None,
        closed_form: Some((theta, diameter)),
    })
}

fn connected_mask(n: usize, adj: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full
}

/// All connected labeled graphs on `n ≤ 7` vertices (unit lengths), in
/// increasing order of the edge-subset bitmask over lexicographic pairs.
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if n == 0 || n > MAX_ENUMERATED_GRAPH_ORDER {
        return Err(Error::InstanceTooLarge { what: "connected graph enumeration", size: n, cap: MAX_ENUMERATED_GRAPH_ORDER });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs { n, pairs, next: 0, end })
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let mut adj = vec![0u32; self.n];
            for (k, &(u, v)) in self.pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
            if connected_mask(self.n, &adj) {
                let edges: Vec<(usize, usize)> =
                    self.pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &p)| p).collect();
                return Some(Graph::unit(self.n, &edges).expect("enumerated graph is valid"));
            }
        }
        None
    }
}

/// All labeled trees on `n ≤ 9` vertices, decoded from Prüfer sequences in
/// lexicographic order.
pub fn enumerate_trees(n: usize) -> Result<Trees> {
    if n == 0 || n > MAX_ENUMERATED_TREE_ORDER {
        return Err(Error::InstanceTooLarge { what: "tree enumeration", size: n, cap: MAX_ENUMERATED_TREE_ORDER });
    }
    let len = n.saturating_sub(2);
    Ok(Trees { n, seq: vec![0; len], done: false })
}

pub struct Trees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for Trees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let tree = match self.n {
            1 => Graph::unit(1, &[]),
            2 => Graph::unit(2, &[(0, 1)]),
            _ => Graph::unit(self.n, &prufer_decode(self.n, &self.seq)),
        }
        .expect("decoded tree is valid");
        // Advance the base-n counter; the last digit varies fastest.
        self.done = true;
        for digit in self.seq.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}
