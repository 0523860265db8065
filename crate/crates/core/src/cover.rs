//! Minimum-weight 2-coverings.
//!
//! `H^s_η(X)` is the minimum of `Σ Δ(U_i)^s` over 2-coverings whose parts all
//! have diameter at most η. Any part can be swapped for a superset of the same
//! diameter without changing its weight, so it suffices to search over the
//! sets that are inclusion-maximal at their own diameter: for each distance
//! level `λ ≤ η`, the maximal cliques of the threshold graph `{d ≤ λ}`.
//!
//! The exact solver is a weighted set cover over those candidates: a subset
//! DP over covered-point bitmasks for small spaces, branch-and-bound with a
//! greedy incumbent above [`SolverConfig::dp_threshold`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metricspace::{profile, Covering, FiniteMetricSpace};

/// Limits for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest space solved by subset DP; branch-and-bound above it.
    pub dp_threshold: usize,
    /// Largest space the exact solver accepts.
    pub exact_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { dp_threshold: 16, exact_cap: 24 }
    }
}

/// Hard limit of the bitmask representation.
pub const MAX_POINTS: usize = 64;
/// Size limit of [`brute_force_min_cover`].
pub const BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub points: Vec<usize>,
    #[serde(skip)]
    pub mask: u64,
    pub diameter: f64,
}

/// Candidate parts for coverings of diameter at most `eta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateFamily {
    pub eta: f64,
    pub sets: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverSolution {
    pub covering: Covering,
    pub weight: f64,
    pub optimal: bool,
}

fn mask_points(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn tie_tol(value: f64) -> f64 {
    1e-12 * value.abs().max(1.0)
}

fn check_eta(space: &FiniteMetricSpace, eta: f64) -> Result<f64> {
    let nabla = profile(space)?.nabla;
    if eta < nabla - space.epsilon() {
        return Err(Error::EtaBelowNabla { eta, nabla });
    }
    Ok(nabla)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let px = p | x;
    let pivot = mask_points(px)
        .into_iter()
        .max_by_key(|&u| ((p & adj[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p | x is non-empty");
    let mut branch = p & !adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
        branch &= !bit;
    }
}

/// All inclusion-maximal candidate parts for coverings of diameter ≤ `eta`.
///
/// Sets are sorted lexicographically by their point lists.
pub fn enumerate_candidates(space: &FiniteMetricSpace, eta: f64) -> Result<CandidateFamily> {
    let n = space.len();
    if n > MAX_POINTS {
        return Err(Error::InstanceTooLarge { what: "candidate enumeration", size: n, cap: MAX_POINTS });
    }
    check_eta(space, eta)?;
    let eps = space.epsilon();
    let mut masks: Vec<u64> = Vec::new();
    for level in space.distance_levels() {
        if level > eta + eps {
            break;
        }
        let adj: Vec<u64> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && space.d(i, j) <= level)
                    .fold(0u64, |m, j| m | (1u64 << j))
            })
            .collect();
        let mut cliques = Vec::new();
        bron_kerbosch(&adj, 0, full_mask(n), 0, &mut cliques);
        masks.extend(cliques.into_iter().filter(|m| m.count_ones() >= 2));
    }
    masks.sort_unstable();
    masks.dedup();
    let mut sets: Vec<Candidate> = masks
        .into_iter()
        .map(|mask| {
            let points = mask_points(mask);
            let diameter = space.diameter_of(&points);
            Candidate { points, mask, diameter }
        })
        .collect();
    sets.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(CandidateFamily { eta, sets })
}

/// A weighted set cover instance over a fixed candidate family.
///
/// Built once and re-solved with different weights; the dimension root
/// finder evaluates `H^s` many times on the same family.
#[derive(Debug, Clone)]
pub(crate) struct CoverProblem {
    n: usize,
    masks: Vec<u64>,
    by_point: Vec<Vec<usize>>,
    max_size: u32,
}

impl CoverProblem {
    pub(crate) fn new(n: usize, family: &CandidateFamily) -> Result<Self> {
        let masks: Vec<u64> = family.sets.iter().map(|c| c.mask).collect();
        let mut by_point = vec![Vec::new(); n];
        for (c, &m) in masks.iter().enumerate() {
            for p in mask_points(m) {
                by_point[p].push(c);
            }
        }
        if let Some(p) = by_point.iter().position(Vec::is_empty) {
            return Err(Error::Internal(format!("point {p} lies in no candidate")));
        }
        let max_size = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        Ok(CoverProblem { n, masks, by_point, max_size })
    }

    /// Minimum total weight and the chosen candidate indices (sorted).
    pub(crate) fn solve_exact(&self, weights: &[f64], cfg: &SolverConfig) -> (f64, Vec<usize>) {
        let (w, mut chosen) = if self.n <= cfg.dp_threshold.min(24) {
            self.solve_dp(weights)
        } else {
            self.solve_bnb(weights)
        };
        chosen.sort_unstable();
        (w, chosen)
    }

    fn solve_dp(&self, weights: &[f64]) -> (f64, Vec<usize>) {
        let full = full_mask(self.n);
        let size = 1usize << self.n;
        // best[mask]: cheapest way to cover the points outside `mask`.
        let mut best = vec![0.0f64; size];
        for mask in (0..full).rev() {
            let i = (!mask).trailing_zeros() as usize;
            best[mask as usize] = self.by_point[i]
                .iter()
                .map(|&c| weights[c] + best[(mask | self.masks[c]) as usize])
                .fold(f64::INFINITY, f64::min);
        }
        // Walk forward taking the first (lexicographically smallest) tight candidate.
        let mut chosen = Vec::new();
        let mut mask = 0u64;
        while mask != full {
            let i = (!mask).trailing_zeros() as usize;
            let target = best[mask as usize];
            let c = *self.by_point[i]
                .iter()
                .find(|&&c| weights[c] + best[(mask | self.masks[c]) as usize] <= target + tie_tol(target))
                .expect("dp table is consistent");
            chosen.push(c);
            mask |= self.masks[c];
        }
        (best[0], chosen)
    }

    pub(crate) fn solve_greedy(&self, weights: &[f64]) -> (f64, Vec<usize>) {
        let full = full_mask(self.n);
        let mut covered = 0u64;
        let mut total = 0.0;
        let mut chosen = Vec::new();
        while covered != full {
            let (c, _) = self
                .masks
                .iter()
                .enumerate()
                .filter_map(|(c, &m)| {
                    let gain = (m & !covered).count_ones();
                    (gain > 0).then(|| (c, weights[c] / gain as f64))
                })
                .fold(None, |acc: Option<(usize, f64)>, (c, r)| match acc {
                    Some((_, br)) if br <= r => acc,
                    _ => Some((c, r)),
                })
                .expect("every point lies in some candidate");
            covered |= self.masks[c];
            total += weights[c];
            chosen.push(c);
        }
        (total, chosen)
    }

    fn solve_bnb(&self, weights: &[f64]) -> (f64, Vec<usize>) {
        let (incumbent, sel) = self.solve_greedy(weights);
        // Branch on points with fewest candidates first; try cheap sets first.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&p| (self.by_point[p].len(), p));
        let by_point: Vec<Vec<usize>> = self
            .by_point
            .iter()
            .map(|cs| {
                let mut cs = cs.clone();
                cs.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(a.cmp(&b)));
                cs
            })
            .collect();
        let min_weight = weights.iter().copied().fold(f64::INFINITY, f64::min);
        let mut search = Bnb {
            full: full_mask(self.n),
            masks: &self.masks,
            weights,
            by_point,
            order,
            max_size: self.max_size,
            min_weight,
            best: incumbent,
            best_sel: sel,
            current: Vec::new(),
        };
        search.run(0, 0.0);
        (search.best, search.best_sel)
    }
}

struct Bnb<'a> {
    full: u64,
    masks: &'a [u64],
    weights: &'a [f64],
    by_point: Vec<Vec<usize>>,
    order: Vec<usize>,
    max_size: u32,
    min_weight: f64,
    best: f64,
    best_sel: Vec<usize>,
    current: Vec<usize>,
}

impl Bnb<'_> {
    fn run(&mut self, covered: u64, cost: f64) {
        if covered == self.full {
            if cost < self.best - tie_tol(self.best) {
                self.best = cost;
                self.best_sel = self.current.clone();
            }
            return;
        }
        let remaining = (self.full & !covered).count_ones();
        let bound = remaining.div_ceil(self.max_size) as f64 * self.min_weight;
        if cost + bound >= self.best - tie_tol(self.best) {
            return;
        }
        let point = *self
            .order
            .iter()
            .find(|&&p| covered & (1u64 << p) == 0)
            .expect("some point is uncovered");
        for k in 0..self.by_point[point].len() {
            let c = self.by_point[point][k];
            self.current.push(c);
            self.run(covered | self.masks[c], cost + self.weights[c]);
            self.current.pop();
        }
    }
}

fn solution_from(space: &FiniteMetricSpace, family: &CandidateFamily, chosen: &[usize], s: f64, optimal: bool) -> Result<CoverSolution> {
    let mut parts: Vec<Vec<usize>> = chosen.iter().map(|&c| family.sets[c].points.clone()).collect();
    parts.sort();
    let covering = Covering::new(space, parts)?;
    let weight = covering.weight(s);
    Ok(CoverSolution { covering, weight, optimal })
}

/// `H^s_η(X)` with the optimal (or greedy) covering.
pub fn h_s_eta(space: &FiniteMetricSpace, s: f64, eta: f64, mode: SolveMode, cfg: &SolverConfig) -> Result<CoverSolution> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("s must be finite and >= 0, got {s}")));
    }
    let n = space.len();
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    if mode == SolveMode::Exact && n > cfg.exact_cap.min(MAX_POINTS) {
        return Err(Error::InstanceTooLarge { what: "exact 2-cover", size: n, cap: cfg.exact_cap.min(MAX_POINTS) });
    }
    let family = enumerate_candidates(space, eta)?;
    let problem = CoverProblem::new(n, &family)?;
    let weights: Vec<f64> = family.sets.iter().map(|c| c.diameter.powf(s)).collect();
    let (_, chosen) = match mode {
        SolveMode::Exact => problem.solve_exact(&weights, cfg),
        SolveMode::Greedy => problem.solve_greedy(&weights),
    };
    solution_from(space, &family, &chosen, s, mode == SolveMode::Exact)
}

/// `H^s(X) = H^s_∇(X)`.
pub fn h_s(space: &FiniteMetricSpace, s: f64, cfg: &SolverConfig) -> Result<f64> {
    let nabla = profile(space)?.nabla;
    Ok(h_s_eta(space, s, nabla, SolveMode::Exact, cfg)?.weight)
}

/// `N_∇(X)`: fewest parts of a 2-covering of diameter ∇.
pub fn n_nabla(space: &FiniteMetricSpace, cfg: &SolverConfig) -> Result<usize> {
    Ok(n_nabla_solution(space, cfg)?.covering.len())
}

pub(crate) fn n_nabla_solution(space: &FiniteMetricSpace, cfg: &SolverConfig) -> Result<CoverSolution> {
    let nabla = profile(space)?.nabla;
    h_s_eta(space, 0.0, nabla, SolveMode::Exact, cfg)
}

/// Exhaustive search over every 2-covering built from arbitrary subsets of
/// diameter ≤ η. Test oracle; independent of the candidate restriction.
pub fn brute_force_min_cover(space: &FiniteMetricSpace, s: f64, eta: f64) -> Result<CoverSolution> {
    let n = space.len();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::InstanceTooLarge { what: "brute-force 2-cover", size: n, cap: BRUTE_FORCE_CAP });
    }
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    let eps = space.epsilon();
    let subsets: Vec<(u64, f64)> = (1u64..(1u64 << n))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (m, space.diameter_of(&mask_points(m))))
        .filter(|&(_, d)| d <= eta + eps)
        .map(|(m, d)| (m, d.powf(s)))
        .collect();

    fn go(subsets: &[(u64, f64)], full: u64, covered: u64, cost: f64, cur: &mut Vec<u64>, best: &mut Option<(f64, Vec<u64>)>) {
        if covered == full {
            if best.as_ref().map_or(true, |(b, _)| cost < *b) {
                *best = Some((cost, cur.clone()));
            }
            return;
        }
        if best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            return;
        }
        let p = (!covered).trailing_zeros();
        for &(m, w) in subsets.iter().filter(|(m, _)| m & (1u64 << p) != 0) {
            cur.push(m);
            go(subsets, full, covered | m, cost + w, cur, best);
            cur.pop();
        }
    }

    let mut best = None;
    go(&subsets, full_mask(n), 0, 0.0, &mut Vec::new(), &mut best);
    let (_, masks) = best.ok_or(Error::EtaBelowNabla { eta, nabla: profile(space)?.nabla })?;
    let mut parts: Vec<Vec<usize>> = masks.into_iter().map(mask_points).collect();
    parts.sort();
    let covering = Covering::new(space, parts)?;
    let weight = covering.weight(s);
    Ok(CoverSolution { covering, weight, optimal: true })
}
