//! Multi-start search for piecewise-Euclidean metrics that maximize girth.
//!
//! Parameters are log edge lengths with edge 0 pinned at length 1. Each restart
//! runs normalized subgradient ascent on `girth - 2π` minus a hinge-squared
//! penalty on thin triangles; the subgradient comes from the currently
//! shortest circuit. When the active circuit keeps switching without progress,
//! the restart hands over to Nelder–Mead.

mod certificate;
mod k0;
mod objective;

use std::collections::{hash_map::DefaultHasher, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;
// Vec<f64> vertex arithmetic for the simplex lives behind this crate's `vec` feature.
use argmin_math as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::Complex;
use crate::metric::{MetricError, PeMetric};

pub use certificate::{verify_certificate, Certificate, CERTIFICATE_PRECISION};
pub use k0::{k0_report, CircuitCheck, K0Report, K0Sample, K0_CIRCUITS};
pub use objective::objective;
use objective::{Evaluation, Problem};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("the complex has no triangles, so there is nothing to metrize")]
    NoTriangles,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Which girth is maximized: every vertex link, or the angle graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Links,
    Global,
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "links" => Ok(Self::Links),
            "global" => Ok(Self::Global),
            other => Err(format!("unknown mode `{other}` (expected links or global)")),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Links => "links",
            Self::Global => "global",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// Ascent step in log-length space at iteration 0.
    pub initial_step: f64,
    /// Step at iteration `t` is `initial_step / sqrt(1 + t / step_decay)`.
    pub step_decay: f64,
    /// Penalty weight at iteration `t` is `max(penalty_floor, penalty_start * penalty_decay^t)`.
    pub penalty_start: f64,
    pub penalty_decay: f64,
    pub penalty_floor: f64,
    /// Relative margin `(a + b - c) / (a + b + c)` below which a triangle is penalized.
    pub margin_floor: f64,
    /// Standard deviation of the log-normal jitter around the equilateral start.
    pub jitter: f64,
    /// A restart stops after this many iterations without improvement.
    pub stall_iters: usize,
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(mode: SearchMode) -> Self {
        Self {
            mode,
            restarts: 100,
            seed: 0,
            max_iters: 2000,
            initial_step: 0.2,
            step_decay: 100.0,
            penalty_start: 1e4,
            penalty_decay: 0.995,
            penalty_floor: 1e3,
            margin_floor: 0.02,
            jitter: 0.5,
            stall_iters: 300,
            tol: 1e-9,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: &str| Err(SearchError::InvalidConfig(msg.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if !(self.initial_step > 0.0 && self.step_decay > 0.0) {
            return bad("step parameters must be positive");
        }
        if !(self.penalty_floor >= 0.0 && self.penalty_start >= self.penalty_floor) {
            return bad("penalty weights must satisfy 0 <= floor <= start");
        }
        if !(self.penalty_decay > 0.0 && self.penalty_decay <= 1.0) {
            return bad("penalty decay must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.margin_floor) || !(self.jitter >= 0.0) || !(self.tol >= 0.0) {
            return bad("margin floor, jitter and tolerance are out of range");
        }
        Ok(())
    }

    fn penalty_weight(&self, iteration: usize) -> f64 {
        (self.penalty_start * self.penalty_decay.powi(iteration.min(i32::MAX as usize) as i32)).max(self.penalty_floor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub index: usize,
    /// Objective of the starting metric.
    pub initial_objective: f64,
    /// Objective at the restart's selected metric.
    pub best_objective: f64,
    /// Selection score: objective minus the floor-weighted penalty.
    pub best_score: f64,
    pub min_margin: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub simplex_fallback: bool,
    /// Best objective so far, every 100 iterations.
    pub checkpoints: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActiveCircuit {
    /// The vertex whose link holds the circuit, in links mode.
    pub vertex: Option<String>,
    pub cycle: Vec<String>,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub mode: SearchMode,
    #[serde(skip)]
    pub best_metric: PeMetric,
    /// `(a, b, length)` for every edge of the complex.
    pub best_lengths: Vec<(String, String, f64)>,
    /// Girth minus `2π` at `best_metric`, recomputed by the metric module.
    pub best_objective: f64,
    pub feasible: bool,
    pub status: &'static str,
    pub best_restart: usize,
    pub active_circuit: Option<ActiveCircuit>,
    pub certificate: Certificate,
    pub histogram: Vec<HistogramBin>,
    pub restarts: Vec<RestartTrace>,
}

struct Outcome {
    trace: RestartTrace,
    theta: Vec<f64>,
    score: f64,
}

fn lengths_of(theta: &[f64]) -> Vec<f64> {
    theta.iter().map(|t| t.exp()).collect()
}

fn score(e: &Evaluation, weight: f64) -> f64 {
    e.raw - weight * e.penalty
}

fn signature(e: &Evaluation) -> u64 {
    let mut h = DefaultHasher::new();
    if let Some((target, edges)) = &e.active {
        let mut edges = edges.clone();
        edges.sort_unstable();
        (target, edges).hash(&mut h);
    }
    h.finish()
}

struct Negated<'p, 'k> {
    problem: &'p Problem<'k>,
    floor: f64,
    margin: f64,
}

impl CostFunction for Negated<'_, '_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, free: &Vec<f64>) -> Result<f64, argmin::core::Error> {
        let mut theta = Vec::with_capacity(free.len() + 1);
        theta.push(0.0);
        theta.extend_from_slice(free);
        Ok(match self.problem.evaluate(&lengths_of(&theta), self.margin) {
            Some(e) if score(&e, self.floor).is_finite() => -score(&e, self.floor),
            _ => 1e6,
        })
    }
}

fn run_restart(problem: &Problem, cfg: &SearchConfig, index: usize) -> Outcome {
    let n = problem.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut evaluations = 0usize;
    let mut eval = |theta: &[f64]| {
        evaluations += 1;
        problem.evaluate(&lengths_of(theta), cfg.margin_floor)
    };

    let mut sigma = cfg.jitter;
    let mut start = None;
    for attempt in 1..=1000 {
        let mut theta = vec![0.0; n];
        for t in theta.iter_mut().skip(1) {
            let z: f64 = StandardNormal.sample(&mut rng);
            *t = sigma * z;
        }
        if let Some(e) = eval(&theta) {
            start = Some((theta, e));
            break;
        }
        if attempt % 50 == 0 {
            sigma *= 0.5;
        }
    }
    let (mut theta, mut current) = start.unwrap_or_else(|| {
        let theta = vec![0.0; n];
        let e = problem.evaluate(&lengths_of(&theta), cfg.margin_floor).expect("equilateral metric is valid");
        (theta, e)
    });

    let floor = cfg.penalty_floor;
    let initial_objective = current.raw;
    let mut best_theta = theta.clone();
    let mut best = current.clone();
    let mut best_score = score(&current, floor);
    let mut last_improvement = 0;
    let mut recent: VecDeque<u64> = VecDeque::new();
    let mut checkpoints = Vec::new();
    let mut iterations = 0;
    let mut oscillating = false;

    while iterations < cfg.max_iters && current.raw.is_finite() {
        let it = iterations;
        iterations += 1;
        let w = cfg.penalty_weight(it);
        let mut grad: Vec<f64> = current.grad_raw.iter().zip(&current.grad_penalty).map(|(r, p)| r - w * p).collect();
        grad[0] = 0.0;
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            break;
        }
        let mut step = cfg.initial_step / (1.0 + it as f64 / cfg.step_decay).sqrt();
        let mut accepted = None;
        for _ in 0..20 {
            let candidate: Vec<f64> = theta.iter().zip(&grad).map(|(t, g)| t + step * g / norm).collect();
            if let Some(e) = eval(&candidate) {
                accepted = Some((candidate, e));
                break;
            }
            step *= 0.5;
        }
        let Some((next, e)) = accepted else { break };
        theta = next;
        current = e;

        let s = score(&current, floor);
        if s > best_score {
            best_score = s;
            best = current.clone();
            best_theta = theta.clone();
            last_improvement = it;
        }
        recent.push_back(signature(&current));
        if recent.len() > 40 {
            recent.pop_front();
        }
        if iterations % 100 == 0 {
            checkpoints.push(best.raw);
        }
        if it - last_improvement >= cfg.stall_iters {
            let mut distinct: Vec<u64> = recent.iter().copied().collect();
            distinct.sort_unstable();
            distinct.dedup();
            oscillating = distinct.len() > 1;
            break;
        }
    }

    let remaining = cfg.max_iters - iterations;
    let simplex_fallback = oscillating && remaining > 0 && n > 1;
    if simplex_fallback {
        let cost = Negated { problem, floor, margin: cfg.margin_floor };
        let free: Vec<f64> = best_theta[1..].to_vec();
        let mut simplex = vec![free.clone()];
        for i in 0..free.len() {
            let mut v = free.clone();
            v[i] += 0.05;
            simplex.push(v);
        }
        let solver = NelderMead::new(simplex).with_sd_tolerance(1e-13).expect("valid tolerance");
        if let Ok(res) = Executor::new(cost, solver).configure(|s| s.max_iters(remaining as u64)).run() {
            let state = res.state();
            evaluations += state.get_func_counts().values().sum::<u64>() as usize;
            if let Some(p) = state.get_best_param() {
                let mut candidate = vec![0.0];
                candidate.extend_from_slice(p);
                if let Some(e) = problem.evaluate(&lengths_of(&candidate), cfg.margin_floor) {
                    if score(&e, floor) > best_score {
                        best_score = score(&e, floor);
                        best = e;
                        best_theta = candidate;
                    }
                }
            }
            iterations += state.get_iter() as usize;
        }
    }

    Outcome {
        trace: RestartTrace {
            index,
            initial_objective,
            best_objective: best.raw,
            best_score,
            min_margin: best.min_margin,
            iterations,
            evaluations,
            simplex_fallback,
            checkpoints,
        },
        theta: best_theta,
        score: best_score,
    }
}

fn histogram(values: impl Iterator<Item = f64>, tol: f64) -> Vec<HistogramBin> {
    let edges = [f64::NEG_INFINITY, -1.0, -0.1, -1e-2, -1e-3, -tol, f64::INFINITY];
    let mut bins: Vec<HistogramBin> =
        edges.windows(2).map(|w| HistogramBin { lower: w[0], upper: w[1], count: 0 }).collect();
    for v in values {
        let i = bins.iter().position(|b| v < b.upper).unwrap_or(bins.len() - 1);
        bins[i].count += 1;
    }
    bins
}

/// Searches for a metric maximizing the girth of the mode's target graph(s).
///
/// Deterministic for a fixed configuration. `feasible` is set only when the
/// best objective is at least `-tol` and the 256-bit recheck agrees.
pub fn search_metric(k: &Complex, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    if k.triangles().is_empty() {
        return Err(SearchError::NoTriangles);
    }
    cfg.validate()?;
    let problem = Problem::new(k, cfg.mode);
    let outcomes: Vec<Outcome> = (0..cfg.restarts).into_par_iter().map(|i| run_restart(&problem, cfg, i)).collect();
    let mut winner = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.score > outcomes[winner].score {
            winner = i;
        }
    }
    let best_metric = PeMetric::new(k, lengths_of(&outcomes[winner].theta))?;
    let best_objective = objective(k, &best_metric, cfg.mode)?;
    let active_circuit = problem
        .evaluate(best_metric.lengths(), cfg.margin_floor)
        .and_then(|e| e.active)
        .map(|(target, edges)| {
            let cycle = problem.circuit_labels(target, &edges);
            ActiveCircuit {
                vertex: problem.target_vertex(target).map(str::to_string),
                cycle,
                length: best_objective + std::f64::consts::TAU,
            }
        });
    let certificate = verify_certificate(k, &best_metric, cfg.mode, cfg.tol)?;
    let feasible = best_objective >= -cfg.tol && certificate.verdict.passes;
    let best_lengths = (0..k.edges().len())
        .map(|e| {
            let [a, b] = k.edge_names(e);
            (a.to_string(), b.to_string(), best_metric.length(e))
        })
        .collect();
    Ok(SearchResult {
        mode: cfg.mode,
        best_metric,
        best_lengths,
        best_objective,
        feasible,
        status: if feasible { "feasible" } else { "no metric found" },
        best_restart: winner,
        active_circuit,
        certificate,
        histogram: histogram(outcomes.iter().map(|o| o.trace.best_objective), cfg.tol),
        restarts: outcomes.into_iter().map(|o| o.trace).collect(),
    })
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "best objective (girth - 2pi): {:.12}", self.best_objective)?;
        writeln!(f, "best restart: {} of {}", self.best_restart, self.restarts.len())?;
        if let Some(c) = &self.active_circuit {
            let at = c.vertex.as_ref().map(|v| format!(" in the link of {v}")).unwrap_or_default();
            writeln!(f, "active circuit{at}: {} (length {:.12})", c.cycle.join(" "), c.length)?;
        }
        let cert = &self.certificate.verdict;
        writeln!(
            f,
            "{}-bit recheck: {} (slack {})",
            self.certificate.precision_bits,
            if cert.passes { "pass" } else { "fail" },
            cert.slack.map_or("vacuous".to_string(), |s| format!("{s:.12}"))
        )?;
        writeln!(f, "per-restart best objective histogram:")?;
        for b in &self.histogram {
            writeln!(f, "  [{:>9}, {:>9}) {}", fmt_edge(b.lower), fmt_edge(b.upper), b.count)?;
        }
        Ok(())
    }
}

fn fmt_edge(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "+inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}
