//! Seeded, resumable sweeps that regenerate the validation experiments as
//! tabular records.
//!
//! Every sweep is split into independent tasks, one per `(v, instance)`
//! cell. Tasks run on a rayon pool and the merged records are sorted by
//! `(experiment, v, delta, tau, seed, algorithm)`, so serial and parallel
//! runs produce the same output.

mod io;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::{
    branch_and_bound_dcmst, exact_optima_by_delta, kruskal, BaselineLabel, BRANCH_AND_BOUND_CAP,
};
use crate::error::{Error, Result};
use crate::evolution::{trotter_deviation, QuantumWalk};
use crate::graph::{instance_seed, random_complete_graph, WeightedGraph, ENUMERATION_CAP};
use crate::hamiltonian::build_hamiltonian;
use crate::solver::{quantum_kruskal, quantum_kruskal_mdc, select_tree, AlgorithmLabel, TauPolicy};

pub use io::{read_csv, write_csv, write_csv_file, Journal};

/// Inclusive grid `start, start + step, …` up to `stop`. Points are computed
/// as `start + k * step` so that rounding does not accumulate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl TauGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let grid = Self { start, stop, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.start.is_finite() && self.stop.is_finite() && self.step.is_finite();
        if !finite || self.step <= 0.0 || self.start < 0.0 || self.stop < self.start {
            return Err(Error::InvalidArgument(format!(
                "invalid tau grid start={} stop={} step={}",
                self.start, self.stop, self.step
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub v_range: Vec<usize>,
    pub tau_grid: TauGrid,
    pub delta_range: Vec<usize>,
    pub instances: usize,
    pub base_seed: u64,
    pub weight_range: (u64, u64),
    pub algorithms: Vec<AlgorithmLabel>,
    /// Evolution time used by the quantum solver in benchmark sweeps.
    pub tau_policy: TauPolicy,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            v_range: vec![4],
            tau_grid: TauGrid {
                start: 0.01,
                stop: 3.0,
                step: 0.01,
            },
            delta_range: vec![2],
            instances: 1,
            base_seed: 0,
            weight_range: (1, 20),
            algorithms: vec![AlgorithmLabel::QuantumKruskalMdc],
            tau_policy: TauPolicy::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.tau_grid.validate()?;
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.to_string()));
        if self.instances == 0 {
            return bad("instances must be at least 1");
        }
        if self.v_range.is_empty() || self.delta_range.is_empty() || self.algorithms.is_empty() {
            return bad("vertex, degree and algorithm ranges must be non-empty");
        }
        if self.v_range.iter().any(|&v| v < 2) {
            return bad("every vertex count must be at least 2");
        }
        let (lo, hi) = self.weight_range;
        if lo < 1 || lo > hi {
            return bad("weight range must satisfy 1 <= w_min <= w_max");
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, as hex.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serialises");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn seed(&self, instance: usize) -> u64 {
        instance_seed(self.base_seed, instance as u64)
    }

    pub fn graph(&self, v: usize, instance: usize) -> Result<WeightedGraph> {
        random_complete_graph(v, self.weight_range.0, self.weight_range.1, self.seed(instance))
    }

    /// Metadata lines for CSV headers.
    pub fn metadata(&self, experiment: &str, notes: &[&str]) -> Vec<String> {
        let mut lines = vec![
            format!("experiment: {experiment}"),
            format!("tool_version: {}", env!("CARGO_PKG_VERSION")),
            format!("config_hash: {}", self.hash()),
            format!(
                "config: {}",
                serde_json::to_string(self).expect("config serialises")
            ),
        ];
        lines.extend(notes.iter().map(|n| format!("note: {n}")));
        lines
    }
}

/// One algorithm run (or one selection at one τ) on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub seed: u64,
    pub v: usize,
    pub delta: Option<usize>,
    pub tau: Option<f64>,
    pub algorithm: AlgorithmLabel,
    pub total_weight: f64,
    pub optimal_weight: Option<f64>,
    pub matched_optimum: Option<bool>,
    pub elapsed_ms: f64,
}

impl ExperimentRecord {
    fn sort_key(&self) -> (&str, usize, Option<usize>, f64, u64, AlgorithmLabel) {
        (
            &self.experiment,
            self.v,
            self.delta,
            self.tau.unwrap_or(f64::NEG_INFINITY),
            self.seed,
            self.algorithm,
        )
    }

    /// Copy with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }
}

pub fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(|a, b| {
        let (ka, kb) = (a.sort_key(), b.sort_key());
        ka.0.cmp(kb.0)
            .then(ka.1.cmp(&kb.1))
            .then(ka.2.cmp(&kb.2))
            .then(ka.3.total_cmp(&kb.3))
            .then(ka.4.cmp(&kb.4))
            .then(ka.5.cmp(&kb.5))
    });
}

/// Thread count and optional resume journal for a sweep.
#[derive(Debug, Clone, Default)]
pub struct Execution {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    pub journal: Option<PathBuf>,
}

impl Execution {
    pub fn serial() -> Self {
        Self {
            threads: Some(1),
            journal: None,
        }
    }

    /// Runs `work` for every task key, skipping keys already journaled.
    fn run<K, R, F>(&self, config_hash: &str, tasks: &[K], work: F) -> Result<Vec<R>>
    where
        K: Sync + std::fmt::Display,
        R: Send + Sync + Serialize + DeserializeOwned + Clone,
        F: Fn(&K) -> Result<Vec<R>> + Sync,
    {
        let journal = match &self.journal {
            Some(path) => Some(Journal::<R>::open(path, config_hash)?),
            None => None,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?;
        let chunks: Vec<Vec<R>> = pool.install(|| {
            tasks
                .par_iter()
                .map(|task| {
                    let name = task.to_string();
                    if let Some(done) = journal.as_ref().and_then(|j| j.completed(&name)) {
                        return Ok(done.clone());
                    }
                    let records = work(task)?;
                    if let Some(j) = &journal {
                        j.append(&name, &records)?;
                    }
                    Ok(records)
                })
                .collect::<Result<_>>()
        })?;
        Ok(chunks.into_iter().flatten().collect())
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    v: usize,
    instance: usize,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v{}-i{}", self.v, self.instance)
    }
}

fn cells(config: &SweepConfig) -> Vec<Cell> {
    config
        .v_range
        .iter()
        .flat_map(|&v| (0..config.instances).map(move |instance| Cell { v, instance }))
        .collect()
}

fn weights_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Quantum Kruskal selection at every grid τ, against the true MST weight.
pub fn tau_sweep(graph: &WeightedGraph, grid: &TauGrid, seed: u64) -> Result<Vec<ExperimentRecord>> {
    grid.validate()?;
    let mst = kruskal(graph)?.total_weight();
    let walk = QuantumWalk::new(&build_hamiltonian(graph)?)?;
    grid.points()
        .into_iter()
        .map(|tau| {
            let start = Instant::now();
            let (tree, _) = select_tree(graph, &walk.probabilities(tau)?, None)?;
            Ok(ExperimentRecord {
                experiment: "tau_sweep".into(),
                seed,
                v: graph.vertex_count(),
                delta: None,
                tau: Some(tau),
                algorithm: AlgorithmLabel::QuantumKruskal,
                total_weight: tree.total_weight(),
                optimal_weight: Some(mst),
                matched_optimum: Some(weights_equal(tree.total_weight(), mst)),
                elapsed_ms: millis(start),
            })
        })
        .collect()
}

/// Largest grid τ such that selection matches the MST weight at every grid
/// point up to and including it.
pub fn tau_max(graph: &WeightedGraph, grid: &TauGrid) -> Result<f64> {
    grid.validate()?;
    let mst = kruskal(graph)?.total_weight();
    let walk = QuantumWalk::new(&build_hamiltonian(graph)?)?;
    let mut last = None;
    for tau in grid.points() {
        let (tree, _) = select_tree(graph, &walk.probabilities(tau)?, None)?;
        if !weights_equal(tree.total_weight(), mst) {
            break;
        }
        last = Some(tau);
    }
    last.ok_or(Error::NoValidWindow { tau: grid.start })
}

/// [`tau_sweep`] over every configured instance.
pub fn run_tau_sweep(config: &SweepConfig, exec: &Execution) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let mut records = exec.run(&config.hash(), &cells(config), |c| {
        tau_sweep(&config.graph(c.v, c.instance)?, &config.tau_grid, config.seed(c.instance))
    })?;
    sort_records(&mut records);
    Ok(records)
}

/// [`tau_max`] over every configured instance; `tau` holds τ_max.
pub fn run_tau_max(config: &SweepConfig, exec: &Execution) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let mut records = exec.run(&config.hash(), &cells(config), |c| {
        let graph = config.graph(c.v, c.instance)?;
        let start = Instant::now();
        let tau = tau_max(&graph, &config.tau_grid)?;
        let mst = kruskal(&graph)?.total_weight();
        Ok(vec![ExperimentRecord {
            experiment: "tau_max".into(),
            seed: config.seed(c.instance),
            v: c.v,
            delta: None,
            tau: Some(tau),
            algorithm: AlgorithmLabel::QuantumKruskal,
            total_weight: mst,
            optimal_weight: Some(mst),
            matched_optimum: Some(true),
            elapsed_ms: millis(start),
        }])
    })?;
    sort_records(&mut records);
    Ok(records)
}

/// Exact DCMST weight through the cheapest available oracle.
fn exact_weight(graph: &WeightedGraph, delta: usize) -> Result<f64> {
    let n = graph.vertex_count();
    if n <= ENUMERATION_CAP {
        let by_delta = exact_optima_by_delta(graph)?;
        Ok(by_delta[delta.min(n - 1)])
    } else if n <= BRANCH_AND_BOUND_CAP {
        Ok(branch_and_bound_dcmst(graph, delta)?.total_weight())
    } else {
        Err(Error::ResourceLimit(format!(
            "exact oracle is capped at {BRANCH_AND_BOUND_CAP} vertices, graph has {n}"
        )))
    }
}

/// Runs every configured algorithm at every Δ on every instance. When
/// `exact_dcmst` is among the algorithms its weight fills `optimal_weight`.
pub fn mdc_benchmark(config: &SweepConfig, exec: &Execution) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let with_exact = config
        .algorithms
        .contains(&AlgorithmLabel::Baseline(BaselineLabel::ExactDcmst));
    let mut records = exec.run(&config.hash(), &cells(config), |c| {
        let graph = config.graph(c.v, c.instance)?;
        let seed = config.seed(c.instance);
        let tau = config.tau_policy.resolve(c.v)?;
        let mut out = Vec::new();
        for &delta in &config.delta_range {
            let optimum = if with_exact {
                Some(exact_weight(&graph, delta)?)
            } else {
                None
            };
            for &algorithm in &config.algorithms {
                let start = Instant::now();
                let tree = match algorithm {
                    AlgorithmLabel::QuantumKruskal => quantum_kruskal(&graph, tau)?.tree,
                    AlgorithmLabel::QuantumKruskalMdc => {
                        quantum_kruskal_mdc(&graph, tau, delta)?.tree
                    }
                    AlgorithmLabel::Baseline(b) => b.run(&graph, Some(delta), seed)?,
                };
                let elapsed_ms = millis(start);
                let uses_tau = matches!(
                    algorithm,
                    AlgorithmLabel::QuantumKruskal | AlgorithmLabel::QuantumKruskalMdc
                );
                let weight = tree.total_weight();
                if let Some(opt) = optimum {
                    // The oracle is exact, so anything lighter is a defect.
                    assert!(
                        weight >= opt - 1e-9 * opt.abs().max(1.0),
                        "{algorithm} beat the exact optimum on seed {seed}"
                    );
                }
                out.push(ExperimentRecord {
                    experiment: "mdc_benchmark".into(),
                    seed,
                    v: c.v,
                    delta: Some(delta),
                    tau: uses_tau.then_some(tau),
                    algorithm,
                    total_weight: weight,
                    optimal_weight: optimum,
                    matched_optimum: optimum.map(|o| weights_equal(weight, o)),
                    elapsed_ms,
                });
            }
        }
        Ok(out)
    })?;
    sort_records(&mut records);
    Ok(records)
}

/// Per-Δ aggregate of a failure-rate sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRateRow {
    pub v: usize,
    pub delta: usize,
    pub instances: usize,
    pub failures: usize,
    pub failure_rate: f64,
    /// Mean of (quantum weight − optimum) over all instances.
    pub mean_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureRateReport {
    pub records: Vec<ExperimentRecord>,
    pub summary: Vec<FailureRateRow>,
}

/// Fraction of instances where Quantum Kruskal with MDC is heavier than the
/// exact optimum, per vertex count and Δ. τ comes from the config's policy.
pub fn failure_rate_sweep(config: &SweepConfig, exec: &Execution) -> Result<FailureRateReport> {
    config.validate()?;
    if let Some(&v) = config.v_range.iter().find(|&&v| v > BRANCH_AND_BOUND_CAP) {
        return Err(Error::ResourceLimit(format!(
            "exact oracle is capped at {BRANCH_AND_BOUND_CAP} vertices, sweep asks for {v}"
        )));
    }
    let mut records = exec.run(&config.hash(), &cells(config), |c| {
        let graph = config.graph(c.v, c.instance)?;
        let seed = config.seed(c.instance);
        let tau = config.tau_policy.resolve(c.v)?;
        let by_delta = if c.v <= ENUMERATION_CAP {
            Some(exact_optima_by_delta(&graph)?)
        } else {
            None
        };
        let mut out = Vec::with_capacity(config.delta_range.len());
        for &delta in &config.delta_range {
            let optimum = match &by_delta {
                Some(table) => table[delta.min(c.v - 1)],
                None => branch_and_bound_dcmst(&graph, delta)?.total_weight(),
            };
            let start = Instant::now();
            let weight = quantum_kruskal_mdc(&graph, tau, delta)?.tree.total_weight();
            out.push(ExperimentRecord {
                experiment: "failure_rate".into(),
                seed,
                v: c.v,
                delta: Some(delta),
                tau: Some(tau),
                algorithm: AlgorithmLabel::QuantumKruskalMdc,
                total_weight: weight,
                optimal_weight: Some(optimum),
                matched_optimum: Some(weights_equal(weight, optimum)),
                elapsed_ms: millis(start),
            });
        }
        Ok(out)
    })?;
    sort_records(&mut records);
    let mut summary = Vec::new();
    for &v in &config.v_range {
        for &delta in &config.delta_range {
            let rows: Vec<_> = records
                .iter()
                .filter(|r| r.v == v && r.delta == Some(delta))
                .collect();
            let failures = rows.iter().filter(|r| r.matched_optimum == Some(false)).count();
            let gap: f64 = rows
                .iter()
                .map(|r| r.total_weight - r.optimal_weight.unwrap_or(r.total_weight))
                .sum();
            summary.push(FailureRateRow {
                v,
                delta,
                instances: rows.len(),
                failures,
                failure_rate: failures as f64 / rows.len() as f64,
                mean_gap: gap / rows.len() as f64,
            });
        }
    }
    Ok(FailureRateReport { records, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterRecord {
    pub tau: f64,
    pub steps: usize,
    pub deviation: f64,
}

/// Maximum probability deviation of the split propagator, per (τ, steps).
pub fn trotter_experiment(
    graph: &WeightedGraph,
    grid: &TauGrid,
    steps_list: &[usize],
) -> Result<Vec<TrotterRecord>> {
    grid.validate()?;
    let h = build_hamiltonian(graph)?;
    let mut out = Vec::new();
    for tau in grid.points() {
        for &steps in steps_list {
            out.push(TrotterRecord {
                tau,
                steps,
                deviation: trotter_deviation(&h, tau, steps)?,
            });
        }
    }
    Ok(out)
}
