use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use qwmst_core::baselines::BaselineLabel;
use qwmst_core::entropy::{entropy_scatter, EntropyBasis};
use qwmst_core::evolution::transition_probabilities;
use qwmst_core::experiments::{
    failure_rate_sweep, mdc_benchmark, run_tau_max, run_tau_sweep, trotter_experiment, write_csv,
    write_csv_file, Execution, SweepConfig, TauGrid,
};
use qwmst_core::graph::{random_complete_graph, read_graph, write_graph_file, WeightedGraph};
use qwmst_core::hamiltonian::build_hamiltonian;
use qwmst_core::solver::{quantum_kruskal, quantum_kruskal_mdc, AlgorithmLabel, TauPolicy};
use serde::Serialize;

use crate::args::{
    BaselineArgs, EntropyArgs, GenArgs, OutputArgs, SolveArgs, SolveMdcArgs, SweepArgs,
    SweepCommand, TauArgs,
};
use crate::output::{emit, join_edges, ResultsDocument};

/// Parses "7", "2..7" (inclusive) or "4,8,16".
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().with_context(|| format!("bad range '{text}'"))?;
        let hi: usize = hi.trim().parse().with_context(|| format!("bad range '{text}'"))?;
        if lo > hi {
            bail!(qwmst_core::Error::InvalidArgument(format!("empty range '{text}'")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .with_context(|| format!("bad integer '{x}' in '{text}'"))
        })
        .collect()
}

fn tau_policy(args: &TauArgs) -> TauPolicy {
    if args.tau_heuristic {
        TauPolicy::heuristic(args.safety)
    } else {
        TauPolicy::fixed(args.tau.unwrap_or(qwmst_core::solver::DEFAULT_TAU))
    }
}

fn load(path: &Path) -> Result<WeightedGraph> {
    read_graph(path).with_context(|| format!("reading graph {}", path.display()))
}

pub fn gen(args: GenArgs) -> Result<()> {
    let graph = random_complete_graph(args.v, args.wmin, args.wmax, args.seed)?;
    let comments = vec![format!(
        "complete graph v={} weights=[{}, {}] seed={} rng=splitmix64",
        args.v, args.wmin, args.wmax, args.seed
    )];
    write_graph_file(&graph, &comments, &args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "{} vertices, {} edges -> {}",
        graph.vertex_count(),
        graph.edge_count(),
        args.out.display()
    );
    Ok(())
}

fn dump(graph: &WeightedGraph, tau: f64, output: &OutputArgs) -> Result<()> {
    if output.dump_h.is_none() && output.dump_p.is_none() {
        return Ok(());
    }
    let h = build_hamiltonian(graph)?;
    if let Some(path) = &output.dump_h {
        std::fs::write(path, h.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &output.dump_p {
        let p = transition_probabilities(&h, tau)?;
        std::fs::write(path, p.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn solve(args: SolveArgs) -> Result<()> {
    let graph = load(&args.input)?;
    let tau = tau_policy(&args.tau).resolve(graph.vertex_count())?;
    let result = quantum_kruskal(&graph, tau)?;
    dump(&graph, tau, &args.output)?;
    let doc = ResultsDocument::new(
        &graph,
        &result.tree,
        result.algorithm.to_string(),
        None,
        Some(tau),
        None,
        result.elapsed.as_secs_f64() * 1e3,
    );
    emit(&doc, args.output.format)
}

pub fn solve_mdc(args: SolveMdcArgs) -> Result<()> {
    let graph = load(&args.input)?;
    let tau = tau_policy(&args.tau).resolve(graph.vertex_count())?;
    let result = quantum_kruskal_mdc(&graph, tau, args.delta)?;
    dump(&graph, tau, &args.output)?;
    let doc = ResultsDocument::new(
        &graph,
        &result.tree,
        result.algorithm.to_string(),
        Some(args.delta),
        Some(tau),
        None,
        result.elapsed.as_secs_f64() * 1e3,
    );
    emit(&doc, args.output.format)
}

pub fn baseline(args: BaselineArgs) -> Result<()> {
    let label: BaselineLabel = args.algo.parse()?;
    let graph = load(&args.input)?;
    let start = Instant::now();
    let tree = label.run(&graph, args.delta, args.seed)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let doc = ResultsDocument::new(
        &graph,
        &tree,
        label.to_string(),
        args.delta.filter(|_| label.is_constrained()),
        None,
        (label == BaselineLabel::AntColonyMdc).then_some(args.seed),
        elapsed_ms,
    );
    emit(&doc, args.format)
}

#[derive(Serialize)]
struct EntropyRow {
    tree_id: u64,
    edges: String,
    total_weight: f64,
    entropy_bits: f64,
    feasible: bool,
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn entropy(args: EntropyArgs) -> Result<()> {
    let basis: EntropyBasis = args.basis.parse()?;
    let graph = load(&args.input)?;
    let records = entropy_scatter(&graph, args.tau, args.delta, basis)?;
    let rows: Vec<EntropyRow> = records
        .iter()
        .map(|r| EntropyRow {
            tree_id: r.tree_id,
            edges: join_edges(&r.edges),
            total_weight: r.total_weight,
            entropy_bits: r.entropy_bits,
            feasible: r.feasible,
        })
        .collect();
    write_csv(sink(args.out.as_deref())?, &[], &rows)?;
    eprintln!("{} trees, tau = {}, basis = {basis}", rows.len(), args.tau);
    Ok(())
}

fn sweep_config(args: &SweepArgs, default_algos: &[AlgorithmLabel]) -> Result<SweepConfig> {
    let algorithms = match &args.algos {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<AlgorithmLabel>())
            .collect::<qwmst_core::Result<Vec<_>>>()?,
        None => default_algos.to_vec(),
    };
    let config = SweepConfig {
        v_range: parse_list(&args.v)?,
        tau_grid: TauGrid::new(args.tau_start, args.tau_stop, args.tau_step)?,
        delta_range: parse_list(&args.deltas)?,
        instances: args.instances,
        base_seed: args.seed,
        weight_range: (args.wmin, args.wmax),
        algorithms,
        tau_policy: tau_policy(&args.tau),
    };
    config.validate()?;
    Ok(config)
}

fn execution(args: &SweepArgs) -> Execution {
    Execution {
        threads: args.threads,
        journal: args.journal.clone(),
    }
}

fn write_table<R: Serialize>(path: Option<&Path>, metadata: &[String], rows: &[R]) -> Result<()> {
    match path {
        Some(p) => write_csv_file(p, metadata, rows)
            .with_context(|| format!("writing {}", p.display()))?,
        None => write_csv(std::io::stdout().lock(), metadata, rows)?,
    }
    Ok(())
}

const EXACT_NOTE: &str =
    "exact optimum by Pruefer enumeration for V <= 9, branch-and-bound for V <= 20";

pub fn sweep(command: SweepCommand) -> Result<()> {
    let qk = [AlgorithmLabel::QuantumKruskal];
    match command {
        SweepCommand::Tau(args) => {
            let config = sweep_config(&args, &qk)?;
            let records = run_tau_sweep(&config, &execution(&args))?;
            write_table(args.out.as_deref(), &config.metadata("tau_sweep", &[]), &records)?;
            eprintln!("{} records", records.len());
        }
        SweepCommand::TauMax(args) => {
            let config = sweep_config(&args, &qk)?;
            let records = run_tau_max(&config, &execution(&args))?;
            write_table(args.out.as_deref(), &config.metadata("tau_max", &[]), &records)?;
            eprintln!("{} records", records.len());
        }
        SweepCommand::MdcBench(args) => {
            let mut defaults = vec![AlgorithmLabel::QuantumKruskalMdc];
            defaults.extend(
                [
                    BaselineLabel::KruskalMdc,
                    BaselineLabel::PrimMdc,
                    BaselineLabel::GreedyMdc,
                    BaselineLabel::AntColonyMdc,
                    BaselineLabel::ExactDcmst,
                ]
                .map(AlgorithmLabel::Baseline),
            );
            let config = sweep_config(&args, &defaults)?;
            let records = mdc_benchmark(&config, &execution(&args))?;
            let meta = config.metadata("mdc_benchmark", &[EXACT_NOTE]);
            write_table(args.out.as_deref(), &meta, &records)?;
            eprintln!("{} records", records.len());
        }
        SweepCommand::FailureRate { sweep, records } => {
            let config = sweep_config(&sweep, &[AlgorithmLabel::QuantumKruskalMdc])?;
            let report = failure_rate_sweep(&config, &execution(&sweep))?;
            let meta = config.metadata("failure_rate", &[EXACT_NOTE]);
            write_table(sweep.out.as_deref(), &meta, &report.summary)?;
            if let Some(path) = records {
                write_table(Some(&path), &meta, &report.records)?;
            }
            eprintln!("{} rows from {} records", report.summary.len(), report.records.len());
        }
        SweepCommand::Trotter {
            sweep,
            input,
            steps,
        } => {
            let config = sweep_config(&sweep, &qk)?;
            let graph = match &input {
                Some(path) => load(path)?,
                None => config.graph(config.v_range[0], 0)?,
            };
            let steps = parse_list(&steps)?;
            if steps.contains(&0) {
                bail!(qwmst_core::Error::InvalidArgument("steps must be positive".into()));
            }
            let rows = trotter_experiment(&graph, &config.tau_grid, &steps)?;
            let mut meta = config.metadata("trotter", &[]);
            meta.push(format!("graph_fingerprint: {}", graph.fingerprint()));
            write_table(sweep.out.as_deref(), &meta, &rows)?;
            eprintln!("{} rows", rows.len());
        }
    }
    Ok(())
}
