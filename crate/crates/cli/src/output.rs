use std::io::Write;

use anyhow::Result;
use qwmst_core::experiments::write_csv;
use qwmst_core::graph::{qubit_count, SpanningTree, WeightedGraph};
use serde::{Deserialize, Serialize};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// JSON document printed by the solve and baseline commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub schema_version: u32,
    pub algorithm: String,
    pub v: usize,
    pub delta: Option<usize>,
    pub tau: Option<f64>,
    pub seed: Option<u64>,
    pub tree: Vec<(usize, usize, f64)>,
    pub total_weight: f64,
    pub max_degree: usize,
    pub qubit_count: u32,
    pub elapsed_ms: f64,
}

impl ResultsDocument {
    pub fn new(
        graph: &WeightedGraph,
        tree: &SpanningTree,
        algorithm: String,
        delta: Option<usize>,
        tau: Option<f64>,
        seed: Option<u64>,
        elapsed_ms: f64,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            algorithm,
            v: graph.vertex_count(),
            delta,
            tau,
            seed,
            tree: tree
                .edges()
                .iter()
                .map(|&(u, v)| (u, v, graph.weight(u, v).expect("tree edge in graph")))
                .collect(),
            total_weight: tree.total_weight(),
            max_degree: tree.max_degree(),
            qubit_count: qubit_count(graph.vertex_count() as u64),
            elapsed_ms,
        }
    }
}

/// Single-row flattening of [`ResultsDocument`].
#[derive(Serialize)]
struct ResultsRow<'a> {
    algorithm: &'a str,
    v: usize,
    delta: Option<usize>,
    tau: Option<f64>,
    seed: Option<u64>,
    edges: String,
    total_weight: f64,
    max_degree: usize,
    qubit_count: u32,
    elapsed_ms: f64,
}

pub fn join_edges<'a>(edges: impl IntoIterator<Item = &'a (usize, usize)>) -> String {
    edges
        .into_iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn emit(doc: &ResultsDocument, format: Format) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let pairs: Vec<(usize, usize)> = doc.tree.iter().map(|&(u, v, _)| (u, v)).collect();
            let row = ResultsRow {
                algorithm: &doc.algorithm,
                v: doc.v,
                delta: doc.delta,
                tau: doc.tau,
                seed: doc.seed,
                edges: join_edges(&pairs),
                total_weight: doc.total_weight,
                max_degree: doc.max_degree,
                qubit_count: doc.qubit_count,
                elapsed_ms: doc.elapsed_ms,
            };
            write_csv(&mut out, &[], &[row])?;
        }
    }
    Ok(())
}
