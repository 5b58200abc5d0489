//! Minimum spanning trees ranked by continuous-time quantum-walk transition
//! probabilities, with degree-constrained variants, classical baselines,
//! exact oracles and reproducible benchmark sweeps.

pub mod baselines;
pub mod entropy;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod graph;
pub mod hamiltonian;
pub mod linalg;
pub mod reference;
pub mod solver;

pub use baselines::{
    ant_colony_mdc, exact_dcmst, greedy_mdc, kruskal, kruskal_mdc, prim, prim_mdc, AcoParams,
    BaselineLabel,
};
pub use entropy::{
    entropy_scatter, merw_entropy_rate, normalize_transitions, tree_entropy, tree_entropy_raw,
    EntropyBasis, NormalizedTransitions, TreeEntropyRecord,
};
pub use error::{Error, Result};
pub use evolution::{
    eigendecompose, evolve, leading_order_probability, transition_probabilities,
    trotter_deviation, trotter_evolve, EvolutionOperator, ProbabilityMatrix, QuantumWalk,
    Spectrum,
};
pub use experiments::{
    ExperimentRecord, Execution, FailureRateReport, FailureRateRow, SweepConfig, TauGrid,
    TrotterRecord,
};
pub use graph::{
    enumerate_spanning_trees, is_spanning_tree, qubit_count, random_complete_graph, tree_weight,
    PruferCode, SpanningTree, UnionFind, WeightedGraph,
};
pub use hamiltonian::{
    build_hamiltonian, build_hamiltonian_with, commutator_diagnostic, Hamiltonian,
    HamiltonianOptions,
};
pub use solver::{
    quantum_kruskal, quantum_kruskal_mdc, rank_edges, tau_heuristic, AlgorithmLabel, RankedEdge,
    SolveResult, TauPolicy,
};
