//! Cross-module invariants checked against independent oracles.

use ndarray::Array2;
use proptest::prelude::*;
use qwmst_core::baselines::{
    ant_colony_mdc, exact_dcmst, greedy_mdc, kruskal, kruskal_mdc, prim, prim_mdc, AcoParams,
};
use qwmst_core::evolution::{transition_probabilities, trotter_deviation};
use qwmst_core::graph::{
    enumerate_spanning_trees, parse_graph, random_complete_graph, random_distinct_complete_graph,
    write_graph, PruferCode, WeightedGraph,
};
use qwmst_core::hamiltonian::build_hamiltonian;
use qwmst_core::solver::{quantum_kruskal, quantum_kruskal_mdc};

/// exp(-i H tau) by scaling and squaring of a truncated Taylor series,
/// returned as |U|². Independent of the eigensolver.
fn taylor_probabilities(h: &Array2<f64>, tau: f64) -> Array2<f64> {
    let n = h.nrows();
    let norm = h.iter().map(|x| x.abs()).fold(0.0, f64::max) * n as f64 * tau;
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let t = tau / 2f64.powi(squarings);
    // A = -i H t as (re, im) = (0, -H t).
    let a_im = h * (-t);
    let mut re = Array2::<f64>::eye(n);
    let mut im = Array2::<f64>::zeros((n, n));
    let (mut term_re, mut term_im) = (re.clone(), im.clone());
    for k in 1..30 {
        // term <- term * A / k, with A purely imaginary.
        let next_re = -term_im.dot(&a_im) / k as f64;
        let next_im = term_re.dot(&a_im) / k as f64;
        term_re = next_re;
        term_im = next_im;
        re += &term_re;
        im += &term_im;
    }
    for _ in 0..squarings {
        let r = re.dot(&re) - im.dot(&im);
        let i = re.dot(&im) + im.dot(&re);
        re = r;
        im = i;
    }
    &re * &re + &im * &im
}

fn brute_force_optimum(graph: &WeightedGraph, delta: usize) -> f64 {
    enumerate_spanning_trees(graph)
        .unwrap()
        .filter(|(_, t)| t.max_degree() <= delta)
        .map(|(_, t)| t.total_weight())
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn spectral_propagator_matches_taylor_oracle() {
    for seed in 0..20u64 {
        let v = 2 + (seed as usize % 12);
        let g = random_complete_graph(v, 1, 20, seed).unwrap();
        let h = build_hamiltonian(&g).unwrap();
        for tau in [0.01, 0.1, 0.7, 2.5] {
            let p = transition_probabilities(&h, tau).unwrap();
            let oracle = taylor_probabilities(h.matrix(), tau);
            let diff = p
                .matrix()
                .iter()
                .zip(oracle.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "seed {seed} tau {tau}: {diff}");
        }
    }
}

#[test]
fn two_vertex_closed_form() {
    // P(1|0) = sin²(tau / w) for a single edge of weight w.
    for w in [1.0, 2.0, 7.5] {
        let g = WeightedGraph::new(2, [(0, 1, w)]).unwrap();
        let h = build_hamiltonian(&g).unwrap();
        for tau in [0.0, 0.1, 1.0, 3.0] {
            let p = transition_probabilities(&h, tau).unwrap();
            let expected = (tau / w).sin().powi(2);
            assert!((p.get(1, 0) - expected).abs() < 1e-14);
        }
    }
}

#[test]
fn prufer_bijection_small_sizes() {
    for n in 3..=5usize {
        let g = random_complete_graph(n, 1, 9, n as u64).unwrap();
        let trees: Vec<_> = enumerate_spanning_trees(&g).unwrap().collect();
        assert_eq!(trees.len(), n.pow(n as u32 - 2));
        let mut seen = std::collections::HashSet::new();
        for (id, tree) in &trees {
            assert!(seen.insert(tree.sorted_edges()));
            let code = PruferCode::encode(n, tree.edges()).unwrap();
            assert_eq!(code.index(), *id);
            let mut decoded = code.decode();
            decoded.sort();
            assert_eq!(decoded, tree.sorted_edges());
        }
    }
}

#[test]
fn quantum_kruskal_matches_enumerated_optimum() {
    for seed in 0..40u64 {
        let v = 3 + (seed as usize % 5);
        let g = random_complete_graph(v, 1, 20, seed).unwrap();
        let qk = quantum_kruskal(&g, 0.1).unwrap();
        assert_eq!(qk.tree.total_weight(), brute_force_optimum(&g, v - 1));
    }
}

#[test]
fn exact_is_a_lower_bound_for_every_heuristic() {
    for seed in 0..25u64 {
        let v = 5 + (seed as usize % 4);
        let g = random_complete_graph(v, 1, 20, seed).unwrap();
        for delta in 2..v {
            let best = exact_dcmst(&g, delta).unwrap().total_weight();
            assert_eq!(best, brute_force_optimum(&g, delta));
            let params = AcoParams {
                iterations: 20,
                ..AcoParams::for_graph(&g)
            };
            for w in [
                quantum_kruskal_mdc(&g, 0.1, delta).unwrap().tree.total_weight(),
                kruskal_mdc(&g, delta).unwrap().total_weight(),
                prim_mdc(&g, delta).unwrap().total_weight(),
                greedy_mdc(&g, delta).unwrap().total_weight(),
                ant_colony_mdc(&g, delta, &params, seed).unwrap().total_weight(),
            ] {
                assert!(w >= best);
            }
        }
        let mst = kruskal(&g).unwrap().total_weight();
        assert_eq!(exact_dcmst(&g, v - 1).unwrap().total_weight(), mst);
        assert_eq!(prim(&g).unwrap().total_weight(), mst);
    }
}

#[test]
fn trotter_commuting_case_is_exact() {
    let g = WeightedGraph::new(
        4,
        (0..4).flat_map(|u| ((u + 1)..4).map(move |v| (u, v, 3.0))),
    )
    .unwrap();
    let h = build_hamiltonian(&g).unwrap();
    for tau in [0.1, 1.0, 5.0] {
        assert!(trotter_deviation(&h, tau, 1).unwrap() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kruskal_mdc_matches_quantum_on_distinct_weights(seed in any::<u64>(), v in 4usize..13, delta_off in 0usize..10) {
        let (g, _) = random_distinct_complete_graph(v, 1000, 9999, seed).unwrap();
        let delta = 2 + delta_off % (v - 2);
        let q = quantum_kruskal_mdc(&g, 0.01, delta).unwrap();
        let k = kruskal_mdc(&g, delta).unwrap();
        prop_assert_eq!(q.tree.sorted_edges(), k.sorted_edges());
    }

    #[test]
    fn probability_matrix_is_doubly_stochastic(seed in any::<u64>(), v in 2usize..24, tau in 0.0f64..5.0) {
        let g = random_complete_graph(v, 1, 50, seed).unwrap();
        let p = transition_probabilities(&build_hamiltonian(&g).unwrap(), tau).unwrap();
        prop_assert!(p.row_sum_error() <= 1e-10);
        prop_assert!(p.symmetry_error() <= 1e-12);
    }

    #[test]
    fn degree_cap_always_holds(seed in any::<u64>(), v in 3usize..30, delta_off in 0usize..30) {
        let g = random_complete_graph(v, 1, 20, seed).unwrap();
        let delta = 2 + delta_off % (v - 1).max(1);
        let r = quantum_kruskal_mdc(&g, 0.1, delta).unwrap();
        prop_assert!(r.tree.max_degree() <= delta);
        prop_assert_eq!(r.tree.edges().len(), v - 1);
    }

    #[test]
    fn graph_text_round_trip(seed in any::<u64>(), v in 2usize..15) {
        let g = random_complete_graph(v, 1, 100_000, seed).unwrap();
        let text = write_graph(&g, &["x".to_string()]);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn scaling_weights_scales_time(seed in any::<u64>(), v in 3usize..10, c in 0.5f64..4.0) {
        // H(c·w) = H(w)/c, so probabilities at c·tau on the scaled graph match.
        let g = random_complete_graph(v, 1, 20, seed).unwrap();
        let scaled = g.scaled(c).unwrap();
        let p = transition_probabilities(&build_hamiltonian(&g).unwrap(), 0.3).unwrap();
        let q = transition_probabilities(&build_hamiltonian(&scaled).unwrap(), 0.3 * c).unwrap();
        let diff = p.matrix().iter().zip(q.matrix().iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-10);
    }
}
