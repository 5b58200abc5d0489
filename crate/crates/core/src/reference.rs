//! Small fixed instances used in documentation, tests and the CLI examples.

use crate::graph::WeightedGraph;

/// Four-vertex "hub" graph: vertex 3 reaches the others cheaply
/// (w03 = 1, w13 = 2, w23 = 3) while the outer triangle is heavy
/// (w01 = 10, w02 = 11, w12 = 12).
///
/// Its MST is the star at vertex 3 (weight 6). Under a maximum degree of 2
/// the optimum weight is 14, attained by {03, 13, 02} and {03, 23, 01}.
pub fn hub_graph() -> WeightedGraph {
    WeightedGraph::new(
        4,
        [
            (0, 3, 1.0),
            (1, 3, 2.0),
            (2, 3, 3.0),
            (0, 1, 10.0),
            (0, 2, 11.0),
            (1, 2, 12.0),
        ],
    )
    .expect("hub graph is valid")
}

/// Three-vertex triangle with w01 = 1, w02 = 2, w12 = 4.
pub fn triangle_graph() -> WeightedGraph {
    WeightedGraph::new(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 4.0)]).expect("triangle is valid")
}

/// Complete graph on `n` vertices with every weight equal to `w`.
pub fn uniform_complete_graph(n: usize, w: f64) -> WeightedGraph {
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v, w)));
    WeightedGraph::new(n, edges).expect("uniform complete graph is valid")
}
