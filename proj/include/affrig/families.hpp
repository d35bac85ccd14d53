#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "affrig/hypergraph.hpp"

namespace affrig::families {

/// Hyperedges {0,1,5}, {1,2,4}, {4,5}, {3,4} on six vertices.
Hypergraph six_vertex_hypergraph();
/// Six vertices, edges {0,1},{0,5},{1,2},{1,5},{2,4},{3,4},{4,5}.
Graph six_vertex_graph();
/// Five consecutive triples {i, i+1, i+2} of a 5-cycle.
Hypergraph pentagon_hypergraph();
/// Regular convex pentagon, 5 x 2.
Eigen::MatrixXd regular_pentagon();

/// Honeycomb lattice on an m x n torus: 2mn vertices, all of degree 3.
/// Requires m, n >= 2.
Graph hex_torus(int m, int n);
/// Hub 0 joined to leaves 1..k.
Graph star(int k);
/// Hub 0 joined to a k-cycle on 1..k (k >= 3).
Graph wheel(int k);
/// Complete graph on n vertices.
Graph complete_graph(int n);
/// K_{d+1}, then vertices d+1..n-1 each joined to d+1 random earlier vertices.
Graph trilateration_graph(int d, int n, std::uint64_t seed);
/// All k-subsets of {0..n-1}.
Hypergraph complete_hypergraph(int n, int k);
/// Adds `extra` random non-edges to a graph (connectivity can only grow).
Graph add_random_edges(const Graph& graph, int extra, std::uint64_t seed);

/// Points with i.i.d. uniform coordinates in [-1, 1], v x d.
Eigen::MatrixXd random_points(int v, int d, std::uint64_t seed);
/// Integer points uniform in [-range, range], v x d.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> random_integer_points(int v, int d, std::int64_t range,
                                                                                 std::uint64_t seed);

}  // namespace affrig::families
