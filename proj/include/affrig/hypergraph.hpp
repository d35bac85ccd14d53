#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace affrig {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Hyperedge = std::vector<Vertex>;

/// Simple undirected graph on vertices 0..v-1.
///
/// Edges are stored once, as (u, w) with u < w, sorted lexicographically.
/// Duplicate input edges collapse; self-loops and out-of-range endpoints throw
/// InvalidInput.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, const std::vector<Edge>& edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Sorted neighbor list of v.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(Vertex u, Vertex w) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Counts of what construction or normalization silently discarded.
struct NormalizationLog {
  int repeated_members_removed = 0;
  int duplicate_hyperedges_removed = 0;
  int duplicate_edges_removed = 0;
  bool empty() const {
    return repeated_members_removed == 0 && duplicate_hyperedges_removed == 0 &&
           duplicate_edges_removed == 0;
  }
};

/// Hypergraph on vertices 0..v-1. Each hyperedge is kept sorted and repeat-free;
/// duplicate hyperedges are allowed until normalized().
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int vertex_count, std::vector<Hyperedge> hyperedges,
             NormalizationLog* log = nullptr);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Hyperedge>& hyperedges() const { return hyperedges_; }
  std::size_t hyperedge_count() const { return hyperedges_.size(); }

  /// Copy with duplicate hyperedges removed (first occurrence kept).
  Hypergraph normalized(NormalizationLog* log = nullptr) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.hyperedges_ == b.hyperedges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Hyperedge> hyperedges_;
};

/// Graph with one edge per pair of distinct vertices sharing a hyperedge.
Graph body_graph(const Hypergraph& hypergraph);

/// One hyperedge per vertex: the vertex together with its neighbors.
Hypergraph neighborhood_hypergraph(const Graph& graph);

/// The graph plus an edge between any two vertices with a common neighbor.
Graph squared_graph(const Graph& graph);

/// All k-subsets contained in some hyperedge, deduplicated, in lexicographic order.
Hypergraph truncate_hyperedges(const Hypergraph& hypergraph, int k);

/// Each edge as a 2-element hyperedge.
Hypergraph as_hypergraph(const Graph& graph);

/// True iff the graph has more than k vertices and no vertex cut of size < k.
///
/// Local connectivities are computed by unit-capacity max-flow on the
/// vertex-split network. Any cut of size < k misses one of the first k
/// vertices, so only those are used as sources.
bool is_k_vertex_connected(const Graph& graph, int k);

/// Maximum number of internally vertex-disjoint s-t paths, stopping early at `cap`.
/// s and t must be distinct and non-adjacent.
int local_vertex_connectivity(const Graph& graph, Vertex s, Vertex t, int cap);

/// Connectivity of the hyperedge graph where two hyperedges are linked when
/// they share at least d+1 vertices. False for a hypergraph with no hyperedges.
bool zha_zhang_condition(const Hypergraph& hypergraph, int d);

/// Number of connected components (isolated vertices count).
int connected_components(const Graph& graph);

}  // namespace affrig
