#include "affrig/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "affrig/errors.hpp"

namespace affrig {

namespace {

void check_vertex(int vertex_count, Vertex v) {
  if (v < 0 || v >= vertex_count) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range [0, " +
                       std::to_string(vertex_count) + ")");
  }
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Graph::Graph(int vertex_count, const std::vector<Edge>& edges) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InvalidInput("negative vertex count");
  edges_.reserve(edges.size());
  for (auto [u, w] : edges) {
    check_vertex(vertex_count, u);
    check_vertex(vertex_count, w);
    if (u == w) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    edges_.emplace_back(std::min(u, w), std::max(u, w));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.assign(vertex_count, {});
  for (auto [u, w] : edges_) {
    adjacency_[u].push_back(w);
    adjacency_[w].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(Vertex u, Vertex w) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), w);
}

Hypergraph::Hypergraph(int vertex_count, std::vector<Hyperedge> hyperedges, NormalizationLog* log)
    : vertex_count_(vertex_count), hyperedges_(std::move(hyperedges)) {
  if (vertex_count < 0) throw InvalidInput("negative vertex count");
  for (auto& h : hyperedges_) {
    for (Vertex v : h) check_vertex(vertex_count, v);
    std::sort(h.begin(), h.end());
    auto last = std::unique(h.begin(), h.end());
    if (log) log->repeated_members_removed += static_cast<int>(h.end() - last);
    h.erase(last, h.end());
  }
}

Hypergraph Hypergraph::normalized(NormalizationLog* log) const {
  std::set<Hyperedge> seen;
  std::vector<Hyperedge> kept;
  for (const auto& h : hyperedges_) {
    if (seen.insert(h).second) {
      kept.push_back(h);
    } else if (log) {
      ++log->duplicate_hyperedges_removed;
    }
  }
  return Hypergraph(vertex_count_, std::move(kept));
}

Graph body_graph(const Hypergraph& hypergraph) {
  std::vector<Edge> edges;
  for (const auto& h : hypergraph.hyperedges()) {
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = a + 1; b < h.size(); ++b) edges.emplace_back(h[a], h[b]);
  }
  return Graph(hypergraph.vertex_count(), edges);
}

Hypergraph neighborhood_hypergraph(const Graph& graph) {
  std::vector<Hyperedge> hyperedges;
  hyperedges.reserve(graph.vertex_count());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    Hyperedge h = graph.neighbors(v);
    h.push_back(v);
    hyperedges.push_back(std::move(h));
  }
  return Hypergraph(graph.vertex_count(), std::move(hyperedges));
}

Graph squared_graph(const Graph& graph) {
  std::vector<Edge> edges = graph.edges();
  for (Vertex k = 0; k < graph.vertex_count(); ++k) {
    const auto& nbrs = graph.neighbors(k);
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) edges.emplace_back(nbrs[a], nbrs[b]);
  }
  return Graph(graph.vertex_count(), edges);
}

Hypergraph truncate_hyperedges(const Hypergraph& hypergraph, int k) {
  if (k < 1) throw InvalidInput("truncation size must be positive");
  std::set<Hyperedge> subsets;
  for (const auto& h : hypergraph.hyperedges()) {
    const int n = static_cast<int>(h.size());
    if (n < k) continue;
    // Walk the k-combinations of positions in lexicographic order.
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Hyperedge s(k);
      for (int i = 0; i < k; ++i) s[i] = h[idx[i]];
      subsets.insert(std::move(s));
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return Hypergraph(hypergraph.vertex_count(), {subsets.begin(), subsets.end()});
}

Hypergraph as_hypergraph(const Graph& graph) {
  std::vector<Hyperedge> hyperedges;
  hyperedges.reserve(graph.edge_count());
  for (auto [u, w] : graph.edges()) hyperedges.push_back({u, w});
  return Hypergraph(graph.vertex_count(), std::move(hyperedges));
}

int local_vertex_connectivity(const Graph& graph, Vertex s, Vertex t, int cap) {
  // Split network: vertex x becomes x_in = 2x, x_out = 2x+1 with a unit arc
  // in -> out; each undirected edge {x, y} gives arcs x_out -> y_in and
  // y_out -> x_in of unbounded capacity. Flow goes from s_out to t_in.
  const int n = graph.vertex_count();
  const int nodes = 2 * n;
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> net(nodes);
  auto add_arc = [&](int a, int b, int c) {
    net[a].push_back({b, c, static_cast<int>(net[b].size())});
    net[b].push_back({a, 0, static_cast<int>(net[a].size()) - 1});
  };
  constexpr int kInf = 1 << 29;
  for (Vertex x = 0; x < n; ++x) add_arc(2 * x, 2 * x + 1, 1);
  for (auto [x, y] : graph.edges()) {
    add_arc(2 * x + 1, 2 * y, kInf);
    add_arc(2 * y + 1, 2 * x, kInf);
  }
  const int source = 2 * s + 1;
  const int sink = 2 * t;

  int flow = 0;
  std::vector<std::pair<int, int>> pred(nodes);
  while (flow < cap) {
    std::fill(pred.begin(), pred.end(), std::pair{-1, -1});
    pred[source] = {source, -1};
    std::deque<int> queue{source};
    while (!queue.empty() && pred[sink].first < 0) {
      int a = queue.front();
      queue.pop_front();
      for (int i = 0; i < static_cast<int>(net[a].size()); ++i) {
        const Arc& arc = net[a][i];
        if (arc.cap > 0 && pred[arc.to].first < 0) {
          pred[arc.to] = {a, i};
          queue.push_back(arc.to);
        }
      }
    }
    if (pred[sink].first < 0) break;
    for (int b = sink; b != source;) {
      auto [a, i] = pred[b];
      Arc& arc = net[a][i];
      arc.cap -= 1;
      net[b][arc.rev].cap += 1;
      b = a;
    }
    ++flow;
  }
  return flow;
}

bool is_k_vertex_connected(const Graph& graph, int k) {
  if (k < 1) throw InvalidInput("connectivity order must be positive");
  const int n = graph.vertex_count();
  if (n <= k) return false;
  if (connected_components(graph) != 1) return false;
  for (Vertex s = 0; s < k; ++s) {
    for (Vertex t = 0; t < n; ++t) {
      if (t == s || graph.adjacent(s, t)) continue;
      if (local_vertex_connectivity(graph, s, t, k) < k) return false;
    }
  }
  return true;
}

int connected_components(const Graph& graph) {
  DisjointSets sets(graph.vertex_count());
  int components = graph.vertex_count();
  for (auto [u, w] : graph.edges())
    if (sets.unite(u, w)) --components;
  return components;
}

bool zha_zhang_condition(const Hypergraph& hypergraph, int d) {
  if (d < 1) throw InvalidInput("dimension must be positive");
  const auto& hs = hypergraph.hyperedges();
  if (hs.empty()) return false;
  DisjointSets sets(hs.size());
  std::size_t components = hs.size();
  Hyperedge shared;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      shared.clear();
      std::set_intersection(hs[i].begin(), hs[i].end(), hs[j].begin(), hs[j].end(),
                            std::back_inserter(shared));
      if (static_cast<int>(shared.size()) >= d + 1 && sets.unite(i, j)) --components;
    }
  }
  return components == 1;
}

}  // namespace affrig
