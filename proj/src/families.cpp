#include "affrig/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "affrig/errors.hpp"

namespace affrig::families {

Hypergraph six_vertex_hypergraph() { return Hypergraph(6, {{0, 1, 5}, {1, 2, 4}, {4, 5}, {3, 4}}); }

Graph six_vertex_graph() { return Graph(6, {{0, 1}, {0, 5}, {1, 2}, {1, 5}, {2, 4}, {3, 4}, {4, 5}}); }

Hypergraph pentagon_hypergraph() {
  std::vector<Hyperedge> hs;
  for (int i = 0; i < 5; ++i) hs.push_back({i, (i + 1) % 5, (i + 2) % 5});
  return Hypergraph(5, std::move(hs));
}

Eigen::MatrixXd regular_pentagon() {
  Eigen::MatrixXd p(5, 2);
  for (int i = 0; i < 5; ++i) {
    const double t = 2 * std::numbers::pi * i / 5;
    p(i, 0) = std::cos(t);
    p(i, 1) = std::sin(t);
  }
  return p;
}

Graph hex_torus(int m, int n) {
  if (m < 2 || n < 2) throw InvalidInput("hex torus needs m, n >= 2");
  // A(i,j) = 2(i n + j), B(i,j) = A(i,j) + 1.
  auto a = [&](int i, int j) { return 2 * (((i + m) % m) * n + (j + n) % n); };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      edges.emplace_back(a(i, j), a(i, j) + 1);
      edges.emplace_back(a(i, j), a(i - 1, j) + 1);
      edges.emplace_back(a(i, j), a(i, j - 1) + 1);
    }
  return Graph(2 * m * n, edges);
}

Graph star(int k) {
  if (k < 1) throw InvalidInput("star needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
  return Graph(k + 1, edges);
}

Graph wheel(int k) {
  if (k < 3) throw InvalidInput("wheel needs a rim of at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) {
    edges.emplace_back(0, i);
    edges.emplace_back(i, i % k + 1);
  }
  return Graph(k + 1, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph trilateration_graph(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < d + 1) throw InvalidInput("trilateration graph needs d >= 1 and n >= d+1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges = complete_graph(d + 1).edges();
  std::vector<Vertex> earlier;
  for (Vertex v = d + 1; v < n; ++v) {
    earlier.resize(v);
    for (Vertex u = 0; u < v; ++u) earlier[u] = u;
    std::shuffle(earlier.begin(), earlier.end(), rng);
    for (int k = 0; k <= d; ++k) edges.emplace_back(earlier[k], v);
  }
  return Graph(n, edges);
}

Hypergraph complete_hypergraph(int n, int k) {
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return truncate_hyperedges(Hypergraph(n, {all}), k);
}

Graph add_random_edges(const Graph& graph, int extra, std::uint64_t seed) {
  const int n = graph.vertex_count();
  std::vector<Edge> missing;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!graph.adjacent(i, j)) missing.emplace_back(i, j);
  std::mt19937_64 rng(seed);
  std::shuffle(missing.begin(), missing.end(), rng);
  std::vector<Edge> edges = graph.edges();
  for (int k = 0; k < extra && k < static_cast<int>(missing.size()); ++k) edges.push_back(missing[k]);
  return Graph(n, edges);
}

Eigen::MatrixXd random_points(int v, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd p(v, d);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = u(rng);
  return p;
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> random_integer_points(int v, int d, std::int64_t range,
                                                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> u(-range, range);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> p(v, d);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = u(rng);
  return p;
}

}  // namespace affrig::families
