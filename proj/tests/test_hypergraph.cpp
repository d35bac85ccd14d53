#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "affrig/errors.hpp"
#include "affrig/families.hpp"
#include "affrig/hypergraph.hpp"
#include "oracles.hpp"

using namespace affrig;

namespace {

std::set<Edge> edge_set(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("graph construction normalizes and validates") {
  const Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.degree(1) == 2);
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidInput);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidInput);
}

TEST_CASE("hypergraph normalization is logged") {
  NormalizationLog log;
  const Hypergraph h(4, {{2, 0, 2}, {0, 2}, {1, 3}}, &log);
  CHECK(log.repeated_members_removed == 1);
  CHECK(h.hyperedges()[0] == Hyperedge{0, 2});
  CHECK(h.hyperedge_count() == 3);
  const Hypergraph n = h.normalized(&log);
  CHECK(n.hyperedge_count() == 2);
  CHECK(log.duplicate_hyperedges_removed == 1);
  CHECK_THROWS_AS(Hypergraph(2, {{0, 2}}), InvalidInput);
}

TEST_CASE("body graph") {
  CHECK(edge_set(body_graph(families::six_vertex_hypergraph())) ==
        std::set<Edge>{{0, 1}, {0, 5}, {1, 5}, {1, 2}, {1, 4}, {2, 4}, {4, 5}, {3, 4}});
  CHECK(body_graph(Hypergraph(3, {{0, 1, 2}})) == Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(body_graph(Hypergraph(3, {{0}, {1}, {2}})).edge_count() == 0);
}

TEST_CASE("neighborhood hypergraph") {
  const Hypergraph n = neighborhood_hypergraph(families::six_vertex_graph());
  CHECK(n.hyperedges() ==
        std::vector<Hyperedge>{{0, 1, 5}, {0, 1, 2, 5}, {1, 2, 4}, {3, 4}, {2, 3, 4, 5}, {0, 1, 4, 5}});
  CHECK(neighborhood_hypergraph(Graph(2, {})).hyperedges() == std::vector<Hyperedge>{{0}, {1}});
  const Hypergraph t = neighborhood_hypergraph(families::complete_graph(3));
  CHECK(t.hyperedges() == std::vector<Hyperedge>(3, Hyperedge{0, 1, 2}));
}

TEST_CASE("squared graph") {
  CHECK(squared_graph(path(3)) == families::complete_graph(3));
  const Graph f2 = families::six_vertex_graph();
  CHECK(edge_set(squared_graph(f2)) == oracle::squared_edges(f2));
  CHECK(squared_graph(families::complete_graph(5)) == families::complete_graph(5));
}

TEST_CASE("truncation") {
  const Hypergraph four(4, {{0, 1, 2, 3}});
  CHECK(truncate_hyperedges(four, 4).hyperedges() == std::vector<Hyperedge>{{0, 1, 2, 3}});
  CHECK(truncate_hyperedges(Hypergraph(5, {{0, 1, 2, 3, 4}}), 4).hyperedge_count() == 5);
  const Hypergraph b2 = truncate_hyperedges(families::six_vertex_hypergraph(), 2);
  std::set<Edge> got;
  for (const auto& e : b2.hyperedges()) got.emplace(e[0], e[1]);
  CHECK(got == edge_set(body_graph(families::six_vertex_hypergraph())));
  CHECK(truncate_hyperedges(Hypergraph(3, {{0, 1}}), 3).hyperedge_count() == 0);
}

TEST_CASE("vertex connectivity examples") {
  CHECK(is_k_vertex_connected(families::hex_torus(4, 4), 3));
  CHECK_FALSE(is_k_vertex_connected(families::hex_torus(4, 4), 4));
  CHECK_FALSE(is_k_vertex_connected(path(5), 2));
  CHECK(is_k_vertex_connected(families::wheel(5), 3));
  CHECK(oracle::k_connected(families::wheel(5), 3));
  CHECK(is_k_vertex_connected(families::complete_graph(5), 4));
  CHECK_FALSE(is_k_vertex_connected(families::complete_graph(4), 4));
  CHECK_THROWS_AS(is_k_vertex_connected(Graph(1, {}), 0), InvalidInput);
}

TEST_CASE("vertex connectivity agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(2, 9);
  std::uniform_real_distribution<double> density(0.2, 0.9);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = oracle::random_graph(size(rng), density(rng), rng);
    const int kappa = oracle::vertex_connectivity(g);
    for (int k = 1; k <= 5; ++k) {
      INFO("trial " << trial << " k " << k);
      CHECK(is_k_vertex_connected(g, k) == (g.vertex_count() > k && kappa >= k));
    }
  }
}

TEST_CASE("local connectivity") {
  const Graph w = families::wheel(6);
  CHECK(local_vertex_connectivity(w, 1, 3, 10) == 3);
  CHECK(local_vertex_connectivity(w, 1, 3, 2) == 2);
  CHECK(local_vertex_connectivity(path(4), 0, 3, 10) == 1);
}

TEST_CASE("Zha-Zhang condition") {
  CHECK_FALSE(zha_zhang_condition(neighborhood_hypergraph(families::hex_torus(4, 4)), 2));
  CHECK(zha_zhang_condition(Hypergraph(3, {{0, 1}}), 5));
  CHECK(zha_zhang_condition(neighborhood_hypergraph(families::complete_graph(5)), 2));
  CHECK_FALSE(zha_zhang_condition(Hypergraph(3, {}), 1));
}

TEST_CASE("connected components") {
  CHECK(connected_components(Graph(4, {{0, 1}})) == 3);
  CHECK(connected_components(families::hex_torus(3, 3)) == 1);
}

TEST_CASE("families") {
  const Graph h = families::hex_torus(4, 4);
  CHECK(h.vertex_count() == 32);
  for (Vertex x = 0; x < 32; ++x) CHECK(h.degree(x) == 3);
  CHECK(families::star(5).edge_count() == 5);
  CHECK(families::wheel(5).edge_count() == 10);
  const Graph t = families::trilateration_graph(2, 10, 3);
  CHECK(t.edge_count() == 3 + 7 * 3);
  CHECK(is_k_vertex_connected(t, 3));
  CHECK(families::complete_hypergraph(6, 4).hyperedge_count() == 15);
}

// ---------------------------------------------------------------------------
// Properties over random instances

TEST_CASE("property: body of neighborhood is the square") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 14);
  std::uniform_real_distribution<double> density(0.0, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(size(rng), density(rng), rng);
    CHECK(body_graph(neighborhood_hypergraph(g)) == squared_graph(g));
    CHECK(edge_set(squared_graph(g)) == oracle::squared_edges(g));
  }
}

TEST_CASE("property: 2-truncation is the body graph") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Hypergraph h = oracle::random_hypergraph(10, 6, 1, 6, rng);
    std::set<Edge> got;
    const Hypergraph t = truncate_hyperedges(h, 2);
    for (const auto& e : t.hyperedges()) got.emplace(e[0], e[1]);
    CHECK(got == edge_set(body_graph(h)));
  }
}

TEST_CASE("property: connectivity is monotone in k") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(10, 0.5, rng);
    for (int k = 1; k <= 8; ++k)
      if (is_k_vertex_connected(g, k))
        for (int j = 1; j < k; ++j) CHECK(is_k_vertex_connected(g, j));
  }
}

TEST_CASE("property: Zha-Zhang condition is monotone in d") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Hypergraph h = oracle::random_hypergraph(9, 5, 2, 8, rng);
    for (int d = 1; d <= 6; ++d)
      if (zha_zhang_condition(h, d))
        for (int e = 1; e < d; ++e) CHECK(zha_zhang_condition(h, e));
  }
}

TEST_CASE("property: operations are pure") {
  std::mt19937_64 rng(9);
  const Graph g = oracle::random_graph(12, 0.3, rng);
  CHECK(squared_graph(g) == squared_graph(g));
  CHECK(neighborhood_hypergraph(g) == neighborhood_hypergraph(g));
  const Hypergraph h = oracle::random_hypergraph(9, 5, 2, 6, rng);
  CHECK(truncate_hyperedges(h, 3) == truncate_hyperedges(h, 3));
  CHECK(body_graph(h) == body_graph(h));
}
