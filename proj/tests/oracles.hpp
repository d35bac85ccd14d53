#pragma once

// Reference implementations used only to check the library. They follow the
// definitions literally and favour simplicity over speed.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "affrig/hypergraph.hpp"

namespace oracle {

using affrig::Edge;
using affrig::Graph;
using affrig::Hypergraph;
using affrig::Vertex;

inline bool connected_without(const Graph& g, const std::vector<bool>& removed) {
  const int n = g.vertex_count();
  int start = -1, alive = 0;
  for (int i = 0; i < n; ++i)
    if (!removed[i]) {
      ++alive;
      if (start < 0) start = i;
    }
  if (alive <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{start};
  seen[start] = true;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : g.neighbors(x))
      if (!removed[y] && !seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
  }
  return count == alive;
}

/// Vertex connectivity by enumerating every vertex subset, smallest first.
/// K_n has connectivity n-1.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.vertex_count();
  for (int s = 0; s <= n - 2; ++s) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + s, true);
    do {
      if (!connected_without(g, pick)) return s;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::max(n - 1, 0);
}

inline bool k_connected(const Graph& g, int k) { return g.vertex_count() > k && vertex_connectivity(g) >= k; }

/// Squared graph from the boolean adjacency matrix: A + A^2, off-diagonal.
inline std::set<Edge> squared_edges(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [u, w] : g.edges()) a(u, w) = a(w, u) = 1;
  const Eigen::MatrixXi s = a + a * a;
  std::set<Edge> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s(i, j) != 0) out.emplace(i, j);
  return out;
}

/// Strict interior of the convex hull of `pts` in the plane: every angular gap
/// between the directions from x to the points is below pi.
inline bool strictly_inside_2d(const Eigen::Vector2d& x, const std::vector<Eigen::Vector2d>& pts) {
  std::vector<double> angles;
  for (const auto& p : pts) {
    const Eigen::Vector2d e = p - x;
    if (e.norm() == 0) return false;
    angles.push_back(std::atan2(e.y(), e.x()));
  }
  if (angles.size() < 3) return false;
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap < std::numbers::pi - 1e-12;
}

/// Moore-Penrose pseudo-inverse from a divide-and-conquer SVD.
inline Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a, double rel = 1e-12) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cut = s.size() ? rel * s(0) : 0.0;
  Eigen::VectorXd inv = s;
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cut ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Max point error of the least-squares affine fit of p onto q (rows are points).
inline double affine_fit_error(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  Eigen::MatrixXd lift(p.rows(), p.cols() + 1);
  lift << p, Eigen::VectorXd::Ones(p.rows());
  const Eigen::MatrixXd x = pseudo_inverse(lift) * q;
  return (lift * x - q).rowwise().norm().maxCoeff();
}

/// Affine rigidity straight from the definition.
///
/// Unknowns: a configuration q (v x d) and per hyperedge a matrix A_h and
/// translation t_h with q_i = A_h p_i + t_h for every i in h. The solution
/// space is computed by full-pivot LU; `samples` random solutions are drawn
/// and each q is tested for affine congruence with p.
inline bool affinely_rigid_by_perturbation(const Hypergraph& h, const Eigen::MatrixXd& p, int samples,
                                           std::uint64_t seed, double tol = 1e-7) {
  const int v = static_cast<int>(p.rows());
  const int d = static_cast<int>(p.cols());
  const int per_edge = d * d + d;
  const int unknowns = v * d + static_cast<int>(h.hyperedge_count()) * per_edge;
  int rows = 0;
  for (const auto& e : h.hyperedges()) rows += static_cast<int>(e.size()) * d;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, unknowns);
  int r = 0;
  for (std::size_t k = 0; k < h.hyperedge_count(); ++k) {
    const int base = v * d + static_cast<int>(k) * per_edge;
    for (Vertex i : h.hyperedges()[k])
      for (int a = 0; a < d; ++a, ++r) {
        m(r, i * d + a) = 1.0;                                         // q_i[a]
        for (int b = 0; b < d; ++b) m(r, base + a * d + b) = -p(i, b);  // -(A_h p_i)[a]
        m(r, base + d * d + a) = -1.0;                                 // -t_h[a]
      }
  }
  Eigen::MatrixXd kernel;
  if (rows == 0) {
    kernel = Eigen::MatrixXd::Identity(unknowns, unknowns);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    kernel = lu.kernel();
    if (lu.rank() == unknowns) return true;  // cannot happen: q = p is a solution
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd c(kernel.cols());
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = normal(rng);
    const Eigen::VectorXd x = kernel * c;
    Eigen::MatrixXd q(v, d);
    for (int i = 0; i < v; ++i)
      for (int a = 0; a < d; ++a) q(i, a) = x(i * d + a);
    const double scale = std::max(1.0, q.norm());
    if (affine_fit_error(p, q) > tol * scale) return false;
  }
  return true;
}

/// Uniform random graph G(n, prob).
inline Graph random_graph(int n, double prob, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(prob);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph(n, edges);
}

/// Random hypergraph: `count` hyperedges with sizes in [lo, hi].
inline Hypergraph random_hypergraph(int n, int count, int lo, int hi, std::mt19937_64& rng) {
  std::vector<affrig::Hyperedge> hs;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::uniform_int_distribution<int> size(lo, std::min(hi, n));
  for (int k = 0; k < count; ++k) {
    std::shuffle(all.begin(), all.end(), rng);
    hs.emplace_back(all.begin(), all.begin() + size(rng));
  }
  return Hypergraph(n, hs);
}

/// Random invertible d x d matrix with condition number at most `cond`:
/// U diag(s) V^T with singular values log-uniform in [1, cond].
inline Eigen::MatrixXd random_conditioned(int d, double cond, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto orth = [&] {
    Eigen::MatrixXd g(d, d);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ());
  };
  std::uniform_real_distribution<double> u(0.0, std::log(cond));
  Eigen::VectorXd s(d);
  for (int i = 0; i < d; ++i) s(i) = std::exp(u(rng));
  s(0) = 1.0;
  if (d > 1) s(d - 1) = cond;
  return orth() * s.asDiagonal() * orth().transpose();
}

}  // namespace oracle
