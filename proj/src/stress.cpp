#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "affrig/rigidity.hpp"

namespace affrig {

namespace {

// Edge vectors q(j) - q(i) for the neighbors of i, as columns (d x deg).
Eigen::MatrixXd edge_vectors(const GraphFramework& f, Vertex i) {
  const auto& nbrs = f.structure.neighbors(i);
  Eigen::MatrixXd e(f.dim(), nbrs.size());
  for (std::size_t c = 0; c < nbrs.size(); ++c)
    e.col(c) = (f.points.row(nbrs[c]) - f.points.row(i)).transpose();
  return e;
}

// Uniformly random unit vector in the column span of `basis` (orthonormal columns).
Eigen::VectorXd random_unit_in(const Eigen::MatrixXd& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd c(basis.cols());
  double norm = 0;
  do {
    for (Eigen::Index a = 0; a < c.size(); ++a) c(a) = normal(rng);
    norm = c.norm();
  } while (norm == 0);
  return basis * (c / norm);
}

void place_row(Eigen::MatrixXd& omega, Vertex i, const std::vector<Vertex>& nbrs,
               const Eigen::VectorXd& weights) {
  double sum = 0;
  for (std::size_t c = 0; c < nbrs.size(); ++c) {
    omega(i, nbrs[c]) = weights(c);
    sum += weights(c);
  }
  omega(i, i) = -sum;
}

double diameter(const Eigen::MatrixXd& points) {
  double best = 0;
  for (Eigen::Index a = 0; a < points.rows(); ++a)
    for (Eigen::Index b = a + 1; b < points.rows(); ++b)
      best = std::max(best, (points.row(a) - points.row(b)).norm());
  return best;
}

// Vertices of a regular simplex with unit circumradius, (d+1) x d.
Eigen::MatrixXd regular_simplex(int d) {
  Eigen::MatrixXd corners = Eigen::MatrixXd::Identity(d + 1, d + 1);
  corners.rowwise() -= corners.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(corners, Eigen::ComputeFullU);
  Eigen::MatrixXd coords = svd.matrixU().leftCols(d) * svd.singularValues().head(d).asDiagonal();
  return coords / coords.row(0).norm();
}

std::vector<Vertex> highest_degree(const Graph& g, int count) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

// Every component of the graph minus `pinned` must touch a pinned vertex.
bool every_component_anchored(const Graph& g, const std::vector<bool>& pinned) {
  std::vector<bool> reached(g.vertex_count(), false);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (pinned[v]) {
      reached[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v))
      if (!reached[w]) {
        reached[w] = true;
        queue.push_back(w);
      }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

// Convex containment: every one-ring spans R^d and every non-exceptional vertex
// admits strictly positive barycentric weights starting from `weights`.
bool has_convex_containment(const GraphFramework& f, const std::vector<bool>& pinned,
                            const std::vector<std::vector<double>>& vertex_weights) {
  const int d = f.dim();
  for (Vertex i = 0; i < f.vertex_count(); ++i) {
    const auto& nbrs = f.structure.neighbors(i);
    Eigen::MatrixXd ring(nbrs.size() + 1, d);
    ring.row(0) = f.points.row(i);
    for (std::size_t c = 0; c < nbrs.size(); ++c) ring.row(c + 1) = f.points.row(nbrs[c]);
    if (affine_span_dimension(ring) != d) return false;
    if (pinned[i]) continue;
    const Eigen::Map<const Eigen::VectorXd> hint(vertex_weights[i].data(), vertex_weights[i].size());
    if (!positive_barycentric_weights(f, i, hint)) return false;
  }
  return true;
}

}  // namespace

std::optional<Eigen::VectorXd> positive_barycentric_weights(const GraphFramework& framework, Vertex i,
                                                            const Eigen::Ref<const Eigen::VectorXd>& hint) {
  const Eigen::MatrixXd e = edge_vectors(framework, i);
  if (hint.size() != e.cols() || e.cols() == 0) return std::nullopt;
  const Eigen::VectorXd residual = e * hint;
  const Eigen::VectorXd weights = hint + least_squares(e, -residual);
  if (weights.minCoeff() <= 1e-12 * weights.cwiseAbs().maxCoeff()) return std::nullopt;
  // Certify the correction actually balances the vertex.
  if ((e * weights).norm() > 1e-9 * e.norm() * weights.norm()) return std::nullopt;
  return weights;
}

RubberBand rubber_band_embedding(const Graph& graph, int d, const RubberBandOptions& options) {
  const int v = graph.vertex_count();
  if (d < 1) throw InvalidInput("dimension must be positive");
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));

  RubberBand out;
  out.exceptional = options.exceptional ? *options.exceptional : highest_degree(graph, d + 1);
  if (static_cast<int>(out.exceptional.size()) != d + 1)
    throw InvalidInput("exactly d+1 exceptional vertices are required");
  std::vector<bool> pinned(v, false);
  for (Vertex x : out.exceptional) {
    if (x < 0 || x >= v) throw InvalidInput("exceptional vertex out of range");
    if (pinned[x]) throw InvalidInput("exceptional vertices must be distinct");
    pinned[x] = true;
  }
  if (!every_component_anchored(graph, pinned))
    throw DegenerateInstance("some component has no exceptional vertex; rubber-band system is singular");

  out.connectivity_ok = is_k_vertex_connected(graph, d + 1);
  if (!out.connectivity_ok)
    out.warnings.push_back("graph is not " + std::to_string(d + 1) + "-vertex-connected");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 1.5);

  Eigen::MatrixXd points = Eigen::MatrixXd::Zero(v, d);
  const Eigen::MatrixXd simplex = regular_simplex(d);
  for (int a = 0; a <= d; ++a) {
    points.row(out.exceptional[a]) = simplex.row(a);
    for (int c = 0; c < d; ++c) points(out.exceptional[a], c) += options.simplex_perturbation * unit(rng);
  }

  const auto& edges = graph.edges();
  out.edge_weights.resize(edges.size());
  for (double& w : out.edge_weights) w = options.random_weights ? weight(rng) : 1.0;

  // Laplacian restricted to free vertices: L_ff x_f = -L_fp x_p.
  std::vector<int> free_index(v, -1);
  int free_count = 0;
  for (Vertex x = 0; x < v; ++x)
    if (!pinned[x]) free_index[x] = free_count++;
  std::vector<std::vector<double>> vertex_weights(v);
  for (Vertex x = 0; x < v; ++x) vertex_weights[x].resize(graph.degree(x));
  if (free_count > 0) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(free_count, free_count);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(free_count, d);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [a, b] = edges[k];
      const double w = out.edge_weights[k];
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (pinned[x]) continue;
        const int fx = free_index[x];
        lap(fx, fx) += w;
        if (pinned[y]) {
          rhs.row(fx) += w * points.row(y);
        } else {
          lap(fx, free_index[y]) -= w;
        }
      }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(lap);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0).all())
      throw DegenerateInstance("rubber-band Laplacian is singular");
    const Eigen::MatrixXd solved = ldlt.solve(rhs);
    for (Vertex x = 0; x < v; ++x)
      if (!pinned[x]) points.row(x) = solved.row(free_index[x]);
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b] = edges[k];
    const auto& na = graph.neighbors(a);
    const auto& nb = graph.neighbors(b);
    vertex_weights[a][std::lower_bound(na.begin(), na.end(), b) - na.begin()] = out.edge_weights[k];
    vertex_weights[b][std::lower_bound(nb.begin(), nb.end(), a) - nb.begin()] = out.edge_weights[k];
  }

  GraphFramework base{graph, points};
  const bool base_ok = has_convex_containment(base, pinned, vertex_weights);
  const double magnitude = options.jitter * diameter(points);
  out.framework = base;
  out.convex_containment = base_ok;
  if (magnitude > 0) {
    bool accepted = false;
    for (int attempt = 0; attempt <= options.max_retries && !accepted; ++attempt) {
      GraphFramework trial{graph, points};
      for (Eigen::Index a = 0; a < trial.points.size(); ++a) trial.points.data()[a] += magnitude * unit(rng);
      if (!base_ok || has_convex_containment(trial, pinned, vertex_weights)) {
        out.framework = std::move(trial);
        out.convex_containment = base_ok;
        accepted = true;
      }
    }
    if (!accepted) out.warnings.push_back("jitter rejected; returning the unperturbed rubber-band configuration");
  }
  if (!out.convex_containment) out.warnings.push_back("configuration lacks convex containment");
  return out;
}

StressMatrix nonsymmetric_stress(const GraphFramework& framework, std::uint64_t seed, double rel_tol) {
  validate(framework);
  const int v = framework.vertex_count();
  std::mt19937_64 rng(seed);
  StressMatrix out;
  out.matrix = Eigen::MatrixXd::Zero(v, v);
  for (Vertex i = 0; i < v; ++i) {
    const auto& nbrs = framework.structure.neighbors(i);
    if (nbrs.empty()) {
      out.zero_rows.push_back(i);
      continue;
    }
    const auto kernel = numerical_kernel(edge_vectors(framework, i), rel_tol);
    if (kernel.dimension == 0) {
      out.zero_rows.push_back(i);
      continue;
    }
    place_row(out.matrix, i, nbrs, random_unit_in(kernel.basis, rng));
  }
  return out;
}

StressMatrix positive_stress(const RubberBand& rubber_band, std::uint64_t seed, double rel_tol) {
  const GraphFramework& f = rubber_band.framework;
  const Graph& g = f.structure;
  const int v = f.vertex_count();
  std::vector<bool> pinned(v, false);
  for (Vertex x : rubber_band.exceptional) pinned[x] = true;

  std::vector<Eigen::VectorXd> hints(v);
  for (Vertex x = 0; x < v; ++x) hints[x] = Eigen::VectorXd::Zero(g.degree(x));
  const auto& edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b] = edges[k];
    const auto& na = g.neighbors(a);
    const auto& nb = g.neighbors(b);
    hints[a](std::lower_bound(na.begin(), na.end(), b) - na.begin()) = rubber_band.edge_weights[k];
    hints[b](std::lower_bound(nb.begin(), nb.end(), a) - nb.begin()) = rubber_band.edge_weights[k];
  }

  std::mt19937_64 rng(seed);
  StressMatrix out;
  out.matrix = Eigen::MatrixXd::Zero(v, v);
  for (Vertex i = 0; i < v; ++i) {
    const auto& nbrs = g.neighbors(i);
    if (!pinned[i]) {
      auto w = positive_barycentric_weights(f, i, hints[i]);
      if (!w)
        throw DegenerateInstance("vertex " + std::to_string(i) +
                                 " is not strictly inside the convex hull of its neighbors");
      place_row(out.matrix, i, nbrs, *w / w->norm());
      continue;
    }
    const auto kernel = numerical_kernel(edge_vectors(f, i), rel_tol);
    if (kernel.dimension == 0) {
      out.zero_rows.push_back(i);
      continue;
    }
    place_row(out.matrix, i, nbrs, random_unit_in(kernel.basis, rng));
  }
  return out;
}

namespace {

MatrixResiduals residuals_common(const Eigen::MatrixXd& m, const Eigen::MatrixXd& points) {
  MatrixResiduals out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n > 0) out.row_sum = std::max(out.row_sum, std::abs(m.row(i).sum()) / n);
  }
  const Eigen::MatrixXd centered = points.rowwise() - points.colwise().mean();
  const double scale = m.norm() * centered.norm();
  if (scale > 0) out.annihilation = (m * centered).norm() / scale;
  return out;
}

}  // namespace

MatrixResiduals affinity_residuals(const AffinityMatrix& m, const HypergraphFramework& framework) {
  MatrixResiduals out = residuals_common(m.matrix, framework.points);
  const auto& hs = framework.structure.hyperedges();
  for (Eigen::Index r = 0; r < m.matrix.rows(); ++r) {
    const Hyperedge& h = hs[m.row_hyperedge[r]];
    for (Eigen::Index c = 0; c < m.matrix.cols(); ++c)
      if (!std::binary_search(h.begin(), h.end(), static_cast<Vertex>(c)))
        out.support = std::max(out.support, std::abs(m.matrix(r, c)));
  }
  return out;
}

MatrixResiduals stress_residuals(const Eigen::Ref<const Eigen::MatrixXd>& m, const GraphFramework& framework) {
  const Eigen::MatrixXd dense = m;
  MatrixResiduals out = residuals_common(dense, framework.points);
  const Graph& g = framework.structure;
  for (Eigen::Index r = 0; r < dense.rows(); ++r)
    for (Eigen::Index c = 0; c < dense.cols(); ++c)
      if (r != c && !g.adjacent(static_cast<Vertex>(r), static_cast<Vertex>(c)))
        out.support = std::max(out.support, std::abs(dense(r, c)));
  const double n = dense.norm();
  if (n > 0) out.symmetry = (dense - dense.transpose()).norm() / n;
  return out;
}

NeighborhoodVerdict neighborhood_affine_rigidity_test(const GraphFramework& framework,
                                                      const NeighborhoodTestOptions& options) {
  validate(framework);
  const int d = framework.dim();
  const int v = framework.vertex_count();
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));
  const int span = affine_span_dimension(framework.points, options.rel_tol);
  if (span != d) throw ImproperFramework(span, d);

  std::mt19937_64 seeds(options.seed);
  NeighborhoodVerdict out;
  const StressMatrix first = nonsymmetric_stress(framework, seeds(), options.rel_tol);
  const auto kernel = numerical_kernel(first.matrix, options.rel_tol);
  out.stage1_corank = kernel.dimension;
  if (kernel.dimension == d + 1) {
    out.stage = 1;
    out.verdict.verdict = Verdict::rigid;
    out.verdict.corank = d + 1;
    out.verdict.certificate.witness = "non-symmetric equilibrium stress";
    out.verdict.certificate.rows = v;
    out.verdict.certificate.cols = v;
    out.verdict.certificate.rel_tol = options.rel_tol;
    out.verdict.certificate.spectral_gap = kernel.gap_above();
    if (!options.always_run_stage2) return out;
  }

  Eigen::MatrixXd stacked((d + 2) * v, v);
  stacked.topRows(v) = first.matrix;
  for (int s = 1; s < d + 2; ++s)
    stacked.middleRows(static_cast<Eigen::Index>(s) * v, v) =
        nonsymmetric_stress(framework, seeds(), options.rel_tol).matrix;
  out.concatenated_corank = corank(stacked, options.rel_tol);

  const RigidityVerdict affine =
      affine_rigidity_test(HypergraphFramework{neighborhood_hypergraph(framework.structure), framework.points},
                           options.rel_tol);
  out.affinity_corank = affine.corank;
  if (out.stage1_corank != d + 1) {
    out.stage = 2;
    out.verdict = affine;
  }
  return out;
}

}  // namespace affrig
