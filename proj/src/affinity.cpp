#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "affrig/rigidity.hpp"

namespace affrig {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::rigid: return "rigid";
    case Verdict::flexible: return "flexible";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

int affine_span_dimension(const Eigen::Ref<const Eigen::MatrixXd>& points, double rel_tol) {
  if (points.rows() <= 1) return 0;
  const Eigen::MatrixXd centered = points.rowwise() - points.colwise().mean();
  if (centered.isZero(0)) return 0;
  return numerical_rank(centered, rel_tol);
}

Eigen::MatrixXd hyperedge_relations(const Eigen::Ref<const Eigen::MatrixXd>& points, double rel_tol) {
  const Eigen::Index k = points.rows();
  const Eigen::Index d = points.cols();
  if (k == 0) return Eigen::MatrixXd(0, 0);

  // Affine relations are invariant under affine maps of the points, so
  // center and rescale to keep the lift well conditioned.
  Eigen::MatrixXd centered = points.rowwise() - points.colwise().mean();
  const double rms = std::sqrt(centered.squaredNorm() / static_cast<double>(k));
  if (rms > 0) centered /= rms;

  Eigen::MatrixXd lift(d + 1, k);
  lift.row(0).setOnes();
  lift.bottomRows(d) = centered.transpose();
  return numerical_kernel(lift, rel_tol).basis.transpose();
}

AffinityMatrix strong_affinity_matrix(const HypergraphFramework& framework, double rel_tol) {
  validate(framework);
  const int v = framework.vertex_count();
  const int d = framework.dim();
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));

  std::vector<Eigen::MatrixXd> blocks;
  AffinityMatrix out;
  out.strong = true;
  Eigen::Index rows = 0;
  const auto& hyperedges = framework.structure.hyperedges();
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    const Hyperedge& h = hyperedges[e];
    if (h.size() < 2) {
      blocks.emplace_back(0, 0);
      continue;
    }
    Eigen::MatrixXd local(h.size(), d);
    for (std::size_t i = 0; i < h.size(); ++i) local.row(i) = framework.points.row(h[i]);
    blocks.push_back(hyperedge_relations(local, rel_tol));
    rows += blocks.back().rows();
  }

  out.matrix = Eigen::MatrixXd::Zero(rows, v);
  Eigen::Index r = 0;
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    const Eigen::MatrixXd& block = blocks[e];
    for (Eigen::Index i = 0; i < block.rows(); ++i, ++r) {
      for (std::size_t c = 0; c < hyperedges[e].size(); ++c) out.matrix(r, hyperedges[e][c]) = block(i, c);
      out.row_hyperedge.push_back(static_cast<int>(e));
    }
  }
  return out;
}

int corank(const Eigen::Ref<const Eigen::MatrixXd>& m, double rel_tol) {
  return numerical_kernel(m, rel_tol).dimension;
}

RigidityVerdict affine_rigidity_test(const HypergraphFramework& framework, double rel_tol) {
  validate(framework);
  const int d = framework.dim();
  const int v = framework.vertex_count();
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));
  const int span = affine_span_dimension(framework.points, rel_tol);
  if (span != d) throw ImproperFramework(span, d);

  const AffinityMatrix m = strong_affinity_matrix(framework, rel_tol);
  const auto kernel = numerical_kernel(m.matrix, rel_tol);
  if (kernel.dimension < d + 1)
    throw DegenerateInstance("affinity corank " + std::to_string(kernel.dimension) +
                             " below d+1 for a proper framework; tolerance too loose");

  RigidityVerdict out;
  out.corank = kernel.dimension;
  out.verdict = kernel.dimension == d + 1 ? Verdict::rigid : Verdict::flexible;
  out.certificate.witness = "strong affinity matrix";
  out.certificate.rows = static_cast<int>(m.matrix.rows());
  out.certificate.cols = v;
  out.certificate.rel_tol = rel_tol;
  out.certificate.spectral_gap = kernel.gap_above();
  return out;
}

RigidityVerdict affine_rigidity_test(const GraphFramework& framework, double rel_tol) {
  return affine_rigidity_test(HypergraphFramework{as_hypergraph(framework.structure), framework.points},
                              rel_tol);
}

// ---------------------------------------------------------------------------

ResidueConfiguration reduce_mod(
    const Eigen::Ref<const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>>& points,
    std::uint64_t modulus) {
  const PrimeField field(modulus);
  ResidueConfiguration out(points.rows(), points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = 0; j < points.cols(); ++j) out(i, j) = field.from_int(points(i, j));
  return out;
}

PrimeFieldMatrix finite_field_affinity_matrix(const Hypergraph& hypergraph, const ResidueConfiguration& points,
                                              std::uint64_t modulus) {
  const int v = hypergraph.vertex_count();
  const int d = static_cast<int>(points.cols());
  if (points.rows() != v) throw InvalidInput("residue configuration has wrong vertex count");
  PrimeFieldMatrix out(0, v, modulus);
  for (const Hyperedge& h : hypergraph.hyperedges()) {
    const int k = static_cast<int>(h.size());
    if (k < 2) continue;
    PrimeFieldMatrix lift(d + 1, k, modulus);
    for (int c = 0; c < k; ++c) {
      lift.set(0, c, 1);
      for (int a = 0; a < d; ++a) lift.set(a + 1, c, points(h[c], a));
    }
    const PrimeFieldMatrix relations = prime_field_nullspace(lift);
    PrimeFieldMatrix rows(relations.rows(), v, modulus);
    for (int r = 0; r < relations.rows(); ++r)
      for (int c = 0; c < k; ++c) rows.set(r, h[c], relations(r, c));
    out.append_rows(rows);
  }
  return out;
}

int finite_field_affinity_corank(const Hypergraph& hypergraph, const ResidueConfiguration& points,
                                 std::uint64_t modulus) {
  return hypergraph.vertex_count() -
         prime_field_rank(finite_field_affinity_matrix(hypergraph, points, modulus));
}

namespace {

bool proper_mod(const ResidueConfiguration& points, std::uint64_t modulus) {
  const int v = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  PrimeFieldMatrix lifted(v, d + 1, modulus);
  for (int i = 0; i < v; ++i) {
    lifted.set(i, 0, 1);
    for (int a = 0; a < d; ++a) lifted.set(i, a + 1, points(i, a));
  }
  return prime_field_rank(lifted) == d + 1;
}

}  // namespace

RigidityVerdict generic_affine_rigidity_test(const Hypergraph& hypergraph, int d,
                                             const GenericTestOptions& options) {
  if (d < 1) throw InvalidInput("dimension must be positive");
  if (options.trials < 1) throw InvalidInput("trials must be positive");
  const int v = hypergraph.vertex_count();
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));
  if (!options.random_prime) (void)PrimeField(options.modulus);

  std::mt19937_64 rng(options.seed);
  int best = v + 1;
  std::uint64_t best_modulus = options.modulus;
  int best_rows = 0;
  double per_trial_bound_product = 1.0;
  int trials_run = 0;
  const auto primes = sixty_bit_primes();
  for (int t = 0; t < options.trials; ++t) {
    std::uint64_t q = options.modulus;
    if (options.random_prime) q = primes[std::uniform_int_distribution<std::size_t>(0, primes.size() - 1)(rng)];
    std::uniform_int_distribution<std::uint64_t> coord(0, q - 1);
    ResidueConfiguration points(v, d);
    for (int attempt = 0;; ++attempt) {
      for (Eigen::Index i = 0; i < points.size(); ++i) points.data()[i] = coord(rng);
      if (proper_mod(points, q)) break;
      if (attempt > 100) throw DegenerateInstance("could not sample a proper configuration mod q");
    }
    const PrimeFieldMatrix m = finite_field_affinity_matrix(hypergraph, points, q);
    const int c = v - prime_field_rank(m);
    ++trials_run;
    per_trial_bound_product *=
        std::min(1.0, static_cast<double>(v + static_cast<int>(hypergraph.hyperedge_count())) * d /
                          static_cast<double>(q));
    if (c < best) {
      best = c;
      best_modulus = q;
      best_rows = static_cast<int>(m.rows());
    }
    if (best <= d + 1) break;  // corank d+1 is the floor; no later trial can lower it
  }

  RigidityVerdict out;
  out.corank = best;
  out.verdict = best <= d + 1 ? Verdict::rigid : Verdict::flexible;
  out.one_sided = out.verdict == Verdict::flexible;
  out.certificate.witness = "strong affinity matrix over F_q";
  out.certificate.rows = best_rows;
  out.certificate.cols = v;
  out.certificate.modulus = best_modulus;
  out.certificate.trials = trials_run;
  out.certificate.failure_bound = out.one_sided ? per_trial_bound_product : 0.0;
  return out;
}

}  // namespace affrig
