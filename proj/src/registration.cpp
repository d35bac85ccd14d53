#include "affrig/registration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "affrig/rigidity.hpp"

namespace affrig {

const char* to_string(Trust t) { return t == Trust::affine ? "affine" : "euclidean"; }
const char* to_string(Gauge g) { return g == Gauge::affine ? "affine" : "euclidean"; }

void validate(const ScanSet& s) {
  if (s.dim < 1) throw InvalidInput("scan set dimension must be positive");
  if (s.vertex_count < 1) throw InvalidInput("scan set needs at least one vertex");
  for (std::size_t i = 0; i < s.scans.size(); ++i) {
    const Scan& scan = s.scans[i];
    const std::string where = "scan " + std::to_string(i) + ": ";
    if (scan.vertices.empty()) throw InvalidInput(where + "empty hyperedge");
    if (scan.coordinates.rows() != static_cast<Eigen::Index>(scan.vertices.size()) ||
        scan.coordinates.cols() != s.dim)
      throw InvalidInput(where + "coordinates do not match its vertices and dimension");
    if (!scan.coordinates.allFinite()) throw InvalidInput(where + "non-finite coordinates");
    Hyperedge sorted = scan.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput(where + "repeated vertex");
    if (sorted.front() < 0 || sorted.back() >= s.vertex_count) throw InvalidInput(where + "vertex out of range");
  }
}

Hypergraph scan_hypergraph(const ScanSet& s) {
  std::vector<Hyperedge> hs;
  hs.reserve(s.scans.size());
  for (const Scan& scan : s.scans) hs.push_back(scan.vertices);
  return Hypergraph(s.vertex_count, std::move(hs));
}

double diameter(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  double best = 0;
  for (Eigen::Index a = 0; a < points.rows(); ++a)
    for (Eigen::Index b = a + 1; b < points.rows(); ++b)
      best = std::max(best, (points.row(a) - points.row(b)).norm());
  return best;
}

double affine_fit_residual(const Eigen::Ref<const Eigen::MatrixXd>& source,
                           const Eigen::Ref<const Eigen::MatrixXd>& target) {
  if (source.rows() != target.rows()) throw InvalidInput("affine fit: point count mismatch");
  Eigen::MatrixXd lifted(source.rows(), source.cols() + 1);
  lifted << source, Eigen::VectorXd::Ones(source.rows());
  Eigen::MatrixXd fitted(target.rows(), target.cols());
  for (Eigen::Index c = 0; c < target.cols(); ++c) fitted.col(c) = lifted * least_squares(lifted, target.col(c));
  return (fitted - target).rowwise().norm().maxCoeff();
}

double procrustes_residual(const Eigen::Ref<const Eigen::MatrixXd>& source,
                           const Eigen::Ref<const Eigen::MatrixXd>& target) {
  if (source.rows() != target.rows() || source.cols() != target.cols())
    throw InvalidInput("procrustes: shape mismatch");
  const Eigen::MatrixXd a = source.rowwise() - source.colwise().mean();
  const Eigen::MatrixXd b = target.rowwise() - target.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();
  return (a * rotation - b).rowwise().norm().maxCoeff();
}

namespace {

Eigen::MatrixXd restrict_rows(const Eigen::MatrixXd& config, const Hyperedge& vertices) {
  Eigen::MatrixXd out(vertices.size(), config.cols());
  for (std::size_t i = 0; i < vertices.size(); ++i) out.row(i) = config.row(vertices[i]);
  return out;
}

void fill_scan_residuals(const ScanSet& s, Registration& r) {
  auto& diag = r.diagnostics;
  diag.scan_residuals.clear();
  diag.max_scan_residual = 0;
  diag.diameter = diameter(r.config);
  for (const Scan& scan : s.scans) {
    const Eigen::MatrixXd mine = restrict_rows(r.config, scan.vertices);
    const double res = r.gauge == Gauge::affine ? affine_fit_residual(scan.coordinates, mine)
                                                : procrustes_residual(scan.coordinates, mine);
    diag.scan_residuals.push_back(res);
    diag.max_scan_residual = std::max(diag.max_scan_residual, res);
  }
}

Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int c = 0; c < d; ++c)
    if (diag(c) < 0) q.col(c) = -q.col(c);
  return q;
}

}  // namespace

Registration affine_register(const ScanSet& s, double rel_tol) {
  validate(s);
  const int v = s.vertex_count;
  const int d = s.dim;
  if (v < d + 1)
    throw UnsupportedInstance("need at least d+1 = " + std::to_string(d + 1) + " vertices, got " +
                              std::to_string(v));
  std::vector<bool> covered(v, false);
  for (const Scan& scan : s.scans)
    for (Vertex x : scan.vertices) covered[x] = true;
  for (Vertex x = 0; x < v; ++x)
    if (!covered[x]) throw InvalidInput("vertex " + std::to_string(x) + " is not covered by any scan");

  // Affine relations are invariant under the unknown per-scan maps, so each
  // local chart yields its rows of the strong affinity matrix directly.
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::Index rows = 0;
  for (const Scan& scan : s.scans) {
    blocks.push_back(scan.vertices.size() < 2 ? Eigen::MatrixXd(0, scan.vertices.size())
                                              : hyperedge_relations(scan.coordinates, rel_tol));
    rows += blocks.back().rows();
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, v);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < s.scans.size(); ++k)
    for (Eigen::Index i = 0; i < blocks[k].rows(); ++i, ++r)
      for (std::size_t c = 0; c < s.scans[k].vertices.size(); ++c) m(r, s.scans[k].vertices[c]) = blocks[k](i, c);

  const auto kernel = numerical_kernel(m, rel_tol);
  if (kernel.dimension > d + 1) throw NotAffinelyRigid(kernel.dimension, d + 1);
  if (kernel.dimension < d + 1) throw InconsistentScans(kernel.dimension, d + 1);

  // Canonical gauge: drop the all-ones direction, orthonormalize, fix signs,
  // scale to unit RMS and put vertex 0 at the origin.
  const Eigen::MatrixXd centered = kernel.basis.rowwise() - kernel.basis.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
  Eigen::MatrixXd config = svd.matrixU().leftCols(d) * std::sqrt(static_cast<double>(v));
  for (int c = 0; c < d; ++c) {
    Eigen::Index arg = 0;
    config.col(c).cwiseAbs().maxCoeff(&arg);
    if (config(arg, c) < 0) config.col(c) = -config.col(c);
  }
  config.rowwise() -= config.row(0).eval();

  Registration out;
  out.config = std::move(config);
  out.gauge = Gauge::affine;
  out.diagnostics.corank = kernel.dimension;
  out.diagnostics.kernel_gap = kernel.gap_above();
  out.diagnostics.kernel_inside = kernel.largest_inside();
  fill_scan_residuals(s, out);
  return out;
}

Registration remove_affine(const Registration& affine, const std::vector<LengthConstraint>& lengths,
                           double rel_tol, double psd_tol) {
  const Eigen::MatrixXd& sigma = affine.config;
  const int v = static_cast<int>(sigma.rows());
  const int d = static_cast<int>(sigma.cols());
  const Eigen::Index unknowns = d * (d + 1) / 2;

  // Each row: monomials of the unit direction; right side: length^2 / |e|^2.
  Eigen::MatrixXd a(lengths.size(), unknowns);
  Eigen::VectorXd b(lengths.size());
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    const LengthConstraint& c = lengths[k];
    if (c.u < 0 || c.u >= v || c.w < 0 || c.w >= v || c.u == c.w)
      throw InvalidInput("length constraint has invalid vertices");
    if (!(c.squared_length > 0) || !std::isfinite(c.squared_length))
      throw InvalidInput("length constraints must be positive");
    const Eigen::VectorXd e = (sigma.row(c.u) - sigma.row(c.w)).transpose();
    const double n2 = e.squaredNorm();
    if (n2 == 0) throw InconsistentLengths("two constrained vertices coincide in the affine realization");
    a.row(k) = quadratic_monomials(e / std::sqrt(n2));
    b(k) = c.squared_length / n2;
    edges.emplace_back(c.u, c.w);
  }

  const ConicTest conic = conic_at_infinity_test(sigma, edges, rel_tol);
  if (conic.on_conic)
    throw NonUniqueGram("length directions lie on a conic at infinity; the Gram matrix is not unique");

  const Eigen::MatrixXd gram = symmetric_from_parameters(least_squares(a, b), d);
  const auto factor = psd_cholesky(gram, psd_tol);
  if (!factor.lower)
    throw InconsistentLengths("least-squares Gram matrix is indefinite (min eigenvalue " +
                              std::to_string(factor.min_eigenvalue) + ")");

  Registration out;
  out.config = sigma * *factor.lower;
  out.gauge = Gauge::euclidean;
  out.diagnostics = affine.diagnostics;
  out.diagnostics.gram = gram;
  out.diagnostics.gram_clipped = factor.clipped;
  out.diagnostics.gram_min_eigenvalue = factor.min_eigenvalue;
  out.diagnostics.conic_margin = conic.margin;
  out.diagnostics.length_constraints = static_cast<int>(lengths.size());
  out.diagnostics.diameter = diameter(out.config);
  double worst = 0;
  for (const LengthConstraint& c : lengths) {
    const double got = (out.config.row(c.u) - out.config.row(c.w)).squaredNorm();
    worst = std::max(worst, std::abs(got - c.squared_length) / c.squared_length);
  }
  out.diagnostics.max_relative_length_error = worst;
  return out;
}

Registration euclidean_register(const ScanSet& s, double rel_tol, double psd_tol) {
  if (s.trust != Trust::euclidean) throw InvalidInput("euclidean registration needs scans with euclidean trust");
  Registration affine = affine_register(s, rel_tol);

  // Average repeated pairs across scans.
  std::map<Edge, std::pair<double, int>> pairs;
  for (const Scan& scan : s.scans) {
    for (std::size_t a = 0; a < scan.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < scan.vertices.size(); ++b) {
        const Edge key{std::min(scan.vertices[a], scan.vertices[b]), std::max(scan.vertices[a], scan.vertices[b])};
        auto& [sum, count] = pairs[key];
        sum += (scan.coordinates.row(a) - scan.coordinates.row(b)).squaredNorm();
        ++count;
      }
  }
  std::vector<LengthConstraint> lengths;
  lengths.reserve(pairs.size());
  for (const auto& [edge, acc] : pairs) lengths.push_back({edge.first, edge.second, acc.first / acc.second});

  Registration out = remove_affine(affine, lengths, rel_tol, psd_tol);
  fill_scan_residuals(s, out);
  return out;
}

ScanSet make_scans(const Hypergraph& hypergraph, const Eigen::Ref<const Eigen::MatrixXd>& truth, Trust trust,
                   std::uint64_t seed, double relative_noise) {
  if (truth.rows() != hypergraph.vertex_count()) throw InvalidInput("make_scans: point count mismatch");
  const int d = static_cast<int>(truth.cols());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> stretch(0.5, 2.0);
  const double scale = diameter(truth);

  ScanSet out;
  out.vertex_count = hypergraph.vertex_count();
  out.dim = d;
  out.trust = trust;
  for (const Hyperedge& h : hypergraph.hyperedges()) {
    if (h.empty()) continue;
    Eigen::MatrixXd linear = random_orthogonal(d, rng);
    if (trust == Trust::affine) {
      Eigen::VectorXd s(d);
      for (int a = 0; a < d; ++a) s(a) = stretch(rng);
      linear = random_orthogonal(d, rng) * s.asDiagonal() * linear;
    }
    Eigen::RowVectorXd shift(d);
    for (int a = 0; a < d; ++a) shift(a) = scale * normal(rng);
    Scan scan;
    scan.vertices = h;
    scan.coordinates = (restrict_rows(truth, h) * linear.transpose()).rowwise() + shift;
    if (relative_noise > 0)
      for (Eigen::Index i = 0; i < scan.coordinates.size(); ++i)
        scan.coordinates.data()[i] += relative_noise * scale * normal(rng);
    out.scans.push_back(std::move(scan));
  }
  return out;
}

}  // namespace affrig
