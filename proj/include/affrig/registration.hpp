#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "affrig/hypergraph.hpp"
#include "affrig/numkernel.hpp"

namespace affrig {

/// Whether scan-internal distances can be trusted metrically.
enum class Trust { affine, euclidean };
enum class Gauge { affine, euclidean };
const char* to_string(Trust t);
const char* to_string(Gauge g);

/// One local chart: the scanned vertices and their coordinates (k x d), known
/// only up to a transform of the declared class.
struct Scan {
  Hyperedge vertices;
  Eigen::MatrixXd coordinates;
};

struct ScanSet {
  int vertex_count = 0;
  int dim = 0;
  Trust trust = Trust::affine;
  std::vector<Scan> scans;
};

/// Throws InvalidInput on shape mismatches, repeated or out-of-range vertices,
/// empty scans or non-finite coordinates.
void validate(const ScanSet& scans);

/// The hypergraph whose hyperedges are the scanned vertex sets.
Hypergraph scan_hypergraph(const ScanSet& scans);

struct RegistrationDiagnostics {
  int corank = 0;
  double kernel_gap = 0;               // smallest kept singular value / sigma_max
  double kernel_inside = 0;            // largest kernel singular value / sigma_max
  std::vector<double> scan_residuals;  // per scan, max point error of the best fit of the gauge class
  double max_scan_residual = 0;
  double diameter = 0;
  // Filled by the Euclidean upgrade.
  std::optional<Eigen::MatrixXd> gram;
  bool gram_clipped = false;
  double gram_min_eigenvalue = 0;
  double conic_margin = 0;
  double max_relative_length_error = 0;
  int length_constraints = 0;
};

struct Registration {
  Eigen::MatrixXd config;  // v x d
  Gauge gauge = Gauge::affine;
  RegistrationDiagnostics diagnostics;
};

/// Known squared distance between two vertices.
struct LengthConstraint {
  Vertex u = 0;
  Vertex w = 0;
  double squared_length = 0;
};

/// Global configuration up to an affine map from affine-invariant scan data.
///
/// The scans' affine relations form a strong affinity matrix whose kernel must
/// have dimension d+1. The returned gauge is canonical: orthonormalized kernel,
/// all-ones direction removed, vertex 0 at the origin.
/// Throws NotAffinelyRigid (corank > d+1) or InconsistentScans (corank < d+1).
Registration affine_register(const ScanSet& scans, double rel_tol = kDefaultRelTol);

/// Removes the residual affine map: least-squares Gram matrix G from the
/// length constraints, G = L L^T, config <- config * L.
/// Throws NonUniqueGram when the constraint directions lie on a conic at
/// infinity and InconsistentLengths when G is indefinite beyond psd_tol.
Registration remove_affine(const Registration& affine, const std::vector<LengthConstraint>& lengths,
                           double rel_tol = kDefaultRelTol, double psd_tol = kDefaultPsdTol);

/// affine_register followed by remove_affine on all scan-internal lengths.
Registration euclidean_register(const ScanSet& scans, double rel_tol = kDefaultRelTol,
                                double psd_tol = kDefaultPsdTol);

// ---------------------------------------------------------------------------
// Comparison of configurations (rows are points).

/// Largest pairwise distance.
double diameter(const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Max point distance between `target` and the least-squares affine image of `source`.
double affine_fit_residual(const Eigen::Ref<const Eigen::MatrixXd>& source,
                           const Eigen::Ref<const Eigen::MatrixXd>& target);

/// Max point distance between `target` and the best orthogonal (reflections
/// allowed) plus translation image of `source`.
double procrustes_residual(const Eigen::Ref<const Eigen::MatrixXd>& source,
                           const Eigen::Ref<const Eigen::MatrixXd>& target);

/// Splits a ground-truth framework into one scan per hyperedge; each chart is
/// mapped by an independent random transform of the given class (rotation or
/// reflection plus translation for euclidean, a well-conditioned invertible
/// affine map for affine) and perturbed by relative Gaussian noise.
ScanSet make_scans(const Hypergraph& hypergraph, const Eigen::Ref<const Eigen::MatrixXd>& truth, Trust trust,
                   std::uint64_t seed, double relative_noise = 0.0);

}  // namespace affrig
