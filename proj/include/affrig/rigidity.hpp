#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affrig/hypergraph.hpp"
#include "affrig/numkernel.hpp"
#include "affrig/prime_field.hpp"

namespace affrig {

/// A structure (Graph or Hypergraph) with one point in R^d per vertex.
/// `points` is v x d, one row per vertex.
template <class Structure, typename Scalar = double>
struct Framework {
  Structure structure;
  MatrixX<Scalar> points;

  int dim() const { return static_cast<int>(points.cols()); }
  int vertex_count() const { return structure.vertex_count(); }
};

using HypergraphFramework = Framework<Hypergraph>;
using GraphFramework = Framework<Graph>;

/// Throws InvalidInput unless there is one finite row per vertex and d >= 1.
template <class Structure>
void validate(const Framework<Structure>& f) {
  if (f.points.rows() != f.structure.vertex_count())
    throw InvalidInput("framework has " + std::to_string(f.points.rows()) + " points for " +
                       std::to_string(f.structure.vertex_count()) + " vertices");
  if (f.points.cols() < 1) throw InvalidInput("framework dimension must be positive");
  if (!f.points.allFinite()) throw InvalidInput("framework has non-finite coordinates");
}

/// Dimension of the affine span of the rows of `points`.
int affine_span_dimension(const Eigen::Ref<const Eigen::MatrixXd>& points, double rel_tol = kDefaultRelTol);

// ---------------------------------------------------------------------------
// Affinity matrices

struct AffinityMatrix {
  Eigen::MatrixXd matrix;        // rows x v
  std::vector<int> row_hyperedge;
  bool strong = false;
};

/// All affine relations among the given k points (k x d), one per row of the
/// result (m x k, orthonormal rows). m = k - (affine span dimension + 1).
Eigen::MatrixXd hyperedge_relations(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                    double rel_tol = kDefaultRelTol);

/// Strong affinity matrix: each hyperedge contributes a basis of its affine relations.
AffinityMatrix strong_affinity_matrix(const HypergraphFramework& framework,
                                      double rel_tol = kDefaultRelTol);

/// Kernel dimension at rel_tol.
int corank(const Eigen::Ref<const Eigen::MatrixXd>& m, double rel_tol = kDefaultRelTol);

enum class Verdict { rigid, flexible, inconclusive };
const char* to_string(Verdict v);

/// What witnessed a verdict.
struct Certificate {
  std::string witness;          // e.g. "strong affinity matrix"
  int rows = 0;
  int cols = 0;
  double rel_tol = 0;           // 0 for exact finite-field certificates
  double spectral_gap = 0;      // smallest kept singular value / sigma_max
  std::uint64_t modulus = 0;    // finite-field certificates only
  int trials = 0;
  double failure_bound = 0;     // bound on P(flexible verdict is wrong)
};

struct RigidityVerdict {
  Verdict verdict = Verdict::inconclusive;
  int corank = 0;
  Certificate certificate;
  bool one_sided = false;
};

/// Affine rigidity of a framework by the rank of its strong affinity matrix:
/// rigid iff corank == d+1.
///
/// Throws UnsupportedInstance when v < d+1 and ImproperFramework when the
/// points do not affinely span R^d.
RigidityVerdict affine_rigidity_test(const HypergraphFramework& framework,
                                     double rel_tol = kDefaultRelTol);
RigidityVerdict affine_rigidity_test(const GraphFramework& framework,
                                     double rel_tol = kDefaultRelTol);

// ---------------------------------------------------------------------------
// Exact testers over F_q

/// Configuration with coordinates in F_q, v x d.
using ResidueConfiguration = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Reduces an integer configuration mod q.
ResidueConfiguration reduce_mod(const Eigen::Ref<const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>>& points,
                                std::uint64_t modulus);

/// Strong affinity matrix over F_q (relations by exact elimination).
PrimeFieldMatrix finite_field_affinity_matrix(const Hypergraph& hypergraph,
                                              const ResidueConfiguration& points,
                                              std::uint64_t modulus);

/// v - rank of finite_field_affinity_matrix.
int finite_field_affinity_corank(const Hypergraph& hypergraph, const ResidueConfiguration& points,
                                 std::uint64_t modulus = kDefaultPrime);

struct GenericTestOptions {
  int trials = 3;
  std::uint64_t seed = 0;
  std::uint64_t modulus = kDefaultPrime;
  bool random_prime = false;  // draw each trial's modulus from sixty_bit_primes()
};

/// Randomized exact test of generic affine rigidity.
///
/// Each trial samples a configuration uniformly from F_q^{v x d} and computes
/// the corank of its strong affinity matrix; the minimum over trials is
/// reported. Corank d+1 certifies generic rigidity. A larger corank is
/// reported as flexible with one_sided set and the Schwartz-Zippel bound
/// ((v + h) d / q)^trials in certificate.failure_bound.
RigidityVerdict generic_affine_rigidity_test(const Hypergraph& hypergraph, int d,
                                             const GenericTestOptions& options = {});

// ---------------------------------------------------------------------------
// Rubber bands and non-symmetric stresses

struct RubberBandOptions {
  std::optional<std::vector<Vertex>> exceptional;  // d+1 vertices; highest degree when unset
  bool random_weights = true;                      // false: all weights 1
  double jitter = 1e-6;                            // relative to configuration diameter
  int max_retries = 10;
  double simplex_perturbation = 0.05;
  std::uint64_t seed = 0;
};

struct RubberBand {
  GraphFramework framework;
  std::vector<Vertex> exceptional;
  std::vector<double> edge_weights;  // parallel to framework.structure.edges()
  bool convex_containment = false;
  bool connectivity_ok = false;      // graph is (d+1)-vertex-connected
  std::vector<std::string> warnings;
};

/// Pins d+1 exceptional vertices near a regular simplex and places every other
/// vertex at the positive weighted average of its neighbors, then perturbs by
/// a small jitter while keeping convex containment.
///
/// Throws DegenerateInstance when some component of the unpinned vertices has
/// no pinned neighbor.
RubberBand rubber_band_embedding(const Graph& graph, int d, const RubberBandOptions& options = {});

struct StressMatrix {
  Eigen::MatrixXd matrix;
  bool symmetric = false;
  std::vector<Vertex> zero_rows;  // vertices whose edge vectors admit no relation
};

/// Random non-symmetric equilibrium stress: row i is a uniformly random unit
/// element of the null space of vertex i's edge-vector matrix.
StressMatrix nonsymmetric_stress(const GraphFramework& framework, std::uint64_t seed,
                                 double rel_tol = kDefaultRelTol);

/// Stress whose non-exceptional rows have strictly positive off-diagonal
/// entries on edges, built from rubber-band barycentric weights.
/// Throws DegenerateInstance if a non-exceptional vertex is not strictly inside
/// the convex hull of its neighbors.
StressMatrix positive_stress(const RubberBand& rubber_band, std::uint64_t seed,
                             double rel_tol = kDefaultRelTol);

/// Strictly positive weights w with sum_j w_j (q_j - q_i) = 0, found by
/// correcting `hint` with a minimal-norm update. Empty if the correction
/// leaves a nonpositive weight.
std::optional<Eigen::VectorXd> positive_barycentric_weights(const GraphFramework& framework, Vertex i,
                                                            const Eigen::Ref<const Eigen::VectorXd>& hint);

/// Worst relative violations of the affinity/stress conditions.
struct MatrixResiduals {
  double row_sum = 0;       // max_i |sum_j M_ij| / ||M_i||
  double annihilation = 0;  // ||M P_c||_F / (||M||_F ||P_c||_F)
  double support = 0;       // largest |entry| off the allowed support
  double symmetry = 0;      // ||M - M^T||_F / ||M||_F
};

MatrixResiduals affinity_residuals(const AffinityMatrix& m, const HypergraphFramework& framework);
MatrixResiduals stress_residuals(const Eigen::Ref<const Eigen::MatrixXd>& m, const GraphFramework& framework);

struct NeighborhoodVerdict {
  RigidityVerdict verdict;        // final verdict
  int stage = 1;                  // stage that decided
  int stage1_corank = 0;
  std::optional<int> concatenated_corank;  // d+2 stacked stresses
  std::optional<int> affinity_corank;      // strong affinity matrix of N(graph)
};

struct NeighborhoodTestOptions {
  double rel_tol = kDefaultRelTol;
  std::uint64_t seed = 0;
  bool always_run_stage2 = false;
};

/// Neighborhood affine rigidity. Stage 1: one random non-symmetric stress of
/// corank d+1 certifies rigidity. Stage 2: stack d+2 random stresses and
/// decide from the strong affinity matrix of the neighborhood hypergraph.
NeighborhoodVerdict neighborhood_affine_rigidity_test(const GraphFramework& framework,
                                                      const NeighborhoodTestOptions& options = {});

// ---------------------------------------------------------------------------
// Conic at infinity and universal rigidity

struct ConicTest {
  bool on_conic = false;
  double margin = 0;     // sigma_min / sigma_max of the monomial matrix (0 if underdetermined)
  Eigen::MatrixXd form;  // a symmetric Q vanishing on all directions, when on_conic
  bool shortcut = false; // decided by a hyperedge spanning R^d
};

/// Row of quadratic monomials of a direction: e_a e_b for a <= b, cross terms doubled.
Eigen::RowVectorXd quadratic_monomials(const Eigen::Ref<const Eigen::VectorXd>& direction);

/// Symmetric d x d matrix from its upper-triangle parameter vector (row-major a <= b).
Eigen::MatrixXd symmetric_from_parameters(const Eigen::Ref<const Eigen::VectorXd>& params, int d);

/// Do the edge directions p(u)-p(w) lie on a conic at infinity?
ConicTest conic_at_infinity_test(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                 const std::vector<Edge>& edges, double rel_tol = kDefaultRelTol);
ConicTest conic_at_infinity_test(const GraphFramework& framework, double rel_tol = kDefaultRelTol);
/// Body-graph test, short-circuited when some hyperedge affinely spans R^d.
ConicTest conic_at_infinity_test(const HypergraphFramework& framework, double rel_tol = kDefaultRelTol);

enum class UniversalRoute { affine_rigidity, psd_stress };
const char* to_string(UniversalRoute r);

/// One-sided universal rigidity certificate. `certified == false` means
/// inconclusive, never "not universally rigid".
struct UniversalCertificate {
  bool certified = false;
  UniversalRoute route = UniversalRoute::affine_rigidity;
  std::string detail;
  int corank = 0;
  std::optional<ConicTest> conic;
  std::optional<Eigen::MatrixXd> psd_stress;  // Omega^T Omega, for the squared graph
  double psd_min_eigenvalue = 0;
  int psd_rank = 0;
};

/// Affine route: affinely rigid and body-graph directions not on a conic.
UniversalCertificate universal_rigidity_certificate(const HypergraphFramework& framework,
                                                    double rel_tol = kDefaultRelTol);
/// Graph frameworks: the affine route applies to the graph as a 2-hypergraph;
/// the PSD route certifies the squared-graph framework via Omega^T Omega.
UniversalCertificate universal_rigidity_certificate(const GraphFramework& framework, UniversalRoute route,
                                                    double rel_tol = kDefaultRelTol,
                                                    std::uint64_t seed = 0);

}  // namespace affrig
