#include <cmath>

#include "affrig/rigidity.hpp"

namespace affrig {

const char* to_string(UniversalRoute r) {
  return r == UniversalRoute::affine_rigidity ? "affine-rigidity" : "psd-stress";
}

Eigen::RowVectorXd quadratic_monomials(const Eigen::Ref<const Eigen::VectorXd>& direction) {
  const Eigen::Index d = direction.size();
  Eigen::RowVectorXd row(d * (d + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a; b < d; ++b) row(k++) = (a == b ? 1.0 : 2.0) * direction(a) * direction(b);
  return row;
}

Eigen::MatrixXd symmetric_from_parameters(const Eigen::Ref<const Eigen::VectorXd>& params, int d) {
  if (params.size() != d * (d + 1) / 2) throw InvalidInput("parameter vector has wrong length");
  Eigen::MatrixXd q(d, d);
  Eigen::Index k = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) q(a, b) = q(b, a) = params(k++);
  return q;
}

ConicTest conic_at_infinity_test(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Edge>& edges,
                                 double rel_tol) {
  const int d = static_cast<int>(points.cols());
  if (d < 1) throw InvalidInput("dimension must be positive");
  const Eigen::Index unknowns = d * (d + 1) / 2;
  Eigen::MatrixXd rows(edges.size(), unknowns);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Eigen::VectorXd e = (points.row(edges[k].first) - points.row(edges[k].second)).transpose();
    const double n = e.norm();
    if (n > 0) e /= n;
    rows.row(k) = quadratic_monomials(e);
  }
  const auto kernel = numerical_kernel(rows, rel_tol);
  ConicTest out;
  out.on_conic = kernel.dimension > 0;
  if (static_cast<Eigen::Index>(edges.size()) >= unknowns && kernel.singular_values.size() > 0 &&
      kernel.singular_values(0) > 0)
    out.margin = kernel.singular_values(unknowns - 1) / kernel.singular_values(0);
  if (out.on_conic) out.form = symmetric_from_parameters(kernel.basis.col(0), d);
  return out;
}

ConicTest conic_at_infinity_test(const GraphFramework& framework, double rel_tol) {
  validate(framework);
  return conic_at_infinity_test(framework.points, framework.structure.edges(), rel_tol);
}

ConicTest conic_at_infinity_test(const HypergraphFramework& framework, double rel_tol) {
  validate(framework);
  const int d = framework.dim();
  for (const Hyperedge& h : framework.structure.hyperedges()) {
    if (static_cast<int>(h.size()) < d + 1) continue;
    Eigen::MatrixXd local(h.size(), d);
    for (std::size_t i = 0; i < h.size(); ++i) local.row(i) = framework.points.row(h[i]);
    if (affine_span_dimension(local, rel_tol) == d) {
      ConicTest out;
      out.shortcut = true;
      return out;
    }
  }
  return conic_at_infinity_test(framework.points, body_graph(framework.structure).edges(), rel_tol);
}

UniversalCertificate universal_rigidity_certificate(const HypergraphFramework& framework, double rel_tol) {
  UniversalCertificate out;
  out.route = UniversalRoute::affine_rigidity;
  RigidityVerdict affine;
  try {
    affine = affine_rigidity_test(framework, rel_tol);
  } catch (const ImproperFramework& e) {
    out.detail = e.what();
    return out;
  } catch (const UnsupportedInstance& e) {
    out.detail = e.what();
    return out;
  }
  out.corank = affine.corank;
  if (affine.verdict != Verdict::rigid) {
    out.detail = "not affinely rigid (corank " + std::to_string(affine.corank) + ")";
    return out;
  }
  out.conic = conic_at_infinity_test(framework, rel_tol);
  if (out.conic->on_conic) {
    out.detail = "affinely rigid but body-graph edge directions lie on a conic at infinity";
    return out;
  }
  out.certified = true;
  out.detail = "affinely rigid with corank d+1 and edge directions off every conic at infinity";
  return out;
}

UniversalCertificate universal_rigidity_certificate(const GraphFramework& framework, UniversalRoute route,
                                                    double rel_tol, std::uint64_t seed) {
  if (route == UniversalRoute::affine_rigidity)
    return universal_rigidity_certificate(
        HypergraphFramework{as_hypergraph(framework.structure), framework.points}, rel_tol);

  validate(framework);
  UniversalCertificate out;
  out.route = UniversalRoute::psd_stress;
  const int d = framework.dim();
  const int v = framework.vertex_count();
  if (v < d + 1 || affine_span_dimension(framework.points, rel_tol) != d) {
    out.detail = "framework is not proper";
    return out;
  }
  const StressMatrix omega = nonsymmetric_stress(framework, seed, rel_tol);
  out.corank = corank(omega.matrix, rel_tol);
  if (out.corank != d + 1) {
    out.detail = "random non-symmetric stress has corank " + std::to_string(out.corank) + " > d+1";
    return out;
  }

  const Eigen::MatrixXd psd = omega.matrix.transpose() * omega.matrix;
  const GraphFramework squared{squared_graph(framework.structure), framework.points};
  const MatrixResiduals res = stress_residuals(psd, squared);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(psd);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  out.psd_min_eigenvalue = eig.eigenvalues().minCoeff();
  // rank(Omega^T Omega) = rank(Omega); squaring would halve the usable digits.
  out.psd_rank = v - out.corank;
  out.psd_stress = psd;
  out.conic = conic_at_infinity_test(squared, rel_tol);

  const double stress_tol = 1e-8;
  if (res.row_sum > stress_tol || res.annihilation > stress_tol || res.support > stress_tol * top) {
    out.detail = "Omega^T Omega fails the equilibrium conditions on the squared graph";
    return out;
  }
  if (out.psd_min_eigenvalue < -stress_tol * top || out.psd_rank != v - d - 1) {
    out.detail = "Omega^T Omega is not positive semidefinite of rank v-d-1";
    return out;
  }
  if (out.conic->on_conic) {
    out.detail = "squared-graph edge directions lie on a conic at infinity";
    return out;
  }
  out.certified = true;
  out.detail = "Omega^T Omega is a PSD equilibrium stress of rank v-d-1 for the squared graph";
  return out;
}

}  // namespace affrig
