#include "tubeband/m_matrix.hpp"

#include <cmath>

#include "tubeband/error.hpp"
#include "tubeband/settings.hpp"

namespace tubeband {

namespace {

void check_pole(cdouble s, cdouble z) {
  if (std::abs(s) < tolerances().pole)
    throw Error(ErrorCode::pole, "z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                     ") is a Dirichlet eigenvalue of an edge");
}

Eigen::MatrixXcd assemble(const FundamentalGraph& g, cdouble z, double t, double eps) {
  g.require_one_dimensional();
  const cdouble k = principal_sqrt(z);
  const std::size_t p = g.vertex_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p, p);
  const cdouble I(0.0, 1.0);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    const double l = edge.length * eps;
    const cdouble s = std::sin(k * l);
    check_pole(s, z);
    const double phi = g.edge_phase(e, t, eps, eps);
    const cdouble diag = -edge.weight * k * std::cos(k * l) / s;
    const cdouble off = edge.weight * k / s;
    const std::size_t a = g.index_of(edge.tail);
    const std::size_t b = g.index_of(edge.head);
    m(a, a) += diag;
    m(b, b) += diag;
    m(a, b) += off * std::exp(I * phi);
    m(b, a) += off * std::exp(-I * phi);
  }
  return m;
}

}  // namespace

cdouble principal_sqrt(cdouble z) { return std::sqrt(z); }

MMatrix assemble_m(const FundamentalGraph& g, cdouble z, double t) {
  return MMatrix{z, t, std::nullopt, assemble(g, z, t, 1.0)};
}

MMatrix assemble_m(const ScaledGraph& g, cdouble z, double t) {
  return MMatrix{z, t, std::nullopt, assemble(g.base(), z, t, g.epsilon()) / g.epsilon()};
}

MMatrix closed_form_m_g1(cdouble z, double t, double A) {
  const cdouble k = principal_sqrt(z);
  const cdouble s = std::sin(k);
  check_pole(s, z);
  const cdouble f = 2.0 * k / s;
  const cdouble c = std::cos(k);
  Eigen::MatrixXcd m(2, 2);
  m << f * (-2.0 * c + std::cos(t + A)), f, f, f * (-2.0 * c + std::cos(t - A));
  return MMatrix{z, t, A, m};
}

Eigen::Vector2d nu_plus(double t, double A) {
  const double d = std::sin(A) * std::sin(t);
  const double q = d / std::sqrt(1.0 + d * d);
  return Eigen::Vector2d(std::sqrt(1.0 - q), std::sqrt(1.0 + q)) / std::sqrt(2.0);
}

Eigen::Vector2d nu_minus(double t, double A) {
  const double d = std::sin(A) * std::sin(t);
  const double q = d / std::sqrt(1.0 + d * d);
  return Eigen::Vector2d(std::sqrt(1.0 + q), -std::sqrt(1.0 - q)) / std::sqrt(2.0);
}

MEigenSystem m_eigensystem(cdouble z, double t, double A) {
  const cdouble k = principal_sqrt(z);
  const cdouble s = std::sin(k);
  check_pole(s, z);
  const cdouble f = 2.0 * k / s;
  const double sa = std::sin(A), st = std::sin(t);
  const double r = std::sqrt(1.0 + sa * sa * st * st);
  const cdouble base = -2.0 * std::cos(k) + std::cos(A) * std::cos(t);
  return MEigenSystem{f * (base + r), f * (base - r), nu_plus(t, A), nu_minus(t, A)};
}

}  // namespace tubeband
