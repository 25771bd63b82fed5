#include "tubeband/homogenization.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "tubeband/band_structure.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/error.hpp"
#include "tubeband/settings.hpp"

namespace tubeband {

namespace {

const cdouble I(0.0, 1.0);

}  // namespace

double band_edge_wavenumber(double A_prime) {
  if (!std::isfinite(A_prime)) throw Error(ErrorCode::invalid_argument, "A' must be finite");
  return band_edges_closed_form(A_prime, 0).l_plus;
}

cdouble EdgeSolution::value(double x) const {
  const double B = phase / length;
  return std::exp(-I * B * x) * (alpha * std::cos(k * x) + beta * std::sin(k * x));
}

EdgeSolution solve_edge(cdouble tail_value, cdouble head_value, cdouble z, double phase, double length) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "edge length must be positive");
  const cdouble k = principal_sqrt(z);
  const cdouble s = std::sin(k * length);
  if (std::abs(s) < tolerances().pole)
    throw Error(ErrorCode::pole, "z is a Dirichlet eigenvalue of the edge");
  EdgeSolution e{z, k, length, phase, tail_value, 0.0, tail_value, head_value};
  e.beta = (head_value * std::exp(I * phase) - tail_value * std::cos(k * length)) / s;
  return e;
}

double solution_norm_sq(const EdgeSolution& s) {
  if (std::abs(s.z.imag()) > 0.0 || s.z.real() <= 0.0)
    throw Error(ErrorCode::invalid_argument, "closed-form edge norm needs real positive z");
  const double k = s.k.real(), l = s.length;
  const double s2 = std::sin(2.0 * k * l), sl = std::sin(k * l);
  return std::norm(s.alpha) * (l / 2.0 + s2 / (4.0 * k)) + std::norm(s.beta) * (l / 2.0 - s2 / (4.0 * k)) +
         2.0 * std::real(s.alpha * std::conj(s.beta)) * sl * sl / (2.0 * k);
}

std::vector<EdgeSolution> gamma_solution(const FundamentalGraph& g, cdouble z, double tau,
                                         const Eigen::Vector2cd& boundary) {
  if (g.vertex_count() != 2) throw Error(ErrorCode::unsupported, "gamma_solution expects a two-vertex graph");
  std::vector<EdgeSolution> out;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    out.push_back(solve_edge(boundary(g.index_of(edge.tail)), boundary(g.index_of(edge.head)), z,
                             g.edge_phase(e, tau), edge.length));
  }
  return out;
}

double gamma_norm_sq(double tau, double A_prime, GammaDirection dir) {
  const double k0 = band_edge_wavenumber(A_prime);
  if (std::sin(k0) < tolerances().pole)
    throw Error(ErrorCode::pole, "k0' is a Dirichlet point of the unit edge");
  const Eigen::Vector2d nu = dir == GammaDirection::reference ? nu_minus(tau, A_prime) : nu_plus(tau, A_prime);
  double total = 0.0;
  for (const auto& s : gamma_solution(build_g1(A_prime), k0 * k0, tau, nu.cast<cdouble>()))
    total += solution_norm_sq(s);
  return total;
}

double kappa0_sq_closed_form() {
  const double r5 = std::sqrt(5.0), pi = std::numbers::pi;
  return (2.0 * (r5 + 7.0) * pi - 20.0 * std::sqrt(10.0 - 2.0 * r5)) / ((5.0 - r5) * pi);
}

const char* to_string(Regime r) noexcept {
  return r == Regime::delta_nonpositive ? "delta_nonpositive" : "delta_small_positive";
}

void check_regime(const HomogenizedModel& m, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  const double bound = tolerances().regime_bound;
  if (m.delta > 0.0 && m.delta / (eps * eps) > bound)
    throw Error(ErrorCode::regime_violation,
                "delta = " + std::to_string(m.delta) + " exceeds " + std::to_string(bound) +
                    " eps^2 = " + std::to_string(bound * eps * eps) +
                    "; no scalar effective operator in this regime");
}

HomogenizedModel homogenized_model(double delta, double eps) {
  if (!std::isfinite(delta)) throw Error(ErrorCode::invalid_argument, "delta must be finite");
  HomogenizedModel m;
  m.A = critical_potentials().A_plus;
  m.delta = delta;
  m.regime = delta <= 0.0 ? Regime::delta_nonpositive : Regime::delta_small_positive;
  check_regime(m, eps);
  const double Ap = m.A + delta;
  m.k0_prime = band_edge_wavenumber(Ap);
  if (!(m.k0_prime > 0.0 && m.k0_prime < std::numbers::pi))
    throw Error(ErrorCode::numerical, "k0' outside (0, pi)");
  const double sk = std::sin(m.k0_prime);
  m.c2 = m.k0_prime * (std::sin(2.0 * m.A) + std::sin(m.A)) / sk;
  m.c4 = m.k0_prime / (4.0 * sk);
  m.kappa0_sq = gamma_norm_sq(0.0, m.A, GammaDirection::reference);
  m.kappa_mode_sq = gamma_norm_sq(0.0, Ap, GammaDirection::band_mode);
  return m;
}

double sigma_symbol(const HomogenizedModel& m, double tau, double eps) {
  check_regime(m, eps);
  const double t2 = tau * tau, e2 = eps * eps;
  if (m.regime == Regime::delta_nonpositive) return (m.c2 * m.delta * t2 - m.c4 * t2 * t2) / e2;
  return -m.c4 * t2 * t2 / e2;
}

cdouble fiber_rational_approximant(const HomogenizedModel& m, cdouble z, double tau, double eps) {
  if (std::abs(z.imag()) < tolerances().k_sigma)
    throw Error(ErrorCode::invalid_argument, "z is closer to the real axis than the K_sigma distance");
  return 1.0 / (2.0 * z + sigma_symbol(m, tau, eps));
}

double effective_operator_symbol(const HomogenizedModel& m, double xi) {
  const double x2 = xi * xi;
  if (m.regime == Regime::delta_nonpositive) return (-m.c2 * m.delta * x2 + m.c4 * x2 * x2) / m.kappa0_sq;
  return m.c4 * x2 * x2 / m.kappa0_sq;
}

std::string homogenized_json(const HomogenizedModel& m) {
  nlohmann::ordered_json j;
  j["A"] = m.A;
  j["delta"] = m.delta;
  j["k0_prime"] = m.k0_prime;
  j["kappa0_sq"] = m.kappa0_sq;
  j["c2"] = m.c2;
  j["c4"] = m.c4;
  j["regime"] = to_string(m.regime);
  j["kappa_mode_sq"] = m.kappa_mode_sq;
  return j.dump(2);
}

}  // namespace tubeband
