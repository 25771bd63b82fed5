#include "tubeband/criticality.hpp"

#include <cmath>
#include <numbers>

#include "tubeband/error.hpp"
#include "tubeband/settings.hpp"

namespace tubeband {

namespace {

constexpr double pi = std::numbers::pi;

bool edge_is_max(const BandEdgeRef& e) {
  const bool even = e.branch % 2 == 0;
  return (e.side == EdgeSide::lower) == even;
}

double fourth_coefficient(double s, double A, Sign sign, double k0) {
  const double h = 1e-2;
  const double factor = std::abs(k0) > 1e-8 ? k0 / std::sin(k0) : 1.0;
  auto f = [&](double t) { return f_pm(t, A, sign); };
  const double d4 = (f(s + 2 * h) - 4 * f(s + h) + 6 * f(s) - 4 * f(s - h) + f(s - 2 * h)) / std::pow(h, 4);
  return 2.0 * factor * d4 / 24.0;
}

}  // namespace

CriticalPotentials critical_potentials() {
  const double r5 = std::sqrt(5.0);
  return {std::acos((r5 - 1.0) / 2.0), std::acos((1.0 - r5) / 2.0)};
}

std::array<double, 4> mu_coefficients(double s, double A, double k0) {
  const double sk = std::sin(k0);
  if (std::abs(k0) > 1e-8 && std::abs(sk) < tolerances().pole)
    throw Error(ErrorCode::pole, "sin k0 vanishes at k0 = " + std::to_string(k0));
  const double f = std::abs(k0) > 1e-8 ? k0 / sk : 1.0;
  const double SA = std::sin(A), CA = std::cos(A), Ss = std::sin(s), Cs = std::cos(s);
  const double SA2 = SA * SA, Ss2 = Ss * Ss;
  const double r = 1.0 + SA2 * Ss2;
  const double mu1 = 2.0 * f * Ss * (SA2 * Cs / std::sqrt(r) - CA);
  const double mu2 = f * ((SA2 * Cs * Cs - SA2 * Ss2 - SA2 * SA2 * Ss2 * Ss2) / std::pow(r, 1.5) - CA * Cs);
  const double mu3 = f / 3.0 *
                     (-SA2 * Cs * Ss * (4.0 + 3.0 * SA2 * Cs * Cs + 5.0 * SA2 * Ss2 + SA2 * SA2 * Ss2 * Ss2) /
                          std::pow(r, 2.5) +
                      CA * Ss);
  return {0.0, mu1, mu2, mu3};
}

EdgeLocation locate_edge(double A, const BandEdgeRef& edge) {
  if (edge.branch < 0) throw Error(ErrorCode::invalid_argument, "branch index must be >= 0");
  EdgeLocation loc;
  loc.is_max = edge_is_max(edge);
  bool first = true;
  for (double t : critical_points(A, edge.sign)) {
    const double v = f_pm(t, A, edge.sign);
    if (first || (loc.is_max ? v > loc.f_value : v < loc.f_value)) {
      loc.s = t;
      loc.f_value = v;
      first = false;
    }
  }
  if (std::abs(loc.f_value) > 2.0)
    throw Error(ErrorCode::numerical, "unresolved extremum: |f| > 2 at the edge");
  const double arc = std::acos(loc.f_value / 2.0);
  loc.k0 = edge.branch % 2 == 0 ? pi * edge.branch + arc : pi * (edge.branch + 1) - arc;
  return loc;
}

DegeneracyResult analyze_degeneracy(double A, const BandEdgeRef& edge) {
  const EdgeLocation loc = locate_edge(A, edge);
  DegeneracyResult r;
  r.s = loc.s;
  r.k0 = loc.k0;
  if (edge.sign == Sign::plus) {
    r.mu = mu_coefficients(loc.s, A, loc.k0);
  } else {
    // f_-(t) = -f_+(t - pi)
    const auto m = mu_coefficients(loc.s - pi, A, loc.k0);
    r.mu = {0.0, -m[1], -m[2], -m[3]};
  }
  r.mu4 = fourth_coefficient(loc.s, A, edge.sign, loc.k0);
  const bool vanishing = std::abs(r.mu[2]) < tolerances().degeneracy;
  r.order = vanishing ? 4 : 2;
  r.outside_case = vanishing && std::abs(std::sin(loc.s)) > 1e-6;
  if (vanishing && std::abs(r.mu4) < 1e-6)
    throw Error(ErrorCode::numerical, "fourth Taylor coefficient also vanishes at the edge");
  return r;
}

int degeneracy_order(double A, const BandEdgeRef& edge) { return analyze_degeneracy(A, edge).order; }

std::optional<std::pair<double, double>> tau_extrema(double A_prime) {
  const double s2 = std::sin(A_prime) * std::sin(A_prime);
  const double c = std::cos(A_prime);
  if (!(s2 > 0.0)) return std::nullopt;
  const double r = (s2 * s2 - c * c) / s2;
  // roundoff at the critical potential itself: the pair has coalesced at 0
  if (r < -1e-14) return std::nullopt;
  double t = std::asin(std::min(1.0, std::sqrt(std::max(0.0, r))));
  if (c < 0.0) t = pi - t;
  return std::make_pair(-t, t);
}

double tau_extrema_asymptotic(double delta) {
  if (delta < 0.0) throw Error(ErrorCode::invalid_argument, "delta must be >= 0");
  const double A = critical_potentials().A_plus;
  return std::sqrt(2.0 * delta * (std::sin(2.0 * A) + std::sin(A)));
}

CriticalityReport criticality_report(double A, const BandEdgeRef& edge) {
  const auto cp = critical_potentials();
  const auto d = analyze_degeneracy(A, edge);
  CriticalityReport r;
  r.A_plus = cp.A_plus;
  r.A_minus = cp.A_minus;
  r.A = A;
  r.mu = d.mu;
  r.s = d.s;
  r.degeneracy_order = d.order;
  r.tau_pm = tau_extrema(A);
  return r;
}

std::vector<MuScanRow> mu_scan(double A_lo, double A_hi, int points) {
  if (points < 1) throw Error(ErrorCode::invalid_argument, "scan needs at least one point");
  std::vector<MuScanRow> rows;
  for (int i = 0; i < points; ++i) {
    const double A = points == 1 ? A_lo : A_lo + (A_hi - A_lo) * i / (points - 1);
    const auto d = analyze_degeneracy(A, BandEdgeRef{});
    rows.push_back({A, d.s, d.mu, d.order});
  }
  return rows;
}

}  // namespace tubeband
