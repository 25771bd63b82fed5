#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/error.hpp"
#include "tubeband/m_matrix.hpp"

using namespace tubeband;
constexpr double pi = std::numbers::pi;

namespace {

// Taylor coefficients of lambda_+(k0^2, tau) at s from central differences
// (steps h, h/2; h3, h3/2 for the third derivative) with one Richardson step.
std::array<double, 4> fd_taylor(double s, double A, double k0, double h = 1e-3, double h3 = 1e-2) {
  auto lam = [&](double t) { return m_eigensystem(k0 * k0, t, A).lambda_plus.real(); };
  auto d1 = [&](double q) { return (lam(s + q) - lam(s - q)) / (2 * q); };
  auto d2 = [&](double q) { return (lam(s + q) - 2 * lam(s) + lam(s - q)) / (q * q); };
  auto d3 = [&](double q) {
    return (lam(s + 2 * q) - 2 * lam(s + q) + 2 * lam(s - q) - lam(s - 2 * q)) / (2 * q * q * q);
  };
  auto rich = [&](auto d) { return (4 * d(h / 2) - d(h)) / 3; };
  auto rich3 = [&](auto d) { return (4 * d(h3 / 2) - d(h3)) / 3; };
  return {lam(s), rich(d1), rich(d2) / 2, rich3(d3) / 6};
}

double root_bisect(double lo, double hi) {
  auto f = [](double c) { return c * c + c - 1; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) < 0) == (f(mid) < 0) ? lo = mid : hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("critical potentials") {
  const auto cp = critical_potentials();
  CHECK(std::abs(std::cos(cp.A_plus) - std::pow(std::sin(cp.A_plus), 2)) < 1e-14);
  CHECK(std::abs(std::cos(cp.A_minus) + std::pow(std::sin(cp.A_minus), 2)) < 1e-14);
  const double r5 = std::sqrt(5.0);
  CHECK(std::abs(cp.A_plus - std::acos(std::sqrt((r5 - 1) / (r5 + 1)))) < 1e-14);
  CHECK(std::abs(cp.A_plus - std::acos(root_bisect(0, 1))) < 1e-12);
  CHECK(cp.A_plus == doctest::Approx(0.9045568943).epsilon(1e-10));
}

TEST_CASE("mu at s = 0") {
  Gen gen(41);
  for (int i = 0; i < 500; ++i) {
    const double A = gen.uniform(-pi, pi), k0 = gen.uniform(0.1, 3.0);
    const auto mu = mu_coefficients(0.0, A, k0);
    CHECK(mu[0] == 0.0);
    CHECK(mu[1] == 0.0);
    CHECK(mu[3] == 0.0);
    CHECK(mu[2] == doctest::Approx(k0 / std::sin(k0) * (std::pow(std::sin(A), 2) - std::cos(A))).epsilon(1e-13));
    CHECK(((mu[2] > 0) == (std::pow(std::sin(A), 2) - std::cos(A) > 0)));
  }
  const double Ap = critical_potentials().A_plus;
  CHECK(std::abs(mu_coefficients(0.0, Ap, pi / 5)[2]) < 1e-14);
  CHECK_THROWS_AS(mu_coefficients(0.0, 0.3, pi), Error);
}

TEST_CASE("closed-form mu against finite differences at band edges") {
  Gen gen(42);
  for (int i = 0; i < 60; ++i) {
    const double A = gen.uniform(0.05, pi - 0.05);
    const auto loc = locate_edge(A, {});
    const auto mu = mu_coefficients(loc.s, A, loc.k0);
    const auto fd = fd_taylor(loc.s, A, loc.k0);
    CHECK(std::abs(fd[0]) < 1e-12);
    for (int j = 1; j < 4; ++j) CHECK(std::abs(mu[j] - fd[j]) < 1e-6);
    CHECK(std::abs(mu[1]) < 1e-8);
  }
}

TEST_CASE("closed-form mu at arbitrary s") {
  Gen gen(43);
  for (int i = 0; i < 200; ++i) {
    const double A = gen.uniform(-pi, pi), s = gen.uniform(-pi, pi), k0 = gen.uniform(0.2, 2.8);
    const auto mu = mu_coefficients(s, A, k0);
    const auto fd = fd_taylor(s, A, k0);
    for (int j = 1; j < 4; ++j) CHECK(std::abs(mu[j] - fd[j]) < 1e-6);
  }
}

TEST_CASE("interior-extremum mu2 closed form") {
  Gen gen(44);
  int seen = 0;
  for (int i = 0; i < 400 && seen < 100; ++i) {
    const double A = gen.uniform(0.91, pi - 0.91);
    const double S = std::sin(A);
    const auto tp = tau_extrema(A);
    if (!tp || tp->second < 1e-3) continue;
    ++seen;
    const double s = tp->second;
    const double k0 = std::acos(f_pm(s, A, Sign::plus) / 2);
    const double closed = k0 / std::sin(k0) * (1 - 2 * std::pow(S, 4) - std::pow(S, 6)) /
                          (std::abs(std::pow(S, 3)) * std::pow(1 + S * S, 1.5));
    CHECK(std::abs(closed - fd_taylor(s, A, k0)[2]) < 1e-6);
    CHECK(std::abs(closed - mu_coefficients(s, A, k0)[2]) < 1e-10);
    CHECK(std::abs(mu_coefficients(s, A, k0)[1]) < 1e-10);
  }
  CHECK(seen >= 50);
}

TEST_CASE("degeneracy order") {
  const double Ap = critical_potentials().A_plus;
  CHECK(degeneracy_order(pi / 9, {}) == 2);
  CHECK(degeneracy_order(Ap, {}) == 4);
  CHECK(degeneracy_order(0.3, {}) == 2);
  CHECK(degeneracy_order(Ap + 1e-6, {}) == 2);
  CHECK(degeneracy_order(Ap - 1e-6, {}) == 2);
  // right edge of band 4, left edges of bands 2 and 4
  CHECK(degeneracy_order(Ap, {Sign::plus, 1, EdgeSide::upper}) == 4);
  CHECK(degeneracy_order(Ap, {Sign::plus, 3, EdgeSide::upper}) == 4);
  CHECK(degeneracy_order(Ap, {Sign::plus, 2, EdgeSide::lower}) == 4);
  CHECK(degeneracy_order(Ap, {Sign::minus, 0, EdgeSide::lower}) == 2);
  CHECK(degeneracy_order(Ap, {Sign::plus, 1, EdgeSide::lower}) == 2);
  const auto d = analyze_degeneracy(Ap, {});
  CHECK(std::abs(d.mu4) > 1e-3);
  CHECK_FALSE(d.outside_case);
  CHECK(d.k0 == doctest::Approx(pi / 5).epsilon(1e-12));
}

TEST_CASE("mu1 vanishes at every extremizing s") {
  Gen gen(45);
  for (int i = 0; i < 1000; ++i) {
    const double A = gen.uniform(0.02, pi - 0.02);
    for (Sign sign : {Sign::plus, Sign::minus})
      for (EdgeSide side : {EdgeSide::lower, EdgeSide::upper}) {
        const auto d = analyze_degeneracy(A, {sign, 0, side});
        CHECK(std::abs(d.mu[1]) < 1e-8);
      }
  }
}

TEST_CASE("tau extrema") {
  const double Ap = critical_potentials().A_plus;
  const auto at = tau_extrema(Ap);
  REQUIRE(at.has_value());
  CHECK(std::abs(at->second) < 1e-6);
  CHECK(at->first == -at->second);
  const auto near = tau_extrema(Ap + 1e-4);
  REQUIRE(near.has_value());
  CHECK(near->second / tau_extrema_asymptotic(1e-4) == doctest::Approx(1.0).epsilon(5e-3));
  CHECK_FALSE(tau_extrema(pi / 9).has_value());
  double prev = pi;
  for (int i = 1; i <= 12; ++i) {
    const double eta = std::pow(10.0, -i / 2.0);
    const double t = tau_extrema(Ap + eta).value().second;
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("mu scan") {
  const auto rows = mu_scan(0.0, pi / 2, 11);
  CHECK(rows.size() == 11);
  CHECK(rows.front().A == 0.0);
  CHECK(rows.back().A == doctest::Approx(pi / 2));
  const auto r = criticality_report(critical_potentials().A_plus);
  CHECK(r.degeneracy_order == 4);
}
