#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "gen.hpp"
#include "tubeband/band_structure.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/error.hpp"
#include "tubeband/graph_model.hpp"
#include "tubeband/homogenization.hpp"
#include "tubeband/m_matrix.hpp"

using namespace tubeband;
constexpr double pi = std::numbers::pi;

namespace {

const double Ap = critical_potentials().A_plus;

double trapezoid_norm_sq(const EdgeSolution& s, int points = 10000) {
  const double h = s.length / points;
  double acc = 0;
  for (int i = 0; i <= points; ++i) {
    const double w = (i == 0 || i == points) ? 0.5 : 1.0;
    acc += w * std::norm(s.value(i * h));
  }
  return acc * h;
}

// K_sigma rectangle [-1,1] x ([0.5,2] u [-2,-0.5])
cdouble k_sigma_point(Gen& g) {
  const double im = g.uniform(0.5, 2.0);
  return {g.uniform(-1.0, 1.0), g.integer(0, 1) ? im : -im};
}

}  // namespace

TEST_CASE("band edge wavenumber") {
  CHECK(std::abs(band_edge_wavenumber(Ap) - pi / 5) < 1e-10);
  CHECK(std::abs(band_edge_wavenumber(0.0)) < 1e-7);
  const double delta = -1e-3, A = Ap + delta;
  const double lhs = 2 * std::cos(band_edge_wavenumber(A));
  CHECK(std::abs(lhs - (std::cos(Ap) + 1 - delta * std::sin(Ap))) < 10 * delta * delta);
  CHECK_THROWS_AS(band_edge_wavenumber(std::nan("")), Error);
}

TEST_CASE("kappa0 squared") {
  const double k = gamma_norm_sq(0.0, Ap);
  CHECK(std::abs(k - 1.26787) < 1e-4);
  const double r5 = std::sqrt(5.0);
  const double closed = (2 * (r5 + 7) * pi - 20 * std::sqrt(10 - 2 * r5)) / ((5 - r5) * pi);
  CHECK(std::abs(k - closed) < 1e-4);
  CHECK(std::abs(kappa0_sq_closed_form() - closed) < 1e-14);
  // derivative of the band-edge eigenvalue in z equals the band-mode norm
  CHECK(std::abs(gamma_norm_sq(0.0, Ap, GammaDirection::band_mode) - 2.0) < 1e-10);
}

TEST_CASE("kappa squared is O(tau) close to kappa0 squared") {
  const double k0 = gamma_norm_sq(0.0, Ap);
  const double C = std::abs(gamma_norm_sq(0.1, Ap) - k0) / 0.1;
  for (int i = -100; i <= 100; ++i) {
    const double tau = 1e-3 * i;
    CHECK(std::abs(gamma_norm_sq(tau, Ap) - k0) <= C * std::abs(tau) * (1 + 1e-9) + 1e-14);
  }
}

TEST_CASE("closed-form edge norm against trapezoid quadrature") {
  Gen gen(51);
  for (int i = 0; i < 40; ++i) {
    const cdouble a = gen.complex(1.0), b = gen.complex(1.0);
    const double k = gen.uniform(0.1, 3.0);
    const double len = gen.uniform(0.3, 1.0);
    if (std::abs(std::sin(k * len)) < 0.05) continue;
    const auto s = solve_edge(a, b, k * k, gen.uniform(-2.0, 2.0), len);
    CHECK(std::abs(solution_norm_sq(s) - trapezoid_norm_sq(s)) < 1e-8);
  }
  const auto g = build_g1(Ap);
  const auto nu = nu_minus(0.0, Ap);
  const auto sols = gamma_solution(g, std::pow(pi / 5, 2), 0.0, nu.cast<cdouble>());
  double quad = 0;
  for (const auto& s : sols) quad += trapezoid_norm_sq(s);
  CHECK(std::abs(quad - gamma_norm_sq(0.0, Ap)) < 1e-8);
}

TEST_CASE("edge solutions solve the magnetic ODE and match endpoints") {
  Gen gen(52);
  for (int i = 0; i < 200; ++i) {
    const cdouble z = gen.complex(4.0);
    const double B = gen.uniform(-2.0, 2.0), len = gen.uniform(0.5, 1.0);
    const cdouble a = gen.complex(1.0), b = gen.complex(1.0);
    EdgeSolution s;
    try {
      s = solve_edge(a, b, z, B * len, len);
    } catch (const Error&) {
      continue;
    }
    CHECK(std::abs(s.value(0.0) - a) < 1e-12);
    CHECK(std::abs(s.value(len) - b) < 1e-12 * std::max(1.0, std::abs(s.alpha) + std::abs(s.beta)));
    const cdouble I(0, 1);
    const double h = 2e-4;
    for (double x : {0.2 * len, 0.5 * len, 0.8 * len}) {
      const cdouble u = s.value(x), up = s.value(x + h), um = s.value(x - h);
      const cdouble d1 = (up - um) / (2 * h), d2 = (up - 2.0 * u + um) / (h * h);
      const cdouble lhs = -(d2 + 2.0 * I * B * d1 - B * B * u);
      CHECK(std::abs(lhs - z * u) < 1e-5 * std::max(1.0, std::abs(u) + std::abs(z * u)));
    }
  }
  CHECK_THROWS_AS(solve_edge(1.0, 1.0, pi * pi, 0.0), Error);
}

TEST_CASE("homogenized model") {
  const auto m = homogenized_model(0.0);
  CHECK(m.A == Ap);
  CHECK(m.k0_prime == doctest::Approx(pi / 5).epsilon(1e-12));
  CHECK(m.c2 > 0);
  CHECK(m.c4 > 0);
  CHECK(m.regime == Regime::delta_nonpositive);
  CHECK(homogenized_model(1e-3, 0.1).regime == Regime::delta_small_positive);
  CHECK_THROWS_AS(homogenized_model(0.5, 0.1), Error);
  try {
    homogenized_model(0.5, 0.1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::regime_violation);
  }
  Gen gen(53);
  for (int i = 0; i < 200; ++i) CHECK(homogenized_model(gen.uniform(-0.05, 0.0)).c4 > 0);
  const auto j = nlohmann::json::parse(homogenized_json(m));
  for (const char* key : {"A", "delta", "k0_prime", "kappa0_sq", "c2", "c4", "regime"}) CHECK(j.contains(key));
  CHECK(j["regime"] == "delta_nonpositive");
}

TEST_CASE("sigma symbol") {
  const auto m0 = homogenized_model(0.0);
  Gen gen(54);
  for (int i = 0; i < 1000; ++i) {
    const double tau = gen.uniform(-pi, pi), eps = gen.uniform(0.01, 1.0);
    CHECK(sigma_symbol(m0, tau, eps) == doctest::Approx(-m0.c4 * std::pow(tau, 4) / (eps * eps)));
    const auto md = homogenized_model(gen.uniform(-0.1, -1e-6));
    CHECK(sigma_symbol(md, 0.0, eps) == 0.0);
    if (tau != 0.0) CHECK(sigma_symbol(md, tau, eps) < 0);
  }
}

TEST_CASE("fiber rational approximant") {
  const auto m = homogenized_model(-0.01);
  Gen gen(55);
  for (int i = 0; i < 1000; ++i) {
    const cdouble z = k_sigma_point(gen);
    const double tau = gen.uniform(-pi, pi), eps = gen.uniform(0.01, 1.0);
    const cdouble r = fiber_rational_approximant(m, z, tau, eps);
    CHECK(std::abs(fiber_rational_approximant(m, std::conj(z), tau, eps) - std::conj(r)) < 1e-15 * std::abs(r));
    CHECK(std::abs(1.0 / r) >= 2 * 0.5 - 1e-12);
    CHECK(std::abs(fiber_rational_approximant(m, z, 0.0, eps) - 1.0 / (2.0 * z)) < 1e-15);
  }
  CHECK_THROWS_AS(fiber_rational_approximant(m, cdouble(0.3, 0.1), 0.1, 0.1), Error);
}

TEST_CASE("approximant tracks the inverse band eigenvalue") {
  for (double delta : {0.0, -0.01}) {
    const auto m = homogenized_model(delta);
    const double A = Ap + delta;
    const double k0 = band_edge_wavenumber(A);
    auto sup_err = [&](double eps) {
      double worst = 0;
      for (cdouble z : {cdouble(0, 1), cdouble(0.5, 1), cdouble(-1, 0.5), cdouble(0.2, -2)})
        for (int j = 0; j < 129; ++j) {
          const double tau = -pi + 2 * pi * (j + 0.5) / 129;
          const cdouble lam = m_eigensystem(k0 * k0 + eps * eps * z, tau, A).lambda_plus;
          worst = std::max(worst, std::abs(eps * eps / lam - fiber_rational_approximant(m, z, tau, eps)));
        }
      return worst;
    };
    auto rate = [&](double eps) {
      return (delta == 0.0 ? eps : std::min(eps, eps * eps / std::abs(delta))) + std::abs(delta);
    };
    const double C = sup_err(1.0 / 16) / rate(1.0 / 16);
    for (double eps : {1.0 / 32, 1.0 / 64, 1.0 / 128}) CHECK(sup_err(eps) <= C * rate(eps) * 1.05);
  }
}

TEST_CASE("minus sector is O(eps^2)") {
  const double A = Ap;
  const double k0 = band_edge_wavenumber(A);
  double C = 0;
  for (double eps : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    double worst = 0;
    for (cdouble z : {cdouble(0, 1), cdouble(1, 0.5), cdouble(-1, -2)})
      for (int j = 0; j < 129; ++j) {
        const double tau = -pi + 2 * pi * (j + 0.5) / 129;
        const cdouble lam = m_eigensystem(k0 * k0 + eps * eps * z, tau, A).lambda_minus;
        worst = std::max(worst, std::abs(eps * eps / lam));
      }
    if (C == 0) C = worst / (eps * eps);
    CHECK(worst <= C * eps * eps * 1.05);
  }
}

TEST_CASE("effective operator symbol") {
  const auto m0 = homogenized_model(0.0);
  CHECK(effective_operator_symbol(m0, 0.0) == 0.0);
  Gen gen(56);
  for (int i = 0; i < 1000; ++i) {
    const double xi = gen.uniform(-5, 5);
    CHECK(effective_operator_symbol(m0, xi) == doctest::Approx(m0.c4 * std::pow(xi, 4) / m0.kappa0_sq));
    CHECK(effective_operator_symbol(m0, -xi) == effective_operator_symbol(m0, xi));
    // identity with the fiber approximant at the reference scale
    const auto m = homogenized_model(gen.uniform(-0.1, 0.1));
    const cdouble z = k_sigma_point(gen);
    const cdouble lhs = 1.0 / (effective_operator_symbol(m, xi) - 2.0 * z / m.kappa0_sq);
    const cdouble rhs = -m.kappa0_sq * fiber_rational_approximant(m, z, xi, 1.0);
    CHECK(std::abs(lhs - rhs) < 1e-14 * std::max(1.0, std::abs(lhs)));
  }
}
