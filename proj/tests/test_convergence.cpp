#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "tubeband/convergence.hpp"
#include "tubeband/error.hpp"

using namespace tubeband;
constexpr double pi = std::numbers::pi;

TEST_CASE("tau grid") {
  const auto g = tau_grid(257);
  CHECK(g.size() == 257);
  CHECK(g[128] == 0.0);
  CHECK(g.front() == doctest::Approx(-pi + pi / 257));
  CHECK(std::is_sorted(g.begin(), g.end()));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(-g[g.size() - 1 - i]).epsilon(1e-14));
  CHECK(tau_grid(4).size() == 4);
}

TEST_CASE("log slope fit") {
  Gen gen(71);
  for (int i = 0; i < 200; ++i) {
    const double p = gen.uniform(0.1, 2.0), c = gen.uniform(0.1, 10.0);
    std::vector<double> eps, err;
    for (int k = 3; k <= 7; ++k) {
      eps.push_back(std::pow(2.0, -k));
      err.push_back(c * std::pow(eps.back(), p));
    }
    const auto fit = fit_log_slope(eps, err);
    CHECK(fit.slope == doctest::Approx(p).epsilon(1e-10));
    CHECK(fit.residual < 1e-10);
  }
}

TEST_CASE("rate bound") {
  CHECK(rate_bound(0.01, 0.0) == doctest::Approx(0.1));
  CHECK(rate_bound(0.01, -0.05) == doctest::Approx(0.1 + 0.05));
  CHECK(rate_bound(0.25, -0.05) == doctest::Approx(0.5 + 0.05));
}

TEST_CASE("assess rates") {
  ConvergenceReport r;
  r.regime = "delta_nonpositive";
  r.records.push_back({});
  r.fits = {{0.6, 0, 0}};
  CHECK(assess_rates(r).pass);
  r.fits = {{0.3, 0, 0}};
  CHECK_FALSE(assess_rates(r).pass);
  r.fits = {{0.6, 0, 0}};
  r.under_resolved = true;
  CHECK_FALSE(assess_rates(r).pass);
}

TEST_CASE("small sweep") {
  SweepConfig cfg;
  cfg.eps_list = {0.25, 0.125, 0.0625};
  cfg.tau_points = 17;
  cfg.n = 60;
  cfg.jobs = 1;
  cfg.check_refinement = false;
  const auto rep = convergence_sweep(cfg);
  REQUIRE(rep.records.size() == 3);
  CHECK(rep.tau_points == 17);
  CHECK(rep.n == 60);
  CHECK(rep.regime == "delta_nonpositive");
  CHECK(!rep.note.empty());
  CHECK(rep.note == fiber_sufficiency_note());
  for (const auto& rec : rep.records) {
    CHECK(rec.sup_error > 0);
    CHECK(rec.sup_error < 1);
    CHECK_FALSE(rec.refined_sup_error.has_value());
  }
  CHECK(rep.records[2].sup_error < rep.records[0].sup_error);
  CHECK(rep.fits.size() == 1);

  // thread count does not change the result
  cfg.jobs = 3;
  const auto rep3 = convergence_sweep(cfg);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rep3.records[i].sup_error == rep.records[i].sup_error);

  cfg.delta_per_eps2 = 1.0;
  const auto pos = convergence_sweep(cfg);
  CHECK(pos.regime == "delta_small_positive");
  CHECK(pos.records[1].delta == doctest::Approx(0.125 * 0.125));

  cfg.delta_per_eps2 = 20.0;
  CHECK_THROWS_AS(convergence_sweep(cfg), Error);
}

TEST_CASE("refinement flag") {
  SweepConfig cfg;
  cfg.eps_list = {0.125};
  cfg.tau_points = 9;
  cfg.n = 20;
  cfg.jobs = 1;
  const auto rep = convergence_sweep(cfg);
  REQUIRE(rep.records[0].refined_sup_error.has_value());
  const double change = std::abs(*rep.records[0].refined_sup_error - rep.records[0].sup_error) / rep.records[0].sup_error;
  CHECK(rep.records[0].under_resolved == (change > 0.2));
  CHECK(rep.under_resolved == rep.records[0].under_resolved);
}
