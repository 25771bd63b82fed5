#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "tubeband/band_structure.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/error.hpp"
#include "tubeband/reports.hpp"
#include "tubeband/settings.hpp"

using namespace tubeband;
constexpr double pi = std::numbers::pi;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("csv headers") {
  CHECK(first_line(bands_csv(band_table(0.3491, 2))) == "A,k,z_lo,z_hi,multiplicity");
  CHECK(first_line(dispersion_csv(dispersion_samples(0.3, 1, 5))) == "sign,k,t,z");
  CHECK(first_line(fig2_csv(range_profile(4 * pi / 9, 11))) == "t,f_plus,f_minus");
  CHECK(first_line(mu_scan_csv(mu_scan(0.0, 1.0, 3))) == "A,s,mu1,mu2,mu3,order");
  CHECK(first_line(convergence_csv(ConvergenceReport{})) == "eps,delta,re_z,im_z,sup_error");
}

TEST_CASE("row counts") {
  CHECK(line_count(bands_csv(band_table(0.3491, 2))) == 9);
  CHECK(line_count(fig2_csv(range_profile(0.5, 11))) == 12);
  CHECK(line_count(mu_scan_csv(mu_scan(0.0, 1.0, 5))) == 6);
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  for (double v : {pi, 1e-300, -2.5e17, 1.0 / 3}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("csv and json re-emission is byte-identical") {
  for (const std::string& csv : {bands_csv(band_table(0.7, 3)), fig2_csv(range_profile(1.1, 33)),
                                 dispersion_csv(dispersion_samples(0.2, 2, 7)), mu_scan_csv(mu_scan(0.1, 1.5, 9))})
    CHECK(reemit_csv(csv) == csv);
  const auto crit = criticality_json(criticality_report(critical_potentials().A_plus), mu_scan(0.0, 1.0, 3));
  CHECK(reemit_json(crit) == crit);
}

TEST_CASE("criticality json") {
  const auto j = nlohmann::json::parse(criticality_json(criticality_report(0.3), {}));
  CHECK(j["degeneracy_order"] == 2);
  CHECK(j["cos_A_plus"].get<double>() == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-15));
  CHECK(j.contains("mu"));
}

TEST_CASE("convergence summary json") {
  ConvergenceReport r;
  r.regime = "delta_nonpositive";
  r.tau_points = 257;
  r.n = 200;
  r.fits = {{0.9, -1.0, 0.01}};
  r.fits_kappa0 = {{0.0, 0.0, 0.0}};
  r.fits_tau = {{0.9, 0.0, 0.0}};
  r.note = "note";
  const auto j = nlohmann::json::parse(convergence_summary_json(r));
  CHECK(j["slope"].get<double>() == 0.9);
  CHECK(j["regime"] == "delta_nonpositive");
  CHECK(j["tau_points"] == 257);
  CHECK(j["note"] == "note");
  CHECK(j.contains("residual"));
}

TEST_CASE("tolerance settings") {
  const Tolerances d{};
  CHECK(parse_tolerances("").degeneracy == d.degeneracy);
  CHECK(parse_tolerances("1e-8").degeneracy == 1e-8);
  const auto t = parse_tolerances("edge=1e-6, pole = 1e-9,regime=4,sigma=0.25");
  CHECK(t.edge == 1e-6);
  CHECK(t.pole == 1e-9);
  CHECK(t.regime_bound == 4);
  CHECK(t.k_sigma == 0.25);
  CHECK(t.degeneracy == d.degeneracy);
  CHECK_THROWS_AS(parse_tolerances("bogus=1"), Error);
  CHECK_THROWS_AS(parse_tolerances("edge=-1"), Error);
  CHECK_THROWS_AS(parse_tolerances("edge"), Error);
  CHECK_THROWS_AS(parse_tolerances("abc"), Error);
}
