#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tubeband/graph_model.hpp"
#include "tubeband/m_matrix.hpp"

namespace tubeband {

// k0' = arccos(max_t f_+(t, A') / 2): square root of the lower spectral edge.
double band_edge_wavenumber(double A_prime);

// u(x) = exp(-iBx) (alpha cos kx + beta sin kx) on [0, length], B = phase / length.
struct EdgeSolution {
  cdouble z;
  cdouble k;
  double length = 1.0;
  double phase = 0.0;
  cdouble alpha;
  cdouble beta;
  cdouble tail_value;
  cdouble head_value;

  cdouble value(double x) const;
};

// Solution of -(d/dx + iB)^2 u = z u with u(0) = tail_value, u(length) = head_value.
EdgeSolution solve_edge(cdouble tail_value, cdouble head_value, cdouble z, double phase, double length = 1.0);

// Exact L2 norm squared on [0, length]; z must be real.
double solution_norm_sq(const EdgeSolution& s);

// Boundary data -> per-edge solutions of the G1 fiber problem at quasimomentum tau.
std::vector<EdgeSolution> gamma_solution(const FundamentalGraph& g, cdouble z, double tau,
                                         const Eigen::Vector2cd& boundary);

enum class GammaDirection {
  reference,  // (sqrt(1+q), -sqrt(1-q))/sqrt2, the closed-form vector of the homogenized constant
  band_mode,  // eigenvector of lambda_+ (the band-edge mode)
};

// || gamma(k0'^2) nu(tau) ||^2 on the unit cell of build_g1(A'), k0' = band_edge_wavenumber(A').
double gamma_norm_sq(double tau, double A_prime, GammaDirection dir = GammaDirection::reference);

// (2(sqrt5 + 7) pi - 20 sqrt(10 - 2 sqrt5)) / ((5 - sqrt5) pi)
double kappa0_sq_closed_form();

enum class Regime { delta_nonpositive, delta_small_positive };
const char* to_string(Regime r) noexcept;

struct HomogenizedModel {
  double A = 0;      // critical potential A_plus
  double delta = 0;  // A' = A + delta
  double k0_prime = 0;
  double kappa0_sq = 0;      // gamma_norm_sq(0, A_plus), reference direction
  double kappa_mode_sq = 0;  // gamma_norm_sq(0, A'), band-mode direction
  double c2 = 0;             // k0' (sin 2A + sin A) / sin k0'
  double c4 = 0;             // k0' / (4 sin k0')
  Regime regime = Regime::delta_nonpositive;
};

// Throws regime_violation when delta > 0 and delta / eps^2 exceeds the configured bound.
HomogenizedModel homogenized_model(double delta, double eps = 1.0);

void check_regime(const HomogenizedModel& m, double eps);

// delta <= 0: c2 delta tau^2 / eps^2 - c4 tau^4 / eps^2; delta > 0: -c4 tau^4 / eps^2.
double sigma_symbol(const HomogenizedModel& m, double tau, double eps);

// 1 / (2z + sigma); z must keep the configured distance from the real axis.
cdouble fiber_rational_approximant(const HomogenizedModel& m, cdouble z, double tau, double eps);

// kappa0^-2 (-c2 delta xi^2 + c4 xi^4), or kappa0^-2 c4 xi^4 in the small-positive regime.
double effective_operator_symbol(const HomogenizedModel& m, double xi);

std::string homogenized_json(const HomogenizedModel& m);

}  // namespace tubeband
