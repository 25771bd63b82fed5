#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tubeband/homogenization.hpp"
#include "tubeband/m_matrix.hpp"

namespace tubeband {

struct SweepConfig {
  double delta = 0.0;
  // When set, delta = delta_per_eps2 * eps^2 at every eps (the 0 < delta = O(eps^2) regime).
  std::optional<double> delta_per_eps2;
  std::vector<double> eps_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::vector<cdouble> z_list{cdouble(0.0, 1.0)};
  int tau_points = 257;
  int n = 200;
  int jobs = 0;  // 0: hardware concurrency
  bool check_refinement = true;  // rerun at 2n+1 and flag changes above 20%
};

struct ConvergenceRecord {
  double eps = 0;
  double delta = 0;
  cdouble z;
  double sup_error = 0;          // band-mode constant kappa_mode_sq
  double sup_error_kappa0 = 0;  // constant kappa0_sq
  double sup_error_tau = 0;      // tau-dependent kappa^2(tau)
  double worst_tau = 0;
  std::optional<double> refined_sup_error;
  bool under_resolved = false;
};

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square of the log-log fit
};

SlopeFit fit_log_slope(const std::vector<double>& eps, const std::vector<double>& err);

struct ConvergenceReport {
  std::vector<ConvergenceRecord> records;
  std::string regime;
  int tau_points = 0;
  int n = 0;
  // one fit per z (in z_list order)
  std::vector<SlopeFit> fits;
  std::vector<SlopeFit> fits_kappa0;
  std::vector<SlopeFit> fits_tau;
  bool under_resolved = false;
  std::string note;
};

// Operator-norm error of the rank-one approximant, sup over a cell-centred tau-grid
// tau_j = -pi + 2 pi (j + 1/2) / tau_points.
ConvergenceReport convergence_sweep(const SweepConfig& config);

// Cell-centred tau grid (odd size contains tau = 0).
std::vector<double> tau_grid(int points);

// sup_error <= C (min(sqrt eps, eps / |delta|) + |delta|)
double rate_bound(double eps, double delta);

std::string fiber_sufficiency_note();

struct RateVerdict {
  bool pass = false;
  std::string detail;
};

// Fixed delta < 0: every sup_error within C rate_bound(eps, delta), C frozen at the largest eps.
// Otherwise: fitted slope of every z at least min_slope. Under-resolved reports never pass.
RateVerdict assess_rates(const ConvergenceReport& report, double min_slope = 0.45);

}  // namespace tubeband
