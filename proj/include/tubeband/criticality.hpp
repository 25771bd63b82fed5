#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "tubeband/band_structure.hpp"

namespace tubeband {

struct CriticalPotentials {
  double A_plus = 0;   // cos A = sin^2 A
  double A_minus = 0;  // cos A = -sin^2 A
};

CriticalPotentials critical_potentials();

// Taylor coefficients mu_0..mu_3 of lambda_+ in powers of (tau - s), evaluated at
// the band-edge wavenumber k0 (z = k0^2).
std::array<double, 4> mu_coefficients(double s, double A, double k0);

enum class EdgeSide { lower, upper };

struct BandEdgeRef {
  Sign sign = Sign::plus;
  int branch = 0;  // half-period branch j
  EdgeSide side = EdgeSide::lower;
};

// Extremum of f_sign realising the edge, and the corresponding k0 = sqrt(z_edge).
struct EdgeLocation {
  double s = 0;
  double f_value = 0;
  double k0 = 0;
  bool is_max = false;
};

EdgeLocation locate_edge(double A, const BandEdgeRef& edge);

struct DegeneracyResult {
  int order = 2;
  double s = 0;
  double k0 = 0;
  std::array<double, 4> mu{};  // coefficients of lambda_sign
  double mu4 = 0;              // fourth coefficient, finite differences
  bool outside_case = false;   // |mu2| below threshold while sin s != 0
};

DegeneracyResult analyze_degeneracy(double A, const BandEdgeRef& edge);
int degeneracy_order(double A, const BandEdgeRef& edge);

// Split maxima of f_+ at A': sin^2 tau = (sin^4A' - cos^2A') / sin^2A'. Returns (tau_-, tau_+)
// with tau_+ = -tau_- >= 0, or nullopt when the maximum is the single point tau = 0.
std::optional<std::pair<double, double>> tau_extrema(double A_prime);

// Leading-order tau_+ = sqrt(2 delta (sin 2A + sin A)) at A = A_plus, delta = A' - A_plus > 0.
double tau_extrema_asymptotic(double delta);

struct CriticalityReport {
  double A_plus = 0;
  double A_minus = 0;
  double A = 0;
  std::array<double, 4> mu{};
  double s = 0;
  int degeneracy_order = 2;
  std::optional<std::pair<double, double>> tau_pm;
};

CriticalityReport criticality_report(double A, const BandEdgeRef& edge = {});

struct MuScanRow {
  double A = 0;
  double s = 0;
  std::array<double, 4> mu{};
  int order = 2;
};

// Lower spectral edge over an evenly spaced A-grid (inclusive endpoints).
std::vector<MuScanRow> mu_scan(double A_lo, double A_hi, int points);

}  // namespace tubeband
