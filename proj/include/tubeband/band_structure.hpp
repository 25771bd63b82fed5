#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tubeband {

enum class Sign { plus, minus };

inline int sign_value(Sign s) noexcept { return s == Sign::plus ? 1 : -1; }
const char* to_string(Sign s) noexcept;

// f_{+-}(t, A) = cosA cos t +- sqrt(1 + sin^2A sin^2t)
double f_pm(double t, double A, Sign sign);

// Edge parameters of band group k (all carry the +2 pi k shift).
struct ClosedFormEdges {
  double l_plus = 0, r_plus = 0;
  double l_minus = 0, r_minus = 0;
  double lp_plus = 0;   // l'_{k+}
  double rp_minus = 0;  // r'_{k-}
  bool interior_extremum = false;  // sin^2A >= |cosA|
};

ClosedFormEdges band_edges_closed_form(double A, int k);

// Half-period branch j >= 0: sqrt z in [j pi, (j+1) pi]. Even j: sqrt z = j pi + arccos(f/2);
// odd j: sqrt z = (j+1) pi - arccos(f/2). Returns nullopt when |f| > 2.
std::optional<double> solve_dispersion(double A, Sign sign, int branch, double t);

// Band of group k = branch/2 fed by (sign, branch parity); 1..4 as in the band enumeration.
int band_number(Sign sign, int branch);

struct Extremum {
  double t = 0;
  double value = 0;
  bool is_max = false;
};

struct NumericEdges {
  Extremum min;
  Extremum max;
  double z_lo = 0;
  double z_hi = 0;
};

// Golden-section refinement of the extrema of f_sign over [-pi, pi), seeded on a grid.
NumericEdges numeric_band_edges(double A, Sign sign, int branch, int grid = 2048);

// Critical points of f_sign on [0, pi] (0, pi and the interior extremum when
// sin^2A > |cosA|); f_sign is even, so these cover the whole period.
std::vector<double> critical_points(double A, Sign sign);

// All local extrema of f_sign on [-pi, pi) (grid-seeded, refined).
std::vector<Extremum> local_extrema(double A, Sign sign, int grid = 2048);

// Spectral multiplicity at z: 0 in gaps, 2 or 4 inside bands.
// Throws edge_ambiguity within the edge tolerance of a band edge, of a
// multiplicity-four boundary or of a Dirichlet point (pi m)^2.
int multiplicity_at(double z, double A);

struct Band {
  int k = 0;
  int band = 1;  // 1..4 inside group k
  double z_lo = 0;
  double z_hi = 0;
  int multiplicity = 2;  // largest multiplicity reached inside the band
};

struct BandTable {
  double potential = 0;
  std::vector<Band> bands;
  std::vector<Band> quadruple;         // exact multiplicity-four subintervals
  std::vector<double> dirichlet_points;  // (pi m)^2, eigenvalues of infinite multiplicity
  std::vector<ClosedFormEdges> edge_params;
};

// Groups k = 0 .. kmax-1.
BandTable band_table(double A, int kmax);

struct RangeProfile {
  double A = 0;
  std::vector<double> t_grid;
  std::vector<double> f_plus;
  std::vector<double> f_minus;
  std::vector<Extremum> extrema;  // of f_plus
};

RangeProfile range_profile(double A, int grid);

struct DispersionSample {
  Sign sign;
  int branch;
  double t;
  double z;
};

// Samples of every branch j < 2*kmax that is real on the t-grid.
std::vector<DispersionSample> dispersion_samples(double A, int kmax, int grid);

}  // namespace tubeband
