#include "tubeband/band_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tubeband/error.hpp"
#include "tubeband/settings.hpp"

namespace tubeband {

namespace {

constexpr double pi = std::numbers::pi;

double checked_arccos(double x) {
  if (!(x >= -1.0 - 1e-15 && x <= 1.0 + 1e-15))
    throw Error(ErrorCode::numerical, "arccos argument " + std::to_string(x) + " outside [-1, 1]");
  return std::acos(std::clamp(x, -1.0, 1.0));
}

double branch_root(int branch, double arc) {
  return branch % 2 == 0 ? pi * branch + arc : pi * (branch + 1) - arc;
}

// Golden-section search for an extremum of f_sign inside [a, b].
Extremum refine(double A, Sign sign, double a, double b, bool is_max) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto value = [&](double t) { return is_max ? f_pm(t, A, sign) : -f_pm(t, A, sign); };
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > 1e-12) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = value(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = value(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f_pm(t, A, sign), is_max};
}

}  // namespace

std::vector<double> critical_points(double A, Sign sign) {
  std::vector<double> pts{0.0, pi};
  const double s2 = std::sin(A) * std::sin(A);
  const double c = std::cos(A);
  if (s2 > 0.0 && s2 * s2 > c * c) {
    const double st = std::sqrt((s2 * s2 - c * c) / s2);
    double t = std::asin(std::min(1.0, st));
    if (c < 0.0) t = pi - t;
    if (sign == Sign::minus) t = pi - t;
    pts.insert(pts.begin() + 1, t);
  }
  return pts;
}

const char* to_string(Sign s) noexcept { return s == Sign::plus ? "+" : "-"; }

double f_pm(double t, double A, Sign sign) {
  const double st = std::sin(A) * std::sin(t);
  return std::cos(A) * std::cos(t) + sign_value(sign) * std::sqrt(1.0 + st * st);
}

ClosedFormEdges band_edges_closed_form(double A, int k) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "band group k must be >= 0");
  const double s2 = std::sin(A) * std::sin(A);
  const double ac = std::abs(std::cos(A));
  const double shift = 2.0 * pi * k;
  ClosedFormEdges e;
  e.interior_extremum = s2 >= ac;
  const double top = e.interior_extremum ? std::sqrt(1.0 + 1.0 / s2) : 1.0 + ac;
  e.l_plus = checked_arccos(top / 2.0) + shift;
  e.r_plus = checked_arccos((1.0 - ac) / 2.0) + shift;
  e.l_minus = checked_arccos((-1.0 + ac) / 2.0) + shift;
  e.r_minus = checked_arccos(-top / 2.0) + shift;
  e.lp_plus = checked_arccos((1.0 + ac) / 2.0) + shift;
  e.rp_minus = checked_arccos(-(1.0 + ac) / 2.0) + shift;
  return e;
}

std::optional<double> solve_dispersion(double A, Sign sign, int branch, double t) {
  if (branch < 0) throw Error(ErrorCode::invalid_argument, "branch index must be >= 0");
  const double f = f_pm(t, A, sign);
  if (std::abs(f) > 2.0) return std::nullopt;
  const double r = branch_root(branch, std::acos(f / 2.0));
  return r * r;
}

int band_number(Sign sign, int branch) {
  const bool even = branch % 2 == 0;
  if (sign == Sign::plus) return even ? 1 : 4;
  return even ? 2 : 3;
}

std::vector<Extremum> local_extrema(double A, Sign sign, int grid) {
  if (grid < 8) throw Error(ErrorCode::invalid_argument, "extremization grid must have >= 8 points");
  const double h = 2.0 * pi / grid;
  std::vector<double> f(grid);
  for (int i = 0; i < grid; ++i) f[i] = f_pm(-pi + h * i, A, sign);
  std::vector<Extremum> out;
  for (int i = 0; i < grid; ++i) {
    const double prev = f[(i + grid - 1) % grid], next = f[(i + 1) % grid];
    const bool is_max = f[i] > prev && f[i] >= next;
    const bool is_min = f[i] < prev && f[i] <= next;
    if (!is_max && !is_min) continue;
    const double t0 = -pi + h * i;
    Extremum e = refine(A, sign, t0 - h, t0 + h, is_max);
    if ((is_max && f[i] > e.value) || (is_min && f[i] < e.value)) e = {t0, f[i], is_max};
    if (e.t >= pi) e.t -= 2.0 * pi;
    if (e.t < -pi) e.t += 2.0 * pi;
    out.push_back(e);
  }
  return out;
}

NumericEdges numeric_band_edges(double A, Sign sign, int branch, int grid) {
  if (branch < 0) throw Error(ErrorCode::invalid_argument, "branch index must be >= 0");
  const auto ext = local_extrema(A, sign, grid);
  if (ext.empty()) throw Error(ErrorCode::numerical, "no extremum of f found");
  NumericEdges r;
  r.min = *std::min_element(ext.begin(), ext.end(),
                            [](const Extremum& a, const Extremum& b) { return a.value < b.value; });
  r.max = *std::max_element(ext.begin(), ext.end(),
                            [](const Extremum& a, const Extremum& b) { return a.value < b.value; });
  const double a_hi = branch_root(branch, checked_arccos(r.max.value / 2.0));
  const double a_lo = branch_root(branch, checked_arccos(r.min.value / 2.0));
  r.z_lo = std::min(a_hi * a_hi, a_lo * a_lo);
  r.z_hi = std::max(a_hi * a_hi, a_lo * a_lo);
  return r;
}

int multiplicity_at(double z, double A) {
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(ErrorCode::invalid_argument, "z must be positive");
  const double tol = tolerances().edge;
  const double k = std::sqrt(z);
  const double m = std::round(k / pi);
  if (m >= 1.0 && std::abs(z - pi * pi * m * m) < tol)
    throw Error(ErrorCode::edge_ambiguity, "z is a Dirichlet point (pi m)^2");
  const int branch = static_cast<int>(std::floor(k / pi));
  const double w = 2.0 * std::cos(k);
  int count = 0;
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const auto pts = critical_points(A, sign);
    std::vector<double> vals;
    for (double t : pts) vals.push_back(f_pm(t, A, sign));
    for (double v : vals) {
      if (std::abs(v) > 2.0) continue;
      const double zc = std::pow(branch_root(branch, std::acos(v / 2.0)), 2);
      if (std::abs(z - zc) < tol)
        throw Error(ErrorCode::edge_ambiguity,
                    "z = " + std::to_string(z) + " lies within the edge tolerance of a band edge");
    }
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      const double lo = std::min(vals[i], vals[i + 1]), hi = std::max(vals[i], vals[i + 1]);
      if (w >= lo && w <= hi) count += 2;
    }
  }
  return count;
}

BandTable band_table(double A, int kmax) {
  if (!std::isfinite(A)) throw Error(ErrorCode::invalid_argument, "A must be finite");
  if (kmax < 1) throw Error(ErrorCode::invalid_argument, "kmax must be >= 1");
  BandTable table;
  table.potential = A;
  auto sq = [](double x) { return x * x; };
  for (int k = 0; k < kmax; ++k) {
    const ClosedFormEdges e = band_edges_closed_form(A, k);
    table.edge_params.push_back(e);
    const double mirror = 2.0 * pi * (2 * k + 1);
    const Band bands[4] = {
        {k, 1, sq(e.l_plus), sq(e.r_plus), 2},
        {k, 2, sq(e.l_minus), sq(e.r_minus), 2},
        {k, 3, sq(mirror - e.r_minus), sq(mirror - e.l_minus), 2},
        {k, 4, sq(mirror - e.r_plus), sq(mirror - e.l_plus), 2},
    };
    const Band quads[4] = {
        {k, 1, sq(e.l_plus), sq(e.lp_plus), 4},
        {k, 2, sq(e.rp_minus), sq(e.r_minus), 4},
        {k, 3, sq(mirror - e.r_minus), sq(mirror - e.rp_minus), 4},
        {k, 4, sq(mirror - e.lp_plus), sq(mirror - e.l_plus), 4},
    };
    for (int b = 0; b < 4; ++b) {
      Band band = bands[b];
      if (quads[b].z_hi - quads[b].z_lo > 1e-12 * std::max(1.0, quads[b].z_hi)) {
        band.multiplicity = 4;
        table.quadruple.push_back(quads[b]);
      }
      table.bands.push_back(band);
    }
    table.dirichlet_points.push_back(sq(pi * (2 * k + 1)));
    table.dirichlet_points.push_back(sq(pi * (2 * k + 2)));
  }
  return table;
}

RangeProfile range_profile(double A, int grid) {
  if (grid < 2) throw Error(ErrorCode::invalid_argument, "grid must have >= 2 points");
  RangeProfile p;
  p.A = A;
  for (int i = 0; i < grid; ++i) {
    const double t = -pi + 2.0 * pi * i / (grid - 1);
    p.t_grid.push_back(t);
    p.f_plus.push_back(f_pm(t, A, Sign::plus));
    p.f_minus.push_back(f_pm(t, A, Sign::minus));
  }
  p.extrema = local_extrema(A, Sign::plus);
  return p;
}

std::vector<DispersionSample> dispersion_samples(double A, int kmax, int grid) {
  if (kmax < 1) throw Error(ErrorCode::invalid_argument, "kmax must be >= 1");
  if (grid < 2) throw Error(ErrorCode::invalid_argument, "grid must have >= 2 points");
  std::vector<DispersionSample> out;
  for (Sign sign : {Sign::plus, Sign::minus})
    for (int j = 0; j < 2 * kmax; ++j)
      for (int i = 0; i < grid; ++i) {
        const double t = -pi + 2.0 * pi * i / (grid - 1);
        if (auto z = solve_dispersion(A, sign, j, t)) out.push_back({sign, j, t, *z});
      }
  return out;
}

}  // namespace tubeband
