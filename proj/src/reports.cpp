#include "tubeband/reports.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "tubeband/error.hpp"

namespace tubeband {

namespace {

nlohmann::ordered_json fit_json(const SlopeFit& f) {
  nlohmann::ordered_json j;
  j["slope"] = f.slope;
  j["residual"] = f.residual;
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string bands_csv(const BandTable& table) {
  std::ostringstream os;
  os << "A,k,z_lo,z_hi,multiplicity\n";
  for (const Band& b : table.bands)
    os << format_number(table.potential) << ',' << b.k << ',' << format_number(b.z_lo) << ','
       << format_number(b.z_hi) << ',' << b.multiplicity << '\n';
  return os.str();
}

std::string dispersion_csv(const std::vector<DispersionSample>& samples) {
  std::ostringstream os;
  os << "sign,k,t,z\n";
  for (const auto& s : samples)
    os << to_string(s.sign) << ',' << s.branch << ',' << format_number(s.t) << ',' << format_number(s.z) << '\n';
  return os.str();
}

std::string fig2_csv(const RangeProfile& p) {
  std::ostringstream os;
  os << "t,f_plus,f_minus\n";
  for (std::size_t i = 0; i < p.t_grid.size(); ++i)
    os << format_number(p.t_grid[i]) << ',' << format_number(p.f_plus[i]) << ',' << format_number(p.f_minus[i])
       << '\n';
  return os.str();
}

std::string mu_scan_csv(const std::vector<MuScanRow>& rows) {
  std::ostringstream os;
  os << "A,s,mu1,mu2,mu3,order\n";
  for (const auto& r : rows)
    os << format_number(r.A) << ',' << format_number(r.s) << ',' << format_number(r.mu[1]) << ','
       << format_number(r.mu[2]) << ',' << format_number(r.mu[3]) << ',' << r.order << '\n';
  return os.str();
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "eps,delta,re_z,im_z,sup_error\n";
  for (const auto& r : report.records)
    os << format_number(r.eps) << ',' << format_number(r.delta) << ',' << format_number(r.z.real()) << ','
       << format_number(r.z.imag()) << ',' << format_number(r.sup_error) << '\n';
  return os.str();
}

std::string convergence_summary_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  if (!report.fits.empty()) {
    j["slope"] = report.fits.front().slope;
    j["residual"] = report.fits.front().residual;
  }
  j["regime"] = report.regime;
  j["tau_points"] = report.tau_points;
  j["n"] = report.n;
  j["under_resolved"] = report.under_resolved;
  const RateVerdict verdict = assess_rates(report);
  j["accepted"] = verdict.pass;
  j["verdict"] = verdict.detail;
  auto fits = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.fits.size(); ++i) {
    nlohmann::ordered_json f;
    f["band_mode"] = fit_json(report.fits[i]);
    f["kappa0_constant"] = fit_json(report.fits_kappa0[i]);
    f["tau_kappa"] = fit_json(report.fits_tau[i]);
    fits.push_back(f);
  }
  j["fits"] = fits;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json o;
    o["eps"] = r.eps;
    o["delta"] = r.delta;
    o["re_z"] = r.z.real();
    o["im_z"] = r.z.imag();
    o["sup_error"] = r.sup_error;
    o["sup_error_kappa0"] = r.sup_error_kappa0;
    o["sup_error_tau_kappa"] = r.sup_error_tau;
    o["worst_tau"] = r.worst_tau;
    if (r.refined_sup_error) o["refined_sup_error"] = *r.refined_sup_error;
    o["under_resolved"] = r.under_resolved;
    recs.push_back(o);
  }
  j["records"] = recs;
  j["note"] = report.note;
  return j.dump(2);
}

std::string criticality_json(const CriticalityReport& r, const std::vector<MuScanRow>& scan) {
  nlohmann::ordered_json j;
  j["A_plus"] = r.A_plus;
  j["A_minus"] = r.A_minus;
  j["cos_A_plus"] = std::cos(r.A_plus);
  j["A"] = r.A;
  j["s"] = r.s;
  j["mu"] = r.mu;
  j["degeneracy_order"] = r.degeneracy_order;
  if (r.tau_pm) j["tau_pm"] = {r.tau_pm->first, r.tau_pm->second};
  else j["tau_pm"] = nullptr;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : scan) {
    nlohmann::ordered_json o;
    o["A"] = row.A;
    o["s"] = row.s;
    o["mu1"] = row.mu[1];
    o["mu2"] = row.mu[2];
    o["mu3"] = row.mu[3];
    o["order"] = row.order;
    rows.push_back(o);
  }
  j["scan"] = rows;
  return j.dump(2);
}

std::string reemit_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::ostringstream os;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (header) {
      os << line << '\n';
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    bool first = true;
    while (std::getline(ls, cell, ',')) {
      if (!first) os << ',';
      first = false;
      double v = 0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      const bool numeric = res.ec == std::errc() && res.ptr == cell.data() + cell.size();
      const bool integral = cell.find_first_of(".eE") == std::string::npos;
      os << (numeric && !integral ? format_number(v) : cell);
    }
    os << '\n';
  }
  return os.str();
}

std::string reemit_json(std::string_view text) {
  try {
    return nlohmann::ordered_json::parse(text).dump(2);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("report JSON: ") + e.what());
  }
}

}  // namespace tubeband
