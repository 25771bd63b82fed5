#include "tubeband/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "tubeband/error.hpp"
#include "tubeband/fiber_fd.hpp"
#include "tubeband/settings.hpp"

namespace tubeband {

namespace {

struct TauErrors {
  double band_mode = 0;
  double kappa0 = 0;
  double tau_kappa = 0;
};

struct Job {
  const HomogenizedModel* model;
  double eps;
  cdouble z;
  int n;
  bool all_variants;
};

TauErrors tau_errors(const Job& job, double tau) {
  const HomogenizedModel& m = *job.model;
  const double Ap = m.A + m.delta;
  const double k0 = m.k0_prime;
  const cdouble w = k0 * k0 + job.eps * job.eps * job.z;
  const FundamentalGraph g = build_g1(Ap);
  const DiscretizedFiber f = discretize_g1(Ap, tau, job.n);
  const ShiftedSolver K(f.matrix, w), Kb(f.matrix, std::conj(w));
  const Eigen::VectorXcd gv = gamma_samples(g, f, k0 * k0) * nu_plus(tau, Ap).cast<cdouble>();
  const Eigen::VectorXcd psi = gv.normalized();
  const cdouble ra = fiber_rational_approximant(m, job.z, tau, job.eps);
  const double e2 = job.eps * job.eps;
  auto error_for = [&](double kappa_sq) {
    const cdouble c = -kappa_sq * ra;
    return operator_norm(
        [&](const Eigen::VectorXcd& x) { return Eigen::VectorXcd(e2 * K.solve(x) - c * psi * psi.dot(x)); },
        [&](const Eigen::VectorXcd& x) {
          return Eigen::VectorXcd(e2 * Kb.solve(x) - std::conj(c) * psi * psi.dot(x));
        },
        f.size());
  };
  TauErrors r;
  r.band_mode = error_for(m.kappa_mode_sq);
  if (job.all_variants) {
    r.kappa0 = error_for(m.kappa0_sq);
    r.tau_kappa = error_for(gamma_norm_sq(tau, Ap, GammaDirection::band_mode));
  }
  return r;
}

std::vector<TauErrors> run_grid(const Job& job, const std::vector<double>& taus, int jobs) {
  std::vector<TauErrors> out(taus.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> failures(taus.size());
  std::vector<int> codes(taus.size(), 0);
  auto worker = [&] {
    for (std::size_t i = next++; i < taus.size(); i = next++) {
      try {
        out[i] = tau_errors(job, taus[i]);
      } catch (const Error& e) {
        codes[i] = static_cast<int>(e.code());
        failures[i] = e.what();
      } catch (const std::exception& e) {
        codes[i] = static_cast<int>(ErrorCode::numerical);
        failures[i] = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(taus.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (codes[i] != 0) throw Error(static_cast<ErrorCode>(codes[i]), failures[i]);
  return out;
}

}  // namespace

std::vector<double> tau_grid(int points) {
  if (points < 1) throw Error(ErrorCode::invalid_argument, "tau_points must be >= 1");
  std::vector<double> taus(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) taus[j] = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 0.5) / points;
  if (points % 2 == 1) taus[points / 2] = 0.0;
  return taus;
}

double rate_bound(double eps, double delta) {
  const double ad = std::abs(delta);
  const double first = ad > 0.0 ? std::min(std::sqrt(eps), eps / ad) : std::sqrt(eps);
  return first + ad;
}

SlopeFit fit_log_slope(const std::vector<double>& eps, const std::vector<double>& err) {
  if (eps.size() != err.size() || eps.size() < 2)
    throw Error(ErrorCode::invalid_argument, "slope fit needs at least two points");
  const std::size_t m = eps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(eps[i] > 0.0) || !(err[i] > 0.0)) throw Error(ErrorCode::numerical, "slope fit needs positive data");
    const double x = std::log(eps[i]), y = std::log(err[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  SlopeFit f;
  const double den = m * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw Error(ErrorCode::invalid_argument, "slope fit needs distinct eps values");
  f.slope = (m * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / m;
  double ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::log(err[i]) - (f.intercept + f.slope * std::log(eps[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / m);
  return f;
}

std::string fiber_sufficiency_note() {
  return "The Gelfand transform is unitary and maps the periodic operator to the direct integral of its "
         "fiber operators over the quasimomentum. A decomposable operator has norm equal to the essential "
         "supremum of its fiber norms, so the supremum over the quasimomentum grid of the fiber-wise "
         "operator-norm error is the grid surrogate for the operator-norm error on the full graph.";
}

ConvergenceReport convergence_sweep(const SweepConfig& config) {
  if (config.eps_list.empty()) throw Error(ErrorCode::invalid_argument, "eps list is empty");
  if (config.z_list.empty()) throw Error(ErrorCode::invalid_argument, "z list is empty");
  for (double e : config.eps_list)
    if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::invalid_argument, "eps values must lie in (0, 1]");
  for (cdouble z : config.z_list)
    if (std::abs(z.imag()) < tolerances().k_sigma)
      throw Error(ErrorCode::invalid_argument, "z values must keep the K_sigma distance from the real axis");
  if (config.n < 8) throw Error(ErrorCode::invalid_argument, "n must be >= 8");
  const int jobs = config.jobs > 0 ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  const std::vector<double> taus = tau_grid(config.tau_points);

  ConvergenceReport rep;
  rep.tau_points = config.tau_points;
  rep.n = config.n;
  rep.note = fiber_sufficiency_note();
  for (cdouble z : config.z_list) {
    std::vector<double> es, e1, e2, e3;
    for (double eps : config.eps_list) {
      const double delta = config.delta_per_eps2 ? *config.delta_per_eps2 * eps * eps : config.delta;
      const HomogenizedModel model = homogenized_model(delta, eps);
      rep.regime = to_string(model.regime);
      const auto errs = run_grid(Job{&model, eps, z, config.n, true}, taus, jobs);
      ConvergenceRecord rec;
      rec.eps = eps;
      rec.delta = delta;
      rec.z = z;
      for (std::size_t i = 0; i < taus.size(); ++i) {
        if (errs[i].band_mode > rec.sup_error) {
          rec.sup_error = errs[i].band_mode;
          rec.worst_tau = taus[i];
        }
        rec.sup_error_kappa0 = std::max(rec.sup_error_kappa0, errs[i].kappa0);
        rec.sup_error_tau = std::max(rec.sup_error_tau, errs[i].tau_kappa);
      }
      if (config.check_refinement) {
        const auto fine = run_grid(Job{&model, eps, z, 2 * config.n + 1, false}, taus, jobs);
        double sup = 0;
        for (const auto& e : fine) sup = std::max(sup, e.band_mode);
        rec.refined_sup_error = sup;
        rec.under_resolved = std::abs(sup - rec.sup_error) > 0.2 * sup;
        rep.under_resolved = rep.under_resolved || rec.under_resolved;
      }
      rep.records.push_back(rec);
      es.push_back(eps);
      e1.push_back(rec.sup_error);
      e2.push_back(rec.sup_error_kappa0);
      e3.push_back(rec.sup_error_tau);
    }
    if (es.size() >= 2) {
      rep.fits.push_back(fit_log_slope(es, e1));
      rep.fits_kappa0.push_back(fit_log_slope(es, e2));
      rep.fits_tau.push_back(fit_log_slope(es, e3));
    }
  }
  return rep;
}

RateVerdict assess_rates(const ConvergenceReport& report, double min_slope) {
  RateVerdict v;
  if (report.records.empty()) {
    v.detail = "no records";
    return v;
  }
  if (report.under_resolved) {
    v.detail = "under-resolved: refinement changed sup_error by more than 20%";
    return v;
  }
  const bool fixed_negative = std::all_of(report.records.begin(), report.records.end(),
                                          [&](const ConvergenceRecord& r) {
                                            return r.delta < 0.0 && r.delta == report.records.front().delta;
                                          });
  std::ostringstream os;
  if (fixed_negative) {
    v.pass = true;
    for (std::size_t i = 0; i < report.records.size();) {
      const cdouble z = report.records[i].z;
      std::size_t j = i;
      const ConvergenceRecord* coarse = &report.records[i];
      for (; j < report.records.size() && report.records[j].z == z; ++j)
        if (report.records[j].eps > coarse->eps) coarse = &report.records[j];
      const double C = coarse->sup_error / rate_bound(coarse->eps, coarse->delta);
      for (std::size_t k = i; k < j; ++k) {
        const auto& r = report.records[k];
        const double lim = C * rate_bound(r.eps, r.delta);
        const bool ok = r.sup_error <= lim * (1.0 + 1e-12);
        v.pass = v.pass && ok;
        os << "eps=" << r.eps << " sup_error=" << r.sup_error << " bound=" << lim << (ok ? "" : " FAIL") << "; ";
      }
      i = j;
    }
    os << "C frozen at the coarsest eps";
  } else {
    if (report.fits.empty()) {
      v.detail = "slope needs at least two eps values";
      return v;
    }
    v.pass = true;
    for (const auto& f : report.fits) {
      v.pass = v.pass && f.slope >= min_slope;
      os << "slope=" << f.slope << " (residual " << f.residual << ", threshold " << min_slope << ") ";
    }
  }
  v.detail = os.str();
  return v;
}

}  // namespace tubeband
