#include "tubeband/tubeband.h"

#include <cmath>
#include <new>
#include <string>

#include "tubeband/band_structure.hpp"
#include "tubeband/convergence.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/error.hpp"
#include "tubeband/fiber_fd.hpp"
#include "tubeband/graph_model.hpp"
#include "tubeband/homogenization.hpp"
#include "tubeband/m_matrix.hpp"
#include "tubeband/reports.hpp"

struct tb_graph {
  tubeband::FundamentalGraph graph;
};

struct tb_text {
  std::string data;
};

namespace {

thread_local std::string last_error;

template <class F>
tb_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return TB_OK;
  } catch (const tubeband::Error& e) {
    last_error = e.what();
    return static_cast<tb_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TB_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TB_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw tubeband::Error(tubeband::ErrorCode::invalid_argument, std::string(what) + " is null");
}

tb_status emit(tb_text** out, std::string s) {
  *out = new tb_text{std::move(s)};
  return TB_OK;
}

tubeband::Sign to_sign(int s) {
  if (s != 1 && s != -1) throw tubeband::Error(tubeband::ErrorCode::invalid_argument, "sign must be +1 or -1");
  return s == 1 ? tubeband::Sign::plus : tubeband::Sign::minus;
}

}  // namespace

extern "C" {

const char* tb_last_error(void) { return last_error.c_str(); }

const char* tb_status_string(tb_status status) {
  switch (status) {
    case TB_OK: return "ok";
    case TB_INTERNAL: return "internal error";
    default: return tubeband::to_string(static_cast<tubeband::ErrorCode>(status));
  }
}

const char* tb_text_data(const tb_text* text) { return text ? text->data.c_str() : ""; }
size_t tb_text_size(const tb_text* text) { return text ? text->data.size() : 0; }
void tb_text_free(tb_text* text) { delete text; }

tb_status tb_graph_build_g1(double A, tb_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new tb_graph{tubeband::build_g1(A)};
  });
}

tb_status tb_graph_from_json(const char* json, tb_graph** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new tb_graph{tubeband::graph_from_json(json)};
  });
}

tb_status tb_graph_to_json(const tb_graph* graph, tb_text** out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    emit(out, tubeband::graph_to_json(graph->graph));
  });
}

tb_status tb_graph_vertex_count(const tb_graph* graph, size_t* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    *out = graph->graph.vertex_count();
  });
}

void tb_graph_free(tb_graph* graph) { delete graph; }

tb_status tb_m_matrix(const tb_graph* graph, double eps, double z_re, double z_im, double t, double* re, double* im,
                      size_t capacity, size_t* p) {
  return guarded([&] {
    require(graph, "graph");
    require(p, "p");
    const tubeband::cdouble z(z_re, z_im);
    const auto m = eps == 1.0 ? tubeband::assemble_m(graph->graph, z, t)
                              : tubeband::assemble_m(tubeband::rescale(graph->graph, eps), z, t);
    const auto size = static_cast<size_t>(m.entries.rows());
    *p = size;
    if (capacity < size * size)
      throw tubeband::Error(tubeband::ErrorCode::invalid_argument, "output buffer too small");
    require(re, "re");
    require(im, "im");
    for (size_t i = 0; i < size; ++i)
      for (size_t j = 0; j < size; ++j) {
        re[i * size + j] = m.entries(i, j).real();
        im[i * size + j] = m.entries(i, j).imag();
      }
  });
}

tb_status tb_bands_csv(double A, int kmax, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::bands_csv(tubeband::band_table(A, kmax)));
  });
}

tb_status tb_dispersion_csv(double A, int kmax, int grid, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::dispersion_csv(tubeband::dispersion_samples(A, kmax, grid)));
  });
}

tb_status tb_fig2_csv(double A, int grid, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::fig2_csv(tubeband::range_profile(A, grid)));
  });
}

tb_status tb_multiplicity_at(double z, double A, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = tubeband::multiplicity_at(z, A);
  });
}

tb_status tb_critical_potentials(double* A_plus, double* A_minus) {
  return guarded([&] {
    require(A_plus, "A_plus");
    require(A_minus, "A_minus");
    const auto cp = tubeband::critical_potentials();
    *A_plus = cp.A_plus;
    *A_minus = cp.A_minus;
  });
}

tb_status tb_degeneracy_order(double A, int sign, int branch, int side, int* order) {
  return guarded([&] {
    require(order, "order");
    if (side != 0 && side != 1) throw tubeband::Error(tubeband::ErrorCode::invalid_argument, "side must be 0 or 1");
    *order = tubeband::degeneracy_order(
        A, {to_sign(sign), branch, side == 0 ? tubeband::EdgeSide::lower : tubeband::EdgeSide::upper});
  });
}

tb_status tb_mu_coefficients(double s, double A, double k0, double mu[4]) {
  return guarded([&] {
    require(mu, "mu");
    const auto m = tubeband::mu_coefficients(s, A, k0);
    for (int i = 0; i < 4; ++i) mu[i] = m[i];
  });
}

tb_status tb_mu_scan_csv(double A_lo, double A_hi, int points, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::mu_scan_csv(tubeband::mu_scan(A_lo, A_hi, points)));
  });
}

tb_status tb_critical_json(double A, double A_lo, double A_hi, int points, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::criticality_json(tubeband::criticality_report(A), tubeband::mu_scan(A_lo, A_hi, points)));
  });
}

tb_status tb_band_edge_wavenumber(double A_prime, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = tubeband::band_edge_wavenumber(A_prime);
  });
}

tb_status tb_gamma_norm_sq(double tau, double A_prime, int band_mode, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = tubeband::gamma_norm_sq(tau, A_prime,
                                   band_mode ? tubeband::GammaDirection::band_mode : tubeband::GammaDirection::reference);
  });
}

tb_status tb_homog_json(double delta, double eps, tb_text** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, tubeband::homogenized_json(tubeband::homogenized_model(delta, eps)));
  });
}

tb_status tb_dispersion_check(double A, double t, int n, int kmax, double* max_abs, double* max_rel) {
  return guarded([&] {
    require(max_abs, "max_abs");
    require(max_rel, "max_rel");
    const auto r = tubeband::dispersion_check(A, t, n, kmax);
    *max_abs = r.max_abs_deviation;
    *max_rel = r.max_rel_deviation;
  });
}

tb_status tb_krein_check(double A, double t, double z_re, double z_im, int n, double* residual,
                         double* second_form_gap, double* first_form_gap) {
  return guarded([&] {
    require(residual, "residual");
    const auto r = tubeband::krein_check(A, t, {z_re, z_im}, n);
    *residual = r.residual;
    if (second_form_gap) *second_form_gap = r.second_form_gap;
    if (first_form_gap) *first_form_gap = r.first_form_gap;
  });
}

tb_status tb_convergence_sweep(const tb_sweep_config* config, tb_text** csv, tb_text** summary, int* accepted) {
  bool under = false;
  const tb_status st = guarded([&] {
    require(config, "config");
    require(csv, "csv");
    require(summary, "summary");
    require(accepted, "accepted");
    tubeband::SweepConfig c;
    c.delta = config->delta;
    if (config->delta_scales_with_eps2) c.delta_per_eps2 = config->delta_per_eps2;
    if (config->eps_count > 0) {
      require(config->eps, "eps");
      c.eps_list.assign(config->eps, config->eps + config->eps_count);
    }
    if (config->z_count > 0) {
      require(config->z_re, "z_re");
      require(config->z_im, "z_im");
      c.z_list.clear();
      for (size_t i = 0; i < config->z_count; ++i) c.z_list.emplace_back(config->z_re[i], config->z_im[i]);
    }
    c.tau_points = config->tau_points;
    c.n = config->n;
    c.jobs = config->jobs;
    c.check_refinement = config->check_refinement != 0;
    const auto rep = tubeband::convergence_sweep(c);
    *accepted = tubeband::assess_rates(rep).pass ? 1 : 0;
    under = rep.under_resolved;
    emit(csv, tubeband::convergence_csv(rep));
    emit(summary, tubeband::convergence_summary_json(rep));
  });
  if (st == TB_OK && under) {
    last_error = "under-resolved: n-refinement changed sup_error by more than 20%";
    return TB_UNDER_RESOLVED;
  }
  return st;
}

}  // extern "C"
