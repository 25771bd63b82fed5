#ifndef TUBEBAND_H
#define TUBEBAND_H

#include <stddef.h>

#if defined(TUBEBAND_BUILDING_LIBRARY)
#define TB_API __attribute__((visibility("default")))
#else
#define TB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; values 2..5 coincide with the CLI exit codes. */
typedef enum tb_status {
  TB_OK = 0,
  TB_INVALID_ARGUMENT = 2,
  TB_REGIME_VIOLATION = 3,
  TB_UNDER_RESOLVED = 4,
  TB_ACCEPTANCE_FAILED = 5,
  TB_POLE = 6,
  TB_UNSUPPORTED = 7,
  TB_EDGE_AMBIGUITY = 8,
  TB_NUMERICAL = 9,
  TB_INTERNAL = 10
} tb_status;

typedef struct tb_graph tb_graph;
typedef struct tb_text tb_text;

/* Message of the last failing call on this thread ("" if none). */
TB_API const char* tb_last_error(void);
TB_API const char* tb_status_string(tb_status status);

TB_API const char* tb_text_data(const tb_text* text);
TB_API size_t tb_text_size(const tb_text* text);
TB_API void tb_text_free(tb_text* text);

/* graph model */
TB_API tb_status tb_graph_build_g1(double A, tb_graph** out);
TB_API tb_status tb_graph_from_json(const char* json, tb_graph** out);
TB_API tb_status tb_graph_to_json(const tb_graph* graph, tb_text** out);
TB_API tb_status tb_graph_vertex_count(const tb_graph* graph, size_t* out);
TB_API void tb_graph_free(tb_graph* graph);

/* Weyl M-matrix of the fiber at (z, t) on the eps-rescaled cell (eps = 1: unit cell).
   Writes p*p entries in row-major order into re/im; capacity counts entries. */
TB_API tb_status tb_m_matrix(const tb_graph* graph, double eps, double z_re, double z_im, double t, double* re,
                             double* im, size_t capacity, size_t* p);

/* band structure */
TB_API tb_status tb_bands_csv(double A, int kmax, tb_text** out);
TB_API tb_status tb_dispersion_csv(double A, int kmax, int grid, tb_text** out);
TB_API tb_status tb_fig2_csv(double A, int grid, tb_text** out);
TB_API tb_status tb_multiplicity_at(double z, double A, int* out);

/* criticality; sign: +1/-1, side: 0 lower, 1 upper */
TB_API tb_status tb_critical_potentials(double* A_plus, double* A_minus);
TB_API tb_status tb_degeneracy_order(double A, int sign, int branch, int side, int* order);
TB_API tb_status tb_mu_coefficients(double s, double A, double k0, double mu[4]);
TB_API tb_status tb_mu_scan_csv(double A_lo, double A_hi, int points, tb_text** out);
TB_API tb_status tb_critical_json(double A, double A_lo, double A_hi, int points, tb_text** out);

/* homogenization */
TB_API tb_status tb_band_edge_wavenumber(double A_prime, double* out);
TB_API tb_status tb_gamma_norm_sq(double tau, double A_prime, int band_mode, double* out);
TB_API tb_status tb_homog_json(double delta, double eps, tb_text** out);

/* numerics verification */
TB_API tb_status tb_dispersion_check(double A, double t, int n, int kmax, double* max_abs, double* max_rel);
TB_API tb_status tb_krein_check(double A, double t, double z_re, double z_im, int n, double* residual,
                                double* second_form_gap, double* first_form_gap);

/* eps_count or z_count of 0 selects the default eps grid 2^-3..2^-7 or z = i. */
typedef struct tb_sweep_config {
  double delta;
  int delta_scales_with_eps2; /* nonzero: delta = delta_per_eps2 * eps^2 */
  double delta_per_eps2;
  const double* eps;
  size_t eps_count;
  const double* z_re;
  const double* z_im;
  size_t z_count;
  int tau_points;
  int n;
  int jobs;
  int check_refinement;
} tb_sweep_config;

/* Writes the CSV report and the summary JSON; *accepted receives the rate verdict.
   Returns TB_UNDER_RESOLVED (outputs still written) when refinement flags the run. */
TB_API tb_status tb_convergence_sweep(const tb_sweep_config* config, tb_text** csv, tb_text** summary,
                                      int* accepted);

#ifdef __cplusplus
}
#endif

#endif
