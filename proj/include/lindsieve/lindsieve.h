// Copyright 2026 The lindsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to liblindsieve.
 *
 * Every function returns an ls_status; LS_OK is zero. On failure the message
 * of the most recent error on the calling thread is available from
 * ls_last_error(). Objects behind opaque handles are immutable once built
 * (channel sets are filled with ls_channels_add before first use) and are
 * released with the matching *_free function, which accepts NULL. */

#ifndef LINDSIEVE_LINDSIEVE_H_
#define LINDSIEVE_LINDSIEVE_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(LINDSIEVE_BUILDING)
#define LS_API __declspec(dllexport)
#else
#define LS_API __declspec(dllimport)
#endif
#else
#define LS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ls_status {
  LS_OK = 0,
  LS_ERR_INVALID_ARGUMENT = 1,
  LS_ERR_INVALID_TRUNCATION = 2,
  LS_ERR_UNDER_RESOLVED = 3,
  LS_ERR_CONDITION_VIOLATED = 4,
  LS_ERR_INTEGRATION_QUALITY = 5,
  LS_ERR_DIMENSION_MISMATCH = 6,
  LS_ERR_TRUNCATED_SPECTRUM = 7,
  LS_ERR_IO = 8,
  LS_ERR_NULL_POINTER = 9,
  LS_ERR_INTERNAL = 99
} ls_status;

typedef struct ls_state ls_state;
typedef struct ls_channels ls_channels;
typedef struct ls_kernel ls_kernel;
typedef struct ls_trajectory ls_trajectory;

typedef struct ls_oscillator {
  double mass;
  double omega;
  double hbar;
} ls_oscillator;

typedef struct ls_moments {
  double mean_x;
  double mean_p;
  double var_x;
  double var_p;
  double cov_xp; /* <{x,p}>/2 - <x><p> */
} ls_moments;

typedef struct ls_diffusion {
  double d_qq;
  double d_pp;
  double d_pq;
  double lambda;
  double mu;
} ls_diffusion;

typedef struct ls_f_coefficients {
  double f1;
  double f2;
  double f3;
  double t;
} ls_f_coefficients;

typedef struct ls_quadrature {
  double value;
  double error_estimate;
  int nodes;
  int converged;
  int under_resolved;
} ls_quadrature;

typedef struct ls_correlated_quadrature {
  int tau_nodes_per_period;
  double rel_tol;
  int max_doublings;
  double spectrum_floor;
} ls_correlated_quadrature;

typedef struct ls_evolution_spec {
  double coupling_scale;
  double t_final;
  double dt; /* <= 0 selects period / 2000 */
  long dim;
  double tail_tol;
  double max_trace_drift;
  int sample_every;
  int track_min_eigenvalue;
} ls_evolution_spec;

typedef struct ls_sample {
  double t;
  double entropy;
  double trace_drift;
  double min_eigenvalue; /* NaN when not tracked */
  double hermiticity_error;
  double top_population;
} ls_sample;

typedef struct ls_residual_point {
  double eps;
  double exact_delta;
  double first_order;
  double residual;
} ls_residual_point;

typedef struct ls_sieve_grid {
  double s_max;
  int n_s;
  int n_theta;
  double refinement_tol;
  int refinement_max_iter;
  double flat_abs_tol;
  double flat_rel_tol;
  unsigned threads;
} ls_sieve_grid;

typedef struct ls_sieve_result {
  double s_star;
  double theta_star;
  double delta_sigma_star;
  int flat_objective;
  int has_stationarity_residual;
  double stationarity_residual;
  double coarse_s;
  double coarse_theta;
  double coarse_min;
  double coarse_max;
  int refinement_steps;
  int evaluations;
  int has_width_margin;
  double width_margin;
  int short_correlation_regime;
} ls_sieve_result;

typedef struct ls_direction_check {
  double f1;
  double f2;
  double f3;
  double cos_theta_star;
  int has_residual;
  double residual;
  int inapplicable;
  int degenerate;
  ls_sieve_result sieve;
} ls_direction_check;

typedef struct ls_width_condition {
  int satisfied;
  double margin;
  double position_bound;
  double momentum_bound;
} ls_width_condition;

/* ---- library ---------------------------------------------------------- */

LS_API const char* ls_version(void);
LS_API const char* ls_status_string(ls_status status);
LS_API const char* ls_last_error(void);

LS_API void ls_oscillator_default(ls_oscillator* osc);
LS_API void ls_evolution_spec_default(ls_evolution_spec* spec);
LS_API void ls_sieve_grid_default(ls_sieve_grid* grid);
LS_API void ls_correlated_quadrature_default(ls_correlated_quadrature* quad);

/* ---- states ----------------------------------------------------------- */

/* D(alpha) S(s e^{i theta}) |0> on `dim` Fock levels. */
LS_API ls_status ls_state_squeezed_coherent(double alpha_re, double alpha_im, double s, double theta,
                                            long dim, double tail_tol, ls_state** out);
LS_API ls_status ls_state_fock(long level, long dim, double tail_tol, ls_state** out);
LS_API ls_status ls_state_from_amplitudes(const double* re, const double* im, long dim,
                                          double tail_tol, ls_state** out);
LS_API void ls_state_free(ls_state* state);
LS_API long ls_state_dim(const ls_state* state);
LS_API ls_status ls_state_tail_population(const ls_state* state, double* out);
LS_API ls_status ls_state_moments(const ls_state* state, const ls_oscillator* osc, ls_moments* out);
LS_API ls_status ls_state_linear_entropy(const ls_state* state, double* out);

LS_API ls_status ls_gaussian_moments(double alpha_re, double alpha_im, double s, double theta,
                                     const ls_oscillator* osc, ls_moments* out);
/* 1 - Tr(rho^2) of a dim x dim density matrix given in row-major real/imag parts. */
LS_API ls_status ls_linear_entropy(const double* re, const double* im, long dim, double* out);

/* ---- quadratic channels ----------------------------------------------- */

LS_API ls_status ls_channels_create(double mu, ls_channels** out);
/* Appends V = a p + b x. */
LS_API ls_status ls_channels_add(ls_channels* channels, double a_re, double a_im, double b_re,
                                 double b_im);
LS_API size_t ls_channels_count(const ls_channels* channels);
LS_API void ls_channels_free(ls_channels* channels);
LS_API ls_status ls_channels_to_diffusion(const ls_channels* channels, double hbar, ls_diffusion* out);

LS_API ls_status ls_compute_f_coefficients(double t, const ls_oscillator* osc, const ls_diffusion* d,
                                           ls_f_coefficients* out);
LS_API ls_status ls_entropy_closed(const ls_moments* moments, const ls_diffusion* d,
                                   const ls_oscillator* osc, double t, double* out);
LS_API ls_status ls_entropy_quadrature(const ls_state* state, const ls_channels* channels,
                                       const ls_oscillator* osc, double t, int n_steps,
                                       ls_quadrature* out);

/* ---- master equation -------------------------------------------------- */

LS_API ls_status ls_evolve(const ls_state* initial, const ls_channels* channels,
                           const ls_oscillator* osc, const ls_evolution_spec* spec,
                           ls_trajectory** out);
/* Same, starting from a dim x dim density matrix (row-major real/imag parts). */
LS_API ls_status ls_evolve_density(const double* re, const double* im, const ls_channels* channels,
                                   const ls_oscillator* osc, const ls_evolution_spec* spec,
                                   ls_trajectory** out);
LS_API size_t ls_trajectory_length(const ls_trajectory* traj);
LS_API ls_status ls_trajectory_sample(const ls_trajectory* traj, size_t index, ls_sample* out);
LS_API void ls_trajectory_free(ls_trajectory* traj);

/* Fills out[0..n_eps) in input order. */
LS_API ls_status ls_perturbation_residual(const ls_state* state, const ls_channels* channels,
                                          const ls_oscillator* osc, const ls_evolution_spec* base,
                                          double t, const double* eps, size_t n_eps,
                                          unsigned threads, ls_residual_point* out);

/* ---- correlated noise ------------------------------------------------- */

LS_API ls_status ls_kernel_gaussian(double c0, double sigma, ls_kernel** out);
LS_API ls_status ls_kernel_gaussian_from_spectrum(double peak, double delta_k, double hbar,
                                                  ls_kernel** out);
LS_API ls_status ls_kernel_tabulated(const double* k, const double* weight, size_t n, ls_kernel** out);
LS_API ls_status ls_kernel_load_spectrum(const char* path, ls_kernel** out);
LS_API void ls_kernel_free(ls_kernel* kernel);
LS_API int ls_kernel_is_gaussian(const ls_kernel* kernel);
LS_API ls_status ls_kernel_gaussian_params(const ls_kernel* kernel, double* c0, double* sigma);

/* Tabulates a Gaussian kernel's spectrum; the result is a tabulated kernel. */
LS_API ls_status ls_kernel_to_spectrum(const ls_kernel* gaussian, double hbar, double k_max, int n_k,
                                       ls_kernel** out);
LS_API ls_status ls_kernel_spectrum_size(const ls_kernel* tabulated, size_t* n);
LS_API ls_status ls_kernel_spectrum_data(const ls_kernel* tabulated, double* k, double* weight);
LS_API ls_status ls_kernel_save_spectrum(const ls_kernel* tabulated, const char* path,
                                         const char* comment);

LS_API ls_status ls_kernel_correlation(const ls_kernel* kernel, double r, double hbar, double* out);
LS_API ls_status ls_kernel_spectral_width(const ls_kernel* kernel, double* out);
LS_API ls_status ls_decoherence_g(const ls_kernel* kernel, double r, double hbar, double* out);

LS_API ls_status ls_char_function_gaussian(const ls_moments* moments, double k, double tau,
                                           const ls_oscillator* osc, double* re, double* im);
LS_API ls_status ls_char_function_state(const ls_state* state, double k, double tau,
                                        const ls_oscillator* osc, double* re, double* im,
                                        int* under_resolved);

LS_API ls_status ls_entropy_correlated_gaussian(const ls_moments* moments, const ls_kernel* kernel,
                                                const ls_oscillator* osc, double t,
                                                const ls_correlated_quadrature* quad,
                                                ls_quadrature* out);
LS_API ls_status ls_entropy_correlated_state(const ls_state* state, const ls_kernel* kernel,
                                             const ls_oscillator* osc, double t,
                                             const ls_correlated_quadrature* quad, ls_quadrature* out);
LS_API ls_status ls_short_correlation_limit(const ls_kernel* kernel, double t, double hbar, double* out);
LS_API ls_status ls_long_correlation_map(const ls_kernel* kernel, double hbar, ls_diffusion* out);
LS_API ls_status ls_check_width_condition(const ls_moments* moments, double delta_k,
                                          const ls_oscillator* osc, double ratio_threshold,
                                          ls_width_condition* out);

/* ---- predictability sieve --------------------------------------------- */

LS_API ls_status ls_sieve_quadratic(const ls_diffusion* d, const ls_oscillator* osc, double t,
                                    const ls_sieve_grid* grid, ls_sieve_result* out);
LS_API ls_status ls_sieve_correlated(const ls_kernel* kernel, const ls_oscillator* osc, double t,
                                     const ls_sieve_grid* grid, const ls_correlated_quadrature* quad,
                                     ls_sieve_result* out);
LS_API ls_status ls_squeeze_direction_check(const ls_diffusion* d, const ls_oscillator* osc, double t,
                                            const ls_sieve_grid* grid, ls_direction_check* out);
/* s_star/theta_star/flat receive n entries each. */
LS_API ls_status ls_long_time_squeeze_decay(const ls_diffusion* d, const ls_oscillator* osc,
                                            const double* t, size_t n, const ls_sieve_grid* grid,
                                            double* s_star, double* theta_star, int* flat);

#ifdef __cplusplus
}
#endif

#endif /* LINDSIEVE_LINDSIEVE_H_ */
