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

#include "lindsieve/lindsieve.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <string>

#include "lindsieve/correlated_noise.hpp"
#include "lindsieve/master_equation.hpp"
#include "lindsieve/oscillator.hpp"
#include "lindsieve/quadratic_channels.hpp"
#include "lindsieve/sieve.hpp"

using namespace lindsieve;

struct ls_state {
  TruncatedState state;
};

struct ls_channels {
  LindbladChannelSet set;
};

struct ls_kernel {
  CorrelationKernel kernel;
};

struct ls_trajectory {
  EntropyTrajectory traj;
};

namespace {

thread_local std::string g_last_error;

ls_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return LS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInvalidTruncation: return LS_ERR_INVALID_TRUNCATION;
    case ErrorCode::kUnderResolved: return LS_ERR_UNDER_RESOLVED;
    case ErrorCode::kConditionViolated: return LS_ERR_CONDITION_VIOLATED;
    case ErrorCode::kIntegrationQuality: return LS_ERR_INTEGRATION_QUALITY;
    case ErrorCode::kDimensionMismatch: return LS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kTruncatedSpectrum: return LS_ERR_TRUNCATED_SPECTRUM;
    case ErrorCode::kIo: return LS_ERR_IO;
  }
  return LS_ERR_INTERNAL;
}

template <class F>
ls_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return LS_ERR_INTERNAL;
  }
}

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw Error(ErrorCode::kInvalidArgument, "null pointer argument");
}

ls_status null_pointer() {
  g_last_error = "null pointer argument";
  return LS_ERR_NULL_POINTER;
}

OscillatorParams from_c(const ls_oscillator& o) { return {o.mass, o.omega, o.hbar}; }

GaussianMoments from_c(const ls_moments& m) { return {m.mean_x, m.mean_p, m.var_x, m.var_p, m.cov_xp}; }

ls_moments to_c(const GaussianMoments& m) { return {m.mean_x, m.mean_p, m.var_x, m.var_p, m.cov_xp}; }

DiffusionCoefficients from_c(const ls_diffusion& d) { return {d.d_qq, d.d_pp, d.d_pq, d.lambda, d.mu}; }

ls_diffusion to_c(const DiffusionCoefficients& d) { return {d.d_qq, d.d_pp, d.d_pq, d.lambda, d.mu}; }

ls_quadrature to_c(const QuadratureEstimate& q) {
  return {q.value, q.error_estimate, q.nodes, q.converged ? 1 : 0, q.under_resolved ? 1 : 0};
}

CorrelatedQuadrature from_c(const ls_correlated_quadrature* q) {
  CorrelatedQuadrature out;
  if (q == nullptr) return out;
  out.tau_nodes_per_period = q->tau_nodes_per_period;
  out.rel_tol = q->rel_tol;
  out.max_doublings = q->max_doublings;
  out.spectrum_floor = q->spectrum_floor;
  return out;
}

SieveGrid from_c(const ls_sieve_grid* g) {
  SieveGrid out;
  if (g == nullptr) return out;
  out.s_max = g->s_max;
  out.n_s = g->n_s;
  out.n_theta = g->n_theta;
  out.refinement_tol = g->refinement_tol;
  out.refinement_max_iter = g->refinement_max_iter;
  out.flat_abs_tol = g->flat_abs_tol;
  out.flat_rel_tol = g->flat_rel_tol;
  out.threads = g->threads;
  return out;
}

ls_sieve_result to_c(const SieveResult& r) {
  ls_sieve_result out{};
  out.s_star = r.s_star;
  out.theta_star = r.theta_star;
  out.delta_sigma_star = r.delta_sigma_star;
  out.flat_objective = r.flat_objective ? 1 : 0;
  out.has_stationarity_residual = r.stationarity_residual.has_value() ? 1 : 0;
  out.stationarity_residual = r.stationarity_residual.value_or(std::numeric_limits<double>::quiet_NaN());
  out.coarse_s = r.coarse_s;
  out.coarse_theta = r.coarse_theta;
  out.coarse_min = r.coarse_min;
  out.coarse_max = r.coarse_max;
  out.refinement_steps = r.refinement_steps;
  out.evaluations = r.evaluations;
  out.has_width_margin = r.width_margin.has_value() ? 1 : 0;
  out.width_margin = r.width_margin.value_or(std::numeric_limits<double>::quiet_NaN());
  out.short_correlation_regime = r.short_correlation_regime ? 1 : 0;
  return out;
}

EvolutionSpec from_c(const ls_evolution_spec& s, const ls_oscillator& osc, const ls_channels* ch) {
  EvolutionSpec out;
  out.osc = from_c(osc);
  if (ch != nullptr) out.channels = ch->set;
  out.coupling_scale = s.coupling_scale;
  out.t_final = s.t_final;
  out.dt = s.dt;
  out.dim = s.dim;
  out.tail_tol = s.tail_tol;
  out.max_trace_drift = s.max_trace_drift;
  out.sample_every = s.sample_every;
  out.track_min_eigenvalue = s.track_min_eigenvalue != 0;
  return out;
}

Matrix matrix_from_parts(const double* re, const double* im, long dim) {
  if (dim < 2) throw Error(ErrorCode::kInvalidTruncation, "matrix dimension must be >= 2");
  Matrix m(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) m(r, c) = Complex(re[r * dim + c], im ? im[r * dim + c] : 0.0);
  return m;
}

}  // namespace

extern "C" {

const char* ls_version(void) { return "0.1.0"; }

const char* ls_status_string(ls_status status) {
  switch (status) {
    case LS_OK: return "ok";
    case LS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LS_ERR_INVALID_TRUNCATION: return "invalid truncation";
    case LS_ERR_UNDER_RESOLVED: return "under-resolved truncation";
    case LS_ERR_CONDITION_VIOLATED: return "model condition violated";
    case LS_ERR_INTEGRATION_QUALITY: return "integration quality";
    case LS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case LS_ERR_TRUNCATED_SPECTRUM: return "truncated spectrum";
    case LS_ERR_IO: return "i/o error";
    case LS_ERR_NULL_POINTER: return "null pointer";
    case LS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ls_last_error(void) { return g_last_error.c_str(); }

void ls_oscillator_default(ls_oscillator* osc) {
  if (osc) *osc = {1.0, 1.0, 1.0};
}

void ls_evolution_spec_default(ls_evolution_spec* spec) {
  if (!spec) return;
  const EvolutionSpec d;
  *spec = {d.coupling_scale, d.t_final, d.dt, static_cast<long>(d.dim), d.tail_tol, d.max_trace_drift,
           d.sample_every, d.track_min_eigenvalue ? 1 : 0};
}

void ls_sieve_grid_default(ls_sieve_grid* grid) {
  if (!grid) return;
  const SieveGrid d;
  *grid = {d.s_max, d.n_s, d.n_theta, d.refinement_tol, d.refinement_max_iter,
           d.flat_abs_tol, d.flat_rel_tol, d.threads};
}

void ls_correlated_quadrature_default(ls_correlated_quadrature* quad) {
  if (!quad) return;
  const CorrelatedQuadrature d;
  *quad = {d.tau_nodes_per_period, d.rel_tol, d.max_doublings, d.spectrum_floor};
}

/* states */

ls_status ls_state_squeezed_coherent(double alpha_re, double alpha_im, double s, double theta, long dim,
                                     double tail_tol, ls_state** out) {
  if (!out) return null_pointer();
  return guarded([&] {
    const SqueezedCoherentParams p({alpha_re, alpha_im}, s, theta);
    *out = new ls_state{make_state(p, FockTruncation{dim, tail_tol})};
  });
}

ls_status ls_state_fock(long level, long dim, double tail_tol, ls_state** out) {
  if (!out) return null_pointer();
  return guarded([&] { *out = new ls_state{fock_state(level, FockTruncation{dim, tail_tol})}; });
}

ls_status ls_state_from_amplitudes(const double* re, const double* im, long dim, double tail_tol,
                                   ls_state** out) {
  if (!out || !re) return null_pointer();
  return guarded([&] {
    if (dim < 2) throw Error(ErrorCode::kInvalidTruncation, "state needs at least 2 levels");
    Vector psi(dim);
    for (long i = 0; i < dim; ++i) psi(i) = Complex(re[i], im ? im[i] : 0.0);
    *out = new ls_state{TruncatedState(std::move(psi), tail_tol)};
  });
}

void ls_state_free(ls_state* state) { delete state; }

long ls_state_dim(const ls_state* state) { return state ? static_cast<long>(state->state.dim()) : 0; }

ls_status ls_state_tail_population(const ls_state* state, double* out) {
  if (!state || !out) return null_pointer();
  return guarded([&] { *out = state->state.tail_population(); });
}

ls_status ls_state_moments(const ls_state* state, const ls_oscillator* osc, ls_moments* out) {
  if (!state || !osc || !out) return null_pointer();
  return guarded([&] { *out = to_c(fock_moments(state->state, from_c(*osc))); });
}

ls_status ls_state_linear_entropy(const ls_state* state, double* out) {
  if (!state || !out) return null_pointer();
  return guarded([&] { *out = linear_entropy(state->state.density()); });
}

ls_status ls_gaussian_moments(double alpha_re, double alpha_im, double s, double theta, const ls_oscillator* osc,
                              ls_moments* out) {
  if (!osc || !out) return null_pointer();
  return guarded([&] {
    *out = to_c(gaussian_moments(SqueezedCoherentParams({alpha_re, alpha_im}, s, theta), from_c(*osc)));
  });
}

ls_status ls_linear_entropy(const double* re, const double* im, long dim, double* out) {
  if (!re || !out) return null_pointer();
  return guarded([&] { *out = linear_entropy(TruncatedDensity(matrix_from_parts(re, im, dim))); });
}

/* quadratic channels */

ls_status ls_channels_create(double mu, ls_channels** out) {
  if (!out) return null_pointer();
  return guarded([&] {
    if (!std::isfinite(mu)) throw Error(ErrorCode::kInvalidArgument, "mu must be finite");
    auto* c = new ls_channels{};
    c->set.mu = mu;
    *out = c;
  });
}

ls_status ls_channels_add(ls_channels* channels, double a_re, double a_im, double b_re, double b_im) {
  if (!channels) return null_pointer();
  return guarded([&] {
    for (double v : {a_re, a_im, b_re, b_im})
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "channel coefficients must be finite");
    channels->set.channels.push_back({{a_re, a_im}, {b_re, b_im}});
  });
}

size_t ls_channels_count(const ls_channels* channels) { return channels ? channels->set.channels.size() : 0; }

void ls_channels_free(ls_channels* channels) { delete channels; }

ls_status ls_channels_to_diffusion(const ls_channels* channels, double hbar, ls_diffusion* out) {
  if (!channels || !out) return null_pointer();
  return guarded([&] { *out = to_c(channels_to_diffusion(channels->set, hbar)); });
}

ls_status ls_compute_f_coefficients(double t, const ls_oscillator* osc, const ls_diffusion* d, ls_f_coefficients* out) {
  if (!osc || !d || !out) return null_pointer();
  return guarded([&] {
    const FCoefficients f = f_coefficients(t, from_c(*osc), from_c(*d));
    *out = {f.f1, f.f2, f.f3, f.t};
  });
}

ls_status ls_entropy_closed(const ls_moments* moments, const ls_diffusion* d, const ls_oscillator* osc, double t,
                            double* out) {
  if (!moments || !d || !osc || !out) return null_pointer();
  return guarded([&] { *out = entropy_production_closed(from_c(*moments), from_c(*d), from_c(*osc), t); });
}

ls_status ls_entropy_quadrature(const ls_state* state, const ls_channels* channels, const ls_oscillator* osc,
                                double t, int n_steps, ls_quadrature* out) {
  if (!state || !channels || !osc || !out) return null_pointer();
  return guarded([&] {
    *out = to_c(entropy_production_quadrature(state->state, channels->set, from_c(*osc), t, n_steps));
  });
}

/* master equation */

ls_status ls_evolve(const ls_state* initial, const ls_channels* channels, const ls_oscillator* osc,
                    const ls_evolution_spec* spec, ls_trajectory** out) {
  if (!initial || !osc || !spec || !out) return null_pointer();
  return guarded([&] {
    const EvolutionSpec s = from_c(*spec, *osc, channels);
    *out = new ls_trajectory{evolve(initial->state.density(), s)};
  });
}

ls_status ls_evolve_density(const double* re, const double* im, const ls_channels* channels,
                            const ls_oscillator* osc, const ls_evolution_spec* spec, ls_trajectory** out) {
  if (!re || !osc || !spec || !out) return null_pointer();
  return guarded([&] {
    const EvolutionSpec s = from_c(*spec, *osc, channels);
    const TruncatedDensity rho(matrix_from_parts(re, im, spec->dim));
    *out = new ls_trajectory{evolve(rho, s)};
  });
}

size_t ls_trajectory_length(const ls_trajectory* traj) { return traj ? traj->traj.times.size() : 0; }

ls_status ls_trajectory_sample(const ls_trajectory* traj, size_t index, ls_sample* out) {
  if (!traj || !out) return null_pointer();
  return guarded([&] {
    const EntropyTrajectory& t = traj->traj;
    if (index >= t.times.size()) throw Error(ErrorCode::kInvalidArgument, "trajectory index out of range");
    out->t = t.times[index];
    out->entropy = t.entropy[index];
    out->trace_drift = t.trace_drift[index];
    out->min_eigenvalue =
        index < t.min_eigenvalue.size() ? t.min_eigenvalue[index] : std::numeric_limits<double>::quiet_NaN();
    out->hermiticity_error = t.hermiticity_error[index];
    out->top_population = t.top_population[index];
  });
}

void ls_trajectory_free(ls_trajectory* traj) { delete traj; }

ls_status ls_perturbation_residual(const ls_state* state, const ls_channels* channels, const ls_oscillator* osc,
                                   const ls_evolution_spec* base, double t, const double* eps, size_t n_eps,
                                   unsigned threads, ls_residual_point* out) {
  if (!state || !channels || !osc || !base || (n_eps > 0 && (!eps || !out))) return null_pointer();
  return guarded([&] {
    const EvolutionSpec s = from_c(*base, *osc, channels);
    const auto pts = perturbation_residual(state->state, s, t, std::span<const double>(eps, n_eps), threads);
    for (size_t i = 0; i < pts.size(); ++i)
      out[i] = {pts[i].eps, pts[i].exact_delta, pts[i].first_order, pts[i].residual};
  });
}

/* correlated noise */

ls_status ls_kernel_gaussian(double c0, double sigma, ls_kernel** out) {
  if (!out) return null_pointer();
  return guarded([&] {
    GaussianKernel g{c0, sigma};
    g.validate();
    *out = new ls_kernel{g};
  });
}

ls_status ls_kernel_gaussian_from_spectrum(double peak, double delta_k, double hbar, ls_kernel** out) {
  if (!out) return null_pointer();
  return guarded([&] { *out = new ls_kernel{GaussianKernel::from_spectrum(peak, delta_k, hbar)}; });
}

ls_status ls_kernel_tabulated(const double* k, const double* weight, size_t n, ls_kernel** out) {
  if (!k || !weight || !out) return null_pointer();
  return guarded([&] {
    TabulatedSpectrum s{{k, k + n}, {weight, weight + n}};
    s.validate();
    *out = new ls_kernel{std::move(s)};
  });
}

ls_status ls_kernel_load_spectrum(const char* path, ls_kernel** out) {
  if (!path || !out) return null_pointer();
  return guarded([&] { *out = new ls_kernel{read_spectrum(path)}; });
}

void ls_kernel_free(ls_kernel* kernel) { delete kernel; }

int ls_kernel_is_gaussian(const ls_kernel* kernel) {
  return kernel && std::holds_alternative<GaussianKernel>(kernel->kernel) ? 1 : 0;
}

ls_status ls_kernel_gaussian_params(const ls_kernel* kernel, double* c0, double* sigma) {
  if (!kernel || !c0 || !sigma) return null_pointer();
  return guarded([&] {
    const auto* g = std::get_if<GaussianKernel>(&kernel->kernel);
    if (!g) throw Error(ErrorCode::kInvalidArgument, "kernel is not Gaussian");
    *c0 = g->c0;
    *sigma = g->sigma;
  });
}

ls_status ls_kernel_to_spectrum(const ls_kernel* gaussian, double hbar, double k_max, int n_k, ls_kernel** out) {
  if (!gaussian || !out) return null_pointer();
  return guarded([&] {
    const auto* g = std::get_if<GaussianKernel>(&gaussian->kernel);
    if (!g) throw Error(ErrorCode::kInvalidArgument, "kernel is not Gaussian");
    *out = new ls_kernel{kernel_to_spectrum(*g, hbar, k_max, n_k)};
  });
}

namespace {

const TabulatedSpectrum& tabulated(const ls_kernel* kernel) {
  const auto* s = std::get_if<TabulatedSpectrum>(&kernel->kernel);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "kernel is not a tabulated spectrum");
  return *s;
}

}  // namespace

ls_status ls_kernel_spectrum_size(const ls_kernel* kernel, size_t* n) {
  if (!kernel || !n) return null_pointer();
  return guarded([&] { *n = tabulated(kernel).k.size(); });
}

ls_status ls_kernel_spectrum_data(const ls_kernel* kernel, double* k, double* weight) {
  if (!kernel || !k || !weight) return null_pointer();
  return guarded([&] {
    const TabulatedSpectrum& s = tabulated(kernel);
    std::copy(s.k.begin(), s.k.end(), k);
    std::copy(s.weight.begin(), s.weight.end(), weight);
  });
}

ls_status ls_kernel_save_spectrum(const ls_kernel* kernel, const char* path, const char* comment) {
  if (!kernel || !path) return null_pointer();
  return guarded([&] { write_spectrum(path, tabulated(kernel), comment ? comment : ""); });
}

ls_status ls_kernel_correlation(const ls_kernel* kernel, double r, double hbar, double* out) {
  if (!kernel || !out) return null_pointer();
  return guarded([&] { *out = correlation(kernel->kernel, r, hbar); });
}

ls_status ls_kernel_spectral_width(const ls_kernel* kernel, double* out) {
  if (!kernel || !out) return null_pointer();
  return guarded([&] { *out = spectral_width(kernel->kernel); });
}

ls_status ls_decoherence_g(const ls_kernel* kernel, double r, double hbar, double* out) {
  if (!kernel || !out) return null_pointer();
  return guarded([&] { *out = decoherence_g(kernel->kernel, r, hbar); });
}

ls_status ls_char_function_gaussian(const ls_moments* moments, double k, double tau, const ls_oscillator* osc,
                                    double* re, double* im) {
  if (!moments || !osc || !re || !im) return null_pointer();
  return guarded([&] {
    const Complex v = char_function(from_c(*moments), k, tau, from_c(*osc));
    *re = v.real();
    *im = v.imag();
  });
}

ls_status ls_char_function_state(const ls_state* state, double k, double tau, const ls_oscillator* osc, double* re,
                                 double* im, int* under_resolved) {
  if (!state || !osc || !re || !im) return null_pointer();
  return guarded([&] {
    const CharValue v = char_function(state->state, k, tau, from_c(*osc));
    *re = v.value.real();
    *im = v.value.imag();
    if (under_resolved) *under_resolved = v.under_resolved ? 1 : 0;
  });
}

ls_status ls_entropy_correlated_gaussian(const ls_moments* moments, const ls_kernel* kernel,
                                         const ls_oscillator* osc, double t, const ls_correlated_quadrature* quad,
                                         ls_quadrature* out) {
  if (!moments || !kernel || !osc || !out) return null_pointer();
  return guarded([&] {
    *out = to_c(entropy_production_correlated(from_c(*moments), kernel->kernel, from_c(*osc), t, from_c(quad)));
  });
}

ls_status ls_entropy_correlated_state(const ls_state* state, const ls_kernel* kernel, const ls_oscillator* osc,
                                      double t, const ls_correlated_quadrature* quad, ls_quadrature* out) {
  if (!state || !kernel || !osc || !out) return null_pointer();
  return guarded([&] {
    *out = to_c(entropy_production_correlated(state->state, kernel->kernel, from_c(*osc), t, from_c(quad)));
  });
}

ls_status ls_short_correlation_limit(const ls_kernel* kernel, double t, double hbar, double* out) {
  if (!kernel || !out) return null_pointer();
  return guarded([&] { *out = short_correlation_limit(kernel->kernel, t, hbar); });
}

ls_status ls_long_correlation_map(const ls_kernel* kernel, double hbar, ls_diffusion* out) {
  if (!kernel || !out) return null_pointer();
  return guarded([&] { *out = to_c(long_correlation_map(kernel->kernel, hbar)); });
}

ls_status ls_check_width_condition(const ls_moments* moments, double delta_k, const ls_oscillator* osc,
                             double ratio_threshold, ls_width_condition* out) {
  if (!moments || !osc || !out) return null_pointer();
  return guarded([&] {
    const WidthCondition w = width_condition(from_c(*moments), delta_k, from_c(*osc), ratio_threshold);
    *out = {w.satisfied ? 1 : 0, w.margin, w.position_bound, w.momentum_bound};
  });
}

/* predictability sieve */

ls_status ls_sieve_quadratic(const ls_diffusion* d, const ls_oscillator* osc, double t, const ls_sieve_grid* grid,
                             ls_sieve_result* out) {
  if (!d || !osc || !out) return null_pointer();
  return guarded([&] { *out = to_c(sieve_quadratic(from_c(*d), from_c(*osc), t, from_c(grid))); });
}

ls_status ls_sieve_correlated(const ls_kernel* kernel, const ls_oscillator* osc, double t, const ls_sieve_grid* grid,
                              const ls_correlated_quadrature* quad, ls_sieve_result* out) {
  if (!kernel || !osc || !out) return null_pointer();
  return guarded([&] {
    *out = to_c(sieve_correlated(kernel->kernel, from_c(*osc), t, from_c(grid), from_c(quad)));
  });
}

ls_status ls_squeeze_direction_check(const ls_diffusion* d, const ls_oscillator* osc, double t,
                                     const ls_sieve_grid* grid, ls_direction_check* out) {
  if (!d || !osc || !out) return null_pointer();
  return guarded([&] {
    const DirectionCheck c = squeeze_direction_check(from_c(*d), from_c(*osc), t, from_c(grid));
    out->f1 = c.f1;
    out->f2 = c.f2;
    out->f3 = c.f3;
    out->cos_theta_star = c.cos_theta_star;
    out->has_residual = c.residual.has_value() ? 1 : 0;
    out->residual = c.residual.value_or(std::numeric_limits<double>::quiet_NaN());
    out->inapplicable = c.inapplicable ? 1 : 0;
    out->degenerate = c.degenerate ? 1 : 0;
    out->sieve = to_c(c.sieve);
  });
}

ls_status ls_long_time_squeeze_decay(const ls_diffusion* d, const ls_oscillator* osc, const double* t, size_t n,
                                     const ls_sieve_grid* grid, double* s_star, double* theta_star, int* flat) {
  if (!d || !osc || (n > 0 && (!t || !s_star || !theta_star || !flat))) return null_pointer();
  return guarded([&] {
    const auto pts = long_time_squeeze_decay(from_c(*d), from_c(*osc), std::vector<double>(t, t + n), from_c(grid));
    for (size_t i = 0; i < pts.size(); ++i) {
      s_star[i] = pts[i].s_star;
      theta_star[i] = pts[i].theta_star;
      flat[i] = pts[i].flat ? 1 : 0;
    }
  });
}

}  // extern "C"
