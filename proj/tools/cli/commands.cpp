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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <memory>
#include <numbers>

#include "csv.hpp"

namespace lindsieve::cli {

namespace {

struct StateDeleter {
  void operator()(ls_state* p) const { ls_state_free(p); }
};
struct ChannelsDeleter {
  void operator()(ls_channels* p) const { ls_channels_free(p); }
};
struct KernelDeleter {
  void operator()(ls_kernel* p) const { ls_kernel_free(p); }
};
struct TrajectoryDeleter {
  void operator()(ls_trajectory* p) const { ls_trajectory_free(p); }
};
using StatePtr = std::unique_ptr<ls_state, StateDeleter>;
using ChannelsPtr = std::unique_ptr<ls_channels, ChannelsDeleter>;
using KernelPtr = std::unique_ptr<ls_kernel, KernelDeleter>;
using TrajectoryPtr = std::unique_ptr<ls_trajectory, TrajectoryDeleter>;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Output file plus the '#' footer written on both success and failure.
class Run {
 public:
  Run(const std::string& command, const RunConfig& config, const RunOptions& options)
      : command_(command), config_(config), csv_(options.output) {}

  CsvWriter& csv() { return csv_; }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }
  void note(const std::string& key, double value) { note(key, format_number(value)); }

  void finish(const std::string& status) {
    csv_.comment("command: " + command_);
    csv_.comment("config_hash: " + config_.hash());
    csv_.comment("library: lindsieve " + std::string(ls_version()));
    for (const auto& [k, v] : notes_) csv_.comment(k + ": " + v);
    csv_.comment("status: " + status);
    csv_.comment("generated_at: " + utc_timestamp());
  }

 private:
  std::string command_;
  const RunConfig& config_;
  CsvWriter csv_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

ls_diffusion diffusion_of(const RunConfig& c) {
  if (c.model == RunConfig::Model::kQuadratic) return c.quadratic;
  if (c.model == RunConfig::Model::kChannels) {
    ChannelsPtr ch;
    ls_channels* raw = nullptr;
    check(ls_channels_create(c.channels_mu, &raw), "channels");
    ch.reset(raw);
    for (const auto& s : c.channels) check(ls_channels_add(raw, s.a_re, s.a_im, s.b_re, s.b_im), "channels");
    ls_diffusion d{};
    check(ls_channels_to_diffusion(raw, c.osc.hbar, &d), "channels");
    return d;
  }
  throw CliError(kExitConfig, "config: this command needs a quadratic or channels model block");
}

ChannelsPtr channels_of(const RunConfig& c) {
  if (c.model != RunConfig::Model::kChannels)
    throw CliError(kExitConfig, "config: this command needs a model.channels block");
  ls_channels* raw = nullptr;
  check(ls_channels_create(c.channels_mu, &raw), "channels");
  ChannelsPtr ch(raw);
  for (const auto& s : c.channels) check(ls_channels_add(raw, s.a_re, s.a_im, s.b_re, s.b_im), "channels");
  return ch;
}

KernelPtr kernel_of(const RunConfig& c) {
  if (c.model != RunConfig::Model::kKernel)
    throw CliError(kExitConfig, "config: this command needs a model.kernel block");
  ls_kernel* raw = nullptr;
  if (c.kernel.spectrum_path)
    check(ls_kernel_load_spectrum(c.kernel.spectrum_path->c_str(), &raw), "spectrum");
  else
    check(ls_kernel_gaussian(*c.kernel.c0, *c.kernel.sigma, &raw), "kernel");
  return KernelPtr(raw);
}

const TimeSpec& time_of(const RunConfig& c) {
  if (!c.time_given) throw CliError(kExitConfig, "config: this command needs a time block");
  return c.time;
}

const StateSpec& state_spec(const RunConfig& c) {
  if (!c.state) throw CliError(kExitConfig, "config: this command needs a state block");
  return *c.state;
}

StatePtr state_of(const RunConfig& c) {
  const StateSpec& s = state_spec(c);
  ls_state* raw = nullptr;
  if (s.fock_level)
    check(ls_state_fock(*s.fock_level, c.dim, c.tail_tol, &raw), "state");
  else
    check(ls_state_squeezed_coherent(s.alpha_re, s.alpha_im, s.s, s.theta, c.dim, c.tail_tol, &raw), "state");
  return StatePtr(raw);
}

ls_moments moments_of(const RunConfig& c) {
  const StateSpec& s = state_spec(c);
  ls_moments m{};
  if (s.fock_level) {
    StatePtr state = state_of(c);
    check(ls_state_moments(state.get(), &c.osc, &m), "state");
  } else {
    check(ls_gaussian_moments(s.alpha_re, s.alpha_im, s.s, s.theta, &c.osc, &m), "state");
  }
  return m;
}

// Runs body; on failure records the status in the footer and rethrows.
void guarded_run(Run& run, const std::function<void()>& body) {
  try {
    body();
  } catch (const CliError& e) {
    run.finish("failed (exit " + std::to_string(e.exit_code()) + "): " + e.what());
    throw;
  }
  run.finish("ok");
}

void entropy_quadratic(const RunConfig& c, const RunOptions& o) {
  const ls_diffusion d = diffusion_of(c);
  const ls_moments m = moments_of(c);
  Run run("entropy-quadratic", c, o);
  run.csv().header({"t[time]", "f1[1/energy]", "f2[1/energy]", "f3[1/energy]", "delta_sigma[1]"});
  run.note("state_energy", 0.5 * (m.var_p + m.mean_p * m.mean_p) / c.osc.mass +
                               0.5 * c.osc.mass * c.osc.omega * c.osc.omega * (m.var_x + m.mean_x * m.mean_x));
  guarded_run(run, [&] {
    for (double t : time_of(c).times()) {
      ls_f_coefficients f{};
      check(ls_compute_f_coefficients(t, &c.osc, &d, &f), "f coefficients");
      double value = 0.0;
      check(ls_entropy_closed(&m, &d, &c.osc, t, &value), "closed form");
      run.csv().row({t, f.f1, f.f2, f.f3, value});
    }
  });
}

void entropy_exact(const RunConfig& c, const RunOptions& o) {
  const TimeSpec& time = time_of(c);
  if (!time.t_list.empty())
    throw CliError(kExitConfig, "config: entropy-exact samples a single trajectory; use time.samples, not t_list");
  ChannelsPtr ch = channels_of(c);
  StatePtr state = state_of(c);
  ls_evolution_spec spec;
  ls_evolution_spec_default(&spec);
  spec.t_final = time.t_final;
  spec.dt = time.dt;
  spec.dim = c.dim;
  spec.tail_tol = c.tail_tol;
  spec.track_min_eigenvalue = 1;
  const double dt = time.dt > 0 ? time.dt : 2.0 * std::numbers::pi / c.osc.omega / 2000.0;
  const long steps = std::max(1L, static_cast<long>(std::ceil(time.t_final / dt - 1e-9)));
  spec.sample_every =
      static_cast<int>(time.samples > 1 ? std::max(1L, steps / (time.samples - 1)) : steps);

  Run run("entropy-exact", c, o);
  run.csv().header({"t[time]", "linear_entropy[1]", "trace_drift[1]", "min_eigenvalue[1]", "hermiticity_error[1]",
                    "top_population[1]"});
  run.note("dim", static_cast<double>(c.dim));
  run.note("dt", dt);
  guarded_run(run, [&] {
    ls_trajectory* raw = nullptr;
    check(ls_evolve(state.get(), ch.get(), &c.osc, &spec, &raw), "master equation");
    TrajectoryPtr traj(raw);
    const std::size_t n = ls_trajectory_length(raw);
    for (std::size_t i = 0; i < n; ++i) {
      ls_sample s{};
      check(ls_trajectory_sample(raw, i, &s), "trajectory");
      run.csv().row({s.t, s.entropy, s.trace_drift,
                     std::isnan(s.min_eigenvalue) ? Cell{} : Cell{s.min_eigenvalue}, s.hermiticity_error,
                     s.top_population});
    }
  });
}

void entropy_correlated(const RunConfig& c, const RunOptions& o) {
  KernelPtr kernel = kernel_of(c);
  ls_correlated_quadrature quad;
  ls_correlated_quadrature_default(&quad);
  StatePtr state;
  ls_moments m{};
  if (state_spec(c).fock_level)
    state = state_of(c);
  else
    m = moments_of(c);

  Run run("entropy-correlated", c, o);
  run.csv().header(
      {"t[time]", "delta_sigma[1]", "short_limit[1]", "error_estimate[1]", "converged[flag]"});
  if (!state) {
    double width = 0.0;
    check(ls_kernel_spectral_width(kernel.get(), &width), "kernel");
    ls_width_condition w{};
    check(ls_check_width_condition(&m, width, &c.osc, 0.1, &w), "width condition");
    run.note("width_condition_satisfied", w.satisfied ? "1" : "0");
    run.note("width_margin", w.margin);
  }
  guarded_run(run, [&] {
    int unconverged = 0;
    for (double t : time_of(c).times()) {
      ls_quadrature q{};
      if (state)
        check(ls_entropy_correlated_state(state.get(), kernel.get(), &c.osc, t, &quad, &q), "correlated entropy");
      else
        check(ls_entropy_correlated_gaussian(&m, kernel.get(), &c.osc, t, &quad, &q), "correlated entropy");
      double short_limit = 0.0;
      check(ls_short_correlation_limit(kernel.get(), t, c.osc.hbar, &short_limit), "short-correlation limit");
      run.csv().row({t, q.value, short_limit, q.error_estimate, static_cast<double>(q.converged)});
      if (q.under_resolved)
        throw CliError(kExitIntegration, "characteristic function under-resolved at truncation N = " +
                                             std::to_string(c.dim) + ", t = " + format_number(t));
      unconverged += !q.converged;
    }
    run.note("unconverged_rows", static_cast<double>(unconverged));
  });
}

void sieve(const RunConfig& c, const RunOptions& o) {
  ls_sieve_grid grid = c.sieve;
  grid.threads = o.threads;
  KernelPtr kernel;
  ls_diffusion d{};
  if (c.model == RunConfig::Model::kKernel)
    kernel = kernel_of(c);
  else
    d = diffusion_of(c);
  ls_correlated_quadrature quad;
  ls_correlated_quadrature_default(&quad);

  Run run("sieve", c, o);
  run.csv().header({"t[time]", "s_star[1]", "theta_star[rad]", "delta_sigma_star[1]", "flat_flag[flag]",
                    "stationarity_residual[1]"});
  run.note("grid", std::to_string(grid.n_s) + "x" + std::to_string(grid.n_theta) +
                       " s_max=" + format_number(grid.s_max));
  guarded_run(run, [&] {
    int flat_rows = 0;
    for (double t : time_of(c).times()) {
      ls_sieve_result r{};
      if (kernel)
        check(ls_sieve_correlated(kernel.get(), &c.osc, t, &grid, &quad, &r), "sieve");
      else
        check(ls_sieve_quadratic(&d, &c.osc, t, &grid, &r), "sieve");
      const bool flat = r.flat_objective != 0;
      flat_rows += flat;
      run.csv().row({t, flat ? Cell{} : Cell{r.s_star}, flat ? Cell{} : Cell{r.theta_star}, r.delta_sigma_star,
                     flat ? 1.0 : 0.0, r.has_stationarity_residual ? Cell{r.stationarity_residual} : Cell{}});
      if (kernel && r.has_width_margin) run.note("width_margin(t=" + format_number(t) + ")", r.width_margin);
    }
    run.note("flat_rows", static_cast<double>(flat_rows));
  });
}

void consistency(const RunConfig& c, const RunOptions& o) {
  ChannelsPtr ch = channels_of(c);
  StatePtr state = state_of(c);
  ls_evolution_spec spec;
  ls_evolution_spec_default(&spec);
  spec.dt = time_of(c).dt;
  spec.dim = c.dim;
  spec.tail_tol = c.tail_tol;
  const double t = time_of(c).t_final;

  Run run("consistency", c, o);
  run.csv().header({"epsilon[1]", "exact_delta_sigma[1]", "first_order[1]", "residual[1]", "ratio_to_previous[1]"});
  run.note("t", t);
  guarded_run(run, [&] {
    std::vector<ls_residual_point> pts(c.epsilon.size());
    const ls_status st = ls_perturbation_residual(state.get(), ch.get(), &c.osc, &spec, t, c.epsilon.data(),
                                                  c.epsilon.size(), o.threads, pts.data());
    std::optional<double> previous;
    auto emit = [&](const ls_residual_point& p) {
      run.csv().row({p.eps, p.exact_delta, p.first_order, p.residual,
                     previous && *previous != 0.0 ? Cell{p.residual / *previous} : Cell{}});
      previous = p.residual;
    };
    if (st == LS_OK) {
      for (const auto& p : pts) emit(p);
      return;
    }
    if (st != LS_ERR_INTEGRATION_QUALITY) check(st, "consistency");
    // Re-run rung by rung so every rung that integrates cleanly is still reported.
    const std::string first_error = ls_last_error();
    for (double eps : c.epsilon) {
      ls_residual_point p{};
      if (ls_perturbation_residual(state.get(), ch.get(), &c.osc, &spec, t, &eps, 1, 1, &p) == LS_OK) emit(p);
    }
    throw CliError(kExitIntegration, "consistency: " + first_error);
  });
}

void kernel_table(const RunConfig& c, const RunOptions& o) {
  KernelPtr kernel = kernel_of(c);
  double width = 0.0;
  check(ls_kernel_spectral_width(kernel.get(), &width), "kernel");
  const double r_max = c.kernel_table.r_max.value_or(6.0 / width);
  std::string spectrum_path = c.kernel_table.spectrum_out.value_or(
      o.output.empty() ? std::string("lindsieve_spectrum.dat") : o.output + ".spectrum.dat");

  KernelPtr tabulated;
  const ls_kernel* source = kernel.get();
  if (ls_kernel_is_gaussian(kernel.get())) {
    double c0 = 0.0, sigma = 0.0;
    check(ls_kernel_gaussian_params(kernel.get(), &c0, &sigma), "kernel");
    const double k_max = c.kernel_table.k_max.value_or(11.0 / sigma);
    ls_kernel* raw = nullptr;
    check(ls_kernel_to_spectrum(kernel.get(), c.osc.hbar, k_max, c.kernel_table.n_k, &raw), "spectrum");
    tabulated.reset(raw);
    source = raw;
  }

  Run run("kernel-table", c, o);
  run.csv().header({"r[length]", "c_of_r[energy^2*time]", "g_of_r[1/time]"});
  run.note("spectrum_file", spectrum_path);
  run.note("spectral_width", width);
  guarded_run(run, [&] {
    for (int i = 0; i < c.kernel_table.n_r; ++i) {
      const double r = r_max * i / (c.kernel_table.n_r - 1);
      double cr = 0.0, g = 0.0;
      check(ls_kernel_correlation(kernel.get(), r, c.osc.hbar, &cr), "kernel");
      check(ls_decoherence_g(kernel.get(), r, c.osc.hbar, &g), "kernel");
      run.csv().row({r, cr, g});
    }
    const std::string comment = "spectrum |a(k)|^2 for hbar = " + format_number(c.osc.hbar) +
                                "; config_hash " + c.hash();
    check(ls_kernel_save_spectrum(source, spectrum_path.c_str(), comment.c_str()), "spectrum file");
  });
}

using Handler = void (*)(const RunConfig&, const RunOptions&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"entropy-quadratic", entropy_quadratic}, {"entropy-exact", entropy_exact},
      {"entropy-correlated", entropy_correlated}, {"sieve", sieve},
      {"consistency", consistency}, {"kernel-table", kernel_table},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"entropy-quadratic", "entropy-exact", "entropy-correlated",
                                              "sieve",             "consistency",   "kernel-table"};
  return names;
}

void run_command(const std::string& name, const RunConfig& config, const RunOptions& options) {
  const auto it = handlers().find(name);
  if (it == handlers().end()) throw CliError(kExitConfig, "unknown command '" + name + "'");
  it->second(config, options);
}

}  // namespace lindsieve::cli
