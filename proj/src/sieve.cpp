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

#include "lindsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "lindsieve/parallel.hpp"

namespace lindsieve {

void SieveGrid::validate() const {
  if (!(s_max > 0.0)) fail(ErrorCode::kInvalidArgument, "sieve s_max must be positive");
  if (n_s < 16 || n_theta < 16) fail(ErrorCode::kInvalidArgument, "sieve grid needs at least 16 points per axis");
  if (!(refinement_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "refinement_tol must be positive");
  if (refinement_max_iter < 0) fail(ErrorCode::kInvalidArgument, "refinement_max_iter must be >= 0");
}

double SieveGrid::s_step() const { return s_max / (n_s - 1); }
double SieveGrid::theta_step() const { return 2.0 * std::numbers::pi / n_theta; }
double SieveGrid::s_at(int i) const { return i == n_s - 1 ? s_max : i * s_step(); }
double SieveGrid::theta_at(int j) const { return j * theta_step(); }

SieveResult minimize_over_squeezing(const SqueezeObjective& objective, const SieveGrid& grid,
                                    double flat_abs, double flat_rel) {
  grid.validate();
  SieveResult res;
  const std::size_t n = static_cast<std::size_t>(grid.n_s) * static_cast<std::size_t>(grid.n_theta);
  const std::vector<double> values = parallel_map<double>(n, grid.threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(grid.n_theta));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(grid.n_theta));
    return objective(grid.s_at(i), grid.theta_at(j));
  });
  res.evaluations = static_cast<int>(n);

  std::size_t best = 0;
  double hi = values[0];
  for (std::size_t idx = 1; idx < n; ++idx) {
    if (values[idx] < values[best]) best = idx;  // strict: earlier index wins ties
    hi = std::max(hi, values[idx]);
  }
  const int bi = static_cast<int>(best / static_cast<std::size_t>(grid.n_theta));
  const int bj = static_cast<int>(best % static_cast<std::size_t>(grid.n_theta));
  res.coarse_s = grid.s_at(bi);
  res.coarse_theta = grid.theta_at(bj);
  res.coarse_min = values[best];
  res.coarse_max = hi;
  res.s_star = res.coarse_s;
  res.theta_star = res.coarse_theta;
  res.delta_sigma_star = res.coarse_min;

  const double spread = hi - values[best];
  res.flat_objective = spread < flat_abs || (flat_rel > 0.0 && spread < flat_rel * std::abs(hi));
  if (res.flat_objective) return res;

  const int bits = std::numeric_limits<double>::digits / 2;
  auto accept = [&](double candidate) {
    return candidate < res.delta_sigma_star;
  };
  for (int iter = 0; iter < grid.refinement_max_iter; ++iter) {
    const double start = res.delta_sigma_star;

    const double s_lo = std::max(0.0, res.s_star - grid.s_step());
    const double s_hi = std::min(grid.s_max, res.s_star + grid.s_step());
    const double theta_fixed = res.theta_star;
    auto [s_new, f_s] = boost::math::tools::brent_find_minima(
        [&](double s) { ++res.evaluations; return objective(s, theta_fixed); }, s_lo, s_hi, bits);
    if (accept(f_s)) {
      res.s_star = s_new;
      res.delta_sigma_star = f_s;
    }

    const double s_fixed = res.s_star;
    const double t_lo = res.theta_star - grid.theta_step();
    const double t_hi = res.theta_star + grid.theta_step();
    auto [t_new, f_t] = boost::math::tools::brent_find_minima(
        [&](double th) { ++res.evaluations; return objective(s_fixed, th); }, t_lo, t_hi, bits);
    if (accept(f_t)) {
      res.theta_star = wrap_angle(t_new);
      res.delta_sigma_star = f_t;
    }

    ++res.refinement_steps;
    const double gain = start - res.delta_sigma_star;
    if (gain <= grid.refinement_tol * std::max(std::abs(res.delta_sigma_star), 1e-300)) break;
  }
  return res;
}

SieveResult sieve_quadratic(const DiffusionCoefficients& d, const OscillatorParams& osc, double t,
                            const SieveGrid& grid) {
  osc.validate();
  d.validate();
  if (!(t > 0.0)) fail(ErrorCode::kInvalidArgument, "sieve time must be positive");
  const FCoefficients f = f_coefficients(t, osc, d);  // checks D_pq = 0
  auto objective = [&](double s, double theta) {
    return entropy_production_closed(gaussian_moments(SqueezedCoherentParams({0.0, 0.0}, s, theta), osc),
                                     d, osc, t);
  };
  SieveResult res = minimize_over_squeezing(objective, grid, grid.flat_abs_tol, 0.0);
  if (!res.flat_objective && f.f1 > 0.0 && std::abs(f.f3 / f.f1) <= 1.0 && res.s_star > 0.01)
    res.stationarity_residual = std::abs(std::cos(res.theta_star) - f.f3 / f.f1);
  return res;
}

SieveResult sieve_correlated(const CorrelationKernel& kernel, const OscillatorParams& osc, double t,
                             const SieveGrid& grid, const CorrelatedQuadrature& quad) {
  osc.validate();
  if (!(t > 0.0)) fail(ErrorCode::kInvalidArgument, "sieve time must be positive");
  auto objective = [&](double s, double theta) {
    const GaussianMoments m = gaussian_moments(SqueezedCoherentParams({0.0, 0.0}, s, theta), osc);
    return entropy_production_correlated(m, kernel, osc, t, quad).value;
  };
  SieveResult res = minimize_over_squeezing(objective, grid, grid.flat_abs_tol, grid.flat_rel_tol);
  const GaussianMoments coherent = gaussian_moments(SqueezedCoherentParams{}, osc);
  const WidthCondition w = width_condition(coherent, spectral_width(kernel), osc);
  res.width_margin = w.margin;
  res.short_correlation_regime = w.margin > 50.0;
  return res;
}

DirectionCheck squeeze_direction_check(const DiffusionCoefficients& d, const OscillatorParams& osc, double t,
                                       const SieveGrid& grid) {
  DirectionCheck out;
  const FCoefficients f = f_coefficients(t, osc, d);
  out.f1 = f.f1;
  out.f2 = f.f2;
  out.f3 = f.f3;
  out.inapplicable = !(f.f1 > 0.0) || std::abs(f.f3 / f.f1) > 1.0;
  out.sieve = sieve_quadratic(d, osc, t, grid);
  out.degenerate = (f.f2 == 0.0 && f.f3 == 0.0) || out.sieve.flat_objective;
  out.cos_theta_star = std::cos(out.sieve.theta_star);
  if (!out.inapplicable && !out.degenerate && out.sieve.s_star > 0.01)
    out.residual = std::abs(out.cos_theta_star - f.f3 / f.f1);
  return out;
}

std::vector<SqueezePoint> long_time_squeeze_decay(const DiffusionCoefficients& d, const OscillatorParams& osc,
                                                  const std::vector<double>& t_list, const SieveGrid& grid) {
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (!(t_list[i] > t_list[i - 1])) fail(ErrorCode::kInvalidArgument, "time list must be increasing");
  std::vector<SqueezePoint> out;
  out.reserve(t_list.size());
  for (double t : t_list) {
    const SieveResult r = sieve_quadratic(d, osc, t, grid);
    out.push_back({t, r.s_star, r.theta_star, r.flat_objective});
  }
  return out;
}

}  // namespace lindsieve
