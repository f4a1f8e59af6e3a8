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

#pragma once

// Predictability sieve over the squeezed-coherent family. Displacement never
// changes the first-order entropy production, so only (s, theta) is searched.

#include <functional>
#include <optional>
#include <vector>

#include "lindsieve/correlated_noise.hpp"
#include "lindsieve/quadratic_channels.hpp"

namespace lindsieve {

struct SieveGrid {
  double s_max = 2.0;
  int n_s = 33;
  int n_theta = 32;
  // Relative objective improvement below which refinement stops.
  double refinement_tol = 1e-9;
  int refinement_max_iter = 50;
  // Spread thresholds for declaring the objective flat.
  double flat_abs_tol = 1e-12;
  double flat_rel_tol = 0.01;
  unsigned threads = 1;

  void validate() const;
  double s_at(int i) const;
  double theta_at(int j) const;
  double s_step() const;
  double theta_step() const;
};

struct SieveResult {
  double s_star = 0.0;
  double theta_star = 0.0;
  double delta_sigma_star = 0.0;
  bool flat_objective = false;
  // |cos theta* - f3/f1|; quadratic mode only, and only when s* > 0.01.
  std::optional<double> stationarity_residual;

  double coarse_s = 0.0;
  double coarse_theta = 0.0;
  double coarse_min = 0.0;
  double coarse_max = 0.0;
  int refinement_steps = 0;
  int evaluations = 0;

  // Correlated mode: width-condition margin of the coherent state and whether
  // it places the kernel in the short-correlation regime (margin > 50).
  std::optional<double> width_margin;
  bool short_correlation_regime = false;
};

using SqueezeObjective = std::function<double(double s, double theta)>;

/// Coarse (s, theta) grid followed by coordinate-wise Brent refinement (parabolic
/// interpolation with golden-section safeguard) inside one coarse cell of the
/// incumbent. Ties on the grid go to the smaller s, then the smaller theta. A
/// step is kept only if it lowers the objective, so the result never exceeds
/// the coarse minimum.
///
/// The objective is flat when max - min < flat_abs, or < flat_rel * |max| if
/// flat_rel > 0; a flat objective is not refined.
SieveResult minimize_over_squeezing(const SqueezeObjective& objective, const SieveGrid& grid,
                                    double flat_abs, double flat_rel);

/// Minimizes the closed-form entropy production. Requires D_pq = 0 and t > 0.
SieveResult sieve_quadratic(const DiffusionCoefficients& d, const OscillatorParams& osc, double t,
                            const SieveGrid& grid = {});

/// Minimizes the correlated-noise entropy production (analytic Gaussian path).
SieveResult sieve_correlated(const CorrelationKernel& kernel, const OscillatorParams& osc, double t,
                             const SieveGrid& grid = {}, const CorrelatedQuadrature& quad = {});

struct DirectionCheck {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double cos_theta_star = 0.0;
  std::optional<double> residual;  // |cos theta* - f3/f1| when reported
  bool inapplicable = false;       // f1 = 0 or |f3 / f1| > 1
  bool degenerate = false;         // f2 = f3 = 0 or flat objective
  SieveResult sieve;
};

/// Advisory comparison of the sieve's squeeze direction with cos theta = f3/f1.
/// The numeric argmin is authoritative.
DirectionCheck squeeze_direction_check(const DiffusionCoefficients& d, const OscillatorParams& osc,
                                       double t, const SieveGrid& grid = {});

struct SqueezePoint {
  double t = 0.0;
  double s_star = 0.0;
  double theta_star = 0.0;
  bool flat = false;
};

std::vector<SqueezePoint> long_time_squeeze_decay(const DiffusionCoefficients& d,
                                                  const OscillatorParams& osc,
                                                  const std::vector<double>& t_list,
                                                  const SieveGrid& grid = {});

}  // namespace lindsieve
