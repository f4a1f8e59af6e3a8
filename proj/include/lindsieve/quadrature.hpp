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

#include <functional>
#include <span>
#include <vector>

namespace lindsieve {

/// Fixed 16-point Gauss-Legendre rule mapped onto panels of [lo, hi].
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PanelRule composite_gauss_legendre(double lo, double hi, int panels);

struct QuadratureResult {
  double value = 0.0;
  // |last - previous| of the final refinement
  double error_estimate = 0.0;
  int panels = 0;
  int evaluations = 0;
  bool converged = false;
};

struct AdaptiveOptions {
  int initial_panels = 1;
  int max_doublings = 14;
  double rel_tol = 1e-9;
  // Absolute floor so integrals that vanish identically converge.
  double abs_tol = 1e-15;
};

/// Composite Gauss-Legendre with the panel count doubled until two successive
/// estimates agree to rel_tol (or abs_tol).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const AdaptiveOptions& opts = {});

/// Sum with pairwise reduction; result does not depend on thread scheduling.
double pairwise_sum(std::span<const double> values);

inline constexpr int kGaussPoints = 16;

}  // namespace lindsieve
