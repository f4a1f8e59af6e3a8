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

#include "lindsieve/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "lindsieve/error.hpp"

namespace lindsieve {

namespace {

using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;

}  // namespace

PanelRule composite_gauss_legendre(double lo, double hi, int panels) {
  if (panels < 1) fail(ErrorCode::kInvalidArgument, "quadrature needs at least one panel");
  // Boost stores the non-negative abscissae only; the rule is symmetric.
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();
  std::vector<double> unit_nodes;
  std::vector<double> unit_weights;
  for (std::size_t i = abscissa.size(); i-- > 0;) {
    if (abscissa[i] == 0.0) continue;
    unit_nodes.push_back(-abscissa[i]);
    unit_weights.push_back(weight[i]);
  }
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    unit_nodes.push_back(abscissa[i]);
    unit_weights.push_back(weight[i]);
  }

  PanelRule rule;
  rule.nodes.reserve(unit_nodes.size() * static_cast<std::size_t>(panels));
  rule.weights.reserve(rule.nodes.capacity());
  const double width = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * width;
    for (std::size_t i = 0; i < unit_nodes.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * width * unit_nodes[i]);
      rule.weights.push_back(0.5 * width * unit_weights[i]);
    }
  }
  return rule;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const AdaptiveOptions& opts) {
  QuadratureResult out;
  if (hi == lo) {
    out.converged = true;
    return out;
  }
  auto estimate = [&](int panels) {
    const PanelRule rule = composite_gauss_legendre(lo, hi, panels);
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = rule.weights[i] * f(rule.nodes[i]);
    out.evaluations += static_cast<int>(terms.size());
    return pairwise_sum(terms);
  };
  int panels = std::max(1, opts.initial_panels);
  double previous = estimate(panels);
  for (int d = 0; d < opts.max_doublings; ++d) {
    panels *= 2;
    const double current = estimate(panels);
    const double diff = std::abs(current - previous);
    out.value = current;
    out.error_estimate = diff;
    out.panels = panels;
    if (diff <= opts.rel_tol * std::abs(current) || diff <= opts.abs_tol) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

}  // namespace lindsieve
