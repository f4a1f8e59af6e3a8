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

#include "lindsieve/quadratic_channels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/sin_pi.hpp>

#include "lindsieve/quadrature.hpp"

namespace lindsieve {

bool LindbladChannelSet::trivial() const {
  if (mu != 0.0) return false;
  for (const auto& c : channels)
    if (c.p_coeff != Complex(0.0) || c.x_coeff != Complex(0.0)) return false;
  return true;
}

LindbladChannelSet LindbladChannelSet::scaled(double eps) const {
  if (!(eps >= 0.0)) fail(ErrorCode::kInvalidArgument, "coupling scale must be >= 0");
  const double root = std::sqrt(eps);
  LindbladChannelSet out;
  out.mu = mu * eps;
  out.channels.reserve(channels.size());
  for (const auto& c : channels) out.channels.push_back({c.p_coeff * root, c.x_coeff * root});
  return out;
}

void DiffusionCoefficients::validate() const {
  if (!std::isfinite(d_qq) || !std::isfinite(d_pp) || !std::isfinite(d_pq) ||
      !std::isfinite(lambda) || !std::isfinite(mu))
    fail(ErrorCode::kInvalidArgument, "diffusion coefficients must be finite");
  if (d_qq < 0.0 || d_pp < 0.0)
    fail(ErrorCode::kInvalidArgument, "D_qq and D_pp must be non-negative");
  // Cauchy-Schwarz on the defining sums, with round-off slack.
  if (d_pq * d_pq > d_qq * d_pp * (1.0 + 1e-12) + 1e-300)
    fail(ErrorCode::kInvalidArgument, "diffusion coefficients violate D_qq D_pp >= D_pq^2");
}

bool DiffusionCoefficients::all_zero() const {
  return d_qq == 0.0 && d_pp == 0.0 && d_pq == 0.0 && lambda == 0.0 && mu == 0.0;
}

DiffusionCoefficients channels_to_diffusion(const LindbladChannelSet& channels, double hbar) {
  DiffusionCoefficients d;
  for (const auto& c : channels.channels) {
    const Complex cross = c.p_coeff * std::conj(c.x_coeff);
    d.d_qq += std::norm(c.p_coeff);
    d.d_pp += std::norm(c.x_coeff);
    d.d_pq -= cross.real();
    d.lambda += cross.imag();
  }
  d.d_qq *= hbar / 2.0;
  d.d_pp *= hbar / 2.0;
  d.d_pq *= hbar / 2.0;
  d.mu = channels.mu;
  return d;
}

bool satisfies_equilibrium_condition(const DiffusionCoefficients& d, const OscillatorParams& osc) {
  const double mw = osc.mass * osc.omega;
  const double scale = d.d_qq * mw + d.d_pp / mw;
  return std::abs(d.d_pq) <= 1e-12 * scale;
}

namespace {

void require_equilibrium_condition(const DiffusionCoefficients& d, const OscillatorParams& osc) {
  if (!satisfies_equilibrium_condition(d, osc)) {
    std::ostringstream os;
    os << "closed form requires D_pq = 0 (thermal-equilibrium condition); got D_pq = " << d.d_pq;
    fail(ErrorCode::kConditionViolated, os.str());
  }
}

}  // namespace

FCoefficients f_coefficients(double t, const OscillatorParams& osc, const DiffusionCoefficients& d) {
  osc.validate();
  d.validate();
  if (!(t >= 0.0)) fail(ErrorCode::kInvalidArgument, "time must be >= 0");
  require_equilibrium_condition(d, osc);
  const double m = osc.mass;
  const double w = osc.omega;
  const double hb = osc.hbar;
  const double q_term = 2.0 * d.d_qq / (hb * hb);
  const double p_term = 2.0 * d.d_pp / ((m * w * hb) * (m * w * hb));
  const double k = q_term - p_term;
  // Phases in units of pi so t = n pi / omega gives exact zeros.
  // omega t / pi is rounded to the nearest integer when it lies within a few
  // ulps of one, since t = n pi / omega is itself only representable to an ulp.
  double half_turns = w * t / std::numbers::pi;
  const double nearest = std::round(half_turns);
  if (std::abs(half_turns - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(half_turns))
    half_turns = nearest;
  const double sin_wt = boost::math::sin_pi(half_turns);
  const double sin_2wt = boost::math::sin_pi(2.0 * half_turns);
  FCoefficients f;
  f.t = t;
  f.f1 = t * 2.0 * m * (q_term + p_term);
  f.f2 = 2.0 * m * sin_2wt / (2.0 * w) * k;
  // Printed form: -2 sin^2(omega t) / omega^2 * K.
  f.f3 = -2.0 * m * sin_wt * sin_wt / w * k;
  return f;
}

double entropy_production_closed(const GaussianMoments& moments, const DiffusionCoefficients& d,
                                 const OscillatorParams& osc, double t) {
  const FCoefficients f = f_coefficients(t, osc, d);
  const double m = osc.mass;
  const double w = osc.omega;
  const double kinetic = moments.var_p / (2.0 * m);
  const double potential = m * w * w / 2.0 * moments.var_x;
  const double energy = kinetic + potential;
  const double imbalance = kinetic - potential;
  const double correlation = w * moments.cov_xp;
  return f.f1 * energy + f.f2 * imbalance + f.f3 * correlation - 2.0 * d.lambda * t;
}

QuadratureEstimate entropy_production_quadrature(const TruncatedState& state,
                                                 const LindbladChannelSet& channels,
                                                 const OscillatorParams& osc, double t,
                                                 int n_steps) {
  osc.validate();
  if (!(t >= 0.0)) fail(ErrorCode::kInvalidArgument, "time must be >= 0");
  if (n_steps < kGaussPoints) {
    std::ostringstream os;
    os << "n_steps must be at least " << kGaussPoints << " (got " << n_steps << ")";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  QuadratureEstimate out;
  out.under_resolved = state.under_resolved();

  const Quadratures q = build_xp(osc, state.dim());
  const Vector& psi = state.amplitudes();
  const Vector xpsi = q.x * psi;
  const Vector ppsi = q.p * psi;
  const double mw = osc.mass * osc.omega;
  const double w = osc.omega;

  // The (mu/2){x,p} term contributes nothing at first order, so mu is unused.
  auto integrand = [&](double tau) {
    const double c = std::cos(w * tau);
    const double s = std::sin(w * tau);
    const Vector x_tau = c * xpsi + (s / mw) * ppsi;
    const Vector p_tau = c * ppsi - (mw * s) * xpsi;
    double acc = 0.0;
    for (const auto& ch : channels.channels) {
      const Vector v = ch.p_coeff * p_tau + ch.x_coeff * x_tau;
      acc += v.squaredNorm() - std::norm(psi.dot(v));
    }
    return 2.0 / osc.hbar * acc;
  };

  AdaptiveOptions opts;
  opts.initial_panels = std::max(1, n_steps / kGaussPoints);
  opts.rel_tol = 1e-9;
  const QuadratureResult r = integrate_adaptive(integrand, 0.0, t, opts);
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.nodes = r.panels * kGaussPoints;
  out.converged = r.converged;
  return out;
}

}  // namespace lindsieve
