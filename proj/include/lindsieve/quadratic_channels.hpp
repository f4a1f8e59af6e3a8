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

// Lindblad channels linear in position and momentum, V_j = a_j p + b_j x,
// with a Hamiltonian perturbation (mu / 2) {x, p}.

#include <vector>

#include "lindsieve/oscillator.hpp"

namespace lindsieve {

struct LindbladChannel {
  Complex p_coeff;  // a_j
  Complex x_coeff;  // b_j
};

struct LindbladChannelSet {
  std::vector<LindbladChannel> channels;
  double mu = 0.0;

  bool trivial() const;
  // Channels scaled by sqrt(eps) and mu by eps, so the generator perturbation
  // is linear in eps.
  LindbladChannelSet scaled(double eps) const;
};

struct DiffusionCoefficients {
  double d_qq = 0.0;
  double d_pp = 0.0;
  double d_pq = 0.0;
  double lambda = 0.0;
  double mu = 0.0;

  void validate() const;
  bool all_zero() const;
};

struct FCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double t = 0.0;
};

/// Outcome of a numerical first-order entropy-production integral.
struct QuadratureEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  int nodes = 0;
  bool converged = false;
  bool under_resolved = false;
};

DiffusionCoefficients channels_to_diffusion(const LindbladChannelSet& channels, double hbar);

/// True when D_pq vanishes relative to the other diffusion scales.
bool satisfies_equilibrium_condition(const DiffusionCoefficients& d, const OscillatorParams& osc);

/// Time kernels of the closed form. Throws kConditionViolated when D_pq != 0.
///   f1 = 2 m t (2 D_qq / hbar^2 + 2 D_pp / (m omega hbar)^2)
///   f2 = 2 m sin(2 omega t) / (2 omega) * K
///   f3 = -2 m sin^2(omega t) / omega * K,   K = 2 D_qq / hbar^2 - 2 D_pp / (m omega hbar)^2
/// The printed literature form of f3 carries 1/omega^2 in place of m/omega;
/// the two agree only for m = omega = 1 and the quadrature path selects m/omega.
FCoefficients f_coefficients(double t, const OscillatorParams& osc, const DiffusionCoefficients& d);

/// Closed-form first-order entropy production of a Gaussian pure state,
///   f1 E + f2 Delta + f3 C - 2 lambda t
/// with E = Var p / 2m + m omega^2 Var x / 2, Delta = Var p / 2m - m omega^2 Var x / 2
/// and C = omega (<{x,p}>/2 - <x><p>). Only central moments enter.
double entropy_production_closed(const GaussianMoments& moments, const DiffusionCoefficients& d,
                                 const OscillatorParams& osc, double t);

/// Direct quadrature over tau of
///   (2 / hbar) sum_j <V_j(tau)^dag V_j(tau)> - |<V_j(tau)>|^2
/// with Heisenberg-picture x(tau), p(tau) built from the free oscillator
/// solution. Valid for any pure state and any channels (including D_pq != 0).
/// `n_steps` is the initial Gauss-Legendre node count (>= 16).
QuadratureEstimate entropy_production_quadrature(const TruncatedState& state,
                                                 const LindbladChannelSet& channels,
                                                 const OscillatorParams& osc, double t,
                                                 int n_steps = 64);

}  // namespace lindsieve
