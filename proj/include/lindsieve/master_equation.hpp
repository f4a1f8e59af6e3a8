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

// Non-perturbative Lindblad integrator on the truncated Fock space. This is
// the reference against which the first-order formulas are checked.

#include <span>
#include <vector>

#include "lindsieve/oscillator.hpp"
#include "lindsieve/quadratic_channels.hpp"

namespace lindsieve {

struct EvolutionSpec {
  OscillatorParams osc;
  LindbladChannelSet channels;
  // Dissipator scaled by eps (channels by sqrt(eps)), friction mu by eps.
  double coupling_scale = 1.0;
  double t_final = 0.0;
  double dt = 0.0;  // <= 0 selects period / 2000
  Index dim = 60;
  double tail_tol = kDefaultTailTol;
  double max_trace_drift = 1e-6;
  int sample_every = 1;
  bool track_min_eigenvalue = true;

  void validate() const;
  double effective_dt() const;
  long steps() const;
};

struct EntropyTrajectory {
  std::vector<double> times;
  std::vector<double> entropy;
  std::vector<double> trace_drift;
  std::vector<double> min_eigenvalue;
  std::vector<double> hermiticity_error;
  std::vector<double> top_population;
  Matrix final_rho;
};

/// Precomputed generator for one EvolutionSpec:
///   d rho / dt = (1 / i hbar) [H, rho] + (1 / hbar) sum_j (V_j rho V_j^dag - {V_j^dag V_j, rho} / 2)
/// with H = hbar omega (n + 1/2) + eps (mu / 2) {x, p}.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const EvolutionSpec& spec);

  Index dim() const { return dim_; }
  Matrix apply(const Matrix& rho) const;
  const Matrix& hamiltonian() const { return hamiltonian_; }

 private:
  Index dim_;
  double hbar_;
  Matrix hamiltonian_;
  // -(i / hbar) H - (1 / 2 hbar) sum V^dag V
  Matrix drift_;
  std::vector<Matrix> jumps_;
};

Matrix lindblad_rhs(const TruncatedDensity& rho, const EvolutionSpec& spec);
Matrix lindblad_rhs(const Matrix& rho, const EvolutionSpec& spec);

/// Fixed-step RK4 propagation without renormalization. Throws
/// kIntegrationQuality when the trace drifts beyond spec.max_trace_drift or
/// the top Fock level population exceeds max(spec.tail_tol, its initial value).
EntropyTrajectory evolve(const TruncatedDensity& rho0, const EvolutionSpec& spec);

struct ResidualPoint {
  double eps = 0.0;
  double exact_delta = 0.0;   // sigma_exact(t; eps) - sigma_exact(t; 0)
  double first_order = 0.0;   // eps * first-order entropy production
  double residual = 0.0;
};

/// r(eps) = |(sigma_exact(t; eps) - sigma_exact(t; 0)) - eps * dsigma_1(t)| for
/// each eps, returned in input order. sigma_exact(t; 0) equals sigma(0) up to
/// integrator error. Trajectories run on up to `threads` workers.
std::vector<ResidualPoint> perturbation_residual(const TruncatedState& state,
                                                 const EvolutionSpec& base, double t,
                                                 std::span<const double> eps_list,
                                                 unsigned threads = 1);

}  // namespace lindsieve
