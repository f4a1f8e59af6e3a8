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

// Truncated Fock-space representation of a single harmonic oscillator.
//
// Conventions used throughout the library:
//   x = sqrt(hbar / 2 m omega) (a + a^dagger)
//   p = i sqrt(hbar m omega / 2) (a^dagger - a)
//   D(alpha) = exp(alpha a^dagger - conj(alpha) a)
//   S(zeta)  = exp((zeta a^dagger^2 - conj(zeta) a^2) / 2),  zeta = s e^{i theta}
// so that S^dagger a S = cosh(s) a + e^{i theta} sinh(s) a^dagger, and a
// squeezed coherent state is D(alpha) S(zeta) |0>.

#include <complex>

#include <Eigen/Dense>

#include "lindsieve/error.hpp"

namespace lindsieve {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTailTol = 1e-8;

struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  void validate() const;

  // Position width sqrt(hbar / 2 m omega) of the ground state.
  double length_scale() const;
  // Momentum width sqrt(hbar m omega / 2) of the ground state.
  double momentum_scale() const;
  double period() const;
};

struct FockTruncation {
  Index dim = 100;
  double tail_tol = kDefaultTailTol;

  void validate() const;
};

class TruncatedDensity;

/// Normalized pure state on levels 0..N-1. A state whose top-level population
/// reaches `tail_tol` is kept but flagged as under-resolved.
class TruncatedState {
 public:
  explicit TruncatedState(Vector amplitudes, double tail_tol = kDefaultTailTol);

  const Vector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  double tail_population() const;
  double tail_tol() const { return tail_tol_; }
  bool under_resolved() const { return tail_population() >= tail_tol_; }

  TruncatedDensity density() const;

 private:
  Vector amplitudes_;
  double tail_tol_;
};

/// Density matrix validated on construction (Hermitian, unit trace,
/// non-negative up to round-off).
class TruncatedDensity {
 public:
  explicit TruncatedDensity(Matrix rho);

  const Matrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

  static TruncatedDensity maximally_mixed(Index n);

 private:
  Matrix rho_;
};

/// Squeezed-coherent coordinates. theta is wrapped into [0, 2 pi).
class SqueezedCoherentParams {
 public:
  SqueezedCoherentParams() = default;
  SqueezedCoherentParams(Complex alpha, double s, double theta);

  Complex alpha() const { return alpha_; }
  double s() const { return s_; }
  double theta() const { return theta_; }

  static SqueezedCoherentParams coherent(Complex alpha) { return {alpha, 0.0, 0.0}; }

 private:
  Complex alpha_{0.0, 0.0};
  double s_ = 0.0;
  double theta_ = 0.0;
};

struct GaussianMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  // <{x,p}>/2 - <x><p>
  double cov_xp = 0.0;

  double uncertainty_product() const { return var_x * var_p - cov_xp * cov_xp; }
};

struct Ladder {
  Matrix annihilation;
  Matrix creation;
};

struct Quadratures {
  Matrix x;
  Matrix p;
};

struct TruncatedUnitary {
  Matrix matrix;
  // Population that D or S pushes from |0> onto the top retained level.
  double tail_population = 0.0;
  bool under_resolved = false;
};

// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

Ladder build_ladder(Index n);
Quadratures build_xp(const OscillatorParams& osc, Index n);

TruncatedUnitary displacement_matrix(Complex alpha, Index n,
                                     double tail_tol = kDefaultTailTol);
TruncatedUnitary squeeze_matrix(double s, double theta, Index n,
                                double tail_tol = kDefaultTailTol);

/// D(alpha) S(s e^{i theta}) |0>. Throws kUnderResolved when the tail
/// population exceeds the truncation's tail_tol.
TruncatedState make_state(const SqueezedCoherentParams& params,
                          const FockTruncation& trunc);
TruncatedState fock_state(Index level, const FockTruncation& trunc);

double linear_entropy(const TruncatedDensity& rho);
// 1 - Tr(rho^2) for an arbitrary square matrix; no validation.
double linear_entropy(const Matrix& rho);

/// Closed-form moments of D(alpha) S(zeta) |0>.
GaussianMoments gaussian_moments(const SqueezedCoherentParams& params,
                                 const OscillatorParams& osc);

/// Moments computed as Fock-space expectation values of x, p, x^2, p^2 and
/// {x,p}. Independent of the closed forms above.
GaussianMoments fock_moments(const TruncatedState& state, const OscillatorParams& osc);

Matrix matrix_exponential(const Matrix& generator);

}  // namespace lindsieve
