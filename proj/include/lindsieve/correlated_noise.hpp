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

// Decoherence from a classical fluctuating potential with finite spatial
// correlation length, represented by plane-wave channels a(k) e^{ikx}.
//
// Kernel and spectral density are the Fourier pair
//   c(r) = (hbar / 2) int |a(k)|^2 e^{ikr} dk,
// and the Gaussian kernel c(r) = c0 exp(-(r / sigma)^2) has the spectrum
//   |a(k)|^2 = c0 sigma / (hbar sqrt(pi)) exp(-k^2 sigma^2 / 4),
// whose standard deviation is sqrt(2) / sigma.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "lindsieve/oscillator.hpp"
#include "lindsieve/quadratic_channels.hpp"

namespace lindsieve {

struct GaussianKernel {
  double c0 = 1.0;     // c(0)
  double sigma = 1.0;  // correlation length

  void validate() const;
  double correlation(double r) const;
  double spectral_density(double k, double hbar) const;
  double spectral_width() const;
  // Wavenumber where the spectrum falls to rel_floor times its peak.
  double cutoff(double rel_floor = 1e-12) const;

  /// Kernel whose spectrum is peak * exp(-k^2 / (2 delta_k^2)).
  static GaussianKernel from_spectrum(double peak, double delta_k, double hbar);
};

/// |a(k)|^2 sampled on an ascending grid symmetric about k = 0.
struct TabulatedSpectrum {
  std::vector<double> k;
  std::vector<double> weight;

  void validate() const;
  TabulatedSpectrum scaled(double factor) const;
};

using CorrelationKernel = std::variant<GaussianKernel, TabulatedSpectrum>;

struct CorrelatedQuadrature {
  int tau_nodes_per_period = 64;
  double rel_tol = 1e-8;
  int max_doublings = 10;
  double spectrum_floor = 1e-12;
};

struct WidthCondition {
  bool satisfied = false;
  // delta_k / min(position bound, momentum bound)
  double margin = 0.0;
  double position_bound = 0.0;  // (m omega / hbar) Delta x
  double momentum_bound = 0.0;  // Delta p / hbar
};

struct CharValue {
  Complex value;
  bool under_resolved = false;
};

/// Spectrum of a Gaussian kernel on n_k equally spaced points of
/// [-k_max, k_max]. Throws kTruncatedSpectrum when k_max cuts the spectrum
/// above 1e-12 of its peak.
TabulatedSpectrum kernel_to_spectrum(const GaussianKernel& kernel, double hbar, double k_max,
                                     int n_k);

/// c(r) from a tabulated spectrum (trapezoid rule on the grid).
double correlation_from_spectrum(const TabulatedSpectrum& spectrum, double r, double hbar);

/// Inverse transform |a(k)|^2 = (1 / pi hbar) int c(r) cos(kr) dr of an even
/// kernel tabulated on r >= 0 (trapezoid rule, mirrored).
std::vector<double> spectrum_from_correlation(const std::vector<double>& r,
                                              const std::vector<double>& c,
                                              const std::vector<double>& k, double hbar);

double correlation(const CorrelationKernel& kernel, double r, double hbar);
double correlation_at_zero(const CorrelationKernel& kernel, double hbar);
double spectral_width(const CorrelationKernel& kernel);

/// g(r) = (2 / hbar^2) (c(0) - c(r)); r = +-inf gives 2 c(0) / hbar^2.
double decoherence_g(const CorrelationKernel& kernel, double r, double hbar);

/// <e^{i k x(tau)}> for a Gaussian state: exp(i k <x(tau)> - k^2 Var x(tau) / 2).
Complex char_function(const GaussianMoments& moments, double k, double tau,
                      const OscillatorParams& osc);

/// <psi| D(beta) |psi> with beta = i k sqrt(hbar / 2 m omega) e^{i omega tau},
/// which equals <e^{i k x(tau)}>. Flags k beyond the truncation's reach.
CharValue char_function(const TruncatedState& state, double k, double tau,
                        const OscillatorParams& osc);

/// Position variance of the free Heisenberg x(tau) for given moments.
double position_variance_at(const GaussianMoments& moments, double tau, const OscillatorParams& osc);

/// (1 / hbar) int_0^t int |a(k)|^2 (1 - |<e^{ikx(tau)}>|^2) dk dtau, Gaussian
/// states through the analytic characteristic function.
QuadratureEstimate entropy_production_correlated(const GaussianMoments& moments,
                                                 const CorrelationKernel& kernel,
                                                 const OscillatorParams& osc, double t,
                                                 const CorrelatedQuadrature& quad = {});

/// Same functional for an arbitrary truncated pure state; the characteristic
/// function is evaluated in the eigenbasis of the truncated position operator.
QuadratureEstimate entropy_production_correlated(const TruncatedState& state,
                                                 const CorrelationKernel& kernel,
                                                 const OscillatorParams& osc, double t,
                                                 const CorrelatedQuadrature& quad = {});

/// 2 c(0) t / hbar^2, the state-independent short-correlation-length value.
double short_correlation_limit(const CorrelationKernel& kernel, double t, double hbar);

/// Quadratic expansion of the plane-wave channels: pure position decoherence
/// D_pp = (hbar / 4) int k^2 |a(k)|^2 dk, all other coefficients zero. The
/// 1/4 (rather than the 1/2 of a literal channel expansion) matches the 1/hbar
/// normalization of the correlated functional above, so both agree when
/// delta_k is small.
DiffusionCoefficients long_correlation_map(const CorrelationKernel& kernel, double hbar);

WidthCondition width_condition(const GaussianMoments& moments, double delta_k,
                               const OscillatorParams& osc, double ratio_threshold = 0.1);

/// Two-column text: k and |a(k)|^2, whitespace separated, '#' comments.
TabulatedSpectrum read_spectrum(const std::filesystem::path& path);
TabulatedSpectrum parse_spectrum(const std::string& text);
void write_spectrum(const std::filesystem::path& path, const TabulatedSpectrum& spectrum,
                    const std::string& comment = {});

}  // namespace lindsieve
