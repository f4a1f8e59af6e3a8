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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <vector>

#include "lindsieve/correlated_noise.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace lindsieve;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("Gaussian kernel and its spectrum") {
  const GaussianKernel k{1.0, 1.0};
  CHECK(k.correlation(1.0) == Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(k.correlation(1.0) == Approx(0.36788).epsilon(1e-5));
  const TabulatedSpectrum s = kernel_to_spectrum(k, 1.0, 1.05 * k.cutoff(), 2001);
  CHECK(std::abs(correlation_from_spectrum(s, 0.0, 1.0) - 1.0) < 1e-8);
  CHECK(spectral_width(CorrelationKernel{s}) == Approx(k.spectral_width()).epsilon(1e-8));

  const GaussianKernel wide{1.0, 2.0};
  CHECK(wide.spectral_width() == Approx(k.spectral_width() / 2.0));

  CHECK_THROWS_CODE(kernel_to_spectrum(k, 1.0, 0.5 * k.cutoff(), 101), ErrorCode::kTruncatedSpectrum);
  CHECK_THROWS_CODE(GaussianKernel({0.0, 1.0}).validate(), ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(GaussianKernel({1.0, -1.0}).validate(), ErrorCode::kInvalidArgument);
}

TEST_CASE("kernel from spectrum parameters") {
  const GaussianKernel k = GaussianKernel::from_spectrum(2.0, 0.3, 0.7);
  CHECK(k.spectral_width() == Approx(0.3).epsilon(1e-14));
  CHECK(k.spectral_density(0.0, 0.7) == Approx(2.0).epsilon(1e-14));
  CHECK(k.spectral_density(0.3, 0.7) == Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("Fourier round trip on a resolved grid") {
  const double hbar = 0.8;
  const GaussianKernel k{0.6, 0.7};
  const TabulatedSpectrum s = kernel_to_spectrum(k, hbar, 1.05 * k.cutoff(), 3001);
  for (double r = 0.0; r <= 3.0 * k.sigma; r += 0.05) {
    const double c = k.correlation(r);
    CHECK(std::abs(correlation(CorrelationKernel{s}, r, hbar) - c) <= 1e-8 * c);
  }
  // kernel -> spectrum from a tabulated c(r)
  std::vector<double> r, c;
  for (int i = 0; i <= 3000; ++i) {
    r.push_back(6.0 * k.sigma * i / 3000.0);
    c.push_back(k.correlation(r.back()));
  }
  const std::vector<double> ks{0.0, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> back = spectrum_from_correlation(r, c, ks, hbar);
  for (std::size_t i = 0; i < ks.size(); ++i)
    CHECK(back[i] == Approx(k.spectral_density(ks[i], hbar)).epsilon(1e-8));

  CHECK_THROWS_CODE(spectrum_from_correlation({0.1, 0.2}, {1.0, 0.5}, ks, hbar), ErrorCode::kInvalidArgument);
}

TEST_CASE("decoherence function") {
  const CorrelationKernel k = GaussianKernel{1.0, 1.0};
  CHECK(decoherence_g(k, 0.0, 1.0) == 0.0);
  CHECK(decoherence_g(k, std::numeric_limits<double>::infinity(), 1.0) == 2.0);
  CHECK(decoherence_g(k, 1.0, 1.0) == Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
  CHECK(decoherence_g(k, 1.0, 1.0) == Approx(1.26424).epsilon(1e-5));
  CHECK(decoherence_g(k, -1.3, 1.0) == decoherence_g(k, 1.3, 1.0));
  double prev = 0.0;
  for (double r = 0.1; r < 5.0; r += 0.1) {
    const double g = decoherence_g(k, r, 1.0);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("characteristic function") {
  const OscillatorParams unit;
  const GaussianMoments coh = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit);
  CHECK(char_function(coh, 0.0, 0.7, unit) == Complex(1.0));
  for (double tau : {0.0, 0.4, 2.0})
    CHECK(std::abs(char_function(coh, 1.0, tau, unit)) == Approx(std::exp(-0.25)).epsilon(1e-14));

  const GaussianMoments disp = gaussian_moments(SqueezedCoherentParams::coherent({2.0, 0.0}), unit);
  CHECK(std::abs(char_function(disp, 1.3, 0.9, unit)) == Approx(std::abs(char_function(coh, 1.3, 0.9, unit))));

  // Fock path against the analytic path
  const OscillatorParams osc{1.2, 0.9, 0.8};
  const SqueezedCoherentParams sp({0.6, -0.3}, 0.5, 1.3);
  const TruncatedState psi = make_state(sp, {90});
  const GaussianMoments mom = gaussian_moments(sp, osc);
  for (double k : {0.0, 0.5, 1.7, -2.2})
    for (double tau : {0.0, 1.1, 4.0}) {
      const CharValue v = char_function(psi, k, tau, osc);
      CHECK_FALSE(v.under_resolved);
      CHECK(std::abs(v.value - char_function(mom, k, tau, osc)) < 1e-10);
      CHECK(std::abs(v.value) <= 1.0 + 1e-14);
      if (k != 0.0) CHECK(std::abs(v.value) < 1.0);
    }
  CHECK(char_function(make_state(sp, {30}), 40.0, 0.0, osc).under_resolved);
}

TEST_CASE("correlated entropy production: examples") {
  const OscillatorParams unit;
  const GaussianMoments coh = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit);
  const double dk = 0.1;
  const CorrelationKernel k = GaussianKernel::from_spectrum(1.0, dk, 1.0);
  const QuadratureEstimate q = entropy_production_correlated(coh, k, unit, 1.0);
  const double expected = std::sqrt(2.0 * kPi) * dk * (1.0 - 1.0 / std::sqrt(1.0 + dk * dk));
  CHECK(q.converged);
  CHECK(q.value == Approx(expected).epsilon(1e-8));
  CHECK(q.value == Approx(1.244e-3).epsilon(1e-3));

  const TabulatedSpectrum zero{{-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  CHECK(entropy_production_correlated(coh, CorrelationKernel{zero}, unit, 1.0).value == 0.0);

  const GaussianMoments far = gaussian_moments(SqueezedCoherentParams::coherent({3.0, 0.0}), unit);
  CHECK(std::abs(entropy_production_correlated(far, k, unit, 1.0).value - q.value) < 1e-8);

  // Fock path, displaced state
  const CorrelationKernel kb = GaussianKernel{0.02, 1.2};
  const double a = entropy_production_correlated(make_state(SqueezedCoherentParams::coherent({0.0, 0.0}), {60}), kb,
                                                 unit, 1.0)
                       .value;
  const double b = entropy_production_correlated(make_state(SqueezedCoherentParams::coherent({3.0, 0.0}), {90}), kb,
                                                 unit, 1.0)
                       .value;
  CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("correlated entropy production matches the tau-integral oracle") {
  const OscillatorParams unit;
  const GaussianKernel kern{0.03, 0.9};
  for (double s : {0.0, 0.8})
    for (double th : {0.0, 2.0}) {
      const double t = 2.7;
      const oracle::CorrelatedObjective obj(kern.c0, kern.sigma, 1.0, 1.0, 1.0, t, 4000);
      const double v = entropy_production_correlated(gaussian_moments({{0.0, 0.0}, s, th}, unit), kern, unit, t).value;
      CHECK(v == Approx(obj(s, th)).epsilon(1e-8));
    }
}

TEST_CASE("Fock and Gaussian correlated paths agree") {
  const OscillatorParams osc{1.1, 0.9, 1.0};
  const GaussianKernel kern{0.02, 1.5};
  const SqueezedCoherentParams sp({0.2, 0.4}, 0.4, 0.8);
  const QuadratureEstimate fock = entropy_production_correlated(make_state(sp, {120}), kern, osc, 2.0);
  const QuadratureEstimate gauss = entropy_production_correlated(gaussian_moments(sp, osc), kern, osc, 2.0);
  CHECK_FALSE(fock.under_resolved);
  CHECK(fock.value == Approx(gauss.value).epsilon(1e-7));

  // Non-Gaussian input is accepted and bounded by the short-correlation value.
  const QuadratureEstimate f1 = entropy_production_correlated(fock_state(1, {40}), kern, osc, 2.0);
  CHECK(f1.value > 0.0);
  CHECK(f1.value <= short_correlation_limit(kern, 2.0, osc.hbar));
}

TEST_CASE("tabulated and analytic Gaussian spectra agree") {
  const OscillatorParams unit;
  const GaussianKernel kern{0.05, 0.8};
  const TabulatedSpectrum tab = kernel_to_spectrum(kern, 1.0, 1.05 * kern.cutoff(), 4001);
  const GaussianMoments m = gaussian_moments({{0.0, 0.0}, 0.6, 1.0}, unit);
  const double a = entropy_production_correlated(m, kern, unit, 1.5).value;
  const double b = entropy_production_correlated(m, CorrelationKernel{tab}, unit, 1.5).value;
  CHECK(b == Approx(a).epsilon(1e-6));
  CHECK(long_correlation_map(CorrelationKernel{tab}, 1.0).d_pp ==
        Approx(long_correlation_map(kern, 1.0).d_pp).epsilon(1e-8));
}

TEST_CASE("short-correlation limit") {
  const CorrelationKernel half = GaussianKernel{0.5, 1.0};
  CHECK(short_correlation_limit(half, 1.0, 1.0) == Approx(1.0));
  CHECK(short_correlation_limit(half, 0.0, 1.0) == 0.0);

  const OscillatorParams unit;
  const GaussianKernel narrow{1.0, 0.02 * unit.length_scale()};
  const double limit = short_correlation_limit(narrow, 1.0, 1.0);
  const double coh =
      entropy_production_correlated(gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit), narrow,
                                    unit, 1.0)
          .value;
  const double sq = entropy_production_correlated(gaussian_moments({{0.0, 0.0}, 2.0, 0.0}, unit), narrow, unit, 1.0)
                        .value;
  CHECK(std::abs(coh - limit) <= 0.02 * limit);
  CHECK(std::abs(sq - limit) <= 0.02 * limit);
  CHECK(std::abs(coh - sq) <= 0.01 * coh);
}

TEST_CASE("bounds and monotonicity") {
  const OscillatorParams unit;
  const GaussianMoments m = gaussian_moments({{0.0, 0.0}, 0.7, 2.2}, unit);
  const GaussianKernel kern{0.04, 0.6};
  double prev = 0.0;
  for (double t : {0.0, 0.5, 1.0, 3.0, 7.0}) {
    const double v = entropy_production_correlated(m, kern, unit, t).value;
    CHECK(v >= prev);
    CHECK(v <= short_correlation_limit(kern, t, 1.0) + 1e-15);
    prev = v;
  }
}

TEST_CASE("regime bracketing as the correlation length shrinks") {
  const OscillatorParams unit;
  const GaussianMoments coh = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit);
  const double dx = unit.length_scale();
  const double c0 = 0.01, t = 1.0;
  const double limit = 2.0 * c0 * t;
  std::vector<double> values;
  for (double ratio : {50.0, 10.0, 3.0, 1.0, 0.3, 0.1, 0.02}) {
    const GaussianKernel kern{c0, ratio * dx};
    values.push_back(entropy_production_correlated(coh, kern, unit, t).value);
  }
  const GaussianKernel widest{c0, 50.0 * dx};
  const double mapped = entropy_production_closed(coh, long_correlation_map(widest, 1.0), unit, t);
  CHECK(values.front() == Approx(mapped).epsilon(1e-3));
  for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] > values[i - 1]);
  CHECK(values.back() == Approx(limit).epsilon(0.02));
}

TEST_CASE("long-correlation map") {
  const OscillatorParams unit;
  const double dk = 0.02 * std::sqrt(0.5);
  const GaussianKernel kern = GaussianKernel::from_spectrum(1.0, dk, 1.0);
  const GaussianMoments coh = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit);
  const DiffusionCoefficients d = long_correlation_map(kern, 1.0);
  CHECK(d.d_qq == 0.0);
  CHECK(d.d_pq == 0.0);
  CHECK(d.lambda == 0.0);
  for (double t : {1.0, 5.0}) {
    const double corr = entropy_production_correlated(coh, kern, unit, t).value;
    CHECK(std::abs(corr - entropy_production_closed(coh, d, unit, t)) <= 0.005 * corr);
  }

  const TabulatedSpectrum tab = kernel_to_spectrum(GaussianKernel{0.3, 1.2}, 1.0, 30.0, 2001);
  const double base = long_correlation_map(CorrelationKernel{tab}, 1.0).d_pp;
  CHECK(long_correlation_map(CorrelationKernel{tab.scaled(2.0)}, 1.0).d_pp == Approx(2.0 * base));

  // doubled width at fixed total weight: sigma halves, c0 fixed
  const double a = long_correlation_map(GaussianKernel{0.3, 1.2}, 1.0).d_pp;
  const double b = long_correlation_map(GaussianKernel{0.3, 0.6}, 1.0).d_pp;
  CHECK(b == Approx(4.0 * a));
}

TEST_CASE("width condition") {
  const OscillatorParams unit;
  const GaussianMoments coh = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), unit);
  const double bound = std::sqrt(unit.mass * unit.omega / (2.0 * unit.hbar));
  CHECK(width_condition(coh, 0.01 * bound, unit).satisfied);
  CHECK_FALSE(width_condition(coh, bound, unit).satisfied);
  const WidthCondition w = width_condition(coh, 0.05 * bound, unit);
  CHECK(w.position_bound == Approx(bound));
  CHECK(w.momentum_bound == Approx(bound));
  CHECK(w.margin == Approx(0.05));

  const GaussianMoments sq = gaussian_moments({{0.0, 0.0}, 1.0, 0.0}, unit);
  const WidthCondition ws = width_condition(sq, 0.05 * bound, unit);
  CHECK(ws.margin == Approx(0.05 * std::exp(1.0)));
  CHECK_THROWS_CODE(width_condition(coh, 0.0, unit), ErrorCode::kInvalidArgument);
}

TEST_CASE("spectrum file round trip") {
  const GaussianKernel kern{0.7, 0.9};
  const TabulatedSpectrum s = kernel_to_spectrum(kern, 1.0, 1.05 * kern.cutoff(), 1501);
  const auto path = temp_file("lindsieve_spectrum_test.txt");
  write_spectrum(path, s, "gaussian c0=0.7 sigma=0.9");
  const TabulatedSpectrum back = read_spectrum(path);
  REQUIRE(back.k.size() == s.k.size());
  for (std::size_t i = 0; i < s.k.size(); ++i) {
    CHECK(back.k[i] == s.k[i]);
    CHECK(back.weight[i] == s.weight[i]);
  }
  CHECK(std::abs(correlation_from_spectrum(back, 0.0, 1.0) - kern.c0) < 1e-8);
  std::filesystem::remove(path);
}

TEST_CASE("spectrum parsing") {
  const TabulatedSpectrum s = parse_spectrum("# comment\n-1 0.5\n\n0 1.0  # inline\n1\t0.5\n");
  CHECK(s.k == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(s.weight == std::vector<double>{0.5, 1.0, 0.5});
  CHECK_THROWS_CODE(parse_spectrum("-1 0.5\n0 abc\n1 0.5\n"), ErrorCode::kIo);
  CHECK_THROWS_CODE(parse_spectrum("-1 0.5 7\n0 1\n1 0.5\n"), ErrorCode::kIo);
  CHECK_THROWS_CODE(parse_spectrum("-1 0.5\n0 1\n2 0.5\n"), ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(parse_spectrum("-1 0.5\n0 -1\n1 0.5\n"), ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(read_spectrum(temp_file("lindsieve_missing_spectrum.txt")), ErrorCode::kIo);
}
