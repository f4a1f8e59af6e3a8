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

// Acceptance runner. Prints one PASS/FAIL line per criterion. With no
// arguments every criterion runs; otherwise only the listed numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lindsieve/correlated_noise.hpp"
#include "lindsieve/master_equation.hpp"
#include "lindsieve/oscillator.hpp"
#include "lindsieve/quadratic_channels.hpp"
#include "lindsieve/sieve.hpp"
#include "oracles.hpp"

using namespace lindsieve;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1. closed form vs quadrature ------------------------------------------
Outcome criterion1() {
  constexpr double kTol = 1e-6;
  const OscillatorParams osc;
  LindbladChannelSet plain;  // D_qq = 0.02, D_pp = 0.005
  plain.channels = {{Complex(0.2), Complex(0.0)}, {Complex(0.0), Complex(0.1)}};
  LindbladChannelSet with_lambda = plain;  // adds lambda = -0.01, D_pq stays 0
  with_lambda.channels.push_back({Complex(0.1), Complex(0.0, 0.1)});

  const std::vector<SqueezedCoherentParams> states{
      SqueezedCoherentParams::coherent({0.0, 0.0}), SqueezedCoherentParams::coherent({0.7, -0.4}),
      {{0.0, 0.0}, 0.5, 0.0}, {{0.3, 0.2}, 1.0, 1.1}, {{0.0, 0.0}, 0.8, 4.0}};
  const std::vector<double> times{1.0, kPi, 2.0 * kPi, 10.0 * kPi};

  double worst = 0.0;
  for (const auto* ch : {&plain, &with_lambda}) {
    const DiffusionCoefficients d = channels_to_diffusion(*ch, osc.hbar);
    for (const auto& sp : states) {
      const TruncatedState psi = make_state(sp, {120, kDefaultTailTol});
      const GaussianMoments mom = gaussian_moments(sp, osc);
      for (double t : times) {
        const double closed = entropy_production_closed(mom, d, osc, t);
        const double quad = entropy_production_quadrature(psi, *ch, osc, t).value;
        worst = std::max(worst, std::abs(closed - quad));
      }
    }
  }
  return {worst <= kTol, fmt("max |closed - quadrature| = %.3e (tol %.0e)", worst, kTol)};
}

// --- 2. second-order remainder ---------------------------------------------
Outcome criterion2() {
  constexpr double kLo = 0.2, kHi = 0.3;
  const std::vector<double> eps{0.02, 0.01, 0.005};
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  EvolutionSpec base;
  base.dim = 60;
  base.dt = 0.0;  // period / 2000

  struct Case {
    const char* name;
    TruncatedState state;
    LindbladChannelSet channels;
  };
  LindbladChannelSet qq;
  qq.channels = {{Complex(1.0), Complex(0.0)}};
  LindbladChannelSet mixed;
  mixed.channels = {{Complex(1.0), Complex(1.0)}};
  std::vector<Case> cases{{"coherent", make_state(SqueezedCoherentParams::coherent({1.0, 0.0}), {60}), qq},
                          {"fock1", fock_state(1, {60}), mixed}};

  bool ok = true;
  std::ostringstream os;
  for (auto& c : cases) {
    base.channels = c.channels;
    const auto pts = perturbation_residual(c.state, base, 2.0 * kPi, eps, threads);
    os << c.name << " ratios";
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double ratio = pts[i].residual / pts[i - 1].residual;
      ok = ok && ratio >= kLo && ratio <= kHi;
      os << fmt(" %.4f", ratio);
    }
    os << "; ";
  }
  os << fmt("window [%.1f, %.1f]", kLo, kHi);
  return {ok, os.str()};
}

// --- 3. coherent states maximal at long times ------------------------------
Outcome criterion3() {
  constexpr double kLongLimit = 0.02;
  const OscillatorParams osc;
  const DiffusionCoefficients d{0.02, 0.005, 0.0, 0.0, 0.0};
  const SieveResult late = sieve_quadratic(d, osc, 20.0 * kPi);
  const SieveResult early = sieve_quadratic(d, osc, 2.0 * kPi);
  const bool long_ok = late.s_star <= kLongLimit;
  const bool decrease_ok = early.s_star > late.s_star;
  return {long_ok && decrease_ok,
          fmt("s*(20pi) = %.3e (<= %.2f: %s); s*(2pi) = %.3e > s*(20pi): %s", late.s_star, kLongLimit,
              long_ok ? "yes" : "no", early.s_star, decrease_ok ? "yes" : "no")};
}

// --- 4. squeeze-direction advisory -----------------------------------------
Outcome criterion4() {
  constexpr double kResidualTol = 0.05;
  const OscillatorParams osc;
  const DiffusionCoefficients d{0.02, 0.005, 0.0, 0.0, 0.0};
  const double t = 0.6 * osc.period();
  const SieveGrid grid;
  const DirectionCheck chk = squeeze_direction_check(d, osc, t, grid);
  const double residual = std::abs(chk.cos_theta_star - chk.f3 / chk.f1);
  if (residual <= kResidualTol)
    return {true, fmt("|cos theta* - f3/f1| = %.3e <= %.2f", residual, kResidualTol)};

  const oracle::QuadraticObjective obj(d.d_qq, d.d_pp, d.lambda, osc.mass, osc.omega, osc.hbar, t);
  const oracle::DenseArgmin dense = oracle::dense_argmin(obj, grid.s_max);
  const bool confirmed = oracle::within_cell(chk.sieve.s_star, chk.sieve.theta_star, dense.s, dense.theta,
                                             grid.s_step(), grid.theta_step());
  std::printf(
      "# fixture[squeeze-direction t=0.6T]: s*=%.6f theta*=%.6f cos(theta*)=%.6f f3/f1=%.6f residual=%.6f "
      "dense s=%.6f theta=%.6f\n",
      chk.sieve.s_star, chk.sieve.theta_star, chk.cos_theta_star, chk.f3 / chk.f1, residual, dense.s, dense.theta);
  return {confirmed, fmt("residual %.3f > %.2f; dense 512x512 oracle %s the argmin (logged as fixture)", residual,
                         kResidualTol, confirmed ? "confirms" : "contradicts")};
}

// --- 5. short-correlation universality -------------------------------------
Outcome criterion5() {
  constexpr double kToLimit = 0.02, kMutual = 0.01;
  const OscillatorParams osc;
  const GaussianKernel kernel{0.01, 0.02 * osc.length_scale()};
  const double t = 1.0;
  const double limit = short_correlation_limit(kernel, t, osc.hbar);
  const double coh =
      entropy_production_correlated(gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), osc), kernel,
                                    osc, t)
          .value;
  const double sq = entropy_production_correlated(gaussian_moments({{0.0, 0.0}, 2.0, 0.0}, osc), kernel, osc, t).value;
  const double e_coh = std::abs(coh - limit) / limit;
  const double e_sq = std::abs(sq - limit) / limit;
  const double mutual = std::abs(coh - sq) / std::max(coh, sq);
  return {e_coh <= kToLimit && e_sq <= kToLimit && mutual <= kMutual,
          fmt("coherent %.3f%%, s=2 %.3f%% from 2c(0)t/hbar^2 (tol 2%%); mutual %.3f%% (tol 1%%)", 100 * e_coh,
              100 * e_sq, 100 * mutual)};
}

// --- 6. long-correlation reduction -----------------------------------------
Outcome criterion6() {
  constexpr double kRel = 0.005;
  const OscillatorParams osc;
  const double dk = 0.02 * std::sqrt(osc.mass * osc.omega / (2.0 * osc.hbar));
  const CorrelationKernel kernel = GaussianKernel::from_spectrum(1.0, dk, osc.hbar);
  const GaussianMoments mom = gaussian_moments(SqueezedCoherentParams::coherent({0.0, 0.0}), osc);
  const double t = 1.0;
  const double corr = entropy_production_correlated(mom, kernel, osc, t).value;
  const double closed = entropy_production_closed(mom, long_correlation_map(kernel, osc.hbar), osc, t);
  const double rel = std::abs(corr - closed) / std::abs(closed);
  return {rel <= kRel, fmt("correlated %.6e vs mapped closed %.6e, rel %.2e (tol %.1e)", corr, closed, rel, kRel)};
}

// --- 7. integrator sanity --------------------------------------------------
Outcome criterion7() {
  constexpr double kEntropy = 1e-8, kDrift = 1e-8, kMinEig = -1e-6;
  EvolutionSpec spec;
  spec.dim = 40;
  spec.dt = 1e-3;
  spec.t_final = 2.0 * kPi;
  spec.sample_every = 10;
  spec.track_min_eigenvalue = true;
  const TruncatedState psi = make_state({{1.0, 0.5}, 0.3, 0.7}, {40});
  const EntropyTrajectory tr = evolve(psi.density(), spec);
  double max_s = 0, max_drift = 0, min_eig = 1;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    max_s = std::max(max_s, tr.entropy[i]);
    max_drift = std::max(max_drift, tr.trace_drift[i]);
    min_eig = std::min(min_eig, tr.min_eigenvalue[i]);
  }
  return {max_s <= kEntropy && max_drift <= kDrift && min_eig >= kMinEig,
          fmt("max entropy %.2e, max trace drift %.2e, min eigenvalue %.2e over %zu samples", max_s, max_drift,
              min_eig, tr.times.size())};
}

// --- 8. invariance suite ---------------------------------------------------
Outcome criterion8() {
  constexpr double kSpread = 1e-8, kRoundTrip = 1e-8, kPeriodic = 1e-14;
  const OscillatorParams osc;
  std::ostringstream os;
  bool ok = true;
  auto check = [&](const char* name, bool cond, double value) {
    ok = ok && cond;
    os << fmt("%s %s(%.1e) ", name, cond ? "ok" : "FAIL", value);
  };

  LindbladChannelSet ch;
  ch.channels = {{Complex(0.2), Complex(0.0)}, {Complex(0.0), Complex(0.1)}};
  const DiffusionCoefficients d = channels_to_diffusion(ch, osc.hbar);
  const double t = 3.7;

  // displacement invariance
  {
    const SqueezedCoherentParams at0({0.0, 0.0}, 0.4, 0.9), disp({3.0, 2.0}, 0.4, 0.9);
    const double c0 = entropy_production_closed(gaussian_moments(at0, osc), d, osc, t);
    const double c1 = entropy_production_closed(gaussian_moments(disp, osc), d, osc, t);
    check("closed-displacement", c0 == c1, std::abs(c0 - c1));

    const SqueezedCoherentParams small({0.8, -0.6}, 0.4, 0.9);
    const double q0 = entropy_production_quadrature(make_state(at0, {120}), ch, osc, t).value;
    const double q1 = entropy_production_quadrature(make_state(small, {120}), ch, osc, t).value;
    check("quadrature-displacement", std::abs(q0 - q1) <= kSpread, std::abs(q0 - q1));

    const GaussianKernel kern{0.01, 1.5};
    const double g0 = entropy_production_correlated(gaussian_moments(at0, osc), kern, osc, t).value;
    const double g1 = entropy_production_correlated(gaussian_moments(disp, osc), kern, osc, t).value;
    check("correlated-displacement", std::abs(g0 - g1) <= kSpread, std::abs(g0 - g1));
  }
  // mu independence
  {
    DiffusionCoefficients dm = d;
    dm.mu = 0.37;
    LindbladChannelSet chm = ch;
    chm.mu = 0.37;
    const SqueezedCoherentParams sp({0.2, 0.1}, 0.6, 2.0);
    const double a = entropy_production_closed(gaussian_moments(sp, osc), d, osc, t);
    const double b = entropy_production_closed(gaussian_moments(sp, osc), dm, osc, t);
    const TruncatedState psi = make_state(sp, {120});
    const double qa = entropy_production_quadrature(psi, ch, osc, t).value;
    const double qb = entropy_production_quadrature(psi, chm, osc, t).value;
    check("mu-closed", a == b, std::abs(a - b));
    check("mu-quadrature", qa == qb, std::abs(qa - qb));
  }
  // theta periodicity of the sieve objective
  {
    double worst = 0.0;
    for (double th : {0.0, 0.3, 1.1, 2.9, 5.5}) {
      const double a = entropy_production_closed(gaussian_moments({{0.0, 0.0}, 0.7, th}, osc), d, osc, t);
      const double b =
          entropy_production_closed(gaussian_moments({{0.0, 0.0}, 0.7, th + 2.0 * kPi}, osc), d, osc, t);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    check("theta-periodic", worst <= kPeriodic, worst);
  }
  // exact zeros of f2, f3
  {
    const OscillatorParams o2{1.3, 0.7, 0.9};
    bool zeros = true;
    for (int n = 1; n <= 40; ++n) {
      const FCoefficients f = f_coefficients(n * kPi / o2.omega, o2, d);
      zeros = zeros && f.f2 == 0.0 && f.f3 == 0.0;
    }
    check("f2-f3-zeros", zeros, 0.0);
  }
  // Fourier round trip, both directions
  {
    const GaussianKernel kern{0.8, 1.3};
    const double hbar = 0.9;
    const TabulatedSpectrum spec = kernel_to_spectrum(kern, hbar, 1.05 * kern.cutoff(), 4001);
    double worst = 0.0;
    for (double r = 0.0; r <= 3.0 * kern.sigma; r += 0.1 * kern.sigma) {
      const double c = kern.correlation(r);
      worst = std::max(worst, std::abs(correlation_from_spectrum(spec, r, hbar) - c) / c);
    }
    std::vector<double> rs, cs;
    const double r_max = kern.sigma * std::sqrt(std::log(1e14));
    for (int i = 0; i <= 4000; ++i) {
      rs.push_back(r_max * i / 4000.0);
      cs.push_back(kern.correlation(rs.back()));
    }
    std::vector<double> ks;
    for (double k = 0.0; k <= 2.0 * kern.spectral_width(); k += 0.1 * kern.spectral_width()) ks.push_back(k);
    const std::vector<double> back = spectrum_from_correlation(rs, cs, ks, hbar);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double ref = kern.spectral_density(ks[i], hbar);
      worst = std::max(worst, std::abs(back[i] - ref) / ref);
    }
    check("fourier-round-trip", worst <= kRoundTrip, worst);
  }
  return {ok, os.str()};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "closed-form/quadrature equivalence", 5.0, criterion1},
      {2, "first-order validity", 120.0, criterion2},
      {3, "coherent states maximal at long times", 10.0, criterion3},
      {4, "squeeze-direction advisory", 30.0, criterion4},
      {5, "short-correlation universality", 60.0, criterion5},
      {6, "long-correlation reduction", 60.0, criterion6},
      {7, "integrator sanity", 30.0, criterion7},
      {8, "invariance suite", 30.0, criterion8},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d (%s): %s; runtime %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
