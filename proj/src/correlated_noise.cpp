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

#include "lindsieve/correlated_noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lindsieve/quadrature.hpp"

namespace lindsieve {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  return w;
}

}  // namespace

void GaussianKernel::validate() const {
  if (!(c0 > 0.0) || !std::isfinite(c0)) fail(ErrorCode::kInvalidArgument, "kernel amplitude c0 must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::kInvalidArgument, "correlation length sigma must be positive");
}

double GaussianKernel::correlation(double r) const {
  const double u = r / sigma;
  return c0 * std::exp(-u * u);
}

double GaussianKernel::spectral_density(double k, double hbar) const {
  const double u = k * sigma / 2.0;
  return c0 * sigma / (hbar * std::sqrt(kPi)) * std::exp(-u * u);
}

double GaussianKernel::spectral_width() const { return std::sqrt(2.0) / sigma; }

double GaussianKernel::cutoff(double rel_floor) const {
  return 2.0 / sigma * std::sqrt(std::log(1.0 / rel_floor));
}

GaussianKernel GaussianKernel::from_spectrum(double peak, double delta_k, double hbar) {
  if (!(peak > 0.0) || !(delta_k > 0.0))
    fail(ErrorCode::kInvalidArgument, "spectrum peak and width must be positive");
  GaussianKernel g;
  g.sigma = std::sqrt(2.0) / delta_k;
  g.c0 = 0.5 * hbar * peak * std::sqrt(2.0 * kPi) * delta_k;
  return g;
}

void TabulatedSpectrum::validate() const {
  if (k.size() != weight.size()) fail(ErrorCode::kInvalidArgument, "spectrum columns differ in length");
  if (k.size() < 3) fail(ErrorCode::kInvalidArgument, "spectrum needs at least 3 points");
  const double k_max = std::max(std::abs(k.front()), std::abs(k.back()));
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i]) || !std::isfinite(weight[i]))
      fail(ErrorCode::kInvalidArgument, "spectrum contains non-finite values");
    if (weight[i] < 0.0) fail(ErrorCode::kInvalidArgument, "spectral weights must be non-negative");
    if (i > 0 && !(k[i] > k[i - 1])) fail(ErrorCode::kInvalidArgument, "spectrum k grid must be ascending");
    const std::size_t j = k.size() - 1 - i;
    if (std::abs(k[i] + k[j]) > 1e-12 * k_max)
      fail(ErrorCode::kInvalidArgument, "spectrum k grid must be symmetric about 0");
    const double scale = std::max(weight[i], weight[j]);
    if (std::abs(weight[i] - weight[j]) > 1e-9 * scale)
      fail(ErrorCode::kInvalidArgument, "spectral weights must be even in k");
  }
}

TabulatedSpectrum TabulatedSpectrum::scaled(double factor) const {
  TabulatedSpectrum out = *this;
  for (double& w : out.weight) w *= factor;
  return out;
}

TabulatedSpectrum kernel_to_spectrum(const GaussianKernel& kernel, double hbar, double k_max, int n_k) {
  kernel.validate();
  if (n_k < 3) fail(ErrorCode::kInvalidArgument, "spectrum grid needs at least 3 points");
  const double needed = kernel.cutoff(1e-12);
  if (k_max < needed) {
    std::ostringstream os;
    os << "k_max = " << k_max << " truncates the spectrum; need at least " << needed;
    fail(ErrorCode::kTruncatedSpectrum, os.str());
  }
  TabulatedSpectrum s;
  s.k.resize(static_cast<std::size_t>(n_k));
  s.weight.resize(s.k.size());
  const double h = 2.0 * k_max / (n_k - 1);
  const std::size_t n = s.k.size();
  for (std::size_t i = 0; 2 * i < n; ++i) {
    s.k[i] = -k_max + h * static_cast<double>(i);
    s.k[n - 1 - i] = -s.k[i];
  }
  if (n % 2 == 1) s.k[n / 2] = 0.0;
  for (std::size_t i = 0; i < n; ++i) s.weight[i] = kernel.spectral_density(s.k[i], hbar);
  return s;
}

double correlation_from_spectrum(const TabulatedSpectrum& spectrum, double r, double hbar) {
  const std::vector<double> w = trapezoid_weights(spectrum.k);
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    terms[i] = w[i] * spectrum.weight[i] * std::cos(spectrum.k[i] * r);
  return 0.5 * hbar * pairwise_sum(terms);
}

std::vector<double> spectrum_from_correlation(const std::vector<double>& r, const std::vector<double>& c,
                                              const std::vector<double>& k, double hbar) {
  if (r.size() != c.size() || r.size() < 2)
    fail(ErrorCode::kInvalidArgument, "kernel table columns must match and hold at least 2 points");
  if (r.front() != 0.0) fail(ErrorCode::kInvalidArgument, "kernel table must start at r = 0");
  const std::vector<double> w = trapezoid_weights(r);
  std::vector<double> out;
  out.reserve(k.size());
  std::vector<double> terms(r.size());
  for (double kk : k) {
    for (std::size_t i = 0; i < r.size(); ++i) terms[i] = w[i] * c[i] * std::cos(kk * r[i]);
    // Mirror onto r < 0: the integral over the full line is twice the half line.
    out.push_back(2.0 * pairwise_sum(terms) / (kPi * hbar));
  }
  return out;
}

double correlation(const CorrelationKernel& kernel, double r, double hbar) {
  return std::visit(overloaded{[&](const GaussianKernel& g) { return g.correlation(r); },
                               [&](const TabulatedSpectrum& s) {
                                 if (std::isinf(r)) return 0.0;
                                 return correlation_from_spectrum(s, r, hbar);
                               }},
                    kernel);
}

double correlation_at_zero(const CorrelationKernel& kernel, double hbar) {
  return correlation(kernel, 0.0, hbar);
}

double spectral_width(const CorrelationKernel& kernel) {
  return std::visit(overloaded{[](const GaussianKernel& g) { return g.spectral_width(); },
                               [](const TabulatedSpectrum& s) {
                                 const std::vector<double> w = trapezoid_weights(s.k);
                                 double mass = 0.0;
                                 double second = 0.0;
                                 for (std::size_t i = 0; i < w.size(); ++i) {
                                   mass += w[i] * s.weight[i];
                                   second += w[i] * s.weight[i] * s.k[i] * s.k[i];
                                 }
                                 if (!(mass > 0.0))
                                   fail(ErrorCode::kInvalidArgument, "spectrum has zero total weight");
                                 return std::sqrt(second / mass);
                               }},
                    kernel);
}

double decoherence_g(const CorrelationKernel& kernel, double r, double hbar) {
  const double c0 = correlation_at_zero(kernel, hbar);
  const double cr = std::isinf(r) ? 0.0 : correlation(kernel, r, hbar);
  return 2.0 / (hbar * hbar) * (c0 - cr);
}

double position_variance_at(const GaussianMoments& m, double tau, const OscillatorParams& osc) {
  const double mw = osc.mass * osc.omega;
  const double c = std::cos(osc.omega * tau);
  const double s = std::sin(osc.omega * tau);
  return m.var_x * c * c + m.var_p * s * s / (mw * mw) + 2.0 * m.cov_xp * c * s / mw;
}

Complex char_function(const GaussianMoments& m, double k, double tau, const OscillatorParams& osc) {
  const double mw = osc.mass * osc.omega;
  const double mean = m.mean_x * std::cos(osc.omega * tau) + m.mean_p * std::sin(osc.omega * tau) / mw;
  const double var = position_variance_at(m, tau, osc);
  return std::exp(Complex(-0.5 * k * k * var, k * mean));
}

CharValue char_function(const TruncatedState& state, double k, double tau, const OscillatorParams& osc) {
  osc.validate();
  CharValue out;
  if (k == 0.0) {
    out.value = 1.0;
    return out;
  }
  const Complex beta = Complex(0.0, k * osc.length_scale()) * std::polar(1.0, osc.omega * tau);
  const TruncatedUnitary d = displacement_matrix(beta, state.dim(), state.tail_tol());
  const Vector shifted = d.matrix * state.amplitudes();
  out.value = state.amplitudes().dot(shifted);
  out.under_resolved = std::norm(shifted(shifted.size() - 1)) >= state.tail_tol() || d.under_resolved;
  return out;
}

namespace {

// Breakpoints 0 < ... < k_max graded geometrically around the two scales at
// which the integrand changes: the spectral width and the inverse state width.
std::vector<double> graded_breakpoints(double k_max, double spectrum_scale, double state_scale) {
  std::vector<double> pts{0.0, k_max};
  for (double scale : {spectrum_scale, state_scale}) {
    if (!(scale > 0.0) || !std::isfinite(scale)) continue;
    for (double b = scale / 8.0; b < k_max; b *= 2.0) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

struct InnerResult {
  double value = 0.0;
  bool converged = false;
};

// int_0^{k_max} f(k) dk over graded panels, each split 2^d ways until two
// successive estimates agree.
template <class F>
InnerResult integrate_graded(const F& f, const std::vector<double>& breaks, double rel_tol,
                             int max_doublings) {
  auto estimate = [&](int split) {
    std::vector<double> terms;
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const PanelRule rule = composite_gauss_legendre(breaks[b], breaks[b + 1], split);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) terms.push_back(rule.weights[i] * f(rule.nodes[i]));
    }
    return pairwise_sum(terms);
  };
  InnerResult out;
  int split = 1;
  double previous = estimate(split);
  for (int d = 0; d < max_doublings; ++d) {
    split *= 2;
    const double current = estimate(split);
    out.value = current;
    if (std::abs(current - previous) <= rel_tol * std::abs(current) || std::abs(current - previous) <= 1e-300) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

// Outer tau integral shared by the Gaussian and Fock paths. `inner(tau)`
// returns int |a|^2 (1 - |chi|^2) dk and clears `ok` if it failed to converge.
template <class Inner>
QuadratureEstimate integrate_tau(const Inner& inner, const OscillatorParams& osc, double t,
                                 const CorrelatedQuadrature& quad) {
  osc.validate();
  if (!(t >= 0.0)) fail(ErrorCode::kInvalidArgument, "time must be >= 0");
  QuadratureEstimate out;
  if (t == 0.0) {
    out.converged = true;
    return out;
  }
  bool inner_ok = true;
  auto f = [&](double tau) {
    bool ok = true;
    const double v = inner(tau, ok);
    inner_ok = inner_ok && ok;
    return v / osc.hbar;
  };
  const double periods = t / osc.period();
  AdaptiveOptions opts;
  opts.initial_panels = std::max(
      4, static_cast<int>(std::ceil(quad.tau_nodes_per_period * periods / kGaussPoints)));
  opts.rel_tol = quad.rel_tol;
  opts.max_doublings = quad.max_doublings;
  const QuadratureResult r = integrate_adaptive(f, 0.0, t, opts);
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.nodes = r.panels * kGaussPoints;
  out.converged = r.converged && inner_ok;
  return out;
}

// Returns int |a(k)|^2 (1 - chi2(k)) dk over the full line for an even chi2.
template <class Chi2>
InnerResult spectral_integral(const CorrelationKernel& kernel, double hbar, const Chi2& one_minus_chi2,
                              double state_scale, const CorrelatedQuadrature& quad) {
  return std::visit(
      overloaded{
          [&](const GaussianKernel& g) {
            const double k_max = g.cutoff(quad.spectrum_floor);
            const auto breaks = graded_breakpoints(k_max, g.spectral_width(), state_scale);
            auto f = [&](double k) { return g.spectral_density(k, hbar) * one_minus_chi2(k); };
            InnerResult r = integrate_graded(f, breaks, quad.rel_tol * 1e-2, 12);
            r.value *= 2.0;
            return r;
          },
          [&](const TabulatedSpectrum& s) {
            const std::vector<double> w = trapezoid_weights(s.k);
            std::vector<double> terms(w.size());
            for (std::size_t i = 0; i < w.size(); ++i)
              terms[i] = s.weight[i] == 0.0 ? 0.0 : w[i] * s.weight[i] * one_minus_chi2(s.k[i]);
            return InnerResult{pairwise_sum(terms), true};
          }},
      kernel);
}

void validate_kernel(const CorrelationKernel& kernel) {
  std::visit([](const auto& k) { k.validate(); }, kernel);
}

}  // namespace

QuadratureEstimate entropy_production_correlated(const GaussianMoments& moments,
                                                 const CorrelationKernel& kernel,
                                                 const OscillatorParams& osc, double t,
                                                 const CorrelatedQuadrature& quad) {
  validate_kernel(kernel);
  auto inner = [&](double tau, bool& ok) {
    const double var = position_variance_at(moments, tau, osc);
    auto one_minus = [var](double k) { return -std::expm1(-k * k * var); };
    const InnerResult r = spectral_integral(kernel, osc.hbar, one_minus, 1.0 / std::sqrt(var), quad);
    ok = r.converged;
    return r.value;
  };
  return integrate_tau(inner, osc, t, quad);
}

QuadratureEstimate entropy_production_correlated(const TruncatedState& state,
                                                 const CorrelationKernel& kernel,
                                                 const OscillatorParams& osc, double t,
                                                 const CorrelatedQuadrature& quad) {
  validate_kernel(kernel);
  osc.validate();
  const Index n = state.dim();
  const Quadratures q = build_xp(osc, n);
  // x is real symmetric in the Fock basis; its eigenvectors are real.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q.x.real());
  const Eigen::VectorXd nodes = eig.eigenvalues();
  const Eigen::MatrixXd basis = eig.eigenvectors();

  // Beyond |k| ~ sqrt(N) / (2 l) the displaced state leaves the truncation.
  const double k_reach = std::sqrt(static_cast<double>(n)) / (2.0 * osc.length_scale());
  const double total = std::visit(
      overloaded{[&](const GaussianKernel& g) { return 2.0 * g.c0 / osc.hbar; },
                 [&](const TabulatedSpectrum& s) {
                   return 2.0 * correlation_from_spectrum(s, 0.0, osc.hbar) / osc.hbar;
                 }},
      kernel);
  const double beyond = std::visit(
      overloaded{[&](const GaussianKernel& g) {
                   return 2.0 * g.c0 / osc.hbar * std::erfc(k_reach * g.sigma / 2.0);
                 },
                 [&](const TabulatedSpectrum& s) {
                   const std::vector<double> w = trapezoid_weights(s.k);
                   double acc = 0.0;
                   for (std::size_t i = 0; i < w.size(); ++i)
                     if (std::abs(s.k[i]) > k_reach) acc += w[i] * s.weight[i];
                   return acc;
                 }},
      kernel);

  const Vector& psi = state.amplitudes();
  auto inner = [&](double tau, bool& ok) {
    Vector evolved(n);
    for (Index j = 0; j < n; ++j) evolved(j) = psi(j) * std::polar(1.0, -osc.omega * tau * static_cast<double>(j));
    const Vector coeff = basis.transpose().cast<Complex>() * evolved;
    const Eigen::VectorXd w = coeff.cwiseAbs2();
    const double mean = w.dot(nodes);
    const double var = std::max(w.dot(nodes.cwiseProduct(nodes)) - mean * mean, 1e-300);
    auto one_minus = [&](double k) {
      Complex chi(0.0, 0.0);
      for (Index j = 0; j < n; ++j) chi += w(j) * std::polar(1.0, k * (nodes(j) - mean));
      return 1.0 - std::norm(chi);
    };
    const InnerResult r = spectral_integral(kernel, osc.hbar, one_minus, 1.0 / std::sqrt(var), quad);
    ok = r.converged;
    return r.value;
  };
  QuadratureEstimate out = integrate_tau(inner, osc, t, quad);
  out.under_resolved = state.under_resolved() || beyond > 1e-10 * total;
  return out;
}

double short_correlation_limit(const CorrelationKernel& kernel, double t, double hbar) {
  return 2.0 * correlation_at_zero(kernel, hbar) * t / (hbar * hbar);
}

DiffusionCoefficients long_correlation_map(const CorrelationKernel& kernel, double hbar) {
  DiffusionCoefficients d;
  d.d_pp = std::visit(overloaded{[&](const GaussianKernel& g) {
                                   // (hbar/4) * (2 c0 / hbar) * delta_k^2, delta_k^2 = 2 / sigma^2
                                   return g.c0 / (g.sigma * g.sigma);
                                 },
                                 [&](const TabulatedSpectrum& s) {
                                   const std::vector<double> w = trapezoid_weights(s.k);
                                   std::vector<double> terms(w.size());
                                   for (std::size_t i = 0; i < w.size(); ++i)
                                     terms[i] = w[i] * s.k[i] * s.k[i] * s.weight[i];
                                   return 0.25 * hbar * pairwise_sum(terms);
                                 }},
                      kernel);
  return d;
}

WidthCondition width_condition(const GaussianMoments& moments, double delta_k, const OscillatorParams& osc,
                               double ratio_threshold) {
  osc.validate();
  if (!(delta_k > 0.0)) fail(ErrorCode::kInvalidArgument, "spectral width must be positive");
  WidthCondition w;
  w.position_bound = osc.mass * osc.omega / osc.hbar * std::sqrt(moments.var_x);
  w.momentum_bound = std::sqrt(moments.var_p) / osc.hbar;
  w.margin = delta_k / std::min(w.position_bound, w.momentum_bound);
  w.satisfied = w.margin < ratio_threshold;
  return w;
}

TabulatedSpectrum parse_spectrum(const std::string& text) {
  TabulatedSpectrum s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double k = 0.0;
    double w = 0.0;
    if (!(fields >> k)) continue;  // blank line
    std::string extra;
    if (!(fields >> w) || (fields >> extra)) {
      std::ostringstream os;
      os << "spectrum line " << line_no << ": expected two numeric columns";
      fail(ErrorCode::kIo, os.str());
    }
    s.k.push_back(k);
    s.weight.push_back(w);
  }
  s.validate();
  return s;
}

TabulatedSpectrum read_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open spectrum file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectrum(buf.str());
}

void write_spectrum(const std::filesystem::path& path, const TabulatedSpectrum& spectrum,
                    const std::string& comment) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write spectrum file " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "# k spectral_density\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < spectrum.k.size(); ++i) out << spectrum.k[i] << ' ' << spectrum.weight[i] << '\n';
  if (!out) fail(ErrorCode::kIo, "failed writing spectrum file " + path.string());
}

}  // namespace lindsieve
