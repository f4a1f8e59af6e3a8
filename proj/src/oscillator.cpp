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

#include "lindsieve/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace lindsieve {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidTruncation: return "invalid truncation";
    case ErrorCode::kUnderResolved: return "under-resolved truncation";
    case ErrorCode::kConditionViolated: return "model condition violated";
    case ErrorCode::kIntegrationQuality: return "integration quality";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kTruncatedSpectrum: return "truncated spectrum";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

void OscillatorParams::validate() const {
  if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0) || !std::isfinite(mass) ||
      !std::isfinite(omega) || !std::isfinite(hbar)) {
    std::ostringstream os;
    os << "oscillator parameters must be positive and finite (m=" << mass
       << ", omega=" << omega << ", hbar=" << hbar << ")";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

double OscillatorParams::length_scale() const { return std::sqrt(hbar / (2.0 * mass * omega)); }

double OscillatorParams::momentum_scale() const { return std::sqrt(hbar * mass * omega / 2.0); }

double OscillatorParams::period() const { return 2.0 * std::numbers::pi / omega; }

void FockTruncation::validate() const {
  if (dim < 2) fail(ErrorCode::kInvalidTruncation, "Fock truncation needs at least 2 levels");
  if (!(tail_tol > 0.0)) fail(ErrorCode::kInvalidTruncation, "tail_tol must be positive");
}

TruncatedState::TruncatedState(Vector amplitudes, double tail_tol)
    : amplitudes_(std::move(amplitudes)), tail_tol_(tail_tol) {
  if (amplitudes_.size() < 2) fail(ErrorCode::kInvalidTruncation, "state needs at least 2 levels");
  if (!(tail_tol_ > 0.0)) fail(ErrorCode::kInvalidTruncation, "tail_tol must be positive");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "state is not normalized (|psi| = " << norm << ")";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

double TruncatedState::tail_population() const {
  return std::norm(amplitudes_(amplitudes_.size() - 1));
}

TruncatedDensity TruncatedState::density() const {
  return TruncatedDensity(amplitudes_ * amplitudes_.adjoint());
}

TruncatedDensity::TruncatedDensity(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2)
    fail(ErrorCode::kDimensionMismatch, "density matrix must be square with at least 2 levels");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::kInvalidArgument, "density matrix is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10)
    fail(ErrorCode::kInvalidArgument, "density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8)
    fail(ErrorCode::kInvalidArgument, "density matrix has a negative eigenvalue");
}

TruncatedDensity TruncatedDensity::maximally_mixed(Index n) {
  return TruncatedDensity(Matrix::Identity(n, n) / static_cast<double>(n));
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  // fmod of a value just below 0 can round up to exactly 2 pi
  if (w >= two_pi) w = 0.0;
  return w;
}

SqueezedCoherentParams::SqueezedCoherentParams(Complex alpha, double s, double theta)
    : alpha_(alpha), s_(s), theta_(wrap_angle(theta)) {
  if (!(s >= 0.0) || !std::isfinite(s))
    fail(ErrorCode::kInvalidArgument, "squeeze magnitude s must be finite and >= 0");
  if (!std::isfinite(theta) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    fail(ErrorCode::kInvalidArgument, "squeezed-coherent parameters must be finite");
}

Ladder build_ladder(Index n) {
  if (n < 2) fail(ErrorCode::kInvalidTruncation, "ladder operators need at least 2 levels");
  Matrix a = Matrix::Zero(n, n);
  for (Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Matrix ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

Quadratures build_xp(const OscillatorParams& osc, Index n) {
  osc.validate();
  const Ladder l = build_ladder(n);
  const Complex i(0.0, 1.0);
  Matrix x = osc.length_scale() * (l.annihilation + l.creation);
  Matrix p = i * osc.momentum_scale() * (l.creation - l.annihilation);
  return {std::move(x), std::move(p)};
}

Matrix matrix_exponential(const Matrix& generator) { return generator.exp(); }

namespace {

TruncatedUnitary finish_unitary(Matrix u, double tail_tol) {
  const Index n = u.rows();
  TruncatedUnitary out;
  out.tail_population = std::norm(u(n - 1, 0));
  out.under_resolved = out.tail_population >= tail_tol;
  out.matrix = std::move(u);
  return out;
}

}  // namespace

TruncatedUnitary displacement_matrix(Complex alpha, Index n, double tail_tol) {
  const Ladder l = build_ladder(n);
  if (alpha == Complex(0.0, 0.0)) return finish_unitary(Matrix::Identity(n, n), tail_tol);
  const Matrix gen = alpha * l.creation - std::conj(alpha) * l.annihilation;
  return finish_unitary(matrix_exponential(gen), tail_tol);
}

TruncatedUnitary squeeze_matrix(double s, double theta, Index n, double tail_tol) {
  if (!(s >= 0.0)) fail(ErrorCode::kInvalidArgument, "squeeze magnitude must be >= 0");
  const Ladder l = build_ladder(n);
  if (s == 0.0) return finish_unitary(Matrix::Identity(n, n), tail_tol);
  const Complex zeta = std::polar(s, theta);
  const Matrix gen =
      0.5 * (zeta * l.creation * l.creation - std::conj(zeta) * l.annihilation * l.annihilation);
  return finish_unitary(matrix_exponential(gen), tail_tol);
}

TruncatedState make_state(const SqueezedCoherentParams& params, const FockTruncation& trunc) {
  trunc.validate();
  const Index n = trunc.dim;
  Vector psi = Vector::Zero(n);
  psi(0) = 1.0;
  if (params.s() > 0.0) psi = squeeze_matrix(params.s(), params.theta(), n, trunc.tail_tol).matrix * psi;
  if (params.alpha() != Complex(0.0, 0.0))
    psi = displacement_matrix(params.alpha(), n, trunc.tail_tol).matrix * psi;
  const double tail = std::norm(psi(n - 1));
  if (tail >= trunc.tail_tol) {
    std::ostringstream os;
    os << "squeezed coherent state (|alpha|=" << std::abs(params.alpha()) << ", s=" << params.s()
       << ") is under-resolved at N=" << n << ": top-level population " << tail;
    fail(ErrorCode::kUnderResolved, os.str());
  }
  psi.normalize();
  return TruncatedState(std::move(psi), trunc.tail_tol);
}

TruncatedState fock_state(Index level, const FockTruncation& trunc) {
  trunc.validate();
  if (level < 0 || level >= trunc.dim - 1)
    fail(ErrorCode::kInvalidTruncation, "Fock level must lie below the top retained level");
  Vector psi = Vector::Zero(trunc.dim);
  psi(level) = 1.0;
  return TruncatedState(std::move(psi), trunc.tail_tol);
}

double linear_entropy(const Matrix& rho) {
  // Tr(rho^2) = sum_ij rho_ij rho_ji
  const Complex purity = rho.cwiseProduct(rho.transpose()).sum();
  return 1.0 - purity.real();
}

double linear_entropy(const TruncatedDensity& rho) { return linear_entropy(rho.matrix()); }

GaussianMoments gaussian_moments(const SqueezedCoherentParams& params, const OscillatorParams& osc) {
  osc.validate();
  const double ch = std::cosh(2.0 * params.s());
  const double sh = std::sinh(2.0 * params.s());
  const double c = std::cos(params.theta());
  const double sn = std::sin(params.theta());
  const double mw = osc.mass * osc.omega;
  GaussianMoments m;
  m.mean_x = std::sqrt(2.0 * osc.hbar / mw) * params.alpha().real();
  m.mean_p = std::sqrt(2.0 * osc.hbar * mw) * params.alpha().imag();
  m.var_x = osc.hbar / (2.0 * mw) * (ch + sh * c);
  m.var_p = osc.hbar * mw / 2.0 * (ch - sh * c);
  m.cov_xp = osc.hbar / 2.0 * sh * sn;
  return m;
}

GaussianMoments fock_moments(const TruncatedState& state, const OscillatorParams& osc) {
  const Quadratures q = build_xp(osc, state.dim());
  const Vector& psi = state.amplitudes();
  const Vector xpsi = q.x * psi;
  const Vector ppsi = q.p * psi;
  GaussianMoments m;
  m.mean_x = psi.dot(xpsi).real();
  m.mean_p = psi.dot(ppsi).real();
  m.var_x = psi.dot(q.x * xpsi).real() - m.mean_x * m.mean_x;
  m.var_p = psi.dot(q.p * ppsi).real() - m.mean_p * m.mean_p;
  // <{x,p}>/2 = Re <x psi | p psi>
  m.cov_xp = xpsi.dot(ppsi).real() - m.mean_x * m.mean_p;
  return m;
}

}  // namespace lindsieve
