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

#include "lindsieve/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lindsieve/parallel.hpp"

namespace lindsieve {

void EvolutionSpec::validate() const {
  osc.validate();
  if (dim < 2) fail(ErrorCode::kInvalidTruncation, "evolution needs at least 2 Fock levels");
  if (!(coupling_scale >= 0.0)) fail(ErrorCode::kInvalidArgument, "coupling scale must be >= 0");
  if (!(t_final >= 0.0)) fail(ErrorCode::kInvalidArgument, "t_final must be >= 0");
  if (sample_every < 1) fail(ErrorCode::kInvalidArgument, "sample_every must be >= 1");
  const double h = effective_dt();
  if (h > osc.period() / 100.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << h << " exceeds period/100 = " << osc.period() / 100.0;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

long EvolutionSpec::steps() const {
  const double h = dt > 0.0 ? dt : osc.period() / 2000.0;
  if (t_final == 0.0) return 0;
  return static_cast<long>(std::ceil(t_final / h - 1e-9));
}

double EvolutionSpec::effective_dt() const {
  const double h = dt > 0.0 ? dt : osc.period() / 2000.0;
  if (t_final == 0.0) return h;
  // Shrink slightly so that an integer number of steps lands on t_final.
  return t_final / static_cast<double>(steps());
}

LindbladGenerator::LindbladGenerator(const EvolutionSpec& spec) : dim_(spec.dim), hbar_(spec.osc.hbar) {
  const Quadratures q = build_xp(spec.osc, dim_);
  hamiltonian_ = Matrix::Zero(dim_, dim_);
  for (Index n = 0; n < dim_; ++n)
    hamiltonian_(n, n) = spec.osc.hbar * spec.osc.omega * (static_cast<double>(n) + 0.5);
  const LindbladChannelSet ch = spec.channels.scaled(spec.coupling_scale);
  if (ch.mu != 0.0) hamiltonian_ += 0.5 * ch.mu * (q.x * q.p + q.p * q.x);

  const Complex i(0.0, 1.0);
  drift_ = (-i / hbar_) * hamiltonian_;
  for (const auto& c : ch.channels) {
    if (c.p_coeff == Complex(0.0) && c.x_coeff == Complex(0.0)) continue;
    Matrix v = c.p_coeff * q.p + c.x_coeff * q.x;
    drift_.noalias() -= (0.5 / hbar_) * (v.adjoint() * v);
    jumps_.push_back(std::move(v));
  }
}

Matrix LindbladGenerator::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    fail(ErrorCode::kDimensionMismatch, "density matrix dimension does not match the generator");
  Matrix out(dim_, dim_);
  out.noalias() = drift_ * rho;
  out.noalias() += rho * drift_.adjoint();
  Matrix tmp(dim_, dim_);
  for (const auto& v : jumps_) {
    tmp.noalias() = v * rho;
    out.noalias() += (1.0 / hbar_) * (tmp * v.adjoint());
  }
  return out;
}

Matrix lindblad_rhs(const Matrix& rho, const EvolutionSpec& spec) {
  return LindbladGenerator(spec).apply(rho);
}

Matrix lindblad_rhs(const TruncatedDensity& rho, const EvolutionSpec& spec) {
  return lindblad_rhs(rho.matrix(), spec);
}

namespace {

void record(EntropyTrajectory& traj, double t, const Matrix& rho, bool eigen) {
  traj.times.push_back(t);
  traj.entropy.push_back(linear_entropy(rho));
  traj.trace_drift.push_back(std::abs(rho.trace() - Complex(1.0)));
  traj.hermiticity_error.push_back((rho - rho.adjoint()).cwiseAbs().maxCoeff());
  traj.top_population.push_back(rho(rho.rows() - 1, rho.cols() - 1).real());
  if (eigen) {
    // Hermitian part only; the anti-Hermitian residue is reported separately.
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    traj.min_eigenvalue.push_back(eig.eigenvalues().minCoeff());
  }
}

// Population already on the top level at t = 0 is the caller's choice (e.g. a
// maximally mixed state); what is monitored is population pushed there by the
// dynamics beyond max(tail_tol, initial value).
void check_quality(const Matrix& rho, double t, double top_allowed, const EvolutionSpec& spec) {
  const double drift = std::abs(rho.trace() - Complex(1.0));
  const double top = rho(rho.rows() - 1, rho.cols() - 1).real();
  if (drift > spec.max_trace_drift) {
    std::ostringstream os;
    os << "trace drift " << drift << " at t=" << t << " exceeds " << spec.max_trace_drift;
    fail(ErrorCode::kIntegrationQuality, os.str());
  }
  if (top > top_allowed) {
    std::ostringstream os;
    os << "top Fock level population " << top << " at t=" << t << " exceeds " << top_allowed
       << "; increase the truncation";
    fail(ErrorCode::kIntegrationQuality, os.str());
  }
}

}  // namespace

EntropyTrajectory evolve(const TruncatedDensity& rho0, const EvolutionSpec& spec) {
  spec.validate();
  if (rho0.dim() != spec.dim)
    fail(ErrorCode::kDimensionMismatch, "initial density dimension does not match EvolutionSpec::dim");
  const LindbladGenerator gen(spec);
  const long n_steps = spec.steps();
  const double h = spec.effective_dt();

  EntropyTrajectory traj;
  Matrix rho = rho0.matrix();
  record(traj, 0.0, rho, spec.track_min_eigenvalue);
  const double top0 = rho(spec.dim - 1, spec.dim - 1).real();
  const double top_allowed = std::max(spec.tail_tol, top0 * (1.0 + 1e-9) + 1e-15);
  check_quality(rho, 0.0, top_allowed, spec);

  Matrix k1, k2, k3, k4, stage;
  for (long step = 1; step <= n_steps; ++step) {
    k1 = gen.apply(rho);
    stage = rho + (0.5 * h) * k1;
    k2 = gen.apply(stage);
    stage = rho + (0.5 * h) * k2;
    k3 = gen.apply(stage);
    stage = rho + h * k3;
    k4 = gen.apply(stage);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(step) * h;
    check_quality(rho, t, top_allowed, spec);
    if (step % spec.sample_every == 0 || step == n_steps) record(traj, t, rho, spec.track_min_eigenvalue);
  }
  traj.final_rho = std::move(rho);
  return traj;
}

std::vector<ResidualPoint> perturbation_residual(const TruncatedState& state,
                                                 const EvolutionSpec& base, double t,
                                                 std::span<const double> eps_list,
                                                 unsigned threads) {
  for (double eps : eps_list)
    if (!(eps >= 0.0)) fail(ErrorCode::kInvalidArgument, "coupling scales must be >= 0");
  if (state.dim() != base.dim)
    fail(ErrorCode::kDimensionMismatch, "state dimension does not match EvolutionSpec::dim");

  const QuadratureEstimate first = entropy_production_quadrature(state, base.channels, base.osc, t, 64);
  const TruncatedDensity rho0 = state.density();

  auto final_entropy = [&](double eps) {
    EvolutionSpec spec = base;
    spec.coupling_scale = eps;
    spec.t_final = t;
    spec.sample_every = static_cast<int>(std::max<long>(1, spec.steps()));
    spec.track_min_eigenvalue = false;
    return evolve(rho0, spec).entropy.back();
  };

  // The eps = 0 run stands in for sigma(0): analytically equal, and using the
  // integrated value cancels the RK4 error of the unitary part.
  std::vector<double> scales{0.0};
  scales.insert(scales.end(), eps_list.begin(), eps_list.end());
  const std::vector<double> sigma = parallel_map<double>(
      scales.size(), threads, [&](std::size_t i) { return final_entropy(scales[i]); });

  std::vector<ResidualPoint> out;
  out.reserve(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    ResidualPoint pt;
    pt.eps = eps_list[i];
    pt.exact_delta = sigma[i + 1] - sigma[0];
    pt.first_order = pt.eps * first.value;
    pt.residual = std::abs(pt.exact_delta - pt.first_order);
    out.push_back(pt);
  }
  return out;
}

}  // namespace lindsieve
