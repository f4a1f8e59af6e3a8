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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindsieve/lindsieve.h"

namespace lindsieve::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitCondition = 2,
  kExitIntegration = 3,
  kExitIo = 4,
};

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(ls_status status);
// Throws CliError when status is not LS_OK, prefixing `context`.
void check(ls_status status, const char* context);

struct ChannelSpec {
  double a_re = 0, a_im = 0, b_re = 0, b_im = 0;
};

struct StateSpec {
  // Squeezed coherent state unless fock_level is set.
  double alpha_re = 0.0, alpha_im = 0.0, s = 0.0, theta = 0.0;
  std::optional<long> fock_level;
};

struct KernelSpec {
  std::optional<double> c0, sigma;  // gaussian
  std::optional<std::string> spectrum_path;
};

struct TimeSpec {
  double t_final = 0.0;
  int samples = 1;
  double dt = 0.0;  // master equation step; <= 0 selects period / 2000
  std::vector<double> t_list;

  std::vector<double> times() const;
};

struct KernelTableSpec {
  std::optional<double> r_max;
  int n_r = 41;
  std::optional<double> k_max;
  int n_k = 2001;
  std::optional<std::string> spectrum_out;
};

struct RunConfig {
  ls_oscillator osc{1.0, 1.0, 1.0};

  enum class Model { kQuadratic, kChannels, kKernel } model = Model::kQuadratic;
  ls_diffusion quadratic{};
  double channels_mu = 0.0;
  std::vector<ChannelSpec> channels;
  KernelSpec kernel;

  std::optional<StateSpec> state;
  bool time_given = false;
  TimeSpec time;
  ls_sieve_grid sieve{};
  long dim = 60;
  double tail_tol = 1e-8;
  std::vector<double> epsilon{0.02, 0.01, 0.005};
  KernelTableSpec kernel_table;
  std::optional<std::string> output;

  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig load(const std::string& path);
  // Fully resolved configuration, defaults included.
  nlohmann::json to_json() const;
  std::string hash() const;
};

}  // namespace lindsieve::cli
