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

#include <string>
#include <vector>

#include "config.hpp"

namespace lindsieve::cli {

struct RunOptions {
  std::string output;  // empty writes to stdout
  unsigned threads = 1;
};

const std::vector<std::string>& command_names();

// Runs one subcommand; throws CliError on failure after flushing any completed rows.
void run_command(const std::string& name, const RunConfig& config, const RunOptions& options);

}  // namespace lindsieve::cli
