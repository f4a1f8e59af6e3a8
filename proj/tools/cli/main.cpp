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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace lindsieve::cli;

int main(int argc, char** argv) {
  CLI::App app{"lindsieve-cli: open-system oscillator entropy production and predictability sieve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ls_version()));

  std::string config_path;
  std::string out_path;
  unsigned threads = 1;
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_path, "output CSV path (overrides config.output; default stdout)");
    sub->add_option("--threads", threads, "worker threads for sieve grids and consistency ladders")
        ->check(CLI::Range(1u, 256u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = RunConfig::load(config_path);
    RunOptions options;
    options.output = out_path.empty() ? config.output.value_or("") : out_path;
    options.threads = threads;
    std::cerr << "# effective config (hash " << config.hash() << ")\n" << config.to_json().dump(2) << "\n";
    run_command(command, config, options);
  } catch (const CliError& e) {
    std::cerr << "lindsieve-cli " << command << ": error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "lindsieve-cli " << command << ": error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
