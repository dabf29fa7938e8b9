// Copyright 2026 The qnoise Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qnoise/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qnoise: noise-averaged qubit dynamics with a random static Hamiltonian"};
  app.set_version_flag("--version", std::string("qnoise ") + QNOISE_VERSION);

  std::string command;
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 1;

  app.add_option("command", command, "evolve | average | final-state | rate-fit | regime-check | validate")
      ->required()
      ->check(CLI::IsMember(qnoise::command_names()));
  app.add_option("--config", config, "experiment config (JSON)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides config seed)");
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qnoise::kExitConfig;
  }

  qnoise::CommandOptions opt;
  opt.config_path = config;
  if (*out_opt) opt.out_dir = out_dir;
  if (*seed_opt) opt.seed = seed;
  if (*threads_opt) opt.threads = threads;
  return qnoise::run_command(command, opt, std::cout, std::cerr);
}
