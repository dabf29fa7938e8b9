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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qnoise/averaging.hpp"

namespace qnoise {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // validate found a failing check
  kExitConfig = 2,
  kExitConvergence = 3,
  kExitDomain = 4,
};

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

/// Runs one command. Result files go to the output directory; `out` gets
/// the list of written files (and the check table for validate), `err` gets
/// diagnostics. Returns an ExitCode.
int run_command(const std::string& name, const CommandOptions& opt, std::ostream& out,
                std::ostream& err);

struct NamedModel {
  std::string name;
  NoiseModel model;
};

/// Twelve models covering every density family and all three regimes.
std::vector<NamedModel> reference_models();

struct CheckResult {
  std::string name;
  bool passed{false};
  std::string detail;
};

/// Fast invariant suite behind the validate command.
std::vector<CheckResult> run_validation_suite();

}  // namespace qnoise
