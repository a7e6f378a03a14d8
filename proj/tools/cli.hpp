// Copyright 2026 The loopsynth Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace loopsynth::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kThresholdMiss = 1, kInvalid = 2 };

/// Runs the command line `loopsynth <args...>` (args excludes the program
/// name), writing normal output to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default vertex count for a register: 4 for two qubits and 12 for three,
/// otherwise the smallest count meeting the vertex condition.
int default_vertices(int n_qubits);

}  // namespace loopsynth::cli
