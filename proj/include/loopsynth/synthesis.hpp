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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "loopsynth/gate_targets.hpp"
#include "loopsynth/nelder_mead.hpp"
#include "loopsynth/register_model.hpp"

namespace loopsynth {

/// Raised for configurations rejected before any computation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SynthesisConfig {
  int n_vertices = 4;
  int m_points = 100;
  std::int64_t max_evals = 50000;  // per restart
  int n_restarts = 20;
  std::uint64_t seed = 0;
  double init_range = 1.5;  // initial vertices uniform in [-w, w]
  double f_tol = 1e-12;
  double x_tol = 1e-10;
  double success_threshold = 1e-4;  // on rel_error
  bool adaptive = false;
  /// Skip the remaining restarts once rel_error <= success_threshold.
  bool stop_on_success = true;
  /// Clamp every field to [-limit, limit] when evaluating a candidate.
  std::optional<double> field_limit;

  /// Throws ConfigError on non-positive counts or tolerances.
  void validate() const;

  friend bool operator==(const SynthesisConfig&, const SynthesisConfig&) = default;
};

struct SynthesisResult {
  ControlLoop best_loop;
  double abs_error = 0.0;
  double rel_error = 0.0;
  TargetGate target;
  double coupling = 1.0;
  SynthesisConfig config;
  std::int64_t evals_used = 0;
  int restart_index_of_best = 0;
  int restarts_run = 0;
  /// Error of best_loop re-evaluated at refined_points steps per edge.
  std::optional<double> refined_abs_error;
  std::optional<int> refined_points;
};

/// Progress of one finished restart.
struct RestartReport {
  int restart_index;
  double abs_error;
  double rel_error;
  std::int64_t evals;
  bool converged;
};

/// 2 N nu >= 2^(2N) - 1: enough vertex coordinates to reach all of SU(2^N).
bool vertex_condition(int n_qubits, int n_vertices);

/// ||target - U(loop)||_F at m steps per edge.
double error_functional(const RegisterModel& model, const TargetGate& target, const ControlLoop& loop,
                        int m, const EdgeExecutor* executor = nullptr);

/// Relative error: abs_error / ||target||_F = abs_error / sqrt(2^N).
double relative_error(double abs_error, int n_qubits);

/// Vertex-major coordinates; each vertex contributes bz_1..bz_N then bx_1..bx_N.
std::vector<double> pack(const ControlLoop& loop);
ControlLoop unpack(std::span<const double> x, int n_qubits, int n_vertices);

/// Seed of restart k, derived deterministically from the base seed.
std::uint64_t restart_seed(std::uint64_t seed, int restart_index);

/// Initial coordinates of restart k: uniform in [-init_range, init_range].
std::vector<double> initial_point(const SynthesisConfig& cfg, int n_qubits, int restart_index);

/// Restarted Nelder-Mead search for a loop realizing the target. Throws
/// ConfigError if the vertex condition fails or the target is not in
/// SU(2^N) of the model's dimension. Bitwise reproducible for a fixed seed,
/// independent of the executor's worker count.
SynthesisResult synthesize(const RegisterModel& model, const TargetGate& target,
                           const SynthesisConfig& cfg, const EdgeExecutor* executor = nullptr,
                           const std::function<void(const RestartReport&)>& on_restart = {});

/// Runs synthesize for every SU(2^N) representative of the target (all 2^N
/// phase roots) and keeps the best. Stops early on success when
/// cfg.stop_on_success is set.
SynthesisResult synthesize_phase_scan(const RegisterModel& model, const TargetGate& target,
                                      const SynthesisConfig& cfg, const EdgeExecutor* executor = nullptr,
                                      const std::function<void(const RestartReport&)>& on_restart = {});

}  // namespace loopsynth
