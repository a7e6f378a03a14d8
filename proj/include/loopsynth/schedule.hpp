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

#include <filesystem>
#include <vector>

#include "loopsynth/synthesis.hpp"

namespace loopsynth {

struct ScheduleSample {
  double t = 0.0;
  ControlVertex fields;
};

/// Piecewise-linear control trajectory sampled in time. Starts and ends at
/// the origin.
struct ControlSchedule {
  int n_qubits = 0;
  double duration = 0.0;
  std::vector<ScheduleSample> samples;
};

/// Samples every edge at samples_per_edge evenly spaced times including both
/// ends; corners shared by two edges appear once, so there are
/// (nu + 1) * samples_per_edge - nu rows. Corner rows are the exact vertex
/// values. Throws std::invalid_argument if samples_per_edge < 2.
ControlSchedule loop_to_schedule(const ControlLoop& loop, int samples_per_edge);

/// Recovers the polygon from the rows at integer times strictly inside
/// (0, duration).
ControlLoop loop_from_schedule(const ControlSchedule& schedule);

/// CSV with header t,bz1..bzN,bx1..bxN and 17 significant digits.
void write_schedule_csv(const std::filesystem::path& path, const ControlSchedule& schedule);
ControlSchedule read_schedule_csv(const std::filesystem::path& path);

struct VerificationReport {
  int points = 0;
  int refined_points = 0;
  double abs_error_at_m = 0.0;
  double abs_error_at_refined = 0.0;  // at refined_points = multiplier * m
  double unitarity_residual = 0.0;    // of the m-step propagator
  double det_residual = 0.0;
};

struct VerificationThresholds {
  double unitarity = 1e-10;
  double det = 1e-8;
  /// Allowed |error(m) - error(refined)|.
  double drift = 1e-4;
};

VerificationReport verify(const RegisterModel& model, const TargetGate& target, const ControlLoop& loop,
                          int m, int multiplier = 10, const EdgeExecutor* executor = nullptr);

bool within_thresholds(const VerificationReport& report, const VerificationThresholds& thresholds = {});

/// Edge counts for one direct multiqubit loop versus a sequence of two-qubit
/// loops. Each edge takes the same time, so edges measure duration.
struct CostReport {
  int n_qubits = 0;
  int direct_vertices = 0;
  int direct_edges = 0;
  int two_qubit_gates = 0;
  int two_qubit_vertices = 0;
  int sequential_edges = 0;
  double ratio = 0.0;  // direct_edges / sequential_edges
};

/// Throws std::invalid_argument on negative vertex counts or non-positive
/// qubit and gate counts.
CostReport cost_report(int n_qubits, int direct_vertices, int two_qubit_gate_count, int two_qubit_vertices);

/// JSON result file; floats carry 17 significant digits so the round trip
/// is exact. Reading checks that every vertex and the target match n_qubits.
void write_result(const std::filesystem::path& path, const SynthesisResult& result);
SynthesisResult read_result(const std::filesystem::path& path);

}  // namespace loopsynth
