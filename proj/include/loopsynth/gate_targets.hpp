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
#include <string>
#include <string_view>
#include <vector>

#include "loopsynth/linalg.hpp"

namespace loopsynth {

/// A gate to synthesize. The matrix is special unitary: the register
/// Hamiltonian is traceless, so only determinant-one propagators are
/// reachable and targets are fixed up to a global phase beforehand.
struct TargetGate {
  std::string name;
  UnitaryMatrix matrix;
  /// Which 2^N-th root of the phase correction was applied, if the target was
  /// produced by su_project; builtins carry the root that reproduces their
  /// published phase.
  int root_index = 0;

  int n_qubits() const { return matrix.n_qubits(); }
};

/// Tolerance for the determinant of a synthesis target.
inline constexpr double kTargetDetTolerance = 1e-12;

/// c * u with c = exp(-i (arg det u + 2 pi root_index) / 2^N), so that
/// det = 1. Throws NotUnitaryError if ||u^dagger u - I||_F > 1e-10 and
/// std::invalid_argument if root_index is outside [0, 2^N).
UnitaryMatrix su_project(const UnitaryMatrix& u, int root_index = 0);

/// Names accepted by builtin_gate.
std::vector<std::string> builtin_gate_names();

/// One of "cnot", "qft2", "qft3" or "identity". The CNOT and QFT phases are
/// the fixed factors exp(i pi/4), exp(i pi/8) and exp(-i pi/16).
/// identity_qubits sizes the identity and is ignored otherwise. Throws
/// std::invalid_argument on an unknown name.
TargetGate builtin_gate(std::string_view name, int identity_qubits = 2);

/// Wraps an arbitrary unitary as a target by projecting it into SU(2^N).
TargetGate make_target(std::string name, const UnitaryMatrix& u, int root_index = 0);

/// Same target with a different SU(2^N) representative:
/// matrix * exp(-2 pi i shift / 2^N), root index advanced by shift.
TargetGate shift_phase_root(const TargetGate& target, int shift);

/// Raised on malformed input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix file: JSON object {"dim": d, "entries": [[re, im], ...]} with the
/// d*d entries row-major. Reading validates the dimension (a power of two)
/// and unitarity (NotUnitaryError carries the residual).
UnitaryMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const UnitaryMatrix& u);

}  // namespace loopsynth
