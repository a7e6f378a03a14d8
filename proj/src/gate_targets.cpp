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

#include "loopsynth/gate_targets.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "json_text.hpp"

namespace loopsynth {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInputUnitarityTolerance = 1e-10;

Complex phase(double angle) { return std::polar(1.0, angle); }

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

// Entries omega^(jk) / sqrt(d) with omega = exp(2 pi i / d). The exponent is
// reduced mod d first so every entry is an exact table value.
ComplexMatrix fourier_matrix(int dim) {
  ComplexMatrix m(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      const int e = (j * k) % dim;
      m(j, k) = phase(2.0 * kPi * e / dim) * scale;
    }
  return m;
}

// exp(2 pi i e / 4) without rounding noise for the two-qubit table.
ComplexMatrix fourier2_matrix() {
  const Complex pow_i[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  ComplexMatrix m(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) m(j, k) = 0.5 * pow_i[(j * k) % 4];
  return m;
}

}  // namespace

UnitaryMatrix su_project(const UnitaryMatrix& u, int root_index) {
  const double residual = unitarity_residual(u.matrix());
  if (!(residual <= kInputUnitarityTolerance)) {
    throw NotUnitaryError(fmt::format("cannot project a non-unitary matrix (residual {:.3g})", residual),
                          residual);
  }
  const auto dim = static_cast<int>(u.dim());
  if (root_index < 0 || root_index >= dim) {
    throw std::invalid_argument(fmt::format("root index must lie in [0, {}), got {}", dim, root_index));
  }
  const double theta = std::arg(u.matrix().determinant());
  const Complex c = phase(-(theta + 2.0 * kPi * root_index) / dim);
  return UnitaryMatrix::from_trusted(u.matrix() * c);
}

std::vector<std::string> builtin_gate_names() { return {"cnot", "qft2", "qft3", "identity"}; }

TargetGate builtin_gate(std::string_view name, int identity_qubits) {
  // Root indices are those for which su_project reproduces the fixed phases.
  if (name == "cnot") {
    return {"cnot", UnitaryMatrix::from_trusted(cnot_matrix() * phase(kPi / 4)), 3};
  }
  if (name == "qft2") {
    return {"qft2", UnitaryMatrix::from_trusted(fourier2_matrix() * phase(kPi / 8)), 0};
  }
  if (name == "qft3") {
    return {"qft3", UnitaryMatrix::from_trusted(fourier_matrix(8) * phase(-kPi / 16)), 0};
  }
  if (name == "identity") {
    if (identity_qubits < 1 || identity_qubits > 4) {
      throw std::invalid_argument("identity gate needs between 1 and 4 qubits");
    }
    return {"identity", UnitaryMatrix::identity(std::size_t{1} << identity_qubits), 0};
  }
  throw std::invalid_argument(fmt::format("unknown builtin gate '{}'", name));
}

TargetGate make_target(std::string name, const UnitaryMatrix& u, int root_index) {
  return {std::move(name), su_project(u, root_index), root_index};
}

TargetGate shift_phase_root(const TargetGate& target, int shift) {
  const auto dim = static_cast<int>(target.matrix.dim());
  const Complex c = phase(-2.0 * kPi * shift / dim);
  return {target.name, UnitaryMatrix::from_trusted(target.matrix.matrix() * c),
          ((target.root_index + shift) % dim + dim) % dim};
}

UnitaryMatrix read_matrix_file(const std::filesystem::path& path) {
  const auto j = detail::read_json_file(path);
  return UnitaryMatrix::checked(detail::matrix_from_json(j), kInputUnitarityTolerance);
}

void write_matrix_file(const std::filesystem::path& path, const UnitaryMatrix& u) {
  detail::write_text_file(path, detail::dump_json(detail::matrix_to_json(u.matrix())));
}

}  // namespace loopsynth
