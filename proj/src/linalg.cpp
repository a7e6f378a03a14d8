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

#include "loopsynth/linalg.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

namespace loopsynth {

bool is_power_of_two(std::size_t dim) { return dim >= 2 && std::has_single_bit(dim); }

int qubits_for_dimension(std::size_t dim) {
  if (!is_power_of_two(dim)) {
    throw DimensionError(fmt::format("dimension {} is not a power of two >= 2", dim));
  }
  return std::countr_zero(dim);
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double unitarity_residual(const ComplexMatrix& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm();
}

double det_residual(const ComplexMatrix& u) { return std::abs(u.determinant() - Complex(1.0, 0.0)); }

UnitaryMatrix UnitaryMatrix::from_trusted(ComplexMatrix m) { return UnitaryMatrix(std::move(m)); }

UnitaryMatrix UnitaryMatrix::checked(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("matrix is {}x{}, expected square", m.rows(), m.cols()));
  }
  qubits_for_dimension(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) {
      throw std::invalid_argument("matrix has non-finite entries");
    }
  }
  const double residual = unitarity_residual(m);
  if (!(residual <= tol)) {
    throw NotUnitaryError(
        fmt::format("matrix is not unitary: ||U^dagger U - I||_F = {:.6g} (tolerance {:.1g})", residual, tol),
        residual);
  }
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("Hermitian matrix must be square");
  }
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw std::invalid_argument(fmt::format("matrix is not Hermitian (max deviation {:.3g})", dev));
  }
}

bool HermitianMatrix::is_real() const {
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    if (m_.data()[i].imag() != 0.0) return false;
  }
  return true;
}

}  // namespace loopsynth
