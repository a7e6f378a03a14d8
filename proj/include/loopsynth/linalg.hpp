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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace loopsynth {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when operands disagree on qubit count or matrix dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix that must be unitary is not, within tolerance.
class NotUnitaryError : public std::invalid_argument {
 public:
  NotUnitaryError(const std::string& what, double residual)
      : std::invalid_argument(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// True if dim is 2^k for some k >= 1.
bool is_power_of_two(std::size_t dim);

/// Number of qubits for a 2^N-dimensional space. Throws DimensionError
/// otherwise.
int qubits_for_dimension(std::size_t dim);

/// ||A||_F = sqrt(Tr(A^dagger A)).
double frobenius_norm(const ComplexMatrix& a);

/// ||U^dagger U - I||_F.
double unitarity_residual(const ComplexMatrix& u);

/// |det(U) - 1|.
double det_residual(const ComplexMatrix& u);

/// Dense 2^N x 2^N matrix that is unitary by construction or by check.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;

  /// Wraps without checking. Used for propagators whose unitarity is a
  /// property of how they were computed.
  static UnitaryMatrix from_trusted(ComplexMatrix m);

  /// Wraps after checking squareness, power-of-two dimension and
  /// ||U^dagger U - I||_F <= tol.
  static UnitaryMatrix checked(ComplexMatrix m, double tol = 1e-10);

  static UnitaryMatrix identity(std::size_t dim);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  int n_qubits() const { return qubits_for_dimension(dim()); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() &&
           a.m_ == b.m_;
  }

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Dense Hermitian matrix. The register Hamiltonians are traceless.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Throws std::invalid_argument if m deviates from m^dagger by more than
  /// tol in any entry.
  explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  /// True when every imaginary part is exactly zero, i.e. the matrix is
  /// real symmetric.
  bool is_real() const;

 private:
  ComplexMatrix m_;
};

}  // namespace loopsynth
