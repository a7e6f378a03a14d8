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

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "loopsynth/linalg.hpp"

namespace loopsynth {

/// An inductively coupled register of N charge qubits. Qubit 1 is the most
/// significant tensor factor.
class RegisterModel {
 public:
  static constexpr int kMaxQubits = 4;

  /// Throws std::invalid_argument unless 1 <= n_qubits <= kMaxQubits and
  /// coupling > 0.
  explicit RegisterModel(int n_qubits, double coupling = 1.0);

  int n_qubits() const { return n_qubits_; }
  double coupling() const { return coupling_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }

 private:
  int n_qubits_;
  double coupling_;
};

/// Instantaneous control fields: charging terms bz and SQUID terms bx, one
/// entry per qubit.
struct ControlVertex {
  std::vector<double> bz;
  std::vector<double> bx;

  /// All fields zero: the degeneracy point.
  static ControlVertex origin(int n_qubits);

  int n_qubits() const { return static_cast<int>(bz.size()); }

  /// Throws DimensionError if bz/bx lengths differ from n_qubits, and
  /// std::invalid_argument on non-finite entries.
  void validate(int n_qubits) const;

  bool is_origin() const;

  friend bool operator==(const ControlVertex&, const ControlVertex&) = default;
};

/// Closed polygon in control space. The loop leaves the origin, visits the
/// stored vertices in order and returns to the origin; the origin itself is
/// not stored. Every edge takes one unit of time.
class ControlLoop {
 public:
  ControlLoop() = default;
  ControlLoop(int n_qubits, std::vector<ControlVertex> vertices);

  static ControlLoop zeros(int n_qubits, int n_vertices);

  int n_qubits() const { return n_qubits_; }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_edges() const { return n_vertices() + 1; }
  double duration() const { return static_cast<double>(n_edges()); }
  const std::vector<ControlVertex>& vertices() const { return vertices_; }

  /// Polygon corner k for k in [0, n_vertices + 1]: corner 0 and the last
  /// corner are the origin.
  ControlVertex corner(int k) const;

  friend bool operator==(const ControlLoop&, const ControlLoop&) = default;

 private:
  int n_qubits_ = 0;
  std::vector<ControlVertex> vertices_;
};

/// Runs independent edge computations, possibly on several threads. Results
/// never depend on the worker count: each edge is computed by the same code
/// and reductions happen afterwards, in time order, on the caller's thread.
class EdgeExecutor {
 public:
  explicit EdgeExecutor(int threads = 1);
  ~EdgeExecutor();
  EdgeExecutor(const EdgeExecutor&) = delete;
  EdgeExecutor& operator=(const EdgeExecutor&) = delete;

  int threads() const { return threads_; }
  void for_each(std::size_t count, const std::function<void(std::size_t)>& fn) const;

 private:
  struct Arena;
  int threads_;
  std::unique_ptr<Arena> arena_;
};

/// H = sum_i [-1/2 bz_i Z_i - 1/2 bx_i X_i] - C sum_{i<j} bx_i bx_j Y_i Y_j,
/// with the coupling over every pair of qubits.
HermitianMatrix build_hamiltonian(const RegisterModel& model, const ControlVertex& fields);

/// exp(-i h dt) by Hermitian eigendecomposition.
UnitaryMatrix step_propagator(const HermitianMatrix& h, double dt);

/// Control values at the midpoints t_i = (i - 1/2)/m, i = 1..m, of the
/// straight segment from start to end.
std::vector<ControlVertex> edge_midpoints(const ControlVertex& start, const ControlVertex& end,
                                          int m);

/// Propagator for one unit-time edge: the ordered product of m midpoint
/// steps of length 1/m, later steps on the left. A constant edge
/// (start == end) is a single exact step of length 1.
UnitaryMatrix propagate_edge(const RegisterModel& model, const ControlVertex& start,
                             const ControlVertex& end, int m);

/// Product of unitaries in time order: factors[0] acts first, so the result
/// is factors[n-1] ... factors[0].
UnitaryMatrix time_ordered_product(std::span<const UnitaryMatrix> factors);

/// Propagator of the whole closed loop: edges origin -> v_1 -> ... -> v_nu ->
/// origin. Edges run on the executor when given; the product is assembled
/// sequentially.
UnitaryMatrix propagate_loop(const RegisterModel& model, const ControlLoop& loop, int m,
                             const EdgeExecutor* executor = nullptr);

}  // namespace loopsynth
