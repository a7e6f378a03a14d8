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

#include "loopsynth/register_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "loopsynth/kernels.hpp"

namespace loopsynth {

RegisterModel::RegisterModel(int n_qubits, double coupling) : n_qubits_(n_qubits), coupling_(coupling) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument(
        fmt::format("register must have between 1 and {} qubits, got {}", kMaxQubits, n_qubits));
  }
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument(fmt::format("coupling constant must be positive, got {}", coupling));
  }
}

ControlVertex ControlVertex::origin(int n_qubits) {
  const auto n = static_cast<std::size_t>(n_qubits);
  return ControlVertex{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

void ControlVertex::validate(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  if (bz.size() != n || bx.size() != n) {
    throw DimensionError(fmt::format("control vertex has {} bz / {} bx fields, register has {} qubits",
                                     bz.size(), bx.size(), n_qubits));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(bz[i]) || !std::isfinite(bx[i])) {
      throw std::invalid_argument("control vertex has non-finite field values");
    }
  }
}

bool ControlVertex::is_origin() const {
  for (double v : bz)
    if (v != 0.0) return false;
  for (double v : bx)
    if (v != 0.0) return false;
  return true;
}

ControlLoop::ControlLoop(int n_qubits, std::vector<ControlVertex> vertices)
    : n_qubits_(n_qubits), vertices_(std::move(vertices)) {
  if (n_qubits < 1) throw std::invalid_argument("control loop needs at least one qubit");
  for (const auto& v : vertices_) v.validate(n_qubits);
}

ControlLoop ControlLoop::zeros(int n_qubits, int n_vertices) {
  return ControlLoop(n_qubits, std::vector<ControlVertex>(static_cast<std::size_t>(n_vertices),
                                                          ControlVertex::origin(n_qubits)));
}

ControlVertex ControlLoop::corner(int k) const {
  if (k < 0 || k > n_vertices() + 1) throw std::out_of_range("loop corner index out of range");
  if (k == 0 || k == n_vertices() + 1) return ControlVertex::origin(n_qubits_);
  return vertices_[static_cast<std::size_t>(k - 1)];
}

struct EdgeExecutor::Arena {
  // Asking for more workers than cores only draws a warning from TBB; the
  // extra slots would never be filled.
  explicit Arena(int threads) : arena(std::min(threads, tbb::info::default_concurrency())) {}
  tbb::task_arena arena;
};

EdgeExecutor::EdgeExecutor(int threads) : threads_(threads) {
  if (threads < 1) throw std::invalid_argument("worker count must be at least 1");
  if (threads > 1) arena_ = std::make_unique<Arena>(threads);
}

EdgeExecutor::~EdgeExecutor() = default;

void EdgeExecutor::for_each(std::size_t count, const std::function<void(std::size_t)>& fn) const {
  if (!arena_ || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { fn(i); });
  });
}

namespace {

// Midpoint of interval s (0-based) out of m on the segment a -> b.
inline double midpoint_value(double a, double b, int s, int m) {
  const double t = (static_cast<double>(s) + 0.5) / static_cast<double>(m);
  return a + t * (b - a);
}

// The register Hamiltonian is real symmetric: Z and X are real and
// Y_i Y_j |b> = -(-1)^(b_i + b_j) |b xor e_i xor e_j>. Every off-diagonal
// entry receives exactly one term.
template <class Mat>
void fill_hamiltonian(Mat& h, int n, double coupling, const double* bz, const double* bx) {
  const int dim = 1 << n;
  h.setZero();
  for (int b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const int bit_i = (b >> (n - 1 - i)) & 1;
      diag += -0.5 * bz[i] * (bit_i ? -1.0 : 1.0);
      h(b ^ (1 << (n - 1 - i)), b) = -0.5 * bx[i];
      for (int j = i + 1; j < n; ++j) {
        const int bit_j = (b >> (n - 1 - j)) & 1;
        const double sign = ((bit_i + bit_j) & 1) ? -1.0 : 1.0;
        h(b ^ (1 << (n - 1 - i)) ^ (1 << (n - 1 - j)), b) = coupling * bx[i] * bx[j] * sign;
      }
    }
    h(b, b) = diag;
  }
}

template <int Dim>
struct SplitMatrix {
  std::array<double, Dim * Dim> re{};
  std::array<double, Dim * Dim> im{};
};

template <int Dim>
ComplexMatrix to_complex(const SplitMatrix<Dim>& s) {
  ComplexMatrix out(Dim, Dim);
  for (int j = 0; j < Dim; ++j)
    for (int k = 0; k < Dim; ++k) out(j, k) = Complex(s.re[j * Dim + k], s.im[j * Dim + k]);
  return out;
}

template <int Dim>
void real_step(const Eigen::Matrix<double, Dim, Dim>& h, double dt, const kernels::KernelTable& k,
               SplitMatrix<Dim>& out) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, Dim, Dim>> es(h, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigendecomposition failed");
  std::array<double, Dim> phase_re;
  std::array<double, Dim> phase_im;
  for (int l = 0; l < Dim; ++l) {
    const double angle = es.eigenvalues()(l) * dt;
    phase_re[l] = std::cos(angle);
    phase_im[l] = -std::sin(angle);
  }
  k.spectral_exp(Dim, es.eigenvectors().data(), phase_re.data(), phase_im.data(), out.re.data(),
                 out.im.data());
}

template <int Dim>
UnitaryMatrix real_step_propagator(const ComplexMatrix& h, double dt) {
  const Eigen::Matrix<double, Dim, Dim> hr = h.real();
  SplitMatrix<Dim> out;
  real_step<Dim>(hr, dt, kernels::active_kernels(), out);
  return UnitaryMatrix::from_trusted(to_complex(out));
}

template <int Dim>
UnitaryMatrix edge_propagator(const RegisterModel& model, const ControlVertex& start,
                              const ControlVertex& end, int m) {
  constexpr int kMaxN = RegisterModel::kMaxQubits;
  const auto& k = kernels::active_kernels();
  const int n = model.n_qubits();
  Eigen::Matrix<double, Dim, Dim> h;

  if (start == end) {
    fill_hamiltonian(h, n, model.coupling(), start.bz.data(), start.bx.data());
    SplitMatrix<Dim> out;
    real_step<Dim>(h, 1.0, k, out);
    return UnitaryMatrix::from_trusted(to_complex(out));
  }

  const double dt = 1.0 / static_cast<double>(m);
  std::array<double, kMaxN> bz{};
  std::array<double, kMaxN> bx{};
  SplitMatrix<Dim> acc;
  SplitMatrix<Dim> step;
  SplitMatrix<Dim> next;
  for (int s = 0; s < m; ++s) {
    for (int i = 0; i < n; ++i) {
      bz[i] = midpoint_value(start.bz[i], end.bz[i], s, m);
      bx[i] = midpoint_value(start.bx[i], end.bx[i], s, m);
    }
    fill_hamiltonian(h, n, model.coupling(), bz.data(), bx.data());
    if (s == 0) {
      real_step<Dim>(h, dt, k, acc);
      continue;
    }
    real_step<Dim>(h, dt, k, step);
    k.complex_matmul(Dim, step.re.data(), step.im.data(), acc.re.data(), acc.im.data(),
                     next.re.data(), next.im.data());
    std::swap(acc, next);
  }
  return UnitaryMatrix::from_trusted(to_complex(acc));
}

void check_steps(int m) {
  if (m < 1) throw std::invalid_argument(fmt::format("discretization must be >= 1 step per edge, got {}", m));
}

}  // namespace

HermitianMatrix build_hamiltonian(const RegisterModel& model, const ControlVertex& fields) {
  fields.validate(model.n_qubits());
  const auto dim = static_cast<Eigen::Index>(model.dim());
  RealMatrix h(dim, dim);
  fill_hamiltonian(h, model.n_qubits(), model.coupling(), fields.bz.data(), fields.bx.data());
  return HermitianMatrix(h.cast<Complex>(), 0.0);
}

UnitaryMatrix step_propagator(const HermitianMatrix& h, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument(fmt::format("time step must be positive, got {}", dt));
  }
  if (h.is_real()) {
    switch (h.dim()) {
      case 2:
        return real_step_propagator<2>(h.matrix(), dt);
      case 4:
        return real_step_propagator<4>(h.matrix(), dt);
      case 8:
        return real_step_propagator<8>(h.matrix(), dt);
      case 16:
        return real_step_propagator<16>(h.matrix(), dt);
      default:
        break;
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigendecomposition failed");
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp().matrix();
  return UnitaryMatrix::from_trusted(es.eigenvectors() * phases.asDiagonal() *
                                     es.eigenvectors().adjoint());
}

std::vector<ControlVertex> edge_midpoints(const ControlVertex& start, const ControlVertex& end, int m) {
  check_steps(m);
  start.validate(start.n_qubits());
  end.validate(start.n_qubits());
  const std::size_t n = start.bz.size();
  std::vector<ControlVertex> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    ControlVertex v{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      v.bz[i] = midpoint_value(start.bz[i], end.bz[i], s, m);
      v.bx[i] = midpoint_value(start.bx[i], end.bx[i], s, m);
    }
    out.push_back(std::move(v));
  }
  return out;
}

UnitaryMatrix propagate_edge(const RegisterModel& model, const ControlVertex& start,
                             const ControlVertex& end, int m) {
  check_steps(m);
  start.validate(model.n_qubits());
  end.validate(model.n_qubits());
  switch (model.n_qubits()) {
    case 1:
      return edge_propagator<2>(model, start, end, m);
    case 2:
      return edge_propagator<4>(model, start, end, m);
    case 3:
      return edge_propagator<8>(model, start, end, m);
    case 4:
      return edge_propagator<16>(model, start, end, m);
    default:
      throw DimensionError("unsupported register size");
  }
}

UnitaryMatrix time_ordered_product(std::span<const UnitaryMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("time-ordered product of no factors");
  const std::size_t n = factors.front().dim();
  for (const auto& f : factors) {
    if (f.dim() != n) throw DimensionError("time-ordered product of mismatched dimensions");
  }
  if (factors.size() == 1) return factors.front();

  const auto& k = kernels::active_kernels();
  const std::size_t nn = n * n;
  std::vector<double> acc_re(nn), acc_im(nn), f_re(nn), f_im(nn), next_re(nn), next_im(nn);
  auto split = [n](const ComplexMatrix& m, std::vector<double>& re, std::vector<double>& im) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c) {
        const Complex z = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c));
        re[j * n + c] = z.real();
        im[j * n + c] = z.imag();
      }
  };
  split(factors.front().matrix(), acc_re, acc_im);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    split(factors[i].matrix(), f_re, f_im);
    k.complex_matmul(n, f_re.data(), f_im.data(), acc_re.data(), acc_im.data(), next_re.data(),
                     next_im.data());
    std::swap(acc_re, next_re);
    std::swap(acc_im, next_im);
  }
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix out(dim, dim);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < n; ++c)
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
          Complex(acc_re[j * n + c], acc_im[j * n + c]);
  return UnitaryMatrix::from_trusted(std::move(out));
}

UnitaryMatrix propagate_loop(const RegisterModel& model, const ControlLoop& loop, int m,
                             const EdgeExecutor* executor) {
  check_steps(m);
  if (loop.n_qubits() != model.n_qubits()) {
    throw DimensionError(fmt::format("loop is for {} qubits, model has {}", loop.n_qubits(),
                                     model.n_qubits()));
  }
  const auto n_edges = static_cast<std::size_t>(loop.n_edges());
  std::vector<UnitaryMatrix> edges(n_edges);
  auto run_edge = [&](std::size_t e) {
    const int k = static_cast<int>(e);
    edges[e] = propagate_edge(model, loop.corner(k), loop.corner(k + 1), m);
  };
  if (executor) {
    executor->for_each(n_edges, run_edge);
  } else {
    for (std::size_t e = 0; e < n_edges; ++e) run_edge(e);
  }
  return time_ordered_product(edges);
}

}  // namespace loopsynth
