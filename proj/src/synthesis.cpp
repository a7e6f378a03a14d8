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

#include "loopsynth/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace loopsynth {

void SynthesisConfig::validate() const {
  if (n_vertices < 1) throw ConfigError("number of vertices must be at least 1");
  if (m_points < 1) throw ConfigError("points per edge must be at least 1");
  if (max_evals < 1) throw ConfigError("evaluation budget must be at least 1");
  if (n_restarts < 1) throw ConfigError("number of restarts must be at least 1");
  if (!(init_range > 0.0) || !std::isfinite(init_range)) throw ConfigError("init range must be positive");
  if (!(f_tol > 0.0) || !(x_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(success_threshold > 0.0)) throw ConfigError("success threshold must be positive");
  if (field_limit && !(*field_limit > 0.0)) throw ConfigError("field limit must be positive");
}

bool vertex_condition(int n_qubits, int n_vertices) {
  if (n_qubits < 1 || n_vertices < 1) return false;
  const std::int64_t group_dim = (std::int64_t{1} << (2 * n_qubits)) - 1;
  return std::int64_t{2} * n_qubits * n_vertices >= group_dim;
}

double error_functional(const RegisterModel& model, const TargetGate& target, const ControlLoop& loop,
                        int m, const EdgeExecutor* executor) {
  if (target.matrix.dim() != model.dim()) {
    throw DimensionError(fmt::format("target is {}-dimensional, register is {}-dimensional",
                                     target.matrix.dim(), model.dim()));
  }
  const UnitaryMatrix u = propagate_loop(model, loop, m, executor);
  return frobenius_norm(target.matrix.matrix() - u.matrix());
}

double relative_error(double abs_error, int n_qubits) {
  return abs_error / std::sqrt(static_cast<double>(std::size_t{1} << n_qubits));
}

std::vector<double> pack(const ControlLoop& loop) {
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(2 * loop.n_qubits() * loop.n_vertices()));
  for (const auto& v : loop.vertices()) {
    x.insert(x.end(), v.bz.begin(), v.bz.end());
    x.insert(x.end(), v.bx.begin(), v.bx.end());
  }
  return x;
}

ControlLoop unpack(std::span<const double> x, int n_qubits, int n_vertices) {
  if (n_qubits < 1 || n_vertices < 0) throw DimensionError("invalid loop shape");
  const auto n = static_cast<std::size_t>(n_qubits);
  if (x.size() != 2 * n * static_cast<std::size_t>(n_vertices)) {
    throw DimensionError(fmt::format("coordinate vector has length {}, expected 2*{}*{} = {}", x.size(),
                                     n_qubits, n_vertices, 2 * n * static_cast<std::size_t>(n_vertices)));
  }
  std::vector<ControlVertex> vertices;
  vertices.reserve(static_cast<std::size_t>(n_vertices));
  for (int k = 0; k < n_vertices; ++k) {
    const auto base = x.begin() + static_cast<std::ptrdiff_t>(2 * n * static_cast<std::size_t>(k));
    vertices.push_back(ControlVertex{std::vector<double>(base, base + static_cast<std::ptrdiff_t>(n)),
                                     std::vector<double>(base + static_cast<std::ptrdiff_t>(n),
                                                         base + static_cast<std::ptrdiff_t>(2 * n))});
  }
  return ControlLoop(n_qubits, std::move(vertices));
}

std::uint64_t restart_seed(std::uint64_t seed, int restart_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart_index), 0x6c6f6f70u};
  std::uint32_t words[2];
  seq.generate(std::begin(words), std::end(words));
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::vector<double> initial_point(const SynthesisConfig& cfg, int n_qubits, int restart_index) {
  std::mt19937_64 rng(restart_seed(cfg.seed, restart_index));
  const auto d = static_cast<std::size_t>(2 * n_qubits * cfg.n_vertices);
  std::vector<double> x(d);
  // 53 random bits mapped to [0, 1); std distributions are not specified
  // bit-for-bit across standard libraries.
  for (double& v : x) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = cfg.init_range * (2.0 * u - 1.0);
  }
  return x;
}

namespace {

void check_synthesis_inputs(const RegisterModel& model, const TargetGate& target,
                            const SynthesisConfig& cfg) {
  cfg.validate();
  if (!vertex_condition(model.n_qubits(), cfg.n_vertices)) {
    const int n = model.n_qubits();
    throw ConfigError(fmt::format(
        "too few vertices: need 2*N*nu >= 2^(2N) - 1 to parameterize SU(2^N), but 2*{}*{} = {} < {}", n,
        cfg.n_vertices, 2 * n * cfg.n_vertices, (1 << (2 * n)) - 1));
  }
  if (target.matrix.dim() != model.dim()) {
    throw ConfigError(fmt::format("target '{}' acts on {} qubits but the register has {}", target.name,
                                  target.n_qubits(), model.n_qubits()));
  }
  const double unitarity = unitarity_residual(target.matrix.matrix());
  const double det = det_residual(target.matrix.matrix());
  if (!(unitarity <= kTargetDetTolerance) || !(det <= kTargetDetTolerance)) {
    throw ConfigError(fmt::format(
        "target '{}' is not in SU({}): unitarity residual {:.3g}, |det - 1| = {:.3g}", target.name,
        model.dim(), unitarity, det));
  }
}

}  // namespace

SynthesisResult synthesize(const RegisterModel& model, const TargetGate& target, const SynthesisConfig& cfg,
                           const EdgeExecutor* executor,
                           const std::function<void(const RestartReport&)>& on_restart) {
  check_synthesis_inputs(model, target, cfg);
  const int n = model.n_qubits();
  const int nu = cfg.n_vertices;

  auto as_loop = [&](std::span<const double> x) {
    if (!cfg.field_limit) return unpack(x, n, nu);
    std::vector<double> clamped(x.begin(), x.end());
    for (double& v : clamped) v = std::clamp(v, -*cfg.field_limit, *cfg.field_limit);
    return unpack(clamped, n, nu);
  };
  const Objective objective = [&](std::span<const double> x) {
    return error_functional(model, target, as_loop(x), cfg.m_points, executor);
  };
  const NelderMeadOptions options{cfg.max_evals, cfg.f_tol, cfg.x_tol, cfg.adaptive};

  SynthesisResult best;
  best.target = target;
  best.coupling = model.coupling();
  best.config = cfg;
  bool have_best = false;
  for (int k = 0; k < cfg.n_restarts; ++k) {
    const NelderMeadResult run = nelder_mead(objective, initial_point(cfg, n, k), options);
    best.evals_used += run.evals;
    best.restarts_run = k + 1;
    const double rel = relative_error(run.f, n);
    if (on_restart) on_restart(RestartReport{k, run.f, rel, run.evals, run.converged});
    if (!have_best || run.f < best.abs_error) {
      have_best = true;
      best.best_loop = as_loop(run.x);
      best.abs_error = run.f;
      best.rel_error = rel;
      best.restart_index_of_best = k;
    }
    if (cfg.stop_on_success && best.rel_error <= cfg.success_threshold) break;
  }
  return best;
}

SynthesisResult synthesize_phase_scan(const RegisterModel& model, const TargetGate& target,
                                      const SynthesisConfig& cfg, const EdgeExecutor* executor,
                                      const std::function<void(const RestartReport&)>& on_restart) {
  const auto roots = static_cast<int>(target.matrix.dim());
  std::optional<SynthesisResult> best;
  std::int64_t total_evals = 0;
  for (int shift = 0; shift < roots; ++shift) {
    SynthesisResult r = synthesize(model, shift_phase_root(target, shift), cfg, executor, on_restart);
    total_evals += r.evals_used;
    if (!best || r.abs_error < best->abs_error) best = std::move(r);
    if (cfg.stop_on_success && best->rel_error <= cfg.success_threshold) break;
  }
  best->evals_used = total_evals;
  return *best;
}

}  // namespace loopsynth
