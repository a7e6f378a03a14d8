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
#include <span>
#include <vector>

namespace loopsynth {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  std::int64_t max_evals = 100000;
  /// Stop once max f - min f over the simplex is below f_tol ...
  double f_tol = 1e-12;
  /// ... and every vertex lies within x_tol (max-norm) of the best one.
  double x_tol = 1e-10;
  /// Dimension-dependent coefficients (Gao and Han) instead of the classical
  /// 1 / 2 / 0.5 / 0.5.
  bool adaptive = false;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::int64_t evals = 0;
  std::int64_t iterations = 0;
  bool converged = false;
  bool budget_exhausted = false;
};

/// Derivative-free simplex minimization from x0. The initial simplex is x0
/// plus one point per axis offset by 0.1 * max(|x0_i|, 1). Returns the best
/// point ever evaluated, so the result is never worse than f(x0). NaN
/// objective values are treated as +infinity.
NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0,
                             const NelderMeadOptions& options);

}  // namespace loopsynth
