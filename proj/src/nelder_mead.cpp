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

#include "loopsynth/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace loopsynth {
namespace {

struct BudgetExhausted {};

// Counts evaluations, remembers the best point seen and enforces the budget.
class CountingObjective {
 public:
  CountingObjective(const Objective& f, std::int64_t budget) : f_(f), budget_(budget) {}

  double operator()(const std::vector<double>& x) {
    if (evals_ >= budget_) throw BudgetExhausted{};
    ++evals_;
    double v = f_(x);
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (best_x_.empty() || v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }

  std::int64_t evals() const { return evals_; }
  double best_f() const { return best_f_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  std::int64_t budget_;
  std::int64_t evals_ = 0;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t d = x0.size();
  if (d == 0) throw std::invalid_argument("nelder_mead needs at least one variable");
  if (options.max_evals < 1) throw std::invalid_argument("nelder_mead needs a positive evaluation budget");
  if (!(options.f_tol > 0.0) || !(options.x_tol > 0.0)) {
    throw std::invalid_argument("nelder_mead tolerances must be positive");
  }

  const double dd = static_cast<double>(d);
  const double alpha = 1.0;
  const double gamma = options.adaptive ? 1.0 + 2.0 / dd : 2.0;
  const double rho = options.adaptive ? 0.75 - 1.0 / (2.0 * dd) : 0.5;
  const double sigma = options.adaptive && d > 1 ? 1.0 - 1.0 / dd : 0.5;

  CountingObjective f(objective, options.max_evals);
  NelderMeadResult result;

  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);

  auto along = [&](double t, const std::vector<double>& from, std::vector<double>& out) {
    // out = centroid + t * (from - centroid)
    for (std::size_t i = 0; i < d; ++i) out[i] = centroid[i] + t * (from[i] - centroid[i]);
  };

  try {
    for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += 0.1 * std::max(std::abs(x0[i]), 1.0);
    for (std::size_t k = 0; k <= d; ++k) vals[k] = f(pts[k]);

    while (true) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[d - 1];

      const double spread = vals[worst] - vals[best];
      double diameter = 0.0;
      for (std::size_t k = 0; k <= d; ++k)
        for (std::size_t i = 0; i < d; ++i) diameter = std::max(diameter, std::abs(pts[k][i] - pts[best][i]));
      if (spread < options.f_tol && diameter < options.x_tol) {
        result.converged = true;
        break;
      }
      if (f.evals() >= options.max_evals) throw BudgetExhausted{};
      ++result.iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        const auto& p = pts[order[k]];
        for (std::size_t i = 0; i < d; ++i) centroid[i] += p[i];
      }
      for (double& c : centroid) c /= dd;

      along(-alpha, pts[worst], xr);
      const double fr = f(xr);
      if (fr < vals[best]) {
        along(gamma, xr, xe);
        const double fe = f(xe);
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second_worst]) {
        pts[worst] = xr;
        vals[worst] = fr;
        continue;
      }
      if (fr < vals[worst]) {
        along(rho, xr, xc);
        const double fc = f(xc);
        if (fc <= fr) {
          pts[worst] = xc;
          vals[worst] = fc;
          continue;
        }
      } else {
        along(rho, pts[worst], xc);
        const double fc = f(xc);
        if (fc < vals[worst]) {
          pts[worst] = xc;
          vals[worst] = fc;
          continue;
        }
      }
      // Shrink towards the best vertex.
      for (std::size_t k = 0; k <= d; ++k) {
        if (k == best) continue;
        for (std::size_t i = 0; i < d; ++i) pts[k][i] = pts[best][i] + sigma * (pts[k][i] - pts[best][i]);
        vals[k] = f(pts[k]);
      }
    }
  } catch (const BudgetExhausted&) {
    result.budget_exhausted = true;
  }

  result.x = f.best_x();
  result.f = f.best_f();
  result.evals = f.evals();
  return result;
}

}  // namespace loopsynth
