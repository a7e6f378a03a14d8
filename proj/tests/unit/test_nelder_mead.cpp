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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "loopsynth/nelder_mead.hpp"

using namespace loopsynth;

TEST_CASE("one-dimensional quadratic") {
  const auto r = nelder_mead([](std::span<const double> x) { return (x[0] - 2) * (x[0] - 2); }, {0.0}, {});
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 2.0) < 1e-6);
}

TEST_CASE("Rosenbrock from (-1.2, 1)") {
  auto rosen = [](std::span<const double> x) {
    return (1 - x[0]) * (1 - x[0]) + 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
  };
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, {});
  CHECK(r.f < 1e-8);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-3);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-3);
}

TEST_CASE("constant objective stops on the diameter rule") {
  const auto r = nelder_mead([](std::span<const double>) { return 5.0; }, {0.3, -0.7, 2.0}, {});
  CHECK(r.converged);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.f == 5.0);
  CHECK(r.evals < 1000);
}

TEST_CASE("budget exhaustion returns the best point so far") {
  NelderMeadOptions opt;
  opt.max_evals = 10;
  int calls = 0;
  const auto r = nelder_mead(
      [&](std::span<const double> x) {
        ++calls;
        return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      },
      {1.0, 1.0, 1.0}, opt);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.converged);
  CHECK(r.evals == 10);
  CHECK(calls == 10);
  CHECK(r.f <= 3.0);
  CHECK(r.f == doctest::Approx(r.x[0] * r.x[0] + r.x[1] * r.x[1] + r.x[2] * r.x[2]));
}

TEST_CASE("never worse than the starting point") {
  // Rough objective with many local minima.
  auto rough = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v + 3 * std::sin(7 * v) * std::sin(7 * v);
    return s;
  };
  for (double start : {-2.0, 0.4, 1.7}) {
    const std::vector<double> x0(5, start);
    const auto r = nelder_mead(rough, x0, {});
    CHECK(r.f <= rough(x0));
  }
}

TEST_CASE("adaptive coefficients in ten dimensions") {
  auto sphere = [](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * (x[i] - 0.5) * (x[i] - 0.5);
    return s;
  };
  NelderMeadOptions opt;
  opt.adaptive = true;
  const auto r = nelder_mead(sphere, std::vector<double>(10, 0.0), opt);
  CHECK(r.converged);
  CHECK(r.f < 1e-10);
}

TEST_CASE("NaN values count as +infinity") {
  auto f = [](std::span<const double> x) {
    return x[0] < 0 ? std::numeric_limits<double>::quiet_NaN() : (x[0] - 1) * (x[0] - 1);
  };
  const auto r = nelder_mead(f, {0.5}, {});
  CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
}

TEST_CASE("invalid arguments") {
  auto f = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(nelder_mead(f, {}, {}), std::invalid_argument);
  NelderMeadOptions opt;
  opt.max_evals = 0;
  CHECK_THROWS_AS(nelder_mead(f, {1.0}, opt), std::invalid_argument);
  opt = {};
  opt.f_tol = 0;
  CHECK_THROWS_AS(nelder_mead(f, {1.0}, opt), std::invalid_argument);
}
