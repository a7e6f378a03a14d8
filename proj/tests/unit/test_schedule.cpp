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
#include <filesystem>
#include <fstream>
#include <random>

#include "loopsynth/schedule.hpp"
#include "test_support.hpp"

using namespace loopsynth;
using namespace loopsynth::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("loopsynth_sched_" + name);
}

SynthesisResult sample_result(std::mt19937_64& rng, int n, int nu) {
  SynthesisResult r;
  r.best_loop = random_loop(rng, n, nu, 1.5);
  r.target = n == 3 ? builtin_gate("qft3") : builtin_gate("qft2");
  r.coupling = 1.25;
  r.config.n_vertices = nu;
  r.config.m_points = 37;
  r.config.seed = 0xfedcba9876543210ULL;
  r.config.field_limit = 2.5;
  r.abs_error = 0.123456789012345678;
  r.rel_error = relative_error(r.abs_error, n);
  r.refined_points = 370;
  r.refined_abs_error = 0.1234 + 1e-17;
  r.evals_used = 12345;
  r.restart_index_of_best = 2;
  r.restarts_run = 3;
  return r;
}

}  // namespace

TEST_CASE("loop_to_schedule") {
  SUBCASE("parked loop") {
    const auto s = loop_to_schedule(ControlLoop::zeros(2, 4), 50);
    CHECK(s.duration == 5.0);
    CHECK(s.samples.size() == 5 * 50 - 4);
    for (const auto& row : s.samples) CHECK(row.fields.is_origin());
    CHECK(s.samples.front().t == 0.0);
    CHECK(s.samples.back().t == 5.0);
  }
  SUBCASE("single vertex") {
    const ControlVertex v{{0.3}, {-1.7}};
    const auto s = loop_to_schedule(ControlLoop(1, {v}), 3);
    REQUIRE(s.samples.size() == 5);
    CHECK(s.samples[0].fields.is_origin());
    CHECK(s.samples[2].t == 1.0);
    CHECK(s.samples[2].fields == v);
    CHECK(s.samples[4].t == 2.0);
    CHECK(s.samples[4].fields.is_origin());
    CHECK(s.samples[1].fields.bz[0] == doctest::Approx(0.15));
  }
  SUBCASE("breakpoints reproduce the loop exactly") {
    std::mt19937_64 rng(41);
    const ControlLoop loop = random_loop(rng, 3, 12, 2.0);
    CHECK(loop_from_schedule(loop_to_schedule(loop, 7)) == loop);
  }
  SUBCASE("samples are linear within each edge") {
    std::mt19937_64 rng(42);
    const ControlLoop loop = random_loop(rng, 2, 4, 2.0);
    const int per_edge = 9;
    const auto s = loop_to_schedule(loop, per_edge);
    for (std::size_t k = 1; k + 1 < s.samples.size(); ++k) {
      if (k % (per_edge - 1) == 0) continue;  // corner rows bend
      const auto& a = s.samples[k - 1].fields;
      const auto& b = s.samples[k].fields;
      const auto& c = s.samples[k + 1].fields;
      for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(b.bz[i] - 0.5 * (a.bz[i] + c.bz[i])) < 1e-12);
        CHECK(std::abs(b.bx[i] - 0.5 * (a.bx[i] + c.bx[i])) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(loop_to_schedule(ControlLoop::zeros(2, 4), 1), std::invalid_argument);
}

TEST_CASE("schedule CSV") {
  std::mt19937_64 rng(43);
  const ControlLoop loop = random_loop(rng, 2, 4, 2.0);
  const auto s = loop_to_schedule(loop, 5);
  const auto path = temp_file("s.csv");
  write_schedule_csv(path, s);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,bz1,bz2,bx1,bx2");
  std::string first;
  std::getline(in, first);
  CHECK(first == "0,0,0,0,0");
  const auto back = read_schedule_csv(path);
  CHECK(back.n_qubits == 2);
  CHECK(back.duration == 5.0);
  REQUIRE(back.samples.size() == s.samples.size());
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    CHECK(back.samples[k].t == s.samples[k].t);
    CHECK(back.samples[k].fields == s.samples[k].fields);
  }
  CHECK(loop_from_schedule(back) == loop);
  std::filesystem::remove(path);
}

TEST_CASE("verify") {
  const RegisterModel model(2);
  SUBCASE("parked loop against identity") {
    const auto r = verify(model, builtin_gate("identity"), ControlLoop::zeros(2, 4), 100);
    CHECK(r.refined_points == 1000);
    CHECK(r.abs_error_at_m < 1e-12);
    CHECK(r.abs_error_at_refined < 1e-12);
    CHECK(r.unitarity_residual < 1e-12);
    CHECK(r.det_residual < 1e-12);
    CHECK(within_thresholds(r));
  }
  SUBCASE("any loop is unitary") {
    std::mt19937_64 rng(44);
    const auto r = verify(model, builtin_gate("cnot"), random_loop(rng, 2, 4, 2.0), 20, 3);
    CHECK(r.unitarity_residual < 1e-10);
    CHECK(r.det_residual < 1e-8);
    CHECK(r.abs_error_at_m >= 0.0);
  }
}

TEST_CASE("cost_report") {
  const auto direct = cost_report(3, 12, 4, 4);
  CHECK(direct.direct_edges == 13);
  CHECK(direct.sequential_edges == 20);
  CHECK(direct.ratio == doctest::Approx(13.0 / 20.0));
  CHECK(cost_report(2, 0, 1, 0).direct_edges == 1);
  CHECK(cost_report(2, 0, 1, 0).sequential_edges == 1);
  CHECK_THROWS_AS(cost_report(3, -1, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(cost_report(3, 12, 0, 4), std::invalid_argument);
}

TEST_CASE("result files") {
  std::mt19937_64 rng(45);
  SUBCASE("lossless round trip") {
    for (int n : {2, 3}) {
      const auto r = sample_result(rng, n, n == 3 ? 12 : 4);
      const auto path = temp_file("result.json");
      write_result(path, r);
      const auto back = read_result(path);
      CHECK(back.best_loop == r.best_loop);
      CHECK(back.abs_error == r.abs_error);
      CHECK(back.rel_error == r.rel_error);
      CHECK(back.coupling == r.coupling);
      CHECK(back.config == r.config);
      CHECK(back.target.name == r.target.name);
      CHECK(back.target.root_index == r.target.root_index);
      CHECK(back.target.matrix == r.target.matrix);
      CHECK(back.refined_abs_error == r.refined_abs_error);
      CHECK(back.refined_points == r.refined_points);
      CHECK(back.evals_used == r.evals_used);
      CHECK(back.restart_index_of_best == r.restart_index_of_best);
      CHECK(back.restarts_run == r.restarts_run);
      std::filesystem::remove(path);
    }
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_result(temp_file("does-not-exist.json")), std::runtime_error); }
  SUBCASE("vertex width disagreeing with n_qubits") {
    const auto path = temp_file("bad_n.json");
    write_result(path, sample_result(rng, 2, 4));
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    text.replace(text.find("\"n_qubits\": 2"), 13, "\"n_qubits\": 3");
    std::ofstream(path) << text;
    CHECK_THROWS_AS(read_result(path), DimensionError);
    std::filesystem::remove(path);
  }
  SUBCASE("target of the wrong size") {
    const auto path = temp_file("bad_target.json");
    auto r = sample_result(rng, 2, 4);
    r.target = builtin_gate("qft3");
    write_result(path, r);
    CHECK_THROWS_AS(read_result(path), DimensionError);
    std::filesystem::remove(path);
  }
  SUBCASE("not a result file") {
    const auto path = temp_file("other.json");
    std::ofstream(path) << R"({"dim": 2})";
    CHECK_THROWS_AS(read_result(path), ParseError);
    std::filesystem::remove(path);
  }
}
