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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "loopsynth/schedule.hpp"

using namespace loopsynth;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("loopsynth_cli_" + name)).string();
}

}  // namespace

TEST_CASE("default vertex counts") {
  CHECK(cli::default_vertices(2) == 4);
  CHECK(cli::default_vertices(3) == 12);
  CHECK(cli::default_vertices(1) == 2);
  CHECK(cli::default_vertices(4) == 32);
}

TEST_CASE("synthesize, verify and export the identity") {
  const auto result = temp("identity.json");
  const auto r = run({"synthesize", "--gate", "identity", "--qubits", "2", "--vertices", "4", "--success-threshold",
                      "1e-8", "--out", result});
  CHECK(r.code == 0);
  CHECK(r.out.find("rel_error") != std::string::npos);
  CHECK(r.out.find("seed 0") != std::string::npos);
  const auto saved = read_result(result);
  CHECK(saved.rel_error < 1e-8);
  CHECK(saved.refined_points == 1000);

  const auto v = run({"verify", result});
  CHECK(v.code == 0);
  CHECK(v.out.find("ok") != std::string::npos);

  const auto csv = temp("identity.csv");
  const auto e = run({"export", result, "--samples-per-edge", "11", "--out", csv});
  CHECK(e.code == 0);
  const auto schedule = read_schedule_csv(csv);
  CHECK(schedule.samples.size() == 5 * 11 - 4);
  CHECK(loop_from_schedule(schedule) == saved.best_loop);
  std::filesystem::remove(result);
  std::filesystem::remove(csv);
}

TEST_CASE("parked identity result verifies with tiny residuals") {
  SynthesisResult r;
  r.best_loop = ControlLoop::zeros(2, 4);
  r.target = builtin_gate("identity");
  const auto path = temp("parked.json");
  write_result(path, r);
  const auto v = run({"verify", path});
  CHECK(v.code == 0);
  CHECK(v.out.find("abs_error at m=100: 0.000000e+00") != std::string::npos);
  const auto csv = temp("parked.csv");
  CHECK(run({"export", path, "--out", csv}).code == 0);
  for (const auto& row : read_schedule_csv(csv).samples) CHECK(row.fields.is_origin());
  std::filesystem::remove(path);
  std::filesystem::remove(csv);
}

TEST_CASE("invalid configurations exit with 2") {
  const auto r = run({"synthesize", "--gate", "cnot", "--qubits", "2", "--vertices", "3", "--out", temp("x.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("2*N*nu >= 2^(2N) - 1") != std::string::npos);
  CHECK(run({"synthesize", "--gate", "qft3", "--qubits", "2", "--out", temp("x.json")}).code == 2);
  CHECK(run({"synthesize", "--gate", "nosuchgate"}).code == 2);
  CHECK(run({"synthesize", "--gate", "cnot", "--threads", "0"}).code == 2);
  CHECK(run({"synthesize"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("threshold miss exits with 1") {
  const auto path = temp("miss.json");
  const auto r = run({"synthesize", "--gate", "cnot", "--restarts", "1", "--max-evals", "50", "--points", "5",
                      "--out", path});
  CHECK(r.code == 1);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST_CASE("verify and export reject unreadable files") {
  const auto path = temp("corrupt.json");
  std::ofstream(path) << "{\"format\": \"loopsynth-result\", \"version\": 1, \"n_qubits\": ";
  CHECK(run({"verify", path}).code == 2);
  CHECK(run({"export", path, "--out", temp("corrupt.csv")}).code == 2);
  CHECK(run({"verify", temp("absent.json")}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("cost subcommand reproduces the edge counts") {
  const auto r = run({"cost"});
  CHECK(r.code == 0);
  CHECK(r.out.find("13 edges") != std::string::npos);
  CHECK(r.out.find("20 edges") != std::string::npos);
  const auto one = run({"cost", "--qubits", "2", "--vertices", "0", "--two-qubit-gates", "1"});
  CHECK(one.out.find("0 vertices -> 1 edges") != std::string::npos);
}

TEST_CASE("gates subcommand and matrix-file targets") {
  const auto list = run({"gates"});
  CHECK(list.code == 0);
  CHECK(list.out.find("qft3") != std::string::npos);
  CHECK(run({"gates", "--show", "cnot"}).code == 0);
  CHECK(run({"gates", "--show", "bogus"}).code == 2);

  const auto matrix = temp("ident1.json");
  CHECK(run({"gates", "--write", "identity", "--qubits", "1", "--out", matrix}).code == 0);
  const auto result = temp("ident1_result.json");
  const auto r = run({"synthesize", "--gate", matrix, "--points", "10", "--success-threshold", "1e-6", "--out", result});
  CHECK(r.code == 0);
  CHECK(read_result(result).best_loop.n_qubits() == 1);
  std::filesystem::remove(matrix);
  std::filesystem::remove(result);
}
