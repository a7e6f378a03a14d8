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

#include "loopsynth/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json_text.hpp"

namespace loopsynth {

ControlSchedule loop_to_schedule(const ControlLoop& loop, int samples_per_edge) {
  if (samples_per_edge < 2) throw std::invalid_argument("need at least 2 samples per edge");
  const int n = loop.n_qubits();
  const int s = samples_per_edge;
  ControlSchedule out{n, loop.duration(), {}};
  out.samples.reserve(static_cast<std::size_t>(loop.n_edges() * s - loop.n_vertices()));
  out.samples.push_back({0.0, ControlVertex::origin(n)});
  for (int e = 0; e < loop.n_edges(); ++e) {
    const ControlVertex a = loop.corner(e);
    const ControlVertex b = loop.corner(e + 1);
    for (int j = 1; j < s; ++j) {
      if (j == s - 1) {
        out.samples.push_back({static_cast<double>(e + 1), b});
        continue;
      }
      const double frac = static_cast<double>(j) / static_cast<double>(s - 1);
      ControlVertex v = ControlVertex::origin(n);
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        v.bz[i] = a.bz[i] + frac * (b.bz[i] - a.bz[i]);
        v.bx[i] = a.bx[i] + frac * (b.bx[i] - a.bx[i]);
      }
      out.samples.push_back({e + frac, std::move(v)});
    }
  }
  return out;
}

ControlLoop loop_from_schedule(const ControlSchedule& schedule) {
  std::vector<ControlVertex> vertices;
  for (const auto& row : schedule.samples) {
    if (row.t > 0.0 && row.t < schedule.duration && row.t == std::floor(row.t)) vertices.push_back(row.fields);
  }
  return ControlLoop(schedule.n_qubits, std::move(vertices));
}

void write_schedule_csv(const std::filesystem::path& path, const ControlSchedule& schedule) {
  std::string text = "t";
  for (int i = 1; i <= schedule.n_qubits; ++i) text += fmt::format(",bz{}", i);
  for (int i = 1; i <= schedule.n_qubits; ++i) text += fmt::format(",bx{}", i);
  text += "\n";
  for (const auto& row : schedule.samples) {
    text += fmt::format("{:.17g}", row.t);
    for (double v : row.fields.bz) text += fmt::format(",{:.17g}", v);
    for (double v : row.fields.bx) text += fmt::format(",{:.17g}", v);
    text += "\n";
  }
  detail::write_text_file(path, text);
}

ControlSchedule read_schedule_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("schedule file is empty");
  const auto columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 3 || columns % 2 == 0 || line.rfind("t,", 0) != 0) {
    throw ParseError("schedule header must be t,bz1..bzN,bx1..bxN");
  }
  ControlSchedule out;
  out.n_qubits = (columns - 1) / 2;
  const auto n = static_cast<std::size_t>(out.n_qubits);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError(fmt::format("bad number '{}' in schedule", cell));
      }
    }
    if (values.size() != static_cast<std::size_t>(columns)) throw ParseError("schedule row has wrong column count");
    ScheduleSample row{values[0], ControlVertex::origin(out.n_qubits)};
    for (std::size_t i = 0; i < n; ++i) {
      row.fields.bz[i] = values[1 + i];
      row.fields.bx[i] = values[1 + n + i];
    }
    out.samples.push_back(std::move(row));
  }
  if (out.samples.empty()) throw ParseError("schedule has no rows");
  out.duration = out.samples.back().t;
  return out;
}

VerificationReport verify(const RegisterModel& model, const TargetGate& target, const ControlLoop& loop, int m,
                          int multiplier, const EdgeExecutor* executor) {
  if (multiplier < 1) throw std::invalid_argument("points multiplier must be at least 1");
  VerificationReport r;
  r.points = m;
  r.refined_points = m * multiplier;
  const UnitaryMatrix u = propagate_loop(model, loop, m, executor);
  r.abs_error_at_m = frobenius_norm(target.matrix.matrix() - u.matrix());
  r.unitarity_residual = unitarity_residual(u.matrix());
  r.det_residual = det_residual(u.matrix());
  r.abs_error_at_refined = error_functional(model, target, loop, r.refined_points, executor);
  return r;
}

bool within_thresholds(const VerificationReport& report, const VerificationThresholds& thresholds) {
  return report.unitarity_residual < thresholds.unitarity && report.det_residual < thresholds.det &&
         std::abs(report.abs_error_at_m - report.abs_error_at_refined) <= thresholds.drift;
}

CostReport cost_report(int n_qubits, int direct_vertices, int two_qubit_gate_count, int two_qubit_vertices) {
  if (n_qubits < 1 || two_qubit_gate_count < 1) {
    throw std::invalid_argument("qubit and gate counts must be positive");
  }
  if (direct_vertices < 0 || two_qubit_vertices < 0) {
    throw std::invalid_argument("vertex counts must be non-negative");
  }
  CostReport c;
  c.n_qubits = n_qubits;
  c.direct_vertices = direct_vertices;
  c.direct_edges = direct_vertices + 1;
  c.two_qubit_gates = two_qubit_gate_count;
  c.two_qubit_vertices = two_qubit_vertices;
  c.sequential_edges = two_qubit_gate_count * (two_qubit_vertices + 1);
  c.ratio = static_cast<double>(c.direct_edges) / static_cast<double>(c.sequential_edges);
  return c;
}

namespace {

using nlohmann::json;

constexpr const char* kResultFormat = "loopsynth-result";
constexpr int kResultVersion = 1;

json config_to_json(const SynthesisConfig& c) {
  return json{{"n_vertices", c.n_vertices},
              {"m_points", c.m_points},
              {"max_evals", c.max_evals},
              {"n_restarts", c.n_restarts},
              {"seed", c.seed},
              {"init_range", c.init_range},
              {"f_tol", c.f_tol},
              {"x_tol", c.x_tol},
              {"success_threshold", c.success_threshold},
              {"adaptive", c.adaptive},
              {"stop_on_success", c.stop_on_success},
              {"field_limit", c.field_limit ? json(*c.field_limit) : json(nullptr)}};
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(fmt::format("result file is missing \"{}\"", key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("result field \"{}\": {}", key, e.what()));
  }
}

SynthesisConfig config_from_json(const json& j) {
  SynthesisConfig c;
  c.n_vertices = field<int>(j, "n_vertices");
  c.m_points = field<int>(j, "m_points");
  c.max_evals = field<std::int64_t>(j, "max_evals");
  c.n_restarts = field<int>(j, "n_restarts");
  c.seed = field<std::uint64_t>(j, "seed");
  c.init_range = field<double>(j, "init_range");
  c.f_tol = field<double>(j, "f_tol");
  c.x_tol = field<double>(j, "x_tol");
  c.success_threshold = field<double>(j, "success_threshold");
  c.adaptive = field<bool>(j, "adaptive");
  c.stop_on_success = field<bool>(j, "stop_on_success");
  if (j.contains("field_limit") && !j["field_limit"].is_null()) c.field_limit = field<double>(j, "field_limit");
  return c;
}

}  // namespace

void write_result(const std::filesystem::path& path, const SynthesisResult& result) {
  json vertices = json::array();
  for (const auto& v : result.best_loop.vertices()) {
    json row = json::array();
    for (double b : v.bz) row.push_back(b);
    for (double b : v.bx) row.push_back(b);
    vertices.push_back(std::move(row));
  }
  json refined = nullptr;
  if (result.refined_abs_error && result.refined_points) {
    refined = json{{"points", *result.refined_points}, {"abs_error", *result.refined_abs_error}};
  }
  const json doc{
      {"format", kResultFormat},
      {"version", kResultVersion},
      {"n_qubits", result.best_loop.n_qubits()},
      {"nu", result.best_loop.n_vertices()},
      {"m", result.config.m_points},
      {"seed", result.config.seed},
      {"coupling", result.coupling},
      {"config", config_to_json(result.config)},
      {"vertices", std::move(vertices)},
      {"abs_error", result.abs_error},
      {"rel_error", result.rel_error},
      {"refined", std::move(refined)},
      {"evals_used", result.evals_used},
      {"restart_index_of_best", result.restart_index_of_best},
      {"restarts_run", result.restarts_run},
      {"target",
       json{{"name", result.target.name},
            {"root_index", result.target.root_index},
            {"matrix", detail::matrix_to_json(result.target.matrix.matrix())}}},
  };
  detail::write_text_file(path, detail::dump_json(doc));
}

SynthesisResult read_result(const std::filesystem::path& path) {
  const json doc = detail::read_json_file(path);
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != kResultFormat) {
    throw ParseError(fmt::format("{} is not a loopsynth result file", path.string()));
  }
  if (field<int>(doc, "version") != kResultVersion) throw ParseError("unsupported result file version");

  SynthesisResult r;
  const int n = field<int>(doc, "n_qubits");
  const int nu = field<int>(doc, "nu");
  if (n < 1 || n > RegisterModel::kMaxQubits || nu < 0) throw ParseError("result file has an invalid loop shape");
  r.config = config_from_json(field<json>(doc, "config"));
  if (r.config.n_vertices != nu || r.config.m_points != field<int>(doc, "m") ||
      r.config.seed != field<std::uint64_t>(doc, "seed")) {
    throw ParseError("result header disagrees with its embedded config");
  }
  r.coupling = field<double>(doc, "coupling");

  const json vertices = field<json>(doc, "vertices");
  if (!vertices.is_array() || static_cast<int>(vertices.size()) != nu) {
    throw DimensionError(fmt::format("result lists {} vertices, header says nu = {}",
                                     vertices.is_array() ? vertices.size() : 0, nu));
  }
  std::vector<double> coords;
  for (const auto& row : vertices) {
    if (!row.is_array() || static_cast<int>(row.size()) != 2 * n) {
      throw DimensionError(fmt::format("every vertex must hold 2*N = {} fields", 2 * n));
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("vertex fields must be numbers");
      coords.push_back(v.get<double>());
    }
  }
  r.best_loop = unpack(coords, n, nu);

  r.abs_error = field<double>(doc, "abs_error");
  r.rel_error = field<double>(doc, "rel_error");
  if (doc.contains("refined") && !doc["refined"].is_null()) {
    r.refined_points = field<int>(doc["refined"], "points");
    r.refined_abs_error = field<double>(doc["refined"], "abs_error");
  }
  r.evals_used = field<std::int64_t>(doc, "evals_used");
  r.restart_index_of_best = field<int>(doc, "restart_index_of_best");
  r.restarts_run = field<int>(doc, "restarts_run");

  const json target = field<json>(doc, "target");
  const ComplexMatrix m = detail::matrix_from_json(field<json>(target, "matrix"));
  if (m.rows() != (Eigen::Index{1} << n)) {
    throw DimensionError(fmt::format("target matrix is {}x{}, expected {} for {} qubits", m.rows(), m.cols(),
                                     1 << n, n));
  }
  r.target.name = field<std::string>(target, "name");
  r.target.root_index = field<int>(target, "root_index");
  r.target.matrix = UnitaryMatrix::checked(m, 1e-10);
  return r;
}

}  // namespace loopsynth
