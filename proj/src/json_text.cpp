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

#include "json_text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "loopsynth/gate_targets.hpp"

namespace loopsynth::detail {
namespace {

bool is_scalar(const nlohmann::json& v) { return !v.is_array() && !v.is_object(); }

void emit(const nlohmann::json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw std::invalid_argument("cannot serialize a non-finite number");
      out += fmt::format("{:.17g}", x);
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(item, depth + 1, out);
      }
      if (!flat) out += "\n" + close_pad;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(key).dump() + ": ";
        emit(item, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  emit(value, 0, out);
  out += "\n";
  return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(nlohmann::json::array({m(r, c).real(), m(r, c).imag()}));
  return nlohmann::json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ParseError("matrix must be an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ParseError("\"dim\" must be a positive integer");
  }
  const auto dim = j["dim"].get<long long>();
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<long long>(entries.size()) != dim * dim) {
    throw ParseError(fmt::format("\"entries\" must hold dim*dim = {} [re, im] pairs", dim * dim));
  }
  if (!is_power_of_two(static_cast<std::size_t>(dim))) {
    throw DimensionError(fmt::format("matrix dimension {} is not a power of two", dim));
  }
  ComplexMatrix m(dim, dim);
  for (long long i = 0; i < dim * dim; ++i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(fmt::format("entry {} is not a [re, im] pair of numbers", i));
    }
    m(i / dim, i % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("error writing {}", path.string()));
}

}  // namespace loopsynth::detail
