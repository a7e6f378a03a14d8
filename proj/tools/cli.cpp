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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "loopsynth/gate_targets.hpp"
#include "loopsynth/kernels.hpp"
#include "loopsynth/schedule.hpp"
#include "loopsynth/synthesis.hpp"

namespace loopsynth::cli {
namespace {

struct SynthesizeFlags {
  std::string gate;
  int qubits = 0;
  int vertices = 0;
  int points = 100;
  int restarts = 20;
  std::int64_t max_evals = 50000;
  std::uint64_t seed = 0;
  double init_range = 1.5;
  double coupling = 1.0;
  double success_threshold = 1e-4;
  double f_tol = 1e-12;
  double x_tol = 1e-10;
  int root_index = 0;
  bool scan_phase_roots = false;
  bool adaptive = false;
  bool no_early_stop = false;
  std::optional<double> field_limit;
  int threads = 1;
  int refine_multiplier = 10;
  std::string out = "result.json";
};

struct VerifyFlags {
  std::string result;
  int multiplier = 10;
  double drift_tol = 1e-4;
  int threads = 1;
};

struct ExportFlags {
  std::string result;
  int samples_per_edge = 50;
  std::string out = "schedule.csv";
};

struct GatesFlags {
  std::string show;
  std::string write;
  std::string out;
  int qubits = 2;
};

struct CostFlags {
  int qubits = 3;
  int vertices = 12;
  int two_qubit_gates = 4;
  int two_qubit_vertices = 4;
};

int builtin_qubits(const std::string& name) {
  if (name == "qft3") return 3;
  return 2;
}

bool is_builtin(const std::string& name) {
  const auto names = builtin_gate_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

TargetGate load_target(const SynthesizeFlags& f, int n_qubits) {
  if (is_builtin(f.gate)) {
    TargetGate t = builtin_gate(f.gate, n_qubits);
    if (t.n_qubits() != n_qubits) {
      throw ConfigError(fmt::format("gate '{}' acts on {} qubits, --qubits is {}", f.gate, t.n_qubits(), n_qubits));
    }
    return t;
  }
  if (!std::filesystem::exists(f.gate)) {
    throw ConfigError(fmt::format("'{}' is neither a builtin gate ({}) nor a matrix file", f.gate,
                                  fmt::join(builtin_gate_names(), ", ")));
  }
  const UnitaryMatrix u = read_matrix_file(f.gate);
  return make_target(std::filesystem::path(f.gate).stem().string(), u, f.root_index);
}

int cmd_synthesize(const SynthesizeFlags& f, std::ostream& out, std::ostream& err) {
  int n_qubits = f.qubits;
  TargetGate target;
  SynthesisConfig cfg;
  std::unique_ptr<RegisterModel> model;
  try {
    if (n_qubits == 0) {
      n_qubits = is_builtin(f.gate) ? builtin_qubits(f.gate) : read_matrix_file(f.gate).n_qubits();
    }
    target = load_target(f, n_qubits);
    model = std::make_unique<RegisterModel>(n_qubits, f.coupling);
    cfg.n_vertices = f.vertices > 0 ? f.vertices : default_vertices(n_qubits);
    cfg.m_points = f.points;
    cfg.max_evals = f.max_evals;
    cfg.n_restarts = f.restarts;
    cfg.seed = f.seed;
    cfg.init_range = f.init_range;
    cfg.f_tol = f.f_tol;
    cfg.x_tol = f.x_tol;
    cfg.success_threshold = f.success_threshold;
    cfg.adaptive = f.adaptive;
    cfg.stop_on_success = !f.no_early_stop;
    cfg.field_limit = f.field_limit;
    cfg.validate();
    if (!vertex_condition(n_qubits, cfg.n_vertices)) {
      throw ConfigError(fmt::format(
          "vertex condition violated: need 2*N*nu >= 2^(2N) - 1, but 2*{}*{} = {} < {}", n_qubits,
          cfg.n_vertices, 2 * n_qubits * cfg.n_vertices, (1 << (2 * n_qubits)) - 1));
    }
    if (f.threads < 1) throw ConfigError("--threads must be at least 1");
    if (f.refine_multiplier < 1) throw ConfigError("--refine-multiplier must be at least 1");
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }

  fmt::print(out, "target {} ({} qubits, phase root {}), coupling {}\n", target.name, n_qubits,
             target.root_index, model->coupling());
  fmt::print(out,
             "config: vertices {} points {} restarts {} max-evals {} seed {} init-range {} f-tol {:g} x-tol {:g} "
             "adaptive {} scan-phase-roots {} kernels {}\n",
             cfg.n_vertices, cfg.m_points, cfg.n_restarts, cfg.max_evals, cfg.seed, cfg.init_range, cfg.f_tol,
             cfg.x_tol, cfg.adaptive, f.scan_phase_roots, kernels::level_name(kernels::active_kernels().level));

  const EdgeExecutor executor(f.threads);
  auto report = [&](const RestartReport& r) {
    fmt::print(out, "  restart {:3d}: abs_error {:.6e} rel_error {:.6e} evals {}{}\n", r.restart_index,
               r.abs_error, r.rel_error, r.evals, r.converged ? "" : " (budget)");
    out.flush();
  };
  SynthesisResult result;
  try {
    result = f.scan_phase_roots ? synthesize_phase_scan(*model, target, cfg, &executor, report)
                                : synthesize(*model, target, cfg, &executor, report);
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  const int refined = cfg.m_points * f.refine_multiplier;
  result.refined_points = refined;
  result.refined_abs_error = error_functional(*model, result.target, result.best_loop, refined, &executor);

  try {
    write_result(f.out, result);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  fmt::print(out, "best: abs_error {:.6e} rel_error {:.6e} (restart {}, root {}, {} evals total)\n",
             result.abs_error, result.rel_error, result.restart_index_of_best, result.target.root_index,
             result.evals_used);
  fmt::print(out, "at {} points per edge: abs_error {:.6e} rel_error {:.6e}\n", refined, *result.refined_abs_error,
             relative_error(*result.refined_abs_error, n_qubits));
  fmt::print(out, "wrote {}\n", f.out);
  const bool ok = result.rel_error <= cfg.success_threshold;
  if (!ok) fmt::print(err, "rel_error {:.3e} above threshold {:.3e}\n", result.rel_error, cfg.success_threshold);
  return ok ? kOk : kThresholdMiss;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  SynthesisResult r;
  std::unique_ptr<RegisterModel> model;
  try {
    if (f.multiplier < 1) throw ConfigError("--points-multiplier must be at least 1");
    if (f.threads < 1) throw ConfigError("--threads must be at least 1");
    r = read_result(f.result);
    model = std::make_unique<RegisterModel>(r.best_loop.n_qubits(), r.coupling);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  const EdgeExecutor executor(f.threads);
  const VerificationReport v = verify(*model, r.target, r.best_loop, r.config.m_points, f.multiplier, &executor);
  const int n = model->n_qubits();
  fmt::print(out, "target {} ({} qubits, {} vertices)\n", r.target.name, n, r.best_loop.n_vertices());
  fmt::print(out, "abs_error at m={}: {:.6e} (rel {:.6e})\n", v.points, v.abs_error_at_m,
             relative_error(v.abs_error_at_m, n));
  fmt::print(out, "abs_error at m={}: {:.6e} (rel {:.6e})\n", v.refined_points, v.abs_error_at_refined,
             relative_error(v.abs_error_at_refined, n));
  fmt::print(out, "unitarity residual: {:.3e}\n", v.unitarity_residual);
  fmt::print(out, "determinant residual: {:.3e}\n", v.det_residual);
  VerificationThresholds th;
  th.drift = f.drift_tol;
  const bool ok = within_thresholds(v, th);
  fmt::print(out, "{}\n", ok ? "ok" : "FAILED");
  return ok ? kOk : kThresholdMiss;
}

int cmd_export(const ExportFlags& f, std::ostream& out, std::ostream& err) {
  try {
    if (f.samples_per_edge < 2) throw ConfigError("--samples-per-edge must be at least 2");
    const SynthesisResult r = read_result(f.result);
    const ControlSchedule s = loop_to_schedule(r.best_loop, f.samples_per_edge);
    write_schedule_csv(f.out, s);
    fmt::print(out, "wrote {} rows ({} edges, duration {}) to {}\n", s.samples.size(), r.best_loop.n_edges(),
               s.duration, f.out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  return kOk;
}

void print_matrix(std::ostream& out, const UnitaryMatrix& u) {
  for (Eigen::Index r = 0; r < u.matrix().rows(); ++r) {
    for (Eigen::Index c = 0; c < u.matrix().cols(); ++c) {
      fmt::print(out, "{}{:+.6f}{:+.6f}i", c ? "  " : "", u(r, c).real(), u(r, c).imag());
    }
    fmt::print(out, "\n");
  }
}

int cmd_gates(const GatesFlags& f, std::ostream& out, std::ostream& err) {
  try {
    if (!f.show.empty()) {
      const TargetGate g = builtin_gate(f.show, f.qubits);
      fmt::print(out, "{} ({} qubits, |det - 1| = {:.2e})\n", g.name, g.n_qubits(), det_residual(g.matrix.matrix()));
      print_matrix(out, g.matrix);
      return kOk;
    }
    if (!f.write.empty()) {
      if (f.out.empty()) throw ConfigError("--write needs --out");
      write_matrix_file(f.out, builtin_gate(f.write, f.qubits).matrix);
      fmt::print(out, "wrote {}\n", f.out);
      return kOk;
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  for (const auto& name : builtin_gate_names()) {
    const TargetGate g = builtin_gate(name, f.qubits);
    fmt::print(out, "{:<10} {} qubits\n", name, g.n_qubits());
  }
  return kOk;
}

int cmd_cost(const CostFlags& f, std::ostream& out, std::ostream& err) {
  CostReport c;
  try {
    c = cost_report(f.qubits, f.vertices, f.two_qubit_gates, f.two_qubit_vertices);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalid;
  }
  fmt::print(out, "direct {}-qubit loop: {} vertices -> {} edges\n", c.n_qubits, c.direct_vertices, c.direct_edges);
  fmt::print(out, "sequential: {} two-qubit gates x ({} vertices + 1) -> {} edges\n", c.two_qubit_gates,
             c.two_qubit_vertices, c.sequential_edges);
  fmt::print(out, "ratio direct/sequential: {:.4f}\n", c.ratio);
  return kOk;
}

}  // namespace

int default_vertices(int n_qubits) {
  if (n_qubits == 2) return 4;
  if (n_qubits == 3) return 12;
  int nu = 1;
  while (!vertex_condition(n_qubits, nu)) ++nu;
  return nu;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Find piecewise-linear control loops that realize multiqubit gates on coupled charge qubits",
               "loopsynth"};
  app.require_subcommand(1);

  SynthesizeFlags sf;
  auto* syn = app.add_subcommand("synthesize", "search for a control loop realizing a gate");
  syn->add_option("--gate", sf.gate, "builtin gate name or matrix file")->required();
  syn->add_option("--qubits", sf.qubits, "register size (default: from the gate)");
  syn->add_option("--vertices", sf.vertices, "adjustable polygon vertices (default 4 for 2 qubits, 12 for 3)");
  syn->add_option("--points", sf.points, "discretization points per edge")->capture_default_str();
  syn->add_option("--restarts", sf.restarts, "independent restarts")->capture_default_str();
  syn->add_option("--max-evals", sf.max_evals, "evaluation budget per restart")->capture_default_str();
  syn->add_option("--seed", sf.seed, "base random seed")->capture_default_str();
  syn->add_option("--init-range", sf.init_range, "initial vertices uniform in [-w, w]")->capture_default_str();
  syn->add_option("--coupling", sf.coupling, "inductive coupling constant C")->capture_default_str();
  syn->add_option("--success-threshold", sf.success_threshold, "relative error counted as success")
      ->capture_default_str();
  syn->add_option("--f-tol", sf.f_tol, "simplex function-spread tolerance")->capture_default_str();
  syn->add_option("--x-tol", sf.x_tol, "simplex diameter tolerance")->capture_default_str();
  syn->add_option("--root-index", sf.root_index, "SU(2^N) phase root for matrix-file targets")
      ->capture_default_str();
  syn->add_flag("--scan-phase-roots", sf.scan_phase_roots, "try every SU(2^N) phase root, keep the best");
  syn->add_flag("--adaptive", sf.adaptive, "dimension-adapted simplex coefficients");
  syn->add_flag("--no-early-stop", sf.no_early_stop, "run every restart even after success");
  syn->add_option("--field-limit", sf.field_limit, "clamp fields to [-L, L]");
  syn->add_option("--threads", sf.threads, "workers for edge propagation")->capture_default_str();
  syn->add_option("--refine-multiplier", sf.refine_multiplier, "recheck the best loop at this many times the points")
      ->capture_default_str();
  syn->add_option("--out", sf.out, "result file")->capture_default_str();

  VerifyFlags vf;
  auto* ver = app.add_subcommand("verify", "re-evaluate a result at finer discretization");
  ver->add_option("result", vf.result, "result file")->required();
  ver->add_option("--points-multiplier", vf.multiplier, "refinement factor")->capture_default_str();
  ver->add_option("--drift-tol", vf.drift_tol, "allowed error change under refinement")->capture_default_str();
  ver->add_option("--threads", vf.threads, "workers for edge propagation")->capture_default_str();

  ExportFlags ef;
  auto* exp = app.add_subcommand("export", "write the control schedule of a result as CSV");
  exp->add_option("result", ef.result, "result file")->required();
  exp->add_option("--samples-per-edge", ef.samples_per_edge, "samples per edge, ends included")
      ->capture_default_str();
  exp->add_option("--out", ef.out, "CSV file")->capture_default_str();

  GatesFlags gf;
  auto* gates = app.add_subcommand("gates", "list, print or write builtin target gates");
  gates->add_option("--show", gf.show, "print a builtin gate");
  gates->add_option("--write", gf.write, "write a builtin gate as a matrix file");
  gates->add_option("--out", gf.out, "output path for --write");
  gates->add_option("--qubits", gf.qubits, "size of the identity gate")->capture_default_str();

  CostFlags cf;
  auto* cost = app.add_subcommand("cost", "compare edge counts of direct and sequential implementations");
  cost->add_option("--qubits", cf.qubits, "qubits of the direct gate")->capture_default_str();
  cost->add_option("--vertices", cf.vertices, "vertices of the direct loop")->capture_default_str();
  cost->add_option("--two-qubit-gates", cf.two_qubit_gates, "two-qubit gates in the sequence")->capture_default_str();
  cost->add_option("--two-qubit-vertices", cf.two_qubit_vertices, "vertices per two-qubit loop")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  if (*syn) return cmd_synthesize(sf, out, err);
  if (*ver) return cmd_verify(vf, out, err);
  if (*exp) return cmd_export(ef, out, err);
  if (*gates) return cmd_gates(gf, out, err);
  return cmd_cost(cf, out, err);
}

}  // namespace loopsynth::cli
