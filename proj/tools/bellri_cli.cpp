// Copyright 2026 The bellri Authors
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

// bellri command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 computation sentinel (no violation found),
// 2 input validation failure, 3 internal error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellri/bellri.h"
#include "run_config.hpp"

namespace {

using bellri::cli::OutputFormat;
using bellri::cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitSentinel = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

struct ApiFailure {
  bellri_status status;
  std::string message;
};

void check(bellri_status status) {
  if (status != BELLRI_OK) throw ApiFailure{status, bellri_last_error()};
}

struct StateDeleter {
  void operator()(bellri_state* s) const { bellri_state_free(s); }
};
struct TensorDeleter {
  void operator()(bellri_tensor* t) const { bellri_tensor_free(t); }
};
struct ModelDeleter {
  void operator()(bellri_lhv_model* m) const { bellri_lhv_model_free(m); }
};
using StatePtr = std::unique_ptr<bellri_state, StateDeleter>;
using TensorPtr = std::unique_ptr<bellri_tensor, TensorDeleter>;
using ModelPtr = std::unique_ptr<bellri_lhv_model, ModelDeleter>;

StatePtr load_state(const std::string& spec) {
  bellri_state* raw = nullptr;
  check(bellri_state_parse(spec.c_str(), &raw));
  return StatePtr(raw);
}

TensorPtr tensor_of(const bellri_state* state) {
  bellri_tensor* raw = nullptr;
  check(bellri_tensor_compute(state, &raw));
  return TensorPtr(raw);
}

bellri_format c_format(OutputFormat f) {
  return f == OutputFormat::kJson ? BELLRI_FORMAT_JSON : BELLRI_FORMAT_CSV;
}

// Two-pass call of a C serializer: size query, then fill.
template <typename F>
std::string serialize(F&& fn) {
  size_t len = 0;
  const bellri_status probe = fn(nullptr, 0, &len);
  if (probe != BELLRI_OK && probe != BELLRI_ERR_BUFFER_TOO_SMALL) check(probe);
  std::vector<char> buf(len + 1);
  check(fn(buf.data(), buf.size(), &len));
  return std::string(buf.data(), len);
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output == bellri::cli::kStdout) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw bellri::cli::ConfigError("cannot open output file '" + cfg.output + "'");
  out << payload;
}

std::string shortest(double x) {
  return nlohmann::json(x).dump();
}

int cmd_tensor(const RunConfig& cfg, const std::string& state_spec) {
  const StatePtr state = load_state(state_spec);
  const TensorPtr t = tensor_of(state.get());
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_tensor_serialize(t.get(), c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_criterion(const RunConfig& cfg, const std::string& state_spec) {
  const StatePtr state = load_state(state_spec);
  const TensorPtr t = tensor_of(state.get());
  bellri_criterion_report report{};
  check(bellri_criterion_evaluate(t.get(), &report));
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_criterion_serialize(&report, c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_bound(const RunConfig& cfg, const std::string& state_spec) {
  const StatePtr state = load_state(state_spec);
  const TensorPtr t = tensor_of(state.get());
  bellri_bound_report report{};
  check(bellri_bound_check(t.get(), cfg.quad_theta, cfg.quad_phi, &report));
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_bound_serialize(&report, c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_tmax(const RunConfig& cfg, const std::string& state_spec) {
  const StatePtr state = load_state(state_spec);
  const TensorPtr t = tensor_of(state.get());
  double svd = 0.0, grid = 0.0;
  check(bellri_tensor_max_svd(t.get(), &svd));
  check(bellri_tensor_max_grid(t.get(), cfg.grid_theta, cfg.grid_phi, &grid));
  if (cfg.format == OutputFormat::kJson) {
    const nlohmann::json j = {{"svd", svd},
                              {"grid", grid},
                              {"n_theta", cfg.grid_theta},
                              {"n_phi", cfg.grid_phi}};
    emit(cfg, j.dump() + "\n");
  } else {
    emit(cfg, "svd,grid,n_theta,n_phi\n" + shortest(svd) + "," +
                  shortest(grid) + "," + std::to_string(cfg.grid_theta) + "," +
                  std::to_string(cfg.grid_phi) + "\n");
  }
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg, const std::string& pure_spec,
                  const std::string& noise_spec) {
  const StatePtr pure = load_state(pure_spec);
  const StatePtr noise = load_state(noise_spec);
  bellri_threshold result{};
  check(bellri_critical_visibility(pure.get(), noise.get(), cfg.tol, &result));
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_threshold_serialize(&result, c_format(cfg.format), b, c, l);
       }));
  if (!result.found) {
    std::cerr << "no-violation: criterion holds for every visibility in [0, 1]\n";
    return kExitSentinel;
  }
  return kExitOk;
}

int cmd_chsh(const RunConfig& cfg, const std::string& state_spec,
             const std::string& plane) {
  if (plane.size() != 2 || plane[0] < '1' || plane[0] > '3' || plane[1] < '1' ||
      plane[1] > '3')
    throw ApiFailure{BELLRI_ERR_DOMAIN,
                     "plane must be two axis digits, e.g. 12, 23 or 13"};
  const StatePtr state = load_state(state_spec);
  const TensorPtr t = tensor_of(state.get());
  bellri_chsh_report report{};
  check(bellri_chsh_evaluate(t.get(), plane[0] - '0', plane[1] - '0', &report));
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_chsh_serialize(&report, c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_lhv(const RunConfig& cfg, double v, int i, int j) {
  bellri_lhv_model* raw = nullptr;
  check(bellri_lhv_model_create(v, nullptr, nullptr, &raw));
  const ModelPtr model(raw);
  bellri_mc_report report{};
  check(bellri_lhv_estimate(model.get(), i, j, cfg.samples, cfg.seed, &report));
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_mc_serialize(&report, c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, const std::string& pure_spec,
             const std::string& noise_spec, double v_min, double v_max,
             std::size_t steps) {
  const StatePtr pure = load_state(pure_spec);
  const StatePtr noise = load_state(noise_spec);
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_scan_serialize(pure.get(), noise.get(), v_min, v_max,
                                      steps, c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, double v_min, double v_max,
              std::size_t steps) {
  emit(cfg, serialize([&](char* b, size_t c, size_t* l) {
         return bellri_sweep_serialize(v_min, v_max, steps,
                                       c_format(cfg.format), b, c, l);
       }));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellri: correlation tensors, rotationally invariant Bell "
               "criterion, CHSH sets and two-setting LHV models"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand name.
  app.fallthrough();

  std::optional<std::string> config_path;
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path,
                 std::string("key=value config file (default: $") +
                     bellri::cli::kConfigEnvVar + ")");
  app.add_option("--format", format, "Output format: json or csv");
  app.add_option("--output,-o", output, "Output path ('-' for stdout)");
  app.add_option("--seed", seed, "Random seed");

  std::string state = "singlet";
  std::string pure = "singlet";
  std::string noise = "white";
  std::string plane = "12";
  std::optional<double> tol;
  std::optional<std::size_t> quad_theta, quad_phi, grid_theta, grid_phi;
  std::optional<std::uint64_t> samples;
  double v = 0.0;
  int axis_i = 1, axis_j = 1;
  double v_min = 0.0, v_max = 1.0;
  std::size_t steps = 101;

  auto* tensor = app.add_subcommand("tensor", "Correlation tensor of a state");
  tensor->add_option("--state", state, "singlet | white | werner:<v> | file:<path>")
      ->required();

  auto* criterion = app.add_subcommand(
      "criterion", "Rotationally invariant criterion sum T^2 <= (3/2)^2 T_max");
  criterion->add_option("--state", state, "State spec")->required();

  auto* bound = app.add_subcommand(
      "bound", "(E,E) <= (2 pi)^2 T_max with (E,E) by sphere quadrature");
  bound->add_option("--state", state, "State spec")->required();
  bound->add_option("--quad-theta", quad_theta, "Gauss-Legendre nodes per sphere");
  bound->add_option("--quad-phi", quad_phi, "Azimuthal nodes per sphere");

  auto* tmax = app.add_subcommand("tmax", "T_max by SVD and by direction grid");
  tmax->add_option("--state", state, "State spec")->required();
  tmax->add_option("--grid-theta", grid_theta, "Polar grid points per observer");
  tmax->add_option("--grid-phi", grid_phi, "Azimuthal grid points per observer");

  auto* threshold = app.add_subcommand(
      "threshold", "Critical visibility of pure/noise mixtures");
  threshold->add_option("--pure", pure, "State spec of the pure component");
  threshold->add_option("--noise", noise, "State spec of the noise component");
  threshold->add_option("--tol", tol, "Bisection tolerance");

  auto* chsh = app.add_subcommand("chsh", "The four CHSH magnitudes on a plane");
  chsh->add_option("--state", state, "State spec")->required();
  chsh->add_option("--plane", plane, "Axis pair: 12, 23 or 13");

  auto* lhv = app.add_subcommand(
      "lhv", "Monte Carlo correlation of the two-setting LHV model");
  lhv->add_option("--v", v, "Visibility")->required();
  lhv->add_option("--i", axis_i, "Axis of observer 1 (1..3)");
  lhv->add_option("--j", axis_j, "Axis of observer 2 (1..3)");
  lhv->add_option("--n", samples, "Number of samples (>= 1000)");

  auto* scan = app.add_subcommand(
      "scan", "Criterion over a visibility range of pure/noise mixtures");
  scan->add_option("--pure", pure, "State spec of the pure component");
  scan->add_option("--noise", noise, "State spec of the noise component");
  scan->add_option("--v-min", v_min, "First visibility");
  scan->add_option("--v-max", v_max, "Last visibility");
  scan->add_option("--steps", steps, "Number of points");

  auto* sweep = app.add_subcommand(
      "sweep", "Consistency verdicts of glued two-setting models (CSV)");
  sweep->add_option("--v-min", v_min, "First visibility");
  sweep->add_option("--v-max", v_max, "Last visibility");
  sweep->add_option("--steps", steps, "Number of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  RunConfig cfg;
  try {
    if (!config_path) {
      if (const char* env = std::getenv(bellri::cli::kConfigEnvVar); env && *env)
        config_path = env;
    }
    if (config_path) cfg = bellri::cli::load_config_file(*config_path);
    if (format) cfg.format = bellri::cli::parse_format(*format);
    if (output) cfg.output = *output;
    if (seed) cfg.seed = *seed;
    if (tol) cfg.tol = *tol;
    if (quad_theta) cfg.quad_theta = *quad_theta;
    if (quad_phi) cfg.quad_phi = *quad_phi;
    if (grid_theta) cfg.grid_theta = *grid_theta;
    if (grid_phi) cfg.grid_phi = *grid_phi;
    if (samples) cfg.samples = *samples;
    cfg.validate();

    if (*tensor) return cmd_tensor(cfg, state);
    if (*criterion) return cmd_criterion(cfg, state);
    if (*bound) return cmd_bound(cfg, state);
    if (*tmax) return cmd_tmax(cfg, state);
    if (*threshold) return cmd_threshold(cfg, pure, noise);
    if (*chsh) return cmd_chsh(cfg, state, plane);
    if (*lhv) return cmd_lhv(cfg, v, axis_i, axis_j);
    if (*scan) return cmd_scan(cfg, pure, noise, v_min, v_max, steps);
    if (*sweep) return cmd_sweep(cfg, v_min, v_max, steps);
  } catch (const bellri::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << bellri_status_string(e.status) << ": "
              << e.message << "\n";
    return e.status == BELLRI_ERR_INTERNAL ? kExitInternal : kExitInvalid;
  }
  return kExitInvalid;
}
