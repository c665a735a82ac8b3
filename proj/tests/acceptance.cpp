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

// Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
// budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bellri/bell_criteria.hpp"
#include "bellri/bellri.h"
#include "bellri/correlation_tensor.hpp"
#include "bellri/lhv_model.hpp"
#include "bellri/quantum_state.hpp"
#include "oracles.hpp"

namespace {

using namespace bellri;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

Outcome werner_tensor() {
  double worst = 0.0;
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Eigen::Matrix3d t = compute_tensor(make_werner(Visibility(v))).matrix();
    const Eigen::Matrix3d expected = Eigen::Matrix3d::Identity() * -v;
    worst = std::max(worst, (t - expected).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max deviation " + sci(worst)};
}

Outcome criterion_threshold() {
  const ThresholdResult r = critical_visibility(make_singlet(), make_white_noise(), 1e-9);
  const CriterionReport report = evaluate_ri_criterion(CorrelationTensor::zero());
  const bool constant_ok =
      std::abs(report.comparison_thresholds.second - 0.8105694691387023) <= 1e-15 &&
      report.comparison_thresholds.first == 0.75;
  const bool ok = r.found() && std::abs(r.visibility - 0.75) <= 1e-9 && constant_ok;
  char buf[128];
  std::snprintf(buf, sizeof buf, "V_c = %.12f in %d steps, prior %.5f", r.visibility,
                r.steps, report.comparison_thresholds.second);
  return {ok, buf};
}

Outcome tmax_agreement() {
  double worst = 0.0;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const CorrelationTensor t(testing::random_tensor(s));
    worst = std::max(worst, std::abs(tensor_max_svd(t) - tensor_max_grid(t, 200, 400)));
  }
  double werner_worst = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double v = k / 20.0;
    werner_worst = std::max(
        werner_worst, std::abs(tensor_max_svd(compute_tensor(make_werner(Visibility(v)))) - v));
  }
  return {worst <= 2e-3 && werner_worst <= 1e-12,
          "max |svd - grid| " + sci(worst) + ", Werner " +
              sci(werner_worst)};
}

Outcome quadrature_identity() {
  const double factor = std::pow(4.0 * std::numbers::pi / 3.0, 2);
  double worst = 0.0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const CorrelationTensor t(testing::random_tensor(1000 + s));
    const double closed = factor * frobenius_sum(t);
    const double quad = inner_product_ee(t, QuadratureSpec(8, 16));
    worst = std::max(worst, std::abs(quad - closed) / closed);
  }
  return {worst <= 1e-8, "max relative error " + sci(worst)};
}

Outcome criterion_bound_equivalence() {
  int mismatches = 0;
  for (int k = 0; k <= 20; ++k) {
    const CorrelationTensor t = compute_tensor(make_werner(Visibility(k / 20.0)));
    const bool violated = evaluate_ri_criterion(t).violated;
    const bool bound_violated = !ri_bound_check(t, QuadratureSpec(8, 16)).satisfied;
    if (violated != bound_violated) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 21 points"};
}

Outcome chsh_compliance() {
  double worst = 0.0, largest = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double v = k / 10.0;
    const CorrelationTensor t = compute_tensor(make_werner(Visibility(v)));
    for (auto [a, b] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
      const ChshReport r = chsh_complete_set(t, ChshPlane(a, b));
      const double expected[4] = {2 * v, 2 * v, 0.0, 0.0};
      for (int m = 0; m < 4; ++m) {
        worst = std::max(worst, std::abs(r.values[m] - expected[m]));
        largest = std::max(largest, r.values[m]);
      }
    }
  }
  return {worst <= 1e-12 && largest <= 2.0,
          "max deviation " + sci(worst) + ", max value " + sci(largest)};
}

Outcome lhv_monte_carlo() {
  const LhvTwoSettingModel model =
      build_model(Visibility(0.75), LocalRotationPair::identity());
  int matched = 0, mismatched = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const McEstimate m = estimate_correlation(model, 1, 1, 1000000, seed);
    if (within_five_sigma(m, -0.75)) ++matched;
    const McEstimate x = estimate_correlation(model, 1, 2, 1000000, seed);
    if (within_five_sigma(x, 0.0)) ++mismatched;
  }
  return {matched >= 19 && mismatched >= 19,
          "matched " + std::to_string(matched) + "/20, mismatched " +
              std::to_string(mismatched) + "/20"};
}

Outcome invariance_suite() {
  double worst = 0.0;
  int verdict_changes = 0;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const CorrelationTensor t(testing::random_tensor(2000 + s));
    const CorrelationTensor r = rotate_tensor(t, random_rotation_pair(s));
    worst = std::max(worst, std::abs(frobenius_sum(r) - frobenius_sum(t)));
    if (evaluate_ri_criterion(r).violated != evaluate_ri_criterion(t).violated)
      ++verdict_changes;
  }
  int uu_failures = 0;
  const DensityMatrix werner = make_werner(Visibility(0.8));
  for (std::uint64_t s = 1; s <= 100; ++s)
    if (!check_uu_invariance(werner, random_unitary_2x2(s), 1e-10)) ++uu_failures;
  return {worst <= 1e-10 && verdict_changes == 0 && uu_failures == 0,
          "Frobenius drift " + sci(worst) + ", verdict changes " +
              std::to_string(verdict_changes) + ", UU failures " +
              std::to_string(uu_failures)};
}

Outcome consistency_sweep_transition() {
  // Same path as the CLI sweep command: the C API CSV emitter.
  size_t len = 0;
  bellri_sweep_serialize(0.0, 1.0, 101, BELLRI_FORMAT_CSV, nullptr, 0, &len);
  std::string csv(len + 1, '\0');
  if (bellri_sweep_serialize(0.0, 1.0, 101, BELLRI_FORMAT_CSV, csv.data(), csv.size(),
                             &len) != BELLRI_OK)
    return {false, bellri_last_error()};
  csv.resize(len);

  std::istringstream lines(csv);
  std::string line, prev_v, prev_flag, transition;
  std::getline(lines, line);
  int rows = 0, transitions = 0;
  while (std::getline(lines, line)) {
    const std::string v = line.substr(0, line.find(','));
    const std::string flag = line.substr(line.rfind(',') + 1);
    if (rows > 0 && flag != prev_flag) {
      ++transitions;
      if (prev_flag == "true") transition = prev_v + " -> " + v;
    }
    prev_v = v;
    prev_flag = flag;
    ++rows;
  }
  const bool ok = rows == 101 && transitions == 1 && transition == "0.75 -> 0.76";
  return {ok, std::to_string(rows) + " rows, " + std::to_string(transitions) +
                  " transition(s) at " + transition};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Werner tensor", 1.0, werner_tensor},
      {2, "criterion threshold", 1.0, criterion_threshold},
      {3, "T_max agreement", 30.0, tmax_agreement},
      {4, "quadrature identity", 10.0, quadrature_identity},
      {5, "criterion/bound equivalence", 10.0, criterion_bound_equivalence},
      {6, "CHSH compliance", 1.0, chsh_compliance},
      {7, "LHV Monte Carlo", 60.0, lhv_monte_carlo},
      {8, "invariance suite", 30.0, invariance_suite},
      {9, "consistency sweep", 5.0, consistency_sweep_transition},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d. %s: %s (%.3f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : ", over budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
