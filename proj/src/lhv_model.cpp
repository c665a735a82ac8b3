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

#include "bellri/lhv_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "bellri/bell_criteria.hpp"
#include "bellri/errors.hpp"
#include "bellri/random.hpp"

namespace bellri {

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3)
    throw DomainError("axis index must be 1, 2 or 3, got " +
                      std::to_string(axis));
}

struct AxisOutcome {
  int a;
  int b;
};

AxisOutcome draw_axis(std::uint64_t sample_seed, int axis,
                      double flip_probability) {
  SplitMix64 rng(SplitMix64::split(sample_seed, static_cast<std::uint64_t>(axis)));
  const int a = (rng() >> 63) != 0 ? 1 : -1;
  const bool flip = rng.uniform() < flip_probability;
  return {a, flip ? -a : a};
}

// Index of the local axis that n matches up to sign, with the sign.
std::optional<std::pair<int, int>> match_axis(const LhvTwoSettingModel& model,
                                              int observer,
                                              const UnitVector3& n) {
  for (int i = 1; i <= 3; ++i) {
    const Eigen::Vector3d& e = model.axis(observer, i).vec();
    if ((n.vec() - e).norm() <= kVectorEqualityTolerance) return {{i, 1}};
    if ((n.vec() + e).norm() <= kVectorEqualityTolerance) return {{i, -1}};
  }
  return std::nullopt;
}

}  // namespace

LhvTwoSettingModel::LhvTwoSettingModel(Visibility v, LocalRotationPair frames)
    : v_(v),
      frames_(std::move(frames)),
      flip_probability_(0.5 * (1.0 + v.value())) {}

UnitVector3 LhvTwoSettingModel::axis(int observer, int axis) const {
  check_axis(axis);
  if (observer != 1 && observer != 2)
    throw DomainError("observer must be 1 or 2");
  const Eigen::Matrix3d& r = observer == 1 ? frames_.r1() : frames_.r2();
  return UnitVector3::normalized(r.col(axis - 1));
}

double LhvTwoSettingModel::exact_correlation(int i, int j) const {
  check_axis(i);
  check_axis(j);
  if (i != j) return 0.0;  // a_i is independent of (a_j, f_j)
  return (1.0 - flip_probability_) - flip_probability_;
}

CorrelationTensor LhvTwoSettingModel::exact_tensor() const {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = exact_correlation(i + 1, j + 1);
  return CorrelationTensor(t);
}

std::optional<double> LhvTwoSettingModel::correlation_at(
    const UnitVector3& n1, const UnitVector3& n2) const {
  const auto m1 = match_axis(*this, 1, n1);
  const auto m2 = match_axis(*this, 2, n2);
  if (!m1 || !m2) return std::nullopt;
  return m1->second * m2->second * exact_correlation(m1->first, m2->first);
}

LhvTwoSettingModel build_model(Visibility v, const LocalRotationPair& frames) {
  return LhvTwoSettingModel(v, frames);
}

LhvSample sample(const LhvTwoSettingModel& model, std::uint64_t seed) {
  LhvSample s;
  for (int i = 0; i < 3; ++i) {
    const AxisOutcome o = draw_axis(seed, i + 1, model.flip_probability());
    s.a[static_cast<std::size_t>(i)] = o.a;
    s.b[static_cast<std::size_t>(i)] = o.b;
  }
  return s;
}

McEstimate estimate_correlation(const LhvTwoSettingModel& model, int i, int j,
                                std::uint64_t n, std::uint64_t seed) {
  check_axis(i);
  check_axis(j);
  if (n < kMinMonteCarloSamples)
    throw DomainError("Monte Carlo estimate needs at least " +
                      std::to_string(kMinMonteCarloSamples) + " samples");

  const double p = model.flip_probability();
  auto chunk_sum = [&](std::uint64_t begin, std::uint64_t end) {
    std::int64_t sum = 0;
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t s = SplitMix64::split(seed, k);
      const int a = draw_axis(s, i, p).a;
      const int b = draw_axis(s, j, p).b;
      sum += a * b;
    }
    return sum;
  };

  const std::uint64_t workers = std::clamp<std::uint64_t>(
      std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::int64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(n, w * chunk);
      const std::uint64_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[w] = chunk_sum(begin, end); });
    }
  }
  std::int64_t sum = 0;
  for (std::int64_t s : partial) sum += s;

  // Every product is +-1, so sum of squares is n.
  const double dn = static_cast<double>(n);
  McEstimate est;
  est.n_samples = n;
  est.mean = static_cast<double>(sum) / dn;
  const double variance =
      std::max(0.0, (dn - dn * est.mean * est.mean) / (dn - 1.0));
  est.std_error = std::sqrt(variance / dn);
  return est;
}

double target_correlation(const LhvTwoSettingModel& model, int i, int j) {
  check_axis(i);
  check_axis(j);
  return i == j ? -model.visibility().value() : 0.0;
}

bool within_five_sigma(const McEstimate& est, double target) {
  return std::abs(est.mean - target) <= 5.0 * est.std_error;
}

std::optional<double> piecewise_correlation(Visibility v, const UnitVector3& n1,
                                            const UnitVector3& n2) {
  if ((n1.vec() - n2.vec()).norm() <= kVectorEqualityTolerance)
    return -v.value();
  if (std::abs(n1.vec().dot(n2.vec())) <= kVectorEqualityTolerance) return 0.0;
  return std::nullopt;
}

ConsistencyVerdict consistency_verdict(Visibility v) {
  const CriterionReport report =
      evaluate_ri_criterion(compute_tensor(make_werner(v)));
  ConsistencyVerdict verdict;
  verdict.v = v;
  verdict.criterion_margin = report.margin;
  verdict.consistent = !report.violated;
  verdict.reason = report.violated ? VerdictReason::kRiCriterionViolated
                                   : VerdictReason::kConsistentAtVisibility;
  return verdict;
}

std::vector<ConsistencyVerdict> consistency_sweep(double v_min, double v_max,
                                                  std::size_t steps) {
  std::vector<ConsistencyVerdict> out;
  for (double v : linspace(v_min, v_max, steps))
    out.push_back(consistency_verdict(Visibility(v)));
  return out;
}

const char* to_string(VerdictReason reason) noexcept {
  switch (reason) {
    case VerdictReason::kConsistentAtVisibility:
      return "consistent-at-this-visibility";
    case VerdictReason::kRiCriterionViolated:
      return "ri-criterion-violated";
  }
  return "unknown";
}

}  // namespace bellri
