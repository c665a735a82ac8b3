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

#pragma once

// Explicit local hidden variable model for the noisy singlet restricted to
// three orthogonal settings per observer.
//
// The hidden variable is lambda = (a1, a2, a3, f1, f2, f3): a_i are fair
// +-1 coins giving observer 1's answers along its local axis i, and each
// f_i is an independent flip event with probability p = (1 + V) / 2.
// Observer 2 answers b_i = -a_i when f_i occurs and +a_i otherwise. Then
//   <a_i b_i> = (1 - p) - p = -V,   <a_i b_j> = <a_i><b_j> = 0 (i != j),
// which matches the Werner correlation tensor on the model's own axes and
// satisfies every CHSH inequality built from them.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellri/correlation_tensor.hpp"
#include "bellri/quantum_state.hpp"

namespace bellri {

inline constexpr double kVectorEqualityTolerance = 1e-9;
inline constexpr std::uint64_t kMinMonteCarloSamples = 1000;

class LhvTwoSettingModel {
 public:
  LhvTwoSettingModel(Visibility v, LocalRotationPair frames);

  Visibility visibility() const noexcept { return v_; }
  const LocalRotationPair& frame_pair() const noexcept { return frames_; }
  double flip_probability() const noexcept { return flip_probability_; }

  /// Unit vector of 1-based local axis `axis` for `observer` (1 or 2): the
  /// corresponding column of the observer's frame rotation.
  UnitVector3 axis(int observer, int axis) const;

  /// Exact <a_i b_j> from the construction's probabilities.
  double exact_correlation(int i, int j) const;

  /// The nine exact correlations as a tensor in the model's own axes.
  CorrelationTensor exact_tensor() const;

  /// Correlation for measurement directions given in the laboratory frame.
  /// Defined only when n1 is +-(axis i of observer 1) and n2 is
  /// +-(axis j of observer 2) within kVectorEqualityTolerance.
  std::optional<double> correlation_at(const UnitVector3& n1,
                                       const UnitVector3& n2) const;

 private:
  Visibility v_;
  LocalRotationPair frames_;
  double flip_probability_;
};

LhvTwoSettingModel build_model(Visibility v, const LocalRotationPair& frames);

struct LhvSample {
  std::array<int, 3> a{};  // observer 1 along axes 1..3
  std::array<int, 3> b{};  // observer 2 along axes 1..3
};

/// One draw of the hidden variable. Axis i consumes its own sub-stream
/// SplitMix64::split(seed, i), so a sample is a pure function of its seed.
LhvSample sample(const LhvTwoSettingModel& model, std::uint64_t seed);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n_samples = 0;
};

/// Monte Carlo mean of a_i * b_j over n samples; sample k uses seed
/// SplitMix64::split(seed, k). The reduction is an integer count, so the
/// result does not depend on the number of worker threads. Throws
/// DomainError when n < kMinMonteCarloSamples or an axis is not 1..3.
McEstimate estimate_correlation(const LhvTwoSettingModel& model, int i, int j,
                                std::uint64_t n, std::uint64_t seed);

/// -V for i == j, 0 otherwise.
double target_correlation(const LhvTwoSettingModel& model, int i, int j);

/// |mean - target| <= 5 * std_error.
bool within_five_sigma(const McEstimate& est, double target);

/// -v when n1 == n2, 0 when n1 . n2 == 0 (both within
/// kVectorEqualityTolerance), nullopt for every other pair. These are the
/// only cases pinned down by transporting the model with U (x) U.
std::optional<double> piecewise_correlation(Visibility v, const UnitVector3& n1,
                                            const UnitVector3& n2);

enum class VerdictReason {
  kConsistentAtVisibility,
  kRiCriterionViolated,
};

/// Whether two-setting models glued over all U (x) U frames can be
/// consistent with a single rotationally invariant local realistic model.
/// Decided by the rotationally invariant criterion on the Werner tensor.
struct ConsistencyVerdict {
  Visibility v{0.0};
  double criterion_margin = 0.0;
  bool consistent = true;
  VerdictReason reason = VerdictReason::kConsistentAtVisibility;
};

ConsistencyVerdict consistency_verdict(Visibility v);

/// consistency_verdict at linspace(v_min, v_max, steps).
std::vector<ConsistencyVerdict> consistency_sweep(double v_min, double v_max,
                                                  std::size_t steps);

const char* to_string(VerdictReason reason) noexcept;

}  // namespace bellri
