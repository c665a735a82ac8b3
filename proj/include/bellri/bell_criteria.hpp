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

// Bell-type tests on a correlation tensor.
//
// The rotationally invariant criterion compares the Frobenius sum of T with
// (3/2)^2 T_max, T_max being the largest singular value. The same test can
// be phrased through integrals over both observers' spheres:
//   (E, E) = (4 pi / 3)^2 sum T^2   versus   (2 pi)^2 T_max,
// and ri_bound_check evaluates (E, E) by quadrature as an independent route.
//
// Lhs/rhs/margin conventions: margin = lhs - rhs, except that a difference
// within the comparison slack is reported as exactly zero, so that the
// boolean verdict and the sign of the margin always agree.

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "bellri/correlation_tensor.hpp"
#include "bellri/quantum_state.hpp"

namespace bellri {

inline constexpr double kEqualitySlack = 1e-12;
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kCriterionFactor = 2.25;  // (3/2)^2
inline constexpr double kChshBound = 2.0;

/// Critical visibility of the rotationally invariant criterion for the
/// noisy singlet.
inline constexpr double kThresholdThisWork = 0.75;
/// 2 (2/pi)^2, the earlier two-qubit threshold reported for comparison.
inline constexpr double kThresholdPrior =
    2.0 * (2.0 / std::numbers::pi) * (2.0 / std::numbers::pi);

struct CriterionReport {
  double lhs = 0.0;  // frobenius_sum(T)
  double rhs = 0.0;  // 2.25 * T_max
  bool violated = false;
  double margin = 0.0;
  std::pair<double, double> comparison_thresholds{kThresholdThisWork,
                                                  kThresholdPrior};
};

CriterionReport evaluate_ri_criterion(const CorrelationTensor& t);

/// Pair of 1-based local axes spanning a CHSH plane: (1,2), (2,3) or (1,3).
struct ChshPlane {
  /// Accepts the pair in either order; throws DomainError otherwise.
  ChshPlane(int a, int b);

  int a;
  int b;
};

struct ChshReport {
  ChshPlane plane{1, 2};
  std::array<double, 4> values{};
  double bound = kChshBound;
  double max_value = 0.0;
  bool satisfied = true;
};

/// The four CHSH magnitudes on axes (a, b) = plane, in the order
///   |T_aa - T_ab + T_ba + T_bb|, |T_aa + T_ab - T_ba + T_bb|,
///   |T_aa + T_ab + T_ba - T_bb|, |T_aa - T_ab - T_ba - T_bb|.
/// The other four sign patterns are these up to an overall sign (negating
/// one column of the 2x2 block), so they add nothing.
ChshReport chsh_complete_set(const CorrelationTensor& t, ChshPlane plane);

struct QuadratureSpec {
  /// Throws DomainError unless n_theta >= 4 and n_phi >= 8.
  QuadratureSpec(std::size_t n_theta, std::size_t n_phi);

  std::size_t n_nodes_theta;
  std::size_t n_nodes_phi;
};

/// Integral over both spheres of (n1^T T n2)^2 with the sin(theta) measure,
/// by a product Gauss-Legendre / trapezoid rule on each sphere. The
/// integrand has degree 2 on each sphere, so the rule is exact once
/// n_theta >= 2 and n_phi >= 3. Summation order is fixed.
double inner_product_ee(const CorrelationTensor& t, const QuadratureSpec& q);

struct BoundReport {
  double lhs = 0.0;  // (E, E) by quadrature
  double rhs = 0.0;  // (2 pi)^2 T_max
  bool satisfied = true;
  double margin = 0.0;
};

/// (E, E) <= (2 pi)^2 T_max, i.e. whether E itself could be the
/// rotationally invariant local realistic correlation. Satisfied within
/// kBoundSlack.
BoundReport ri_bound_check(const CorrelationTensor& t, const QuadratureSpec& q);

struct ThresholdResult {
  enum class Outcome { kThreshold, kNoViolation };

  Outcome outcome = Outcome::kNoViolation;
  double visibility = 0.0;  // meaningful only for kThreshold
  int steps = 0;            // bisection steps taken

  bool found() const noexcept { return outcome == Outcome::kThreshold; }
};

/// Smallest V at which V * pure + (1 - V) * noise violates the criterion,
/// located by bisection on [0, 1] to within `tol`. Returns kNoViolation when
/// even V = 1 satisfies it. Throws DomainError if tol <= 0 or if V = 0
/// already violates.
ThresholdResult critical_visibility(const DensityMatrix& pure,
                                    const DensityMatrix& noise, double tol);

struct ScanRow {
  double v;
  CriterionReport report;
};

/// Criterion evaluated at `steps` evenly spaced visibilities in
/// [v_min, v_max]; v_k = v_min + k (v_max - v_min) / (steps - 1).
std::vector<ScanRow> visibility_scan(const DensityMatrix& pure,
                                     const DensityMatrix& noise, double v_min,
                                     double v_max, std::size_t steps);

/// Evenly spaced points with v_k computed as a single rounding of
/// (v_min (n-1-k) + v_max k) / (n-1), so 0..1 in 101 steps hits k/100 exactly.
std::vector<double> linspace(double v_min, double v_max, std::size_t steps);

}  // namespace bellri
