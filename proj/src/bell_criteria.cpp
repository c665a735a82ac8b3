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

#include "bellri/bell_criteria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bellri/errors.hpp"
#include "bellri/quadrature.hpp"

namespace bellri {

namespace {

// Differences in (0, slack] count as equality.
double snapped_margin(double diff, double slack) {
  return (diff > 0.0 && diff <= slack) ? 0.0 : diff;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> node_matrix(
    const std::vector<SphereNode>& nodes, Eigen::VectorXd& weights) {
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, nodes.size());
  weights.resize(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    m.col(static_cast<Eigen::Index>(k)) = nodes[k].direction;
    weights(static_cast<Eigen::Index>(k)) = nodes[k].weight;
  }
  return m;
}

bool violates_at(double v, const DensityMatrix& pure,
                 const DensityMatrix& noise) {
  return evaluate_ri_criterion(compute_tensor(mix_states(v, pure, noise)))
      .violated;
}

}  // namespace

CriterionReport evaluate_ri_criterion(const CorrelationTensor& t) {
  CriterionReport r;
  r.lhs = frobenius_sum(t);
  r.rhs = kCriterionFactor * tensor_max_svd(t);
  r.violated = r.lhs > r.rhs + kEqualitySlack;
  r.margin = snapped_margin(r.lhs - r.rhs, kEqualitySlack);
  return r;
}

ChshPlane::ChshPlane(int first, int second)
    : a(std::min(first, second)), b(std::max(first, second)) {
  const bool ok = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 1 && b == 3);
  if (!ok)
    throw DomainError("CHSH plane must be one of (1,2), (2,3), (1,3); got (" +
                      std::to_string(first) + "," + std::to_string(second) +
                      ")");
}

ChshReport chsh_complete_set(const CorrelationTensor& t, ChshPlane plane) {
  const int i = plane.a - 1;
  const int j = plane.b - 1;
  const double taa = t(i, i), tab = t(i, j), tba = t(j, i), tbb = t(j, j);

  ChshReport r;
  r.plane = plane;
  r.values = {std::abs(taa - tab + tba + tbb), std::abs(taa + tab - tba + tbb),
              std::abs(taa + tab + tba - tbb), std::abs(taa - tab - tba - tbb)};
  r.max_value = *std::max_element(r.values.begin(), r.values.end());
  r.satisfied = r.max_value <= r.bound + kEqualitySlack;
  return r;
}

QuadratureSpec::QuadratureSpec(std::size_t n_theta, std::size_t n_phi)
    : n_nodes_theta(n_theta), n_nodes_phi(n_phi) {
  if (n_theta < 4 || n_phi < 8)
    throw DomainError("quadrature needs n_theta >= 4 and n_phi >= 8");
}

double inner_product_ee(const CorrelationTensor& t, const QuadratureSpec& q) {
  const std::vector<SphereNode> nodes =
      sphere_product_rule(q.n_nodes_theta, q.n_nodes_phi);
  Eigen::VectorXd w;
  const auto dirs = node_matrix(nodes, w);

  // values(a, b) = E(n_a, n_b) = n_a^T T n_b for every node pair.
  const Eigen::MatrixXd values = dirs.transpose() * t.matrix() * dirs;
  double total = 0.0;
  for (Eigen::Index a = 0; a < values.rows(); ++a) {
    double row = 0.0;
    for (Eigen::Index b = 0; b < values.cols(); ++b)
      row += w(b) * values(a, b) * values(a, b);
    total += w(a) * row;
  }
  return total;
}

BoundReport ri_bound_check(const CorrelationTensor& t, const QuadratureSpec& q) {
  constexpr double kFourPiSquared = 4.0 * std::numbers::pi * std::numbers::pi;
  BoundReport r;
  r.lhs = inner_product_ee(t, q);
  r.rhs = kFourPiSquared * tensor_max_svd(t);
  r.satisfied = r.lhs <= r.rhs + kBoundSlack;
  r.margin = snapped_margin(r.lhs - r.rhs, kBoundSlack);
  return r;
}

ThresholdResult critical_visibility(const DensityMatrix& pure,
                                    const DensityMatrix& noise, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (violates_at(0.0, pure, noise))
    throw DomainError("criterion is already violated at zero visibility");

  ThresholdResult result;
  if (!violates_at(1.0, pure, noise)) return result;

  // Invariant: satisfied at lo, violated at hi.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (violates_at(mid, pure, noise))
      hi = mid;
    else
      lo = mid;
    ++result.steps;
  }
  result.outcome = ThresholdResult::Outcome::kThreshold;
  result.visibility = 0.5 * (lo + hi);
  return result;
}

std::vector<double> linspace(double v_min, double v_max, std::size_t steps) {
  if (steps == 0) throw DomainError("scan needs at least one step");
  if (steps == 1) return {v_min};
  std::vector<double> out(steps);
  const double den = static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double dk = static_cast<double>(k);
    out[k] = (v_min * (den - dk) + v_max * dk) / den;
  }
  return out;
}

std::vector<ScanRow> visibility_scan(const DensityMatrix& pure,
                                     const DensityMatrix& noise, double v_min,
                                     double v_max, std::size_t steps) {
  std::vector<ScanRow> rows;
  for (double v : linspace(v_min, v_max, steps)) {
    rows.push_back(
        {v, evaluate_ri_criterion(compute_tensor(mix_states(v, pure, noise)))});
  }
  return rows;
}

}  // namespace bellri
