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

#include "bellri/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellri/errors.hpp"

namespace bellri {

namespace {

struct LegendreValue {
  double p;   // P_n(z)
  double dp;  // P_n'(z)
};

LegendreValue legendre(std::size_t n, double z) {
  double p1 = 1.0, p2 = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double dj = static_cast<double>(j);
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
  }
  return {p1, static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const double dn = static_cast<double>(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 1; i <= half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) /
                        (dn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const LegendreValue l = legendre(n, z);
      const double z_prev = z;
      z = z_prev - l.p / l.dp;
      if (std::abs(z - z_prev) <= 1e-15) break;
    }
    if (n % 2 == 1 && i == half) z = 0.0;
    const double dp = legendre(n, z).dp;
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

std::vector<SphereNode> sphere_product_rule(std::size_t n_theta,
                                            std::size_t n_phi) {
  if (n_phi == 0) throw DomainError("azimuthal rule needs at least one node");
  const GaussLegendreRule gl = gauss_legendre(n_theta);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);

  std::vector<SphereNode> out;
  out.reserve(n_theta * n_phi);
  for (std::size_t k = 0; k < n_theta; ++k) {
    const double c = gl.nodes[k];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (std::size_t l = 0; l < n_phi; ++l) {
      const double phi = dphi * static_cast<double>(l);
      out.push_back({Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), c),
                     gl.weights[k] * dphi});
    }
  }
  return out;
}

}  // namespace bellri
