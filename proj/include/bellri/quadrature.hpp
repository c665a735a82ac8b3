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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace bellri {

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
/// Exact for polynomials of degree <= 2n - 1. Throws DomainError for n == 0.
GaussLegendreRule gauss_legendre(std::size_t n);

/// One point of a product rule on the unit sphere.
struct SphereNode {
  Eigen::Vector3d direction;
  double weight;  // includes the sin(theta) dtheta dphi measure
};

/// Product rule: Gauss-Legendre in cos(theta), trapezoid in phi. Weights
/// sum to 4 pi. Exact for spherical harmonics of degree
/// < min(2 n_theta, n_phi).
std::vector<SphereNode> sphere_product_rule(std::size_t n_theta,
                                            std::size_t n_phi);

}  // namespace bellri
