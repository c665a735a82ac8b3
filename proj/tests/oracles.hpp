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

// Test-only reference computations. Nothing here calls into the library's
// numerical routines: expectation values are explicit index sums, grid
// maxima are exhaustive loops.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "bellri/quantum_state.hpp"

namespace bellri::testing {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;
using Mat4 = std::array<std::array<cd, 4>, 4>;
using Real3 = std::array<double, 3>;
using Real33 = std::array<Real3, 3>;

inline Mat2 pauli_dot(const Real3& n) {
  const cd i(0.0, 1.0);
  return {{{cd(n[2]), cd(n[0]) - i * n[1]},
           {cd(n[0]) + i * n[1], cd(-n[2])}}};
}

inline Mat4 to_mat4(const DensityMatrix& rho) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = rho(r, c);
  return m;
}

/// sum_{a,b} rho[a][b] * (A (x) B)[b][a], with the Kronecker product
/// indexed as (A (x) B)[2 i + k][2 j + l] = A[i][j] B[k][l].
inline cd trace_oracle(const Mat4& rho, const Real3& n1, const Real3& n2) {
  const Mat2 a = pauli_dot(n1);
  const Mat2 b = pauli_dot(n2);
  cd sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          sum += rho[2 * j + l][2 * i + k] * a[i][j] * b[k][l];
  return sum;
}

inline Real3 spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

inline double bilinear(const Real33& t, const Real3& n1, const Real3& n2) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += n1[i] * t[i][j] * n2[j];
  return s;
}

/// Exhaustive max over the product of two cell-centred grids.
inline double naive_grid_max(const Real33& t, int n_theta, int n_phi) {
  double best = -1e300;
  for (int k1 = 0; k1 < n_theta; ++k1)
    for (int l1 = 0; l1 < n_phi; ++l1) {
      const Real3 n1 = spherical((k1 + 0.5) * std::numbers::pi / n_theta,
                                 2.0 * std::numbers::pi * l1 / n_phi);
      for (int k2 = 0; k2 < n_theta; ++k2)
        for (int l2 = 0; l2 < n_phi; ++l2) {
          const Real3 n2 = spherical((k2 + 0.5) * std::numbers::pi / n_theta,
                                     2.0 * std::numbers::pi * l2 / n_phi);
          best = std::max(best, bilinear(t, n1, n2));
        }
    }
  return best;
}

/// Random tensor with entries uniform in [-1, 1].
inline Eigen::Matrix3d random_tensor(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = u(gen);
  return t;
}

inline Real33 to_real33(const Eigen::Matrix3d& m) {
  Real33 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m(i, j);
  return out;
}

/// Random unit vector (Gaussian direction).
inline Real3 random_direction(std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Real3 v{g(gen), g(gen), g(gen)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

/// Random density matrix: G G^dag / Tr with G a 4x4 complex Gaussian.
inline DensityMatrix random_density_matrix(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = cd(g(gen), g(gen));
  ComplexMatrix m = a * a.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix::from_matrix(m);
}

}  // namespace bellri::testing
