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
#include <cstdint>

#include <Eigen/Dense>

#include "bellri/quantum_state.hpp"

namespace bellri {

inline constexpr double kUnitNormTolerance = 1e-12;
inline constexpr double kImaginaryResidueTolerance = 1e-12;
inline constexpr double kRotationTolerance = 1e-12;

/// Spherical measurement direction in an observer's local frame.
struct Direction {
  /// Throws DomainError unless theta is in [0, pi]; phi is wrapped into
  /// [0, 2 pi).
  Direction(double theta, double phi);

  double theta;
  double phi;
};

class UnitVector3 {
 public:
  /// Throws DomainError if |v| differs from 1 by more than kUnitNormTolerance.
  explicit UnitVector3(const Eigen::Vector3d& v);
  UnitVector3(double x, double y, double z)
      : UnitVector3(Eigen::Vector3d(x, y, z)) {}

  /// Rescales any nonzero vector onto the sphere.
  static UnitVector3 normalized(const Eigen::Vector3d& v);
  /// Cartesian basis vector for 1-based axis 1, 2 or 3.
  static UnitVector3 axis(int axis);

  const Eigen::Vector3d& vec() const noexcept { return v_; }
  double x() const noexcept { return v_.x(); }
  double y() const noexcept { return v_.y(); }
  double z() const noexcept { return v_.z(); }

 private:
  struct Unchecked {};
  UnitVector3(const Eigen::Vector3d& v, Unchecked) : v_(v) {}

  Eigen::Vector3d v_;
};

UnitVector3 to_unit_vector(const Direction& d);

/// Real 3x3 correlation tensor; entry (i, j) (0-based here) is the
/// correlation between observer 1 along local axis i and observer 2 along
/// local axis j.
class CorrelationTensor {
 public:
  CorrelationTensor() : t_(Eigen::Matrix3d::Zero()) {}
  explicit CorrelationTensor(const Eigen::Matrix3d& t) : t_(t) {}

  static CorrelationTensor zero() { return CorrelationTensor(); }

  const Eigen::Matrix3d& matrix() const noexcept { return t_; }
  double operator()(int i, int j) const { return t_(i, j); }

 private:
  Eigen::Matrix3d t_;
};

/// Proper rotations of the two observers' local frames.
class LocalRotationPair {
 public:
  /// Throws DomainError unless both are orthogonal with determinant +1
  /// within kRotationTolerance.
  LocalRotationPair(const Eigen::Matrix3d& r1, const Eigen::Matrix3d& r2);

  static LocalRotationPair identity();

  const Eigen::Matrix3d& r1() const noexcept { return r1_; }
  const Eigen::Matrix3d& r2() const noexcept { return r2_; }

 private:
  Eigen::Matrix3d r1_;
  Eigen::Matrix3d r2_;
};

/// max |R^T R - I| and |det R - 1| folded into one number.
double rotation_defect(const Eigen::Matrix3d& r);

/// Rodrigues rotation about `axis` (normalized internally) by `angle`.
Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& axis,
                                         double angle);
/// Seeded rotation: uniform axis on the sphere, uniform angle in [0, 2 pi).
Eigen::Matrix3d random_rotation(std::uint64_t seed);
LocalRotationPair random_rotation_pair(std::uint64_t seed);

/// SO(3) image of a 2x2 unitary: R_ij = Tr(sigma_i U sigma_j U^dag) / 2,
/// so that U (n . sigma) U^dag = (R n) . sigma.
Eigen::Matrix3d rotation_from_unitary(const Matrix2c& u);

/// Tr[rho (n1 . sigma) (x) (n2 . sigma)].
double correlation_value(const DensityMatrix& rho, const UnitVector3& n1,
                         const UnitVector3& n2);

CorrelationTensor compute_tensor(const DensityMatrix& rho);

/// n1^T T n2.
double evaluate_via_tensor(const CorrelationTensor& t, const UnitVector3& n1,
                           const UnitVector3& n2);

/// R1 T R2^T: the same correlations expressed in the rotated local frames.
CorrelationTensor rotate_tensor(const CorrelationTensor& t,
                                const LocalRotationPair& rot);

/// Sum of squares of all nine entries. Invariant under rotate_tensor, so the
/// maximization of this sum over local frame rotations is a constant.
double frobenius_sum(const CorrelationTensor& t);

/// Literal maximization of frobenius_sum over `rotations`. Asserts (throws
/// std::logic_error otherwise) that every rotated sum agrees with the
/// unrotated one to 1e-10, then returns the unrotated sum.
double max_frobenius_over_rotations(const CorrelationTensor& t,
                                    std::size_t rotations,
                                    std::uint64_t seed);

/// max over unit n1, n2 of n1^T T n2: the largest singular value of T.
double tensor_max_svd(const CorrelationTensor& t);

/// Grid geometry used by tensor_max_grid. Polar angles sit at cell centers,
/// theta_k = (k + 1/2) pi / n_theta; azimuths at phi_l = 2 pi l / n_phi.
struct DirectionGrid {
  DirectionGrid(std::size_t n_theta, std::size_t n_phi);

  std::size_t n_theta;
  std::size_t n_phi;

  double theta(std::size_t k) const;
  double phi(std::size_t l) const;
};

/// Brute-force maximum of evaluate_via_tensor over the product of two
/// DirectionGrid(n_theta, n_phi) grids, one per observer.
///
/// For a fixed n1 the objective is linear in n2, w . n2 with w = T^T n1.
/// Along every polar row the best azimuth is one of the two grid azimuths
/// bracketing atan2(w_y, w_x) and it is the same for all rows (sin theta is
/// non-negative), so each n1 costs O(n_theta) rather than O(n_theta n_phi).
/// The value returned is identical to the exhaustive double loop.
/// Rows of n1 are processed in parallel; the max reduction is
/// order-independent. Throws DomainError when n_theta < 2 or n_phi < 4.
double tensor_max_grid(const CorrelationTensor& t, std::size_t n_theta,
                       std::size_t n_phi);

}  // namespace bellri
