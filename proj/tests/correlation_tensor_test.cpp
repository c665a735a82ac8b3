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

#include "bellri/correlation_tensor.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "bellri/errors.hpp"
#include "oracles.hpp"

namespace bellri {
namespace {

using testing::Real3;

constexpr double kPi = std::numbers::pi;

UnitVector3 uv(const Real3& n) { return UnitVector3::normalized({n[0], n[1], n[2]}); }

TEST(Direction, ToUnitVector) {
  const UnitVector3 pole = to_unit_vector(Direction(0.0, 1.234));
  EXPECT_NEAR(pole.x(), 0.0, 1e-15);
  EXPECT_NEAR(pole.y(), 0.0, 1e-15);
  EXPECT_NEAR(pole.z(), 1.0, 1e-15);

  const UnitVector3 ex = to_unit_vector(Direction(kPi / 2, 0.0));
  EXPECT_NEAR(ex.x(), 1.0, 1e-15);
  EXPECT_NEAR(ex.y(), 0.0, 1e-15);
  EXPECT_NEAR(ex.z(), 0.0, 1e-15);

  const UnitVector3 ey = to_unit_vector(Direction(kPi / 2, kPi / 2));
  EXPECT_NEAR(ey.x(), 0.0, 1e-15);
  EXPECT_NEAR(ey.y(), 1.0, 1e-15);
  EXPECT_NEAR(ey.z(), 0.0, 1e-15);
}

TEST(Direction, ValidatesAndWraps) {
  EXPECT_THROW(Direction(-0.1, 0.0), DomainError);
  EXPECT_THROW(Direction(kPi + 0.1, 0.0), DomainError);
  EXPECT_NEAR(Direction(1.0, -kPi / 2).phi, 3 * kPi / 2, 1e-15);
  EXPECT_NEAR(Direction(1.0, 2 * kPi + 0.5).phi, 0.5, 1e-15);
  EXPECT_GE(Direction(1.0, -1e-300).phi, 0.0);
  EXPECT_LT(Direction(1.0, -1e-300).phi, 2 * kPi);
}

TEST(UnitVector3, RejectsNonUnitInput) {
  EXPECT_THROW(UnitVector3(1.0, 1.0, 0.0), DomainError);
  EXPECT_NO_THROW(UnitVector3(0.6, 0.8, 0.0));
  EXPECT_THROW(UnitVector3::axis(4), DomainError);
}

TEST(CorrelationValue, WernerMatchedAndOrthogonal) {
  std::mt19937_64 gen(11);
  for (double v : {0.0, 0.3, 0.75, 1.0}) {
    const DensityMatrix rho = make_werner(Visibility(v));
    for (int k = 0; k < 20; ++k) {
      const Real3 a = testing::random_direction(gen);
      const UnitVector3 n = uv(a);
      EXPECT_NEAR(correlation_value(rho, n, n), -v, 1e-12);
      // Any vector orthogonal to n.
      const Eigen::Vector3d perp = n.vec().cross(Eigen::Vector3d(0.3, -0.5, 0.8));
      EXPECT_NEAR(correlation_value(rho, n, UnitVector3::normalized(perp)), 0.0, 1e-12);
    }
  }
}

TEST(CorrelationValue, MaximallyMixedGivesZero) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 20; ++k)
    EXPECT_NEAR(correlation_value(make_white_noise(), uv(testing::random_direction(gen)),
                                  uv(testing::random_direction(gen))),
                0.0, 1e-15);
}

TEST(CorrelationValue, MatchesTraceOracle) {
  std::mt19937_64 gen(21);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix rho = testing::random_density_matrix(s);
    const auto m = testing::to_mat4(rho);
    for (int k = 0; k < 10; ++k) {
      const Real3 a = testing::random_direction(gen), b = testing::random_direction(gen);
      const auto expected = testing::trace_oracle(m, a, b);
      EXPECT_NEAR(correlation_value(rho, uv(a), uv(b)), expected.real(), 1e-12);
      EXPECT_LE(std::abs(correlation_value(rho, uv(a), uv(b))), 1.0 + 1e-12);
    }
  }
}

TEST(ComputeTensor, WernerIsMinusVIdentity) {
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Eigen::Matrix3d t = compute_tensor(make_werner(Visibility(v))).matrix();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(t(i, j), i == j ? -v : 0.0, 1e-12) << v << " " << i << j;
  }
}

TEST(ComputeTensor, MaximallyMixedIsZero) {
  EXPECT_LE(compute_tensor(make_white_noise()).matrix().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ComputeTensor, ProductStateUpUp) {
  ComplexMatrix pp = Matrix4c::Zero();
  pp(0, 0) = 1.0;
  const DensityMatrix rho = DensityMatrix::from_matrix(pp);
  const auto m = testing::to_mat4(rho);
  const Eigen::Matrix3d t = compute_tensor(rho).matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Real3 a{}, b{};
      a[i] = 1.0;
      b[j] = 1.0;
      EXPECT_NEAR(t(i, j), testing::trace_oracle(m, a, b).real(), 1e-15);
      EXPECT_NEAR(t(i, j), (i == 2 && j == 2) ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(ComputeTensor, FrozenMixedEntangledState) {
  // 0.6 |phi><phi| + 0.1 I, phi = (|++> + i|+-> - |-+> + |-->) / 2.
  // Expected entries from an independent numpy evaluation of
  // Tr[rho sigma_i (x) sigma_j].
  Eigen::Vector4cd phi(0.5, std::complex<double>(0.0, 0.5), -0.5, 0.5);
  const ComplexMatrix m = 0.6 * phi * phi.adjoint() + 0.1 * Matrix4c::Identity();
  const Eigen::Matrix3d t = compute_tensor(DensityMatrix::from_matrix(m)).matrix();
  Eigen::Matrix3d expected;
  expected << 0.3, -0.3, -0.3, 0.3, -0.3, 0.3, 0.3, 0.3, 0.0;
  EXPECT_LE((t - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(tensor_max_svd(CorrelationTensor(t)), 0.6, 1e-12);
  EXPECT_NEAR(frobenius_sum(CorrelationTensor(t)), 0.72, 1e-12);
}

TEST(EvaluateViaTensor, WernerAndZero) {
  const CorrelationTensor w(Eigen::Matrix3d::Identity() * -0.6);
  const UnitVector3 n = UnitVector3::normalized({1.0, 2.0, -0.5});
  EXPECT_NEAR(evaluate_via_tensor(w, n, n), -0.6, 1e-15);
  EXPECT_EQ(evaluate_via_tensor(CorrelationTensor::zero(), n, n), 0.0);
}

TEST(EvaluateViaTensor, ConsistentWithCorrelationFunction) {
  // The bilinear form determines E for every direction pair.
  std::mt19937_64 gen(99);
  for (std::uint64_t s = 100; s < 110; ++s) {
    const DensityMatrix rho = testing::random_density_matrix(s);
    const CorrelationTensor t = compute_tensor(rho);
    for (int k = 0; k < 200; ++k) {
      const UnitVector3 a = uv(testing::random_direction(gen));
      const UnitVector3 b = uv(testing::random_direction(gen));
      EXPECT_NEAR(evaluate_via_tensor(t, a, b), correlation_value(rho, a, b), 1e-12);
    }
  }
}

TEST(RotateTensor, IdentityPairIsNoOp) {
  const CorrelationTensor t(testing::random_tensor(3));
  EXPECT_EQ(rotate_tensor(t, LocalRotationPair::identity()).matrix(), t.matrix());
}

TEST(RotateTensor, WernerInvariantUnderEqualRotations) {
  const CorrelationTensor w(Eigen::Matrix3d::Identity() * -0.7);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Eigen::Matrix3d r = random_rotation(s);
    const CorrelationTensor rotated = rotate_tensor(w, LocalRotationPair(r, r));
    EXPECT_LE((rotated.matrix() - w.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RotateTensor, PreservesFrobeniusSumAndSingularValues) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CorrelationTensor t(testing::random_tensor(s));
    const CorrelationTensor r = rotate_tensor(t, random_rotation_pair(s + 1000));
    EXPECT_NEAR(frobenius_sum(r), frobenius_sum(t), 1e-10);
    EXPECT_NEAR(tensor_max_svd(r), tensor_max_svd(t), 1e-10);
  }
}

TEST(RotateTensor, RejectsImproperOrNonOrthogonalFrames) {
  Eigen::Matrix3d reflection = Eigen::Matrix3d::Identity();
  reflection(2, 2) = -1.0;
  EXPECT_THROW(LocalRotationPair(reflection, Eigen::Matrix3d::Identity()), DomainError);
  Eigen::Matrix3d shear = Eigen::Matrix3d::Identity();
  shear(0, 1) = 0.01;
  EXPECT_THROW(LocalRotationPair(Eigen::Matrix3d::Identity(), shear), DomainError);
}

TEST(RotateTensor, MatchesLocalUnitaryConjugation) {
  // (U1 (x) U2)^dag rho (U1 (x) U2) has tensor R1 T R2^T with
  // R_k = rotation_from_unitary(U_k^dag).
  for (std::uint64_t s = 0; s < 50; ++s) {
    const DensityMatrix rho = testing::random_density_matrix(s + 500);
    const Matrix2c u1 = random_unitary_2x2(2 * s);
    const Matrix2c u2 = random_unitary_2x2(2 * s + 1);
    const DensityMatrix conj = DensityMatrix::from_matrix(conjugate_local(rho, u1, u2));
    const LocalRotationPair rot(rotation_from_unitary(u1.adjoint()),
                                rotation_from_unitary(u2.adjoint()));
    const Eigen::Matrix3d expected = rotate_tensor(compute_tensor(rho), rot).matrix();
    EXPECT_LE((compute_tensor(conj).matrix() - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(FrobeniusSum, WernerAndZero) {
  for (double v : {0.0, 0.3, 0.9, 1.0}) {
    const CorrelationTensor t = compute_tensor(make_werner(Visibility(v)));
    EXPECT_NEAR(frobenius_sum(t), 3 * v * v, 1e-12);
  }
  EXPECT_NEAR(frobenius_sum(compute_tensor(make_werner(Visibility(0.9)))), 2.43, 1e-12);
  EXPECT_EQ(frobenius_sum(CorrelationTensor::zero()), 0.0);
}

TEST(FrobeniusSum, MaximizationOverRotationsIsConstant) {
  const CorrelationTensor t(testing::random_tensor(77));
  EXPECT_EQ(max_frobenius_over_rotations(t, 200, 5), frobenius_sum(t));
}

TEST(TensorMaxSvd, WernerAndZero) {
  for (double v : {0.0, 0.25, 0.5, 0.8, 1.0})
    EXPECT_NEAR(tensor_max_svd(compute_tensor(make_werner(Visibility(v)))), v, 1e-12);
  EXPECT_EQ(tensor_max_svd(CorrelationTensor::zero()), 0.0);
}

TEST(TensorMaxSvd, PhysicalStatesBoundedByOne) {
  for (std::uint64_t s = 0; s < 200; ++s)
    EXPECT_LE(tensor_max_svd(compute_tensor(testing::random_density_matrix(s))), 1.0 + 1e-10);
}

TEST(TensorMaxSvd, FrozenRandomTensor) {
  // Largest singular value from numpy.linalg.svd.
  Eigen::Matrix3d t;
  t << 0.3, -0.2, 0.1, 0.05, -0.7, 0.25, -0.4, 0.15, 0.6;
  EXPECT_NEAR(tensor_max_svd(CorrelationTensor(t)), 0.7894248179324882, 1e-14);
}

TEST(TensorMaxGrid, EqualsExhaustiveProductGrid) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::Matrix3d t = testing::random_tensor(s);
    for (auto [nt, np] : {std::pair{2, 4}, {7, 12}, {12, 24}}) {
      const double fast = tensor_max_grid(CorrelationTensor(t), nt, np);
      const double slow = testing::naive_grid_max(testing::to_real33(t), nt, np);
      EXPECT_NEAR(fast, slow, 1e-14) << s << " " << nt << "x" << np;
    }
  }
}

TEST(TensorMaxGrid, WernerGridValue) {
  const CorrelationTensor t(Eigen::Matrix3d::Identity() * -0.8);
  EXPECT_NEAR(tensor_max_grid(t, 100, 200), 0.8, 1e-3);
  EXPECT_EQ(tensor_max_grid(CorrelationTensor::zero(), 10, 20), 0.0);
}

TEST(TensorMaxGrid, BelowSvdAndConvergesUnderRefinement) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CorrelationTensor t(testing::random_tensor(s + 300));
    const double exact = tensor_max_svd(t);
    double previous_gap = 1e9;
    // Tripling keeps cell-centred theta nodes nested.
    for (std::size_t n : {10, 30, 90}) {
      const double g = tensor_max_grid(t, n, 2 * n);
      EXPECT_LE(g, exact + 1e-12);
      const double gap = exact - g;
      EXPECT_LE(gap, previous_gap + 1e-12);
      previous_gap = gap;
    }
    EXPECT_LE(previous_gap, 2e-3);
  }
}

TEST(TensorMaxGrid, RejectsTinyGrids) {
  EXPECT_THROW(tensor_max_grid(CorrelationTensor::zero(), 1, 8), DomainError);
  EXPECT_THROW(tensor_max_grid(CorrelationTensor::zero(), 4, 3), DomainError);
}

}  // namespace
}  // namespace bellri
