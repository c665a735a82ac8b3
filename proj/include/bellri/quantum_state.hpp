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

// Two-qubit density matrices.
//
// Basis order is (|++>, |+->, |-+>, |-->) with |+-> = |+>_1 (x) |->_2, where
// |+>, |-> are the +1 / -1 eigenstates of sigma_z. The first tensor factor
// belongs to observer 1.

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace bellri {

using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;

/// Mixing weight of the pure component, in [0, 1].
class Visibility {
 public:
  /// Throws DomainError outside [0, 1] (NaN included).
  explicit Visibility(double v);

  double value() const noexcept { return v_; }

 private:
  double v_;
};

/// A validated 4x4 two-qubit density matrix: Hermitian, unit trace and
/// positive semidefinite (eigenvalues above kEigenvalueFloor).
class DensityMatrix {
 public:
  /// Validates `m`; throws InvariantError naming the first violated
  /// invariant ("shape", "finite", "hermitian", "trace",
  /// "positive-semidefinite").
  static DensityMatrix from_matrix(const ComplexMatrix& m);

  const Matrix4c& matrix() const noexcept { return m_; }
  const std::complex<double>& operator()(int r, int c) const { return m_(r, c); }

  /// Eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const;
  double purity() const;

 private:
  explicit DensityMatrix(const Matrix4c& m) : m_(m) {}
  friend DensityMatrix mix_states(double, const DensityMatrix&,
                                  const DensityMatrix&);

  Matrix4c m_;
};

/// Identity plus the three Pauli matrices, indexed 0..3.
const std::array<Matrix2c, 4>& pauli_basis();

DensityMatrix make_singlet();
/// The maximally mixed state I/4.
DensityMatrix make_white_noise();
/// V |singlet><singlet| + (1 - V) I/4.
DensityMatrix make_werner(Visibility v);

/// weight * pure + (1 - weight) * noise. A convex mixture of valid states is
/// valid, so no eigen-decomposition is repeated. Throws DomainError when
/// weight is outside [0, 1].
DensityMatrix mix_states(double weight, const DensityMatrix& pure,
                         const DensityMatrix& noise);

/// max |U^dag U - I| entrywise.
double unitarity_defect(const ComplexMatrix& u);

/// (U1 (x) U2)^dag rho (U1 (x) U2), returned unvalidated.
Matrix4c conjugate_local(const DensityMatrix& rho, const Matrix2c& u1,
                         const Matrix2c& u2);

/// True iff max entrywise |(U (x) U)^dag rho (U (x) U) - rho| <= tol.
/// Throws DomainError when `u` is not 2x2 or not unitary within `tol`
/// (never tighter than kUnitaryTolerance).
bool check_uu_invariance(const DensityMatrix& rho, const ComplexMatrix& u,
                         double tol);

/// Seeded Haar-like 2x2 unitary: Gram-Schmidt on a complex Gaussian matrix.
Matrix2c random_unitary_2x2(std::uint64_t seed);

}  // namespace bellri
