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

#include "bellri/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "bellri/errors.hpp"
#include "bellri/random.hpp"

namespace bellri {

namespace {

using cd = std::complex<double>;

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Visibility::Visibility(double v) : v_(v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError("visibility must lie in [0, 1], got " + std::to_string(v));
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw InvariantError("shape", "density matrix must be 4x4, got " +
                                      std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()));
  if (!m.allFinite())
    throw InvariantError("finite", "density matrix has non-finite entries");

  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance)
    throw InvariantError("hermitian",
                         "max |M - M^dag| = " + format_value(herm));

  const double trace_err = std::abs(m.trace() - cd(1.0, 0.0));
  if (trace_err > kTraceTolerance)
    throw InvariantError("trace", "|Tr M - 1| = " + format_value(trace_err));

  // Eigenvalues of the exactly Hermitian part; the anti-Hermitian residue is
  // already bounded above.
  const Matrix4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < kEigenvalueFloor)
    throw InvariantError("positive-semidefinite",
                         "lowest eigenvalue " + format_value(lowest));

  return DensityMatrix(m);
}

Eigen::Vector4d DensityMatrix::eigenvalues() const {
  const Matrix4c h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

const std::array<Matrix2c, 4>& pauli_basis() {
  static const std::array<Matrix2c, 4> basis = [] {
    std::array<Matrix2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cd(0, -1), cd(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return basis;
}

DensityMatrix make_singlet() {
  // (|+-> - |-+>) / sqrt(2): amplitude +1/sqrt2 on index 1, -1/sqrt2 on 2.
  Matrix4c m = Matrix4c::Zero();
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix make_white_noise() {
  return DensityMatrix::from_matrix(Matrix4c::Identity() * 0.25);
}

DensityMatrix make_werner(Visibility v) {
  return mix_states(v.value(), make_singlet(), make_white_noise());
}

DensityMatrix mix_states(double weight, const DensityMatrix& pure,
                         const DensityMatrix& noise) {
  const Visibility w(weight);
  return DensityMatrix(w.value() * pure.matrix() +
                       (1.0 - w.value()) * noise.matrix());
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.size() == 0) return std::numeric_limits<double>::infinity();
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

Matrix4c conjugate_local(const DensityMatrix& rho, const Matrix2c& u1,
                         const Matrix2c& u2) {
  const Matrix4c u = kron(u1, u2);
  return u.adjoint() * rho.matrix() * u;
}

bool check_uu_invariance(const DensityMatrix& rho, const ComplexMatrix& u,
                         double tol) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DomainError("local unitary must be 2x2");
  if (!(tol >= 0.0)) throw DomainError("tolerance must be non-negative");
  const double defect = unitarity_defect(u);
  if (!(defect <= std::max(tol, kUnitaryTolerance)))
    throw DomainError("matrix is not unitary: max |U^dag U - I| = " +
                      format_value(defect));
  const Matrix2c u2 = u;
  const Matrix4c conj = conjugate_local(rho, u2, u2);
  return (conj - rho.matrix()).cwiseAbs().maxCoeff() <= tol;
}

Matrix2c random_unitary_2x2(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix2c g;
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r) g(r, c) = cd(rng.normal(), rng.normal());

  // Gram-Schmidt leaves the implied R factor with a positive real diagonal,
  // which is the phase convention that makes the Q factor Haar distributed.
  Eigen::Vector2cd q0 = g.col(0).normalized();
  Eigen::Vector2cd q1 = g.col(1) - q0.dot(g.col(1)) * q0;
  q1.normalize();
  // One re-orthogonalization pass keeps U^dag U within a few ulps of I.
  q1 -= q0.dot(q1) * q0;
  q1.normalize();

  Matrix2c u;
  u.col(0) = q0;
  u.col(1) = q1;
  return u;
}

}  // namespace bellri
