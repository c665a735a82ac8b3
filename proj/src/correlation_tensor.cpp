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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bellri/errors.hpp"
#include "bellri/random.hpp"

namespace bellri {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix2c pauli_dot(const Eigen::Vector3d& n) {
  const auto& s = pauli_basis();
  return n.x() * s[1] + n.y() * s[2] + n.z() * s[3];
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Direction::Direction(double theta_in, double phi_in) {
  if (!(theta_in >= 0.0 && theta_in <= std::numbers::pi))
    throw DomainError("polar angle must lie in [0, pi], got " +
                      std::to_string(theta_in));
  if (!std::isfinite(phi_in))
    throw DomainError("azimuth must be finite");
  double p = std::fmod(phi_in, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  theta = theta_in;
  phi = p;
}

UnitVector3::UnitVector3(const Eigen::Vector3d& v) : v_(v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitNormTolerance)
    throw DomainError("vector is not of unit length (|v| = " +
                      std::to_string(v.norm()) + ")");
}

UnitVector3 UnitVector3::normalized(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("cannot normalize a zero or non-finite vector");
  return UnitVector3(v / n, Unchecked{});
}

UnitVector3 UnitVector3::axis(int axis) {
  if (axis < 1 || axis > 3)
    throw DomainError("axis index must be 1, 2 or 3, got " +
                      std::to_string(axis));
  return UnitVector3(Eigen::Vector3d::Unit(axis - 1), Unchecked{});
}

UnitVector3 to_unit_vector(const Direction& d) {
  const double st = std::sin(d.theta);
  return UnitVector3::normalized(Eigen::Vector3d(
      st * std::cos(d.phi), st * std::sin(d.phi), std::cos(d.theta)));
}

LocalRotationPair::LocalRotationPair(const Eigen::Matrix3d& r1,
                                     const Eigen::Matrix3d& r2)
    : r1_(r1), r2_(r2) {
  if (!(rotation_defect(r1) <= kRotationTolerance))
    throw DomainError("first local frame is not a proper rotation");
  if (!(rotation_defect(r2) <= kRotationTolerance))
    throw DomainError("second local frame is not a proper rotation");
}

LocalRotationPair LocalRotationPair::identity() {
  return {Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity()};
}

double rotation_defect(const Eigen::Matrix3d& r) {
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  const double ortho =
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(r.determinant() - 1.0));
}

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& axis,
                                         double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw DomainError("rotation axis must be nonzero");
  return Eigen::AngleAxisd(angle, axis / n).toRotationMatrix();
}

Eigen::Matrix3d random_rotation(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::Vector3d axis;
  do {
    axis = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
  } while (axis.norm() < 1e-8);
  return rotation_from_axis_angle(axis, kTwoPi * rng.uniform());
}

LocalRotationPair random_rotation_pair(std::uint64_t seed) {
  return {random_rotation(SplitMix64::split(seed, 1)),
          random_rotation(SplitMix64::split(seed, 2))};
}

Eigen::Matrix3d rotation_from_unitary(const Matrix2c& u) {
  const auto& s = pauli_basis();
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = 0.5 * (s[i + 1] * u * s[j + 1] * u.adjoint()).trace().real();
  return r;
}

double correlation_value(const DensityMatrix& rho, const UnitVector3& n1,
                         const UnitVector3& n2) {
  const Matrix4c observable = kron(pauli_dot(n1.vec()), pauli_dot(n2.vec()));
  // The Hermitian part carries the expectation value; using it keeps the
  // imaginary residue at rounding level.
  const Matrix4c h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  const std::complex<double> value = (h * observable).trace();
  if (std::abs(value.imag()) > kImaginaryResidueTolerance)
    throw std::logic_error("expectation value has imaginary residue " +
                           std::to_string(value.imag()));
  return value.real();
}

CorrelationTensor compute_tensor(const DensityMatrix& rho) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = correlation_value(rho, UnitVector3::axis(i + 1),
                                  UnitVector3::axis(j + 1));
  return CorrelationTensor(t);
}

double evaluate_via_tensor(const CorrelationTensor& t, const UnitVector3& n1,
                           const UnitVector3& n2) {
  return n1.vec().dot(t.matrix() * n2.vec());
}

CorrelationTensor rotate_tensor(const CorrelationTensor& t,
                                const LocalRotationPair& rot) {
  return CorrelationTensor(rot.r1() * t.matrix() * rot.r2().transpose());
}

double frobenius_sum(const CorrelationTensor& t) {
  return t.matrix().squaredNorm();
}

double max_frobenius_over_rotations(const CorrelationTensor& t,
                                    std::size_t rotations,
                                    std::uint64_t seed) {
  const double base = frobenius_sum(t);
  for (std::size_t k = 0; k < rotations; ++k) {
    const double rotated =
        frobenius_sum(rotate_tensor(t, random_rotation_pair(SplitMix64::split(seed, k))));
    if (std::abs(rotated - base) > 1e-10)
      throw std::logic_error("Frobenius sum changed under a local rotation");
  }
  return base;
}

double tensor_max_svd(const CorrelationTensor& t) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t.matrix());
  return svd.singularValues()(0);
}

DirectionGrid::DirectionGrid(std::size_t n_theta_in, std::size_t n_phi_in)
    : n_theta(n_theta_in), n_phi(n_phi_in) {
  if (n_theta < 2 || n_phi < 4)
    throw DomainError("direction grid needs n_theta >= 2 and n_phi >= 4");
}

double DirectionGrid::theta(std::size_t k) const {
  return (static_cast<double>(k) + 0.5) * std::numbers::pi /
         static_cast<double>(n_theta);
}

double DirectionGrid::phi(std::size_t l) const {
  return kTwoPi * static_cast<double>(l) / static_cast<double>(n_phi);
}

double tensor_max_grid(const CorrelationTensor& t, std::size_t n_theta,
                       std::size_t n_phi) {
  const DirectionGrid grid(n_theta, n_phi);

  std::vector<double> sin_t(n_theta), cos_t(n_theta);
  for (std::size_t k = 0; k < n_theta; ++k) {
    sin_t[k] = std::sin(grid.theta(k));
    cos_t[k] = std::cos(grid.theta(k));
  }
  std::vector<double> cos_p(n_phi), sin_p(n_phi);
  for (std::size_t l = 0; l < n_phi; ++l) {
    cos_p[l] = std::cos(grid.phi(l));
    sin_p[l] = std::sin(grid.phi(l));
  }
  const double dphi = kTwoPi / static_cast<double>(n_phi);
  const Eigen::Matrix3d tt = t.matrix().transpose();

  auto best_for_row = [&](std::size_t k1) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t l1 = 0; l1 < n_phi; ++l1) {
      const Eigen::Vector3d n1(sin_t[k1] * cos_p[l1], sin_t[k1] * sin_p[l1],
                               cos_t[k1]);
      const Eigen::Vector3d w = tt * n1;

      double phi_w = std::atan2(w.y(), w.x());
      if (phi_w < 0.0) phi_w += kTwoPi;
      const auto lo = static_cast<std::size_t>(std::floor(phi_w / dphi)) % n_phi;
      const std::size_t hi = (lo + 1) % n_phi;
      const double c_lo = w.x() * cos_p[lo] + w.y() * sin_p[lo];
      const double c_hi = w.x() * cos_p[hi] + w.y() * sin_p[hi];
      const std::size_t l2 = c_hi > c_lo ? hi : lo;

      for (std::size_t k2 = 0; k2 < n_theta; ++k2) {
        const Eigen::Vector3d n2(sin_t[k2] * cos_p[l2], sin_t[k2] * sin_p[l2],
                                 cos_t[k2]);
        best = std::max(best, w.dot(n2));
      }
    }
    return best;
  };

  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::min<std::size_t>(n_theta, 16));
  std::vector<double> partial(workers, -std::numeric_limits<double>::infinity());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k1 = w; k1 < n_theta; k1 += workers)
          partial[w] = std::max(partial[w], best_for_row(k1));
      });
    }
  }
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace bellri
