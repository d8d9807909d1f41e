// Copyright 2026 The Depolarizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "depol/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depol/errors.hpp"

namespace depol {

namespace {

constexpr double kStokesNormTolerance = 1e-10;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

const std::array<Matrix2c, 3>& stokes_operators() {
  static const std::array<Matrix2c, 3> ops = [] {
    const Complex i(0.0, 1.0);
    Matrix2c s1, s2, s3;
    s1 << 1.0, 0.0, 0.0, -1.0;
    s2 << 0.0, 1.0, 1.0, 0.0;
    s3 << 0.0, -i, i, 0.0;
    return std::array<Matrix2c, 3>{s1, s2, s3};
  }();
  return ops;
}

JonesVector::JonesVector(Complex amp_h, Complex amp_v) : amp_(amp_h, amp_v) {
  const double n2 = amp_.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
    throw NormalizationError("Jones vector norm² is " + std::to_string(n2) + ", expected 1");
  }
}

JonesVector JonesVector::normalized(Complex amp_h, Complex amp_v) {
  const double n = std::sqrt(std::norm(amp_h) + std::norm(amp_v));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NormalizationError("cannot normalize a zero or non-finite Jones vector");
  }
  return JonesVector(amp_h / n, amp_v / n);
}

namespace basis {
JonesVector h() { return {1.0, 0.0}; }
JonesVector v() { return {0.0, 1.0}; }
JonesVector p() { return {kInvSqrt2, kInvSqrt2}; }
JonesVector m() { return {-kInvSqrt2, kInvSqrt2}; }
JonesVector r() { return {kInvSqrt2, Complex(0.0, kInvSqrt2)}; }
JonesVector l() { return {Complex(0.0, kInvSqrt2), kInvSqrt2}; }
}  // namespace basis

JonesVector jones_from_label(std::string_view label) {
  if (label == "h") return basis::h();
  if (label == "v") return basis::v();
  if (label == "p") return basis::p();
  if (label == "m") return basis::m();
  if (label == "r") return basis::r();
  if (label == "l") return basis::l();
  throw DomainError("unknown polarization label '" + std::string(label) + "'");
}

DensityMatrix::DensityMatrix(const Matrix2c& entries) {
  if (!entries.allFinite()) {
    throw InvalidStateError("density matrix has non-finite entries");
  }
  const double herm_err = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kNormTolerance) {
    throw InvalidStateError("density matrix not Hermitian (deviation " +
                            std::to_string(herm_err) + ")");
  }
  rho_ = 0.5 * (entries + entries.adjoint());
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    throw InvalidStateError("density matrix trace is " + std::to_string(tr));
  }
  // Smallest eigenvalue of a 2x2 Hermitian matrix in closed form.
  const double a = rho_(0, 0).real();
  const double d = rho_(1, 1).real();
  const double gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho_(0, 1)));
  const double min_eig = 0.5 * (a + d) - gap;
  if (min_eig < -kPsdTolerance) {
    throw InvalidStateError("density matrix not positive semidefinite (min eigenvalue " +
                            std::to_string(min_eig) + ")");
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix2c::Identity() * 0.5);
}

DensityMatrix density_from_jones(const JonesVector& j) {
  const Vector2c& a = j.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

StokesVector stokes_from_density(const DensityMatrix& rho) {
  const auto& ops = stokes_operators();
  return {(rho.matrix() * ops[0]).trace().real(), (rho.matrix() * ops[1]).trace().real(),
          (rho.matrix() * ops[2]).trace().real()};
}

DensityMatrix density_from_stokes(const StokesVector& s) {
  const double n = s.norm();
  if (!std::isfinite(n) || n > 1.0 + kStokesNormTolerance) {
    throw InvalidStateError("Stokes vector length " + std::to_string(n) + " exceeds 1");
  }
  const auto& ops = stokes_operators();
  Matrix2c rho = Matrix2c::Identity();
  rho += s.s1 * ops[0] + s.s2 * ops[1] + s.s3 * ops[2];
  return DensityMatrix(0.5 * rho);
}

JonesVector jones_from_stokes(const StokesVector& s) {
  const double n = s.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kStokesNormTolerance) {
    throw InvalidStateError("pure state needs a unit Stokes vector, got length " +
                            std::to_string(n));
  }
  const double s1 = s.s1 / n;
  const Complex off(s.s2 / n, s.s3 / n);  // 2 ρ10 = s2 + i s3
  if (s1 >= 0.0) {
    const double ah = std::sqrt(0.5 * (1.0 + s1));
    return JonesVector::normalized(ah, off / (2.0 * ah));
  }
  const double av = std::sqrt(0.5 * (1.0 - s1));
  const Complex ah = std::conj(off) / (2.0 * av);
  // Rephase so the h amplitude is real and non-negative.
  const double mag = std::abs(ah);
  const Complex phase = mag > 0.0 ? std::conj(ah) / mag : Complex(1.0, 0.0);
  return JonesVector::normalized(ah * phase, av * phase);
}

double dop(const DensityMatrix& rho) {
  const double diff = (rho(0, 0) - rho(1, 1)).real();
  const double length = std::sqrt(diff * diff + 4.0 * std::norm(rho(0, 1)));
  return std::clamp(length, 0.0, 1.0);
}

double dop_from_determinant(const DensityMatrix& rho) {
  const double radicand = 1.0 - 4.0 * rho.matrix().determinant().real();
  if (radicand < -kPsdTolerance) {
    throw InvalidStateError("1 - 4 det(rho) = " + std::to_string(radicand) + " is negative");
  }
  return std::clamp(std::sqrt(std::max(radicand, 0.0)), 0.0, 1.0);
}

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const double overlap = (a.matrix() * b.matrix()).trace().real();
  const double det_a = std::max(a.matrix().determinant().real(), 0.0);
  const double det_b = std::max(b.matrix().determinant().real(), 0.0);
  return std::clamp(overlap + 2.0 * std::sqrt(det_a * det_b), 0.0, 1.0);
}

namespace {

Eigen::VectorXd floored_roots(const Eigen::VectorXd& eigenvalues) {
  const double floor = kSpectralFloor * std::max(eigenvalues.maxCoeff(), 0.0);
  return eigenvalues.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
}

}  // namespace

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  const Eigen::VectorXd roots = floored_roots(eig.eigenvalues());
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
}

double uhlmann_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DomainError("fidelity needs square matrices of equal size");
  }
  const Eigen::MatrixXcd root_a = psd_sqrt(a);
  const Eigen::MatrixXcd inner = root_a * b * root_a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (inner + inner.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  const double root_trace = floored_roots(eig.eigenvalues()).sum();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

}  // namespace depol
