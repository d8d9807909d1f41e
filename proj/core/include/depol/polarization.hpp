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

#ifndef DEPOL_POLARIZATION_HPP
#define DEPOL_POLARIZATION_HPP

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace depol {

using Complex = std::complex<double>;
using Vector2c = Eigen::Vector2cd;
using Matrix2c = Eigen::Matrix2cd;

/// Tolerance on unit norm, Hermiticity and unit trace.
inline constexpr double kNormTolerance = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
inline constexpr double kPsdTolerance = 1e-10;

// Stokes convention
// -----------------
// The basis states are
//   |h> = (1, 0)            |v> = (0, 1)
//   |p> = (|h> + |v>)/√2    |m> = (-|h> + |v>)/√2
//   |r> = (|h> + i|v>)/√2   |l> = (i|h> + |v>)/√2
// and the Stokes parameters are S_k = tr(ρ Σ_k) with
//   Σ1 = |h><h| - |v><v| = [[1, 0], [0, -1]]   (Pauli Z)
//   Σ2 = |p><p| - |m><m| = [[0, 1], [1, 0]]    (Pauli X)
//   Σ3 = |r><r| - |l><l| = [[0, -i], [i, 0]]   (Pauli Y)
// Every other module takes these operators from stokes_operators().

/// Σ1, Σ2, Σ3 in that order.
const std::array<Matrix2c, 3>& stokes_operators();

/// Normalized two-component polarization amplitude in the h/v basis.
class JonesVector {
 public:
  /// Throws NormalizationError unless |h|² + |v|² = 1 within kNormTolerance.
  JonesVector(Complex amp_h, Complex amp_v);

  /// Rescales to unit norm; throws NormalizationError on a zero vector.
  static JonesVector normalized(Complex amp_h, Complex amp_v);

  Complex amp_h() const { return amp_(0); }
  Complex amp_v() const { return amp_(1); }
  const Vector2c& amplitudes() const { return amp_; }

 private:
  Vector2c amp_;
};

namespace basis {
JonesVector h();
JonesVector v();
JonesVector p();
JonesVector m();
JonesVector r();
JonesVector l();
}  // namespace basis

/// Parses one of "h", "v", "p", "m", "r", "l"; throws DomainError otherwise.
JonesVector jones_from_label(std::string_view label);

struct StokesVector {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  Eigen::Vector3d vec() const { return {s1, s2, s3}; }
  double norm() const { return vec().norm(); }
  static StokesVector from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

/// 2x2 qubit density matrix. Construction validates Hermiticity, unit trace
/// and positivity (eigenvalues >= -kPsdTolerance) and stores the Hermitian part.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix2c& entries);

  static DensityMatrix maximally_mixed();

  const Matrix2c& matrix() const { return rho_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const { return rho_(row, col); }

 private:
  Matrix2c rho_;
};

DensityMatrix density_from_jones(const JonesVector& j);
StokesVector stokes_from_density(const DensityMatrix& rho);

/// ρ = (I + s1 Σ1 + s2 Σ2 + s3 Σ3)/2; throws InvalidStateError if |s| > 1 + 1e-10.
DensityMatrix density_from_stokes(const StokesVector& s);

/// Pure state on the Poincaré sphere with Stokes direction s (|s| = 1 within
/// 1e-10, else InvalidStateError). Global phase chosen so amp_h is real >= 0.
JonesVector jones_from_stokes(const StokesVector& s);

/// Degree of polarization, the length of the Stokes vector, clamped to [0, 1].
double dop(const DensityMatrix& rho);

/// Degree of polarization through √(1 - 4 det ρ). Radicands in [-1e-10, 0)
/// are treated as zero; anything more negative throws InvalidStateError.
double dop_from_determinant(const DensityMatrix& rho);

/// Uhlmann fidelity (tr √(√a b √a))², via the qubit closed form
/// tr(ab) + 2 √(det a det b).
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Uhlmann fidelity for Hermitian PSD matrices of any size, normalized so
/// that unit-trace inputs give values in [0, 1]. Eigenvalues below
/// kSpectralFloor times the largest are treated as zero before square roots
/// are taken.
double uhlmann_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Relative size below which an eigenvalue is rounding noise.
inline constexpr double kSpectralFloor = 1e-14;

/// Principal square root of a Hermitian PSD matrix; eigenvalues below
/// kSpectralFloor times the largest are set to zero.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a);

}  // namespace depol

#endif  // DEPOL_POLARIZATION_HPP
