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

#ifndef DEPOL_TOMOGRAPHY_HPP
#define DEPOL_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "depol/channels.hpp"
#include "depol/errors.hpp"
#include "depol/measurement.hpp"
#include "depol/polarization.hpp"

namespace depol {

// ---------------------------------------------------------------------------
// State tomography

struct LinearEstimate {
  /// (I + Σ Ŝ_k Σ_k)/2; Hermitian with unit trace but possibly not PSD.
  Matrix2c matrix;
  StokesVector stokes;
  double min_eigenvalue = 0.0;
  /// min_eigenvalue >= -kPsdTolerance.
  bool physical = true;

  /// Nearest state after clipping negative eigenvalues and renormalizing.
  DensityMatrix projected() const;
};

/// Ŝ_k = (n₊ - n₋)/(n₊ + n₋) for each analyzer pair. The record must contain
/// all six settings; a pair with zero total counts throws EstimateError.
LinearEstimate qst_linear(const MeasurementRecord& rec);

/// Negative Poisson log-likelihood of a record per recorded shot, as a
/// function of the four real entries x of a lower-triangular T,
///   T = [[x0, 0], [x2 + i x3, x1]],   ρ(x) = T†T / tr(T†T).
/// Constant terms are dropped; the value is invariant under x -> c x.
class LikelihoodObjective {
 public:
  explicit LikelihoodObjective(const MeasurementRecord& rec);

  static DensityMatrix state(const Eigen::Vector4d& x);
  /// x with T†T = ρ (ρ must be full rank).
  static Eigen::Vector4d parameters(const DensityMatrix& rho);

  /// +infinity when a setting with counts has zero predicted probability.
  double value(const Eigen::Vector4d& x) const;
  Eigen::Vector4d gradient(const Eigen::Vector4d& x) const;

  /// Poisson log-likelihood Σ_j [n_j ln(N p_j) - N p_j] of a state.
  double log_likelihood(const DensityMatrix& rho) const;

 private:
  std::vector<Matrix2c> projectors_;
  std::vector<double> counts_;
  double shots_;
  double scale_;
};

struct MleOptions {
  /// Bound on the objective gradient at ‖x‖ = 1.
  double gradient_tolerance = 1e-8;
  int max_iterations = 200;
  int restarts = 16;
  std::uint64_t restart_seed = 0x5eed;
};

struct MleResult {
  DensityMatrix rho = DensityMatrix::maximally_mixed();
  double log_likelihood = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  /// 0 when the first start (from the linear estimate) converged.
  int restarts_used = 0;
};

/// The optimizer exhausted its restart budget; carries the best iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, MleResult best);
  const MleResult& best() const { return best_; }

 private:
  MleResult best_;
};

/// Maximum-likelihood state estimate over the Cholesky-style parameterization.
MleResult qst_mle_detailed(const MeasurementRecord& rec, const MleOptions& options = {});
DensityMatrix qst_mle(const MeasurementRecord& rec, const MleOptions& options = {});

// ---------------------------------------------------------------------------
// Process tomography
//
// E(ρ) = Σ_mn χ_mn E_m ρ E_n† with (E0, E1, E2, E3) = (I, X, Y, Z):
// X = Σ2 has eigenstates p/m (bit flip in h/v), Y = Σ3 has eigenstates r/l,
// Z = Σ1 = |h><h| - |v><v| (phase flip). Trace preservation gives tr χ = 1.

const std::array<Matrix2c, 4>& chi_basis();

struct ChiMatrix {
  Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
  /// Total weight of negative eigenvalues removed by the CP projection.
  double clipped_mass = 0.0;
  /// Set when clipped_mass > kChiWarningMass.
  bool warning = false;
};

inline constexpr double kChiWarningMass = 0.1;

/// Linear inversion from the outputs for inputs h, v, p, r, followed by
/// projection onto the CP cone (eigenvalue clipping, trace renormalized to 1).
ChiMatrix qpt(const std::array<DensityMatrix, 4>& outputs);

/// χ_mn = Σ_k c_km conj(c_kn) with K_k = Σ_m c_km E_m.
ChiMatrix chi_from_kraus(std::span<const Matrix2c> kraus);

/// Model χ of a configuration: from the bin Kraus operators when bins are
/// distinguishable, otherwise from the exact outputs.
ChiMatrix theory_chi(const SchemeConfig& cfg);

Matrix2c apply_chi(const ChiMatrix& chi, const Matrix2c& rho);

/// Uhlmann fidelity between the trace-normalized χ matrices.
double process_fidelity(const ChiMatrix& a, const ChiMatrix& b);

StokesChannel channel_from_chi(const ChiMatrix& chi);

/// ‖Σ_mn χ_mn E_n† E_m - I‖_F.
double trace_preservation_residual(const ChiMatrix& chi);

}  // namespace depol

#endif  // DEPOL_TOMOGRAPHY_HPP
