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

#ifndef DEPOL_CHANNELS_HPP
#define DEPOL_CHANNELS_HPP

#include <array>
#include <string>
#include <string_view>

#include "depol/polarization.hpp"
#include "depol/temporal.hpp"

namespace depol {

/// Affine map s -> M s + b on Stokes space. Every qubit channel has this
/// form; the image of the Poincaré sphere is an ellipsoid.
struct StokesChannel {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();

  static StokesChannel identity() { return {}; }
  StokesVector apply(const StokesVector& s) const { return StokesVector::from(m * s.vec() + b); }
};

enum class SchemeType {
  scheme1,
  scheme2,
  scheme3,
  lyot,
  single_crystal,
  isotropic_triple,
  /// Compensated crystal pair; the angle is ignored.
  identity,
};

/// A named depolarizer assembly and its tuning angle in degrees (ignored by
/// lyot and identity).
struct SchemeKind {
  SchemeType type = SchemeType::scheme1;
  double angle_deg = 0.0;

  std::string name() const;
  /// Accepts "scheme1", "scheme2", "scheme3", "lyot", "single_crystal",
  /// "isotropic_triple", "identity"; throws DomainError otherwise.
  static SchemeKind parse(std::string_view name, double angle_deg = 0.0);
};

/// Element lists, with θ = kind.angle_deg:
///   scheme1(θ)          HWP(θ/2), C(0°,1), HWP(-θ/2), C(90°,1)
///   scheme2(θ)          C(0°,1), QWP(θ), C(90°,1)
///   scheme3(θ)          C(0°,1), QWP(θ), C(90°,2)
///   lyot                C(0°,1), C(45°,2)
///   single_crystal(φ)   C(φ,1)
///   isotropic_triple(θ) U(0°,1), U(45°,3), QWP(45°), U(0°,9)
///   identity            C(0°,1), C(90°,1)
/// where U(α,d) = C(α,d), HWP(α+θ/2), C(α+90°,d) partially dephases along
/// the Stokes axis of its first crystal. The 1:3:9 delays keep the three
/// stages on distinct time bins.
SchemeConfig build_scheme(const SchemeKind& kind);

/// Scheme 1 written with the first crystal physically rotated: C(θ,1), C(90°,1).
SchemeConfig scheme1_rotated_crystal(double theta_deg);

/// Reads (M, b) off the outputs for the inputs h, v, p, r in that order.
StokesChannel channel_from_outputs(const std::array<DensityMatrix, 4>& outputs);

/// Runs the four QPT inputs h, v, p, r through the configuration.
std::array<DensityMatrix, 4> qpt_outputs(const SchemeConfig& cfg);

StokesChannel extract_channel(const SchemeConfig& cfg);

/// Applies inner first, then outer.
StokesChannel compose(const StokesChannel& outer, const StokesChannel& inner);

/// Dephasing by a single long crystal at angle φ: s -> (s·û)û with
/// û = (cos 2φ, sin 2φ, 0).
StokesChannel crystal_projection(double axis_deg);

/// Closed-form output DOP of scheme 2 for an input with first Stokes
/// component s1. Throws DomainError if |s1| > 1.
double analytic_scheme2_dop(double theta_deg, double s1);

/// Three pairwise orthogonal unit Stokes vectors sharing the first component
/// s1_target. Only |s1_target| = 1/√3 admits such a triad; other values throw
/// DomainError.
std::array<StokesVector, 3> mutually_unbiased_triad(double s1_target);

struct IsotropyReport {
  bool is_isotropic = false;
  /// λ = √(tr(MᵀM)/3), the sphere shrink factor.
  double shrink = 0.0;
  /// ‖MᵀM - λ²I‖_F + |b|.
  double residual = 0.0;
};

IsotropyReport isotropy_report(const StokesChannel& c, double tolerance = 1e-6);

}  // namespace depol

#endif  // DEPOL_CHANNELS_HPP
