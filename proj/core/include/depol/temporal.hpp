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

#ifndef DEPOL_TEMPORAL_HPP
#define DEPOL_TEMPORAL_HPP

// Time-bin propagation model.
//
// A wave packet is tracked as a set of polarization amplitudes indexed by an
// integer time bin, in units of the shortest walk-off in the assembly. A
// crystal delays the component along its slow axis by `delay_bins` and leaves
// the fast component in place; amplitudes that land in the same bin add
// coherently. Wave plates act on every bin independently. Detection traces
// the time bins out, giving ρ = Σ_t a_t a_t†.
//
// Propagation (carrier) phase per unit delay is not modelled. Every path that
// reaches a given bin has accumulated the same total delay, so such a phase is
// a per-bin factor e^{iφt} and drops out of the traced state.

#include <cstdint>
#include <map>
#include <vector>

#include "depol/polarization.hpp"

namespace depol {

using BinIndex = std::uint64_t;

enum class ElementKind { crystal, half_wave_plate, quarter_wave_plate, general_unitary };

struct OpticalElement {
  ElementKind kind = ElementKind::crystal;
  /// Slow axis (crystal) or fast axis (wave plate) from horizontal, degrees.
  double angle_deg = 0.0;
  /// Walk-off in bins; crystals only, must be >= 1.
  int delay_bins = 0;
  /// Jones matrix; general_unitary only.
  Matrix2c unitary = Matrix2c::Identity();

  static OpticalElement crystal(double angle_deg, int delay_bins);
  static OpticalElement half_wave_plate(double angle_deg);
  static OpticalElement quarter_wave_plate(double angle_deg);
  /// Throws InvalidElementError if u is not unitary within 1e-12.
  static OpticalElement general(const Matrix2c& u);

  /// Throws InvalidElementError on a crystal delay < 1, a non-finite angle or
  /// a non-unitary matrix.
  void validate() const;
};

struct SchemeConfig {
  /// Propagation order.
  std::vector<OpticalElement> elements;
  /// Overlap between neighbouring time bins, γ in [0, 1). Zero means fully
  /// distinguishable bins.
  double coherence = 0.0;

  void validate() const;
};

class TimeBinState {
 public:
  using Bins = std::map<BinIndex, Vector2c>;

  TimeBinState() = default;
  explicit TimeBinState(Bins bins);

  const Bins& bins() const { return bins_; }
  /// Σ_t <a_t|a_t>.
  double total_norm() const;
  /// Zero vector for unoccupied bins.
  Vector2c amplitude(BinIndex t) const;

 private:
  Bins bins_;
};

/// Bins whose squared norm falls below this are dropped after a crystal.
inline constexpr double kBinPruneThreshold = 1e-30;

/// Real Jones matrices of the wave plates (fixed global phase).
/// HWP(θ) = [[cos2θ, sin2θ], [sin2θ, -cos2θ]].
Matrix2c half_wave_plate_matrix(double angle_deg);
/// QWP(θ) = R(θ) diag(1, i) R(-θ).
Matrix2c quarter_wave_plate_matrix(double angle_deg);

/// (cos, sin) of an angle in degrees; exact at multiples of 90°.
std::pair<double, double> cos_sin_deg(double angle_deg);

TimeBinState initial_state(const JonesVector& j);
TimeBinState apply_crystal(const TimeBinState& st, double axis_deg, int delay);
TimeBinState apply_waveplate(const TimeBinState& st, ElementKind kind, double angle_deg);
TimeBinState apply_unitary(const TimeBinState& st, const Matrix2c& u);
TimeBinState apply_element(const TimeBinState& st, const OpticalElement& el);
TimeBinState propagate(const SchemeConfig& cfg, const JonesVector& j);

/// ρ = Σ_t a_t a_t†. Throws NormalizationError unless the total norm is 1.
DensityMatrix collapse(const TimeBinState& st);

/// ρ = Σ_{t,t'} γ^((t-t')²) a_t a_t'†. The kernel is the overlap of Gaussian
/// wave packets displaced by |t - t'| bins; γ = 0 reproduces collapse().
DensityMatrix collapse_with_coherence(const TimeBinState& st, double gamma);

/// Propagates j through the configuration and traces out time.
DensityMatrix run_scheme(const SchemeConfig& cfg, const JonesVector& j);

/// One Kraus operator per occupied output bin, K_t = [a_t(h) a_t(v)], so that
/// run_scheme(cfg, j) = Σ_t K_t |j><j| K_t†. Requires cfg.coherence == 0.
std::vector<Matrix2c> kraus_operators(const SchemeConfig& cfg);

}  // namespace depol

#endif  // DEPOL_TEMPORAL_HPP
