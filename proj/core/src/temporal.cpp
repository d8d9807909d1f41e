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

#include "depol/temporal.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "depol/errors.hpp"

namespace depol {

namespace {

bool is_unitary(const Matrix2c& u) {
  return u.allFinite() &&
         (u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= kNormTolerance;
}

Matrix2c rotation(double angle_deg) {
  const auto [c, s] = cos_sin_deg(angle_deg);
  Matrix2c r;
  r << c, -s, s, c;
  return r;
}

void require_unit_norm(const TimeBinState& st) {
  const double n = st.total_norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw NormalizationError("time-bin state has total norm " + std::to_string(n));
  }
}

}  // namespace

std::pair<double, double> cos_sin_deg(double angle_deg) {
  const double reduced = std::fmod(angle_deg, 360.0);
  const double quarter = reduced / 90.0;
  if (quarter == std::floor(quarter)) {
    switch ((static_cast<int>(quarter) % 4 + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double rad = reduced * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

OpticalElement OpticalElement::crystal(double angle_deg, int delay_bins) {
  OpticalElement el{ElementKind::crystal, angle_deg, delay_bins, Matrix2c::Identity()};
  el.validate();
  return el;
}

OpticalElement OpticalElement::half_wave_plate(double angle_deg) {
  OpticalElement el{ElementKind::half_wave_plate, angle_deg, 0, Matrix2c::Identity()};
  el.validate();
  return el;
}

OpticalElement OpticalElement::quarter_wave_plate(double angle_deg) {
  OpticalElement el{ElementKind::quarter_wave_plate, angle_deg, 0, Matrix2c::Identity()};
  el.validate();
  return el;
}

OpticalElement OpticalElement::general(const Matrix2c& u) {
  OpticalElement el{ElementKind::general_unitary, 0.0, 0, u};
  el.validate();
  return el;
}

void OpticalElement::validate() const {
  if (!std::isfinite(angle_deg)) {
    throw InvalidElementError("element angle is not finite");
  }
  switch (kind) {
    case ElementKind::crystal:
      if (delay_bins < 1) {
        throw InvalidElementError("crystal delay must be >= 1 bin, got " +
                                  std::to_string(delay_bins));
      }
      break;
    case ElementKind::half_wave_plate:
    case ElementKind::quarter_wave_plate:
      if (delay_bins != 0) {
        throw InvalidElementError("wave plates carry no delay");
      }
      break;
    case ElementKind::general_unitary:
      if (delay_bins != 0) {
        throw InvalidElementError("general unitary elements carry no delay");
      }
      if (!is_unitary(unitary)) {
        throw InvalidElementError("general element matrix is not unitary");
      }
      break;
  }
}

void SchemeConfig::validate() const {
  if (elements.empty()) {
    throw InvalidElementError("scheme configuration has no elements");
  }
  if (!(coherence >= 0.0 && coherence < 1.0)) {
    throw DomainError("coherence must lie in [0, 1), got " + std::to_string(coherence));
  }
  for (const auto& el : elements) el.validate();
}

TimeBinState::TimeBinState(Bins bins) : bins_(std::move(bins)) {}

double TimeBinState::total_norm() const {
  double n = 0.0;
  for (const auto& [t, a] : bins_) n += a.squaredNorm();
  return n;
}

Vector2c TimeBinState::amplitude(BinIndex t) const {
  const auto it = bins_.find(t);
  return it == bins_.end() ? Vector2c::Zero() : it->second;
}

Matrix2c half_wave_plate_matrix(double angle_deg) {
  const auto [c, s] = cos_sin_deg(2.0 * angle_deg);
  Matrix2c m;
  m << c, s, s, -c;
  return m;
}

Matrix2c quarter_wave_plate_matrix(double angle_deg) {
  Matrix2c retarder = Matrix2c::Zero();
  retarder(0, 0) = 1.0;
  retarder(1, 1) = Complex(0.0, 1.0);
  return rotation(angle_deg) * retarder * rotation(-angle_deg);
}

TimeBinState initial_state(const JonesVector& j) {
  return TimeBinState({{0, j.amplitudes()}});
}

TimeBinState apply_crystal(const TimeBinState& st, double axis_deg, int delay) {
  if (delay < 1) {
    throw InvalidElementError("crystal delay must be >= 1 bin, got " + std::to_string(delay));
  }
  if (!std::isfinite(axis_deg)) {
    throw InvalidElementError("crystal angle is not finite");
  }
  const auto [c, s] = cos_sin_deg(axis_deg);
  const Vector2c slow(c, s);
  const Vector2c fast(-s, c);
  TimeBinState::Bins out;
  for (const auto& [t, a] : st.bins()) {
    // Axis vectors are real, so the projection is a plain transpose product.
    const Complex slow_amp = slow.transpose() * a;
    const Complex fast_amp = fast.transpose() * a;
    auto add = [&out](BinIndex bin, const Vector2c& v) {
      auto [it, inserted] = out.try_emplace(bin, v);
      if (!inserted) it->second += v;
    };
    add(t + static_cast<BinIndex>(delay), slow * slow_amp);
    add(t, fast * fast_amp);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.squaredNorm() < kBinPruneThreshold; });
  return TimeBinState(std::move(out));
}

TimeBinState apply_unitary(const TimeBinState& st, const Matrix2c& u) {
  TimeBinState::Bins out;
  for (const auto& [t, a] : st.bins()) out.emplace(t, u * a);
  return TimeBinState(std::move(out));
}

TimeBinState apply_waveplate(const TimeBinState& st, ElementKind kind, double angle_deg) {
  switch (kind) {
    case ElementKind::half_wave_plate:
      return apply_unitary(st, half_wave_plate_matrix(angle_deg));
    case ElementKind::quarter_wave_plate:
      return apply_unitary(st, quarter_wave_plate_matrix(angle_deg));
    default:
      throw InvalidElementError("apply_waveplate needs a half- or quarter-wave plate");
  }
}

TimeBinState apply_element(const TimeBinState& st, const OpticalElement& el) {
  switch (el.kind) {
    case ElementKind::crystal:
      return apply_crystal(st, el.angle_deg, el.delay_bins);
    case ElementKind::half_wave_plate:
    case ElementKind::quarter_wave_plate:
      return apply_waveplate(st, el.kind, el.angle_deg);
    case ElementKind::general_unitary:
      if (!is_unitary(el.unitary)) {
        throw InvalidElementError("general element matrix is not unitary");
      }
      return apply_unitary(st, el.unitary);
  }
  throw InvalidElementError("unknown element kind");
}

TimeBinState propagate(const SchemeConfig& cfg, const JonesVector& j) {
  cfg.validate();
  TimeBinState st = initial_state(j);
  for (const auto& el : cfg.elements) st = apply_element(st, el);
  return st;
}

DensityMatrix collapse(const TimeBinState& st) {
  require_unit_norm(st);
  Matrix2c rho = Matrix2c::Zero();
  for (const auto& [t, a] : st.bins()) rho += a * a.adjoint();
  return DensityMatrix(rho);
}

DensityMatrix collapse_with_coherence(const TimeBinState& st, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("coherence must lie in [0, 1), got " + std::to_string(gamma));
  }
  if (gamma == 0.0) return collapse(st);
  require_unit_norm(st);
  const double log_gamma = std::log(gamma);
  Matrix2c rho = Matrix2c::Zero();
  for (const auto& [t, a] : st.bins()) {
    for (const auto& [u, b] : st.bins()) {
      const double dt = static_cast<double>(t) - static_cast<double>(u);
      const double weight = std::exp(log_gamma * dt * dt);
      if (weight == 0.0) continue;
      rho += weight * (a * b.adjoint());
    }
  }
  return DensityMatrix(rho);
}

DensityMatrix run_scheme(const SchemeConfig& cfg, const JonesVector& j) {
  const TimeBinState st = propagate(cfg, j);
  return cfg.coherence > 0.0 ? collapse_with_coherence(st, cfg.coherence) : collapse(st);
}

std::vector<Matrix2c> kraus_operators(const SchemeConfig& cfg) {
  cfg.validate();
  if (cfg.coherence != 0.0) {
    throw DomainError("bin Kraus operators exist only for fully distinguishable bins");
  }
  TimeBinState from_h = initial_state(basis::h());
  TimeBinState from_v = initial_state(basis::v());
  for (const auto& el : cfg.elements) {
    from_h = apply_element(from_h, el);
    from_v = apply_element(from_v, el);
  }
  std::map<BinIndex, Matrix2c> ops;
  for (const auto& [t, a] : from_h.bins()) {
    ops.try_emplace(t, Matrix2c::Zero()).first->second.col(0) = a;
  }
  for (const auto& [t, a] : from_v.bins()) {
    ops.try_emplace(t, Matrix2c::Zero()).first->second.col(1) = a;
  }
  std::vector<Matrix2c> out;
  out.reserve(ops.size());
  for (auto& [t, k] : ops) out.push_back(k);
  return out;
}

}  // namespace depol
