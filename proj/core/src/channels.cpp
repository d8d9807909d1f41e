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

#include "depol/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "depol/errors.hpp"

namespace depol {

namespace {

constexpr double kTriadTolerance = 1e-12;

struct SchemeName {
  SchemeType type;
  std::string_view name;
};

constexpr std::array<SchemeName, 7> kSchemeNames{{
    {SchemeType::scheme1, "scheme1"},
    {SchemeType::scheme2, "scheme2"},
    {SchemeType::scheme3, "scheme3"},
    {SchemeType::lyot, "lyot"},
    {SchemeType::single_crystal, "single_crystal"},
    {SchemeType::isotropic_triple, "isotropic_triple"},
    {SchemeType::identity, "identity"},
}};

void append_dephasing_unit(std::vector<OpticalElement>& els, double theta_deg, double axis_deg,
                           int delay) {
  els.push_back(OpticalElement::crystal(axis_deg, delay));
  els.push_back(OpticalElement::half_wave_plate(axis_deg + 0.5 * theta_deg));
  els.push_back(OpticalElement::crystal(axis_deg + 90.0, delay));
}

}  // namespace

std::string SchemeKind::name() const {
  for (const auto& entry : kSchemeNames) {
    if (entry.type == type) return std::string(entry.name);
  }
  return "unknown";
}

SchemeKind SchemeKind::parse(std::string_view name, double angle_deg) {
  if (!std::isfinite(angle_deg)) {
    throw DomainError("scheme angle must be finite");
  }
  for (const auto& entry : kSchemeNames) {
    if (entry.name == name) return {entry.type, angle_deg};
  }
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

SchemeConfig build_scheme(const SchemeKind& kind) {
  const double theta = kind.angle_deg;
  if (!std::isfinite(theta)) {
    throw DomainError("scheme angle must be finite");
  }
  SchemeConfig cfg;
  auto& els = cfg.elements;
  switch (kind.type) {
    case SchemeType::scheme1:
      els = {OpticalElement::half_wave_plate(0.5 * theta), OpticalElement::crystal(0.0, 1),
             OpticalElement::half_wave_plate(-0.5 * theta), OpticalElement::crystal(90.0, 1)};
      break;
    case SchemeType::scheme2:
      els = {OpticalElement::crystal(0.0, 1), OpticalElement::quarter_wave_plate(theta),
             OpticalElement::crystal(90.0, 1)};
      break;
    case SchemeType::scheme3:
      els = {OpticalElement::crystal(0.0, 1), OpticalElement::quarter_wave_plate(theta),
             OpticalElement::crystal(90.0, 2)};
      break;
    case SchemeType::lyot:
      els = {OpticalElement::crystal(0.0, 1), OpticalElement::crystal(45.0, 2)};
      break;
    case SchemeType::single_crystal:
      els = {OpticalElement::crystal(theta, 1)};
      break;
    case SchemeType::isotropic_triple:
      append_dephasing_unit(els, theta, 0.0, 1);
      append_dephasing_unit(els, theta, 45.0, 3);
      els.push_back(OpticalElement::quarter_wave_plate(45.0));
      append_dephasing_unit(els, theta, 0.0, 9);
      break;
    case SchemeType::identity:
      els = {OpticalElement::crystal(0.0, 1), OpticalElement::crystal(90.0, 1)};
      break;
  }
  return cfg;
}

SchemeConfig scheme1_rotated_crystal(double theta_deg) {
  SchemeConfig cfg;
  cfg.elements = {OpticalElement::crystal(theta_deg, 1), OpticalElement::crystal(90.0, 1)};
  return cfg;
}

StokesChannel channel_from_outputs(const std::array<DensityMatrix, 4>& outputs) {
  const Eigen::Vector3d sh = stokes_from_density(outputs[0]).vec();
  const Eigen::Vector3d sv = stokes_from_density(outputs[1]).vec();
  const Eigen::Vector3d sp = stokes_from_density(outputs[2]).vec();
  const Eigen::Vector3d sr = stokes_from_density(outputs[3]).vec();
  StokesChannel c;
  c.b = 0.5 * (sh + sv);
  c.m.col(0) = sh - c.b;
  c.m.col(1) = sp - c.b;
  c.m.col(2) = sr - c.b;
  return c;
}

std::array<DensityMatrix, 4> qpt_outputs(const SchemeConfig& cfg) {
  return {run_scheme(cfg, basis::h()), run_scheme(cfg, basis::v()), run_scheme(cfg, basis::p()),
          run_scheme(cfg, basis::r())};
}

StokesChannel extract_channel(const SchemeConfig& cfg) {
  return channel_from_outputs(qpt_outputs(cfg));
}

StokesChannel compose(const StokesChannel& outer, const StokesChannel& inner) {
  return {outer.m * inner.m, outer.m * inner.b + outer.b};
}

StokesChannel crystal_projection(double axis_deg) {
  const auto [c, s] = cos_sin_deg(2.0 * axis_deg);
  const Eigen::Vector3d u(c, s, 0.0);
  return {u * u.transpose(), Eigen::Vector3d::Zero()};
}

double analytic_scheme2_dop(double theta_deg, double s1) {
  if (!std::isfinite(s1) || std::abs(s1) > 1.0) {
    throw DomainError("|s1| must not exceed 1");
  }
  const double t = theta_deg * std::numbers::pi / 180.0;
  const double c4 = std::cos(4.0 * t);
  const double c8 = std::cos(8.0 * t);
  const double d2 = 0.25 * (19.0 / 8.0 + 1.5 * c4 + c8 / 8.0) +
                    0.25 * s1 * s1 * (-7.0 / 8.0 + 0.5 * c4 + 3.0 / 8.0 * c8);
  return std::sqrt(std::max(d2, 0.0));
}

std::array<StokesVector, 3> mutually_unbiased_triad(double s1_target) {
  // Rows of Q are orthonormal; its columns are the triad. The first row is
  // s1_target·(1,1,1), which is a unit vector only when 3 s1² = 1.
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  if (!std::isfinite(s1_target) || std::abs(std::abs(s1_target) - inv_sqrt3) > kTriadTolerance) {
    throw DomainError("an orthonormal Stokes triad with equal first components needs |s1| = 1/√3, "
                      "got " + std::to_string(s1_target));
  }
  const double s = std::copysign(inv_sqrt3, s1_target);
  const Eigen::Vector3d row0(s, s, s);
  // Gram-Schmidt from the fixed seed (0, 1, -1).
  Eigen::Vector3d row1(0.0, 1.0, -1.0);
  row1 -= row0.dot(row1) * row0;
  row1.normalize();
  const Eigen::Vector3d row2 = row0.cross(row1);
  std::array<StokesVector, 3> triad;
  for (int k = 0; k < 3; ++k) triad[k] = {row0(k), row1(k), row2(k)};
  return triad;
}

IsotropyReport isotropy_report(const StokesChannel& c, double tolerance) {
  const Eigen::Matrix3d gram = c.m.transpose() * c.m;
  const double lambda2 = gram.trace() / 3.0;
  IsotropyReport report;
  report.shrink = std::sqrt(std::max(lambda2, 0.0));
  report.residual = (gram - lambda2 * Eigen::Matrix3d::Identity()).norm() + c.b.norm();
  report.is_isotropic = report.residual < tolerance;
  return report;
}

}  // namespace depol
