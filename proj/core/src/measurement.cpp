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

#include "depol/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "depol/errors.hpp"
#include "depol/poisson.hpp"

namespace depol {

std::string_view label(Projector p) {
  switch (p) {
    case Projector::h: return "h";
    case Projector::v: return "v";
    case Projector::p: return "p";
    case Projector::m: return "m";
    case Projector::r: return "r";
    case Projector::l: return "l";
  }
  return "?";
}

Projector projector_from_label(std::string_view name) {
  for (Projector p : six_settings()) {
    if (label(p) == name) return p;
  }
  throw DomainError("unknown projector label '" + std::string(name) + "'");
}

const std::array<Projector, 6>& six_settings() {
  static constexpr std::array<Projector, 6> settings{Projector::h, Projector::v, Projector::p,
                                                     Projector::m, Projector::r, Projector::l};
  return settings;
}

Projector complement(Projector p) {
  switch (p) {
    case Projector::h: return Projector::v;
    case Projector::v: return Projector::h;
    case Projector::p: return Projector::m;
    case Projector::m: return Projector::p;
    case Projector::r: return Projector::l;
    case Projector::l: return Projector::r;
  }
  return p;
}

Matrix2c projector(Projector p) {
  const Vector2c& a = jones_from_label(label(p)).amplitudes();
  return a * a.adjoint();
}

std::vector<double> probabilities(const DensityMatrix& rho, std::span<const Projector> settings) {
  std::vector<double> out;
  out.reserve(settings.size());
  for (Projector p : settings) {
    out.push_back(std::clamp((rho.matrix() * projector(p)).trace().real(), 0.0, 1.0));
  }
  return out;
}

MeasurementRecord sample_counts(const DensityMatrix& rho, std::span<const Projector> settings,
                                std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw DomainError("shots per setting must be >= 1");
  MeasurementRecord rec;
  rec.settings.assign(settings.begin(), settings.end());
  rec.shots = shots;
  rec.seed = seed;
  std::mt19937_64 gen(seed);
  for (double prob : probabilities(rho, settings)) {
    rec.counts.push_back(sample_poisson(gen, static_cast<double>(shots) * prob));
  }
  return rec;
}

MeasurementRecord exact_counts(const DensityMatrix& rho, std::span<const Projector> settings,
                               std::uint64_t shots) {
  if (shots == 0) throw DomainError("shots per setting must be >= 1");
  MeasurementRecord rec;
  rec.settings.assign(settings.begin(), settings.end());
  rec.shots = shots;
  rec.exact = true;
  for (double prob : probabilities(rho, settings)) {
    rec.counts.push_back(static_cast<std::uint64_t>(std::llround(static_cast<double>(shots) * prob)));
  }
  return rec;
}

}  // namespace depol
