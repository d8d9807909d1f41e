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

#ifndef DEPOL_MEASUREMENT_HPP
#define DEPOL_MEASUREMENT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "depol/polarization.hpp"

namespace depol {

/// Analyzer settings: projection onto one of the six cardinal states.
enum class Projector { h, v, p, m, r, l };

std::string_view label(Projector p);
/// Throws DomainError on an unknown label.
Projector projector_from_label(std::string_view label);

/// h, v, p, m, r, l.
const std::array<Projector, 6>& six_settings();

/// The partner outcome of the same analyzer basis (h<->v, p<->m, r<->l).
Projector complement(Projector p);

/// Rank-1 projector onto the named state.
Matrix2c projector(Projector p);

/// Born-rule probabilities tr(ρ Π_j), clamped to [0, 1].
std::vector<double> probabilities(const DensityMatrix& rho, std::span<const Projector> settings);

struct MeasurementRecord {
  std::vector<Projector> settings;
  std::vector<std::uint64_t> counts;
  /// Acquisition size N per setting; the mean count is N p_j.
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  /// Counts are round(N p_j) rather than Poisson draws.
  bool exact = false;
};

/// Poisson counts with mean N p_j, one independent draw per setting, from a
/// std::mt19937_64 stream seeded with `seed`. Identical inputs give identical
/// records. Throws DomainError if shots == 0.
MeasurementRecord sample_counts(const DensityMatrix& rho, std::span<const Projector> settings,
                                std::uint64_t shots, std::uint64_t seed);

/// Noiseless limit: counts[j] = round(N p_j).
MeasurementRecord exact_counts(const DensityMatrix& rho, std::span<const Projector> settings,
                               std::uint64_t shots);

}  // namespace depol

#endif  // DEPOL_MEASUREMENT_HPP
