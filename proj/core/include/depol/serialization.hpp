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

#ifndef DEPOL_SERIALIZATION_HPP
#define DEPOL_SERIALIZATION_HPP

// JSON wire formats.
//
//   SchemeConfig      {"coherence": γ, "elements": [{"kind": "crystal"|"hwp"|"qwp",
//                      "angle_deg": a, "delay_bins": d}, ...]}   (propagation order)
//   StokesChannel     {"m": [[..],[..],[..]] (row-major), "b": [..]}
//   MeasurementRecord {"settings": ["h", ...], "counts": [...], "shots": N, "seed": u64}
//   ChiMatrix         {"basis": ["I","X","Y","Z"], "re": 4x4, "im": 4x4, "clipped_mass": r}
//
// Parsers throw InvalidElementError (configs) or DomainError (everything else)
// on malformed input.

#include <string>

#include "depol/channels.hpp"
#include "depol/measurement.hpp"
#include "depol/temporal.hpp"
#include "depol/tomography.hpp"

namespace depol {

std::string scheme_config_to_json(const SchemeConfig& cfg, int indent = 2);
SchemeConfig scheme_config_from_json(const std::string& text);

std::string channel_to_json(const StokesChannel& c, int indent = 2);
StokesChannel channel_from_json(const std::string& text);

std::string record_to_json(const MeasurementRecord& rec, int indent = 2);
MeasurementRecord record_from_json(const std::string& text);

std::string chi_to_json(const ChiMatrix& chi, int indent = 2);
ChiMatrix chi_from_json(const std::string& text);

}  // namespace depol

#endif  // DEPOL_SERIALIZATION_HPP
