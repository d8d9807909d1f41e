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

#ifndef DEPOL_TOOLS_COMMANDS_HPP
#define DEPOL_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "depol/channels.hpp"
#include "depol/polarization.hpp"
#include "depol/temporal.hpp"
#include "depol/tomography.hpp"

namespace depol::cli {

/// Shot count used by --exact when --shots is not given.
inline constexpr std::uint64_t kExactShots = 1'000'000'000'000ULL;

struct AngleRange {
  double start = 0.0;
  double stop = 90.0;
  double step = 1.0;
};

/// Parses "a:b:step"; requires step > 0 and a <= b.
AngleRange parse_range(std::string_view text);
/// start, start + step, ... up to stop inclusive (with 1e-9 step slack).
std::vector<double> angle_grid(const AngleRange& range);

struct NamedInput {
  std::string label;
  JonesVector state;
};

/// Comma-separated list of: a basis label (h v p m r l); "triad+" or
/// "triad-" for the mutually unbiased triad with S1 = ±1/√3 (labels
/// triad-1..3 / triad+1..3); or "stokes:s1/s2/s3" for any unit Stokes vector.
std::vector<NamedInput> parse_inputs(std::string_view text);

/// A configuration plus the label/angle reported alongside it.
struct SchemeSelection {
  std::string name;
  double theta_deg = 0.0;
  SchemeConfig config;
};

SchemeSelection select_scheme(std::string_view name, double theta_deg, double gamma);
SchemeSelection select_config_file(const std::string& path);

struct SweepSpec {
  SchemeKind scheme;
  AngleRange range;
  std::vector<NamedInput> inputs;
  double gamma = 0.0;
};

/// Header theta_deg,input,s1,s2,s3,dop and one row per (angle, input).
std::string sweep_csv(const SweepSpec& spec);

/// Deterministic Fibonacci lattice of n unit vectors.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

/// Channel (M, b), its isotropy summary and the images of n_samples sphere
/// points. Throws DomainError if n_samples < 3.
std::string map_json(const SchemeSelection& sel, int n_samples);

struct TomoSpec {
  SchemeSelection scheme;
  std::uint64_t shots = 100000;
  bool exact = false;
  std::uint64_t seed = 1;
};

struct TomoInputReport {
  std::string input;
  MeasurementRecord record;
  DensityMatrix estimate = DensityMatrix::maximally_mixed();
  DensityMatrix model = DensityMatrix::maximally_mixed();
  int mle_iterations = 0;
};

struct TomoReport {
  std::vector<TomoInputReport> inputs;
  ChiMatrix chi;
  ChiMatrix model_chi;
  double process_fidelity = 0.0;
};

/// Simulates counts for h, v, p, r through the scheme (input k uses seed + k),
/// reconstructs each output by maximum likelihood, then runs process tomography.
TomoReport run_tomography(const TomoSpec& spec);
std::string tomo_json(const TomoSpec& spec, const TomoReport& report);

/// Engine DOP against the closed form for scheme 2 at S1² in {0, 1/3, 1}.
/// Header theta_deg,s1_sq,engine_dop,analytic_dop,abs_diff.
std::string compare_csv(const AngleRange& range);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Parses and dispatches a command line. Results go to --out (or `out`);
/// failures print {"error": ...} to `err` and return nonzero.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depol::cli

#endif  // DEPOL_TOOLS_COMMANDS_HPP
