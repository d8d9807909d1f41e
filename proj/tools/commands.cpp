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

#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "depol/errors.hpp"
#include "depol/measurement.hpp"
#include "depol/serialization.hpp"

namespace depol::cli {

using nlohmann::json;

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

json density_json(const DensityMatrix& rho) {
  json out;
  out["re"] = {{rho(0, 0).real(), rho(0, 1).real()}, {rho(1, 0).real(), rho(1, 1).real()}};
  out["im"] = {{rho(0, 0).imag(), rho(0, 1).imag()}, {rho(1, 0).imag(), rho(1, 1).imag()}};
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw Error("failed writing '" + path + "'");
}

void print_error(std::ostream& err, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  err << extra.dump() << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

AngleRange parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw DomainError("angle range must look like start:stop:step, got '" + std::string(text) + "'");
  }
  AngleRange r{parse_number(parts[0], "range start"), parse_number(parts[1], "range stop"),
               parse_number(parts[2], "range step")};
  if (!(r.step > 0.0)) throw DomainError("angle range step must be positive");
  if (r.start > r.stop) throw DomainError("angle range start exceeds stop");
  return r;
}

std::vector<double> angle_grid(const AngleRange& range) {
  const auto count = static_cast<long>(std::floor((range.stop - range.start) / range.step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count + 1));
  for (long k = 0; k <= count; ++k) grid.push_back(range.start + static_cast<double>(k) * range.step);
  return grid;
}

std::vector<NamedInput> parse_inputs(std::string_view text) {
  std::vector<NamedInput> inputs;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) continue;
    if (item == "triad+" || item == "triad-") {
      const double s1 = (item == "triad+" ? 1.0 : -1.0) / std::sqrt(3.0);
      const auto triad = mutually_unbiased_triad(s1);
      for (int k = 0; k < 3; ++k) {
        inputs.push_back({std::string(item) + std::to_string(k + 1), jones_from_stokes(triad[k])});
      }
    } else if (item.starts_with("stokes:")) {
      const auto parts = split(item.substr(7), '/');
      if (parts.size() != 3) throw DomainError("stokes input must be stokes:s1/s2/s3");
      const StokesVector s{parse_number(parts[0], "s1"), parse_number(parts[1], "s2"),
                           parse_number(parts[2], "s3")};
      inputs.push_back({std::string(item), jones_from_stokes(s)});
    } else {
      inputs.push_back({std::string(item), jones_from_label(item)});
    }
  }
  if (inputs.empty()) throw DomainError("no inputs given");
  return inputs;
}

SchemeSelection select_scheme(std::string_view name, double theta_deg, double gamma) {
  const SchemeKind kind = SchemeKind::parse(name, theta_deg);
  SchemeSelection sel{kind.name(), theta_deg, build_scheme(kind)};
  sel.config.coherence = gamma;
  sel.config.validate();
  return sel;
}

SchemeSelection select_config_file(const std::string& path) {
  return {"config:" + path, 0.0, scheme_config_from_json(read_file(path))};
}

std::string sweep_csv(const SweepSpec& spec) {
  std::string out = "theta_deg,input,s1,s2,s3,dop\n";
  for (double theta : angle_grid(spec.range)) {
    SchemeConfig cfg = build_scheme({spec.scheme.type, theta});
    cfg.coherence = spec.gamma;
    for (const auto& input : spec.inputs) {
      const DensityMatrix rho = run_scheme(cfg, input.state);
      const StokesVector s = stokes_from_density(rho);
      out += format_double(theta) + ',' + input.label + ',' + format_double(s.s1) + ',' +
             format_double(s.s2) + ',' + format_double(s.s3) + ',' + format_double(dop(rho)) + '\n';
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    pts.emplace_back(radius * std::cos(phi), radius * std::sin(phi), z);
  }
  return pts;
}

std::string map_json(const SchemeSelection& sel, int n_samples) {
  if (n_samples < 3) throw DomainError("map needs at least 3 samples");
  const StokesChannel channel = extract_channel(sel.config);
  const IsotropyReport iso = isotropy_report(channel);
  json out;
  out["scheme"] = sel.name;
  out["theta_deg"] = sel.theta_deg;
  out["channel"] = json::parse(channel_to_json(channel));
  out["isotropy"] = {{"is_isotropic", iso.is_isotropic}, {"shrink", iso.shrink},
                     {"residual", iso.residual}};
  json surface = json::array();
  json points = json::array();
  for (const auto& s : fibonacci_sphere(n_samples)) {
    surface.push_back(vec_json(s));
    points.push_back(vec_json(channel.m * s + channel.b));
  }
  out["surface"] = std::move(surface);
  out["points"] = std::move(points);
  return out.dump(2) + '\n';
}

TomoReport run_tomography(const TomoSpec& spec) {
  const SchemeConfig& cfg = spec.scheme.config;
  const std::array<std::string, 4> labels{"h", "v", "p", "r"};
  std::array<DensityMatrix, 4> estimates{DensityMatrix::maximally_mixed(), DensityMatrix::maximally_mixed(),
                                         DensityMatrix::maximally_mixed(), DensityMatrix::maximally_mixed()};
  TomoReport report;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    TomoInputReport in;
    in.input = labels[k];
    in.model = run_scheme(cfg, jones_from_label(labels[k]));
    in.record = spec.exact ? exact_counts(in.model, six_settings(), spec.shots)
                           : sample_counts(in.model, six_settings(), spec.shots, spec.seed + k);
    const MleResult fit = qst_mle_detailed(in.record);
    in.estimate = fit.rho;
    in.mle_iterations = fit.iterations;
    estimates[k] = fit.rho;
    report.inputs.push_back(std::move(in));
  }
  report.chi = qpt(estimates);
  report.model_chi = theory_chi(cfg);
  report.process_fidelity = process_fidelity(report.chi, report.model_chi);
  return report;
}

std::string tomo_json(const TomoSpec& spec, const TomoReport& report) {
  json out;
  out["scheme"] = spec.scheme.name;
  out["theta_deg"] = spec.scheme.theta_deg;
  out["coherence"] = spec.scheme.config.coherence;
  out["shots"] = spec.shots;
  out["exact"] = spec.exact;
  out["seed"] = spec.seed;
  json inputs = json::array();
  for (const auto& in : report.inputs) {
    json j;
    j["input"] = in.input;
    j["record"] = json::parse(record_to_json(in.record));
    j["rho"] = density_json(in.estimate);
    j["dop"] = dop(in.estimate);
    j["model_dop"] = dop(in.model);
    j["state_fidelity"] = state_fidelity(in.estimate, in.model);
    j["mle_iterations"] = in.mle_iterations;
    inputs.push_back(std::move(j));
  }
  out["inputs"] = std::move(inputs);
  out["chi"] = json::parse(chi_to_json(report.chi));
  out["model_chi"] = json::parse(chi_to_json(report.model_chi));
  out["process_fidelity"] = report.process_fidelity;
  out["trace_preservation_residual"] = trace_preservation_residual(report.chi);
  return out.dump(2) + '\n';
}

std::string compare_csv(const AngleRange& range) {
  struct Probe {
    double s1_sq;
    JonesVector state;
  };
  const std::array<Probe, 3> probes{{
      {0.0, basis::p()},
      {1.0 / 3.0, jones_from_stokes(mutually_unbiased_triad(-1.0 / std::sqrt(3.0))[0])},
      {1.0, basis::h()},
  }};
  std::string out = "theta_deg,s1_sq,engine_dop,analytic_dop,abs_diff\n";
  for (double theta : angle_grid(range)) {
    const SchemeConfig cfg = build_scheme({SchemeType::scheme2, theta});
    for (const auto& probe : probes) {
      const DensityMatrix rho = run_scheme(cfg, probe.state);
      const double engine = dop(rho);
      const double s1 = stokes_from_density(density_from_jones(probe.state)).s1;
      const double analytic = analytic_scheme2_dop(theta, s1);
      out += format_double(theta) + ',' + format_double(probe.s1_sq) + ',' + format_double(engine) +
             ',' + format_double(analytic) + ',' + format_double(std::abs(engine - analytic)) + '\n';
    }
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-bin simulator for birefringent depolarizers and polarization-qubit tomography"};
  app.require_subcommand(1);

  std::string scheme_name;
  std::string config_path;
  std::string range_text = "0:90:1";
  std::string inputs_text = "h,p,r";
  std::string out_path;
  double theta = 0.0;
  double gamma = 0.0;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  bool exact = false;
  int samples = 200;

  auto* sweep = app.add_subcommand("sweep", "DOP and Stokes output versus scheme angle (CSV)");
  sweep->add_option("--scheme", scheme_name, "scheme name")->required();
  auto* sweep_range = sweep->add_option("--theta-range", range_text, "start:stop:step in degrees");
  sweep->add_option("--theta", theta, "single scheme angle in degrees")->excludes(sweep_range);
  sweep->add_option("--inputs", inputs_text, "comma-separated inputs");
  sweep->add_option("--gamma", gamma, "bin coherence in [0,1)");
  sweep->add_option("--out", out_path, "output file (default stdout)");

  auto* map = app.add_subcommand("map", "Stokes channel and image of the Poincare sphere (JSON)");
  auto* map_scheme = map->add_option("--scheme", scheme_name, "scheme name");
  auto* map_config = map->add_option("--config", config_path, "SchemeConfig JSON file");
  map_scheme->excludes(map_config);
  map->add_option("--theta", theta, "scheme angle in degrees");
  map->add_option("--gamma", gamma, "bin coherence in [0,1)");
  map->add_option("--samples", samples, "number of sphere samples");
  map->add_option("--out", out_path, "output file (default stdout)");

  auto* tomo = app.add_subcommand("tomo", "simulated state and process tomography (JSON)");
  auto* tomo_scheme = tomo->add_option("--scheme", scheme_name, "scheme name");
  auto* tomo_config = tomo->add_option("--config", config_path, "SchemeConfig JSON file");
  tomo_scheme->excludes(tomo_config);
  tomo->add_option("--theta", theta, "scheme angle in degrees");
  tomo->add_option("--gamma", gamma, "bin coherence in [0,1)");
  auto* shots_opt = tomo->add_option("--shots", shots, "counts per analyzer setting");
  tomo->add_flag("--exact", exact, "use round(N p) instead of Poisson counts");
  tomo->add_option("--seed", seed, "base seed");
  tomo->add_option("--out", out_path, "output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "scheme 2 engine DOP versus closed form (CSV)");
  compare->add_option("--theta-range", range_text, "start:stop:step in degrees");
  compare->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, e.what());
    return 2;
  }

  auto selection = [&]() {
    if (!config_path.empty()) {
      SchemeSelection sel = select_config_file(config_path);
      if (gamma != 0.0) sel.config.coherence = gamma;
      sel.config.validate();
      return sel;
    }
    if (scheme_name.empty()) throw DomainError("either --scheme or --config is required");
    return select_scheme(scheme_name, theta, gamma);
  };

  try {
    if (*sweep) {
      const AngleRange range = sweep->count("--theta") > 0 ? AngleRange{theta, theta, 1.0}
                                                           : parse_range(range_text);
      SweepSpec spec{SchemeKind::parse(scheme_name), range, parse_inputs(inputs_text), gamma};
      emit(sweep_csv(spec), out_path, out);
    } else if (*map) {
      emit(map_json(selection(), samples), out_path, out);
    } else if (*tomo) {
      TomoSpec spec{selection(), shots, exact, seed};
      if (exact && shots_opt->count() == 0) spec.shots = kExactShots;
      if (spec.shots == 0) throw DomainError("--shots must be >= 1");
      emit(tomo_json(spec, run_tomography(spec)), out_path, out);
    } else if (*compare) {
      emit(compare_csv(parse_range(range_text)), out_path, out);
    }
  } catch (const ConvergenceError& e) {
    print_error(err, e.what(),
                {{"best_gradient_norm", e.best().gradient_norm},
                 {"best_log_likelihood", e.best().log_likelihood}});
    return 3;
  } catch (const std::exception& e) {
    print_error(err, e.what());
    return 1;
  }
  return 0;
}

}  // namespace depol::cli
