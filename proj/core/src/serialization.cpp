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

#include "depol/serialization.hpp"

#include "json.hpp"

#include "depol/errors.hpp"

namespace depol {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::crystal: return "crystal";
    case ElementKind::half_wave_plate: return "hwp";
    case ElementKind::quarter_wave_plate: return "qwp";
    case ElementKind::general_unitary: return "unitary";
  }
  return "?";
}

json matrix_json(const auto& m, auto&& entry) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <int N>
Eigen::Matrix<double, N, N> read_square(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw DomainError(std::string(what) + " must be a " + std::to_string(N) + "x" +
                      std::to_string(N) + " array");
  }
  Eigen::Matrix<double, N, N> m;
  for (int r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N) {
      throw DomainError(std::string(what) + " row has the wrong length");
    }
    for (int c = 0; c < N; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

std::string scheme_config_to_json(const SchemeConfig& cfg, int indent) {
  json out;
  out["coherence"] = cfg.coherence;
  json elements = json::array();
  for (const auto& el : cfg.elements) {
    json e;
    e["kind"] = kind_name(el.kind);
    e["angle_deg"] = el.angle_deg;
    if (el.kind == ElementKind::crystal) e["delay_bins"] = el.delay_bins;
    if (el.kind == ElementKind::general_unitary) {
      e["re"] = matrix_json(el.unitary, [](Complex z) { return z.real(); });
      e["im"] = matrix_json(el.unitary, [](Complex z) { return z.imag(); });
    }
    elements.push_back(std::move(e));
  }
  out["elements"] = std::move(elements);
  return out.dump(indent);
}

SchemeConfig scheme_config_from_json(const std::string& text) {
  SchemeConfig cfg;
  try {
    const json in = json::parse(text);
    cfg.coherence = in.value("coherence", 0.0);
    if (!in.contains("elements") || !in["elements"].is_array()) {
      throw InvalidElementError("scheme configuration needs an 'elements' array");
    }
    for (const auto& e : in["elements"]) {
      const std::string kind = e.at("kind").get<std::string>();
      const double angle = e.value("angle_deg", 0.0);
      if (kind == "crystal") {
        if (!e.contains("delay_bins") || !e["delay_bins"].is_number_integer()) {
          throw InvalidElementError("crystal elements need an integer 'delay_bins'");
        }
        cfg.elements.push_back(OpticalElement::crystal(angle, e["delay_bins"].get<int>()));
      } else if (kind == "hwp") {
        cfg.elements.push_back(OpticalElement::half_wave_plate(angle));
      } else if (kind == "qwp") {
        cfg.elements.push_back(OpticalElement::quarter_wave_plate(angle));
      } else if (kind == "unitary") {
        const Eigen::Matrix2d re = read_square<2>(e.at("re"), "unitary re");
        const Eigen::Matrix2d im = read_square<2>(e.at("im"), "unitary im");
        Matrix2c u = re.cast<Complex>();
        u += Complex(0.0, 1.0) * im.cast<Complex>();
        cfg.elements.push_back(OpticalElement::general(u));
      } else {
        throw InvalidElementError("unknown element kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidElementError(std::string("malformed scheme configuration: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string channel_to_json(const StokesChannel& c, int indent) {
  json out;
  out["m"] = matrix_json(c.m, [](double v) { return v; });
  out["b"] = {c.b(0), c.b(1), c.b(2)};
  return out.dump(indent);
}

StokesChannel channel_from_json(const std::string& text) {
  const json in = parse(text);
  StokesChannel c;
  try {
    c.m = read_square<3>(in.at("m"), "m");
    const json& b = in.at("b");
    if (!b.is_array() || b.size() != 3) throw DomainError("b must have three entries");
    for (int k = 0; k < 3; ++k) c.b(k) = b[k].get<double>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed channel: ") + e.what());
  }
  return c;
}

std::string record_to_json(const MeasurementRecord& rec, int indent) {
  json out;
  json settings = json::array();
  for (Projector p : rec.settings) settings.push_back(label(p));
  out["settings"] = std::move(settings);
  out["counts"] = rec.counts;
  out["shots"] = rec.shots;
  out["seed"] = rec.seed;
  if (rec.exact) out["exact"] = true;
  return out.dump(indent);
}

MeasurementRecord record_from_json(const std::string& text) {
  const json in = parse(text);
  MeasurementRecord rec;
  try {
    for (const auto& s : in.at("settings")) {
      rec.settings.push_back(projector_from_label(s.get<std::string>()));
    }
    rec.counts = in.at("counts").get<std::vector<std::uint64_t>>();
    rec.shots = in.at("shots").get<std::uint64_t>();
    rec.seed = in.value("seed", std::uint64_t{0});
    rec.exact = in.value("exact", false);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed measurement record: ") + e.what());
  }
  if (rec.counts.size() != rec.settings.size()) {
    throw DomainError("measurement record has mismatched settings and counts");
  }
  if (rec.shots == 0) throw DomainError("measurement record needs shots >= 1");
  return rec;
}

std::string chi_to_json(const ChiMatrix& chi, int indent) {
  json out;
  out["basis"] = {"I", "X", "Y", "Z"};
  out["re"] = matrix_json(chi.entries, [](Complex z) { return z.real(); });
  out["im"] = matrix_json(chi.entries, [](Complex z) { return z.imag(); });
  out["clipped_mass"] = chi.clipped_mass;
  return out.dump(indent);
}

ChiMatrix chi_from_json(const std::string& text) {
  const json in = parse(text);
  ChiMatrix chi;
  try {
    if (in.at("basis") != json({"I", "X", "Y", "Z"})) {
      throw DomainError("χ basis must be [\"I\",\"X\",\"Y\",\"Z\"]");
    }
    const Eigen::Matrix4d re = read_square<4>(in.at("re"), "re");
    const Eigen::Matrix4d im = read_square<4>(in.at("im"), "im");
    chi.entries = re.cast<Complex>();
    chi.entries += Complex(0.0, 1.0) * im.cast<Complex>();
    chi.clipped_mass = in.value("clipped_mass", 0.0);
    chi.warning = chi.clipped_mass > kChiWarningMass;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed χ matrix: ") + e.what());
  }
  return chi;
}

}  // namespace depol
