// Copyright 2026 The qio developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// JSON, CSV and SVG encodings of the toolkit's value types.
///
/// Channel JSON: {"dim": d, "kraus": [matrix, ...]} where a matrix is an
/// array of rows and every entry is an [re, im] pair. Doubles are
/// emitted in shortest-round-trip form, so a parse of the printed text
/// recovers the stored values exactly.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qio/classify.hpp"
#include "qio/reduce.hpp"
#include "qio/sampler.hpp"

namespace qio {

using nlohmann::json;

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError("matrix must have exactly dim rows");
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != dim)
      throw ParseError("matrix row has the wrong length");
    for (int k = 0; k < dim; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  m.ensure_finite();
  return m;
}

inline json channel_to_json(const QubitChannel& ch) {
  json out;
  out["dim"] = ch.dim();
  json kraus = json::array();
  for (const auto& op : ch.operators()) kraus.push_back(matrix_to_json(op.matrix));
  out["kraus"] = std::move(kraus);
  return out;
}

/// Shape-validated raw operator list; channel gates are not applied here
/// so callers can report completeness violations themselves.
inline std::vector<CMatrix> kraus_list_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
    throw ParseError("channel JSON needs \"dim\" and \"kraus\" fields");
  if (!j["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
  const int dim = j["dim"].get<int>();
  if (dim != 2 && dim != 3) throw ParseError("\"dim\" must be 2 or 3");
  if (!j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("\"kraus\" must be a nonempty array of matrices");
  std::vector<CMatrix> ops;
  for (const auto& mj : j["kraus"]) ops.push_back(matrix_from_json(mj, dim));
  return ops;
}

inline QubitChannel channel_from_json(const json& j) {
  return QubitChannel(kraus_list_from_json(j));
}

inline json canonical_to_json(const CanonicalIO4& f) {
  json out;
  out["r"] = f.r;
  out["alpha"] = json::array({f.alpha[0], f.alpha[1], f.alpha[2]});
  out["beta"] = json::array(
      {complex_to_json(f.beta[0]), complex_to_json(f.beta[1]), complex_to_json(f.beta[2])});
  return out;
}

inline json canonical_to_json(const CanonicalIO5& f) {
  json out;
  out["r"] = f.r;
  out["alpha"] = json::array({f.alpha[0], f.alpha[1], f.alpha[2], f.alpha[3]});
  out["beta"] = json::array(
      {complex_to_json(f.beta[0]), complex_to_json(f.beta[1]), complex_to_json(f.beta[2])});
  return out;
}

inline json canonical_to_json(const CanonicalSIO4& f) {
  json out;
  out["a"] = json::array({f.a[0], f.a[1], f.a[2], f.a[3]});
  out["b"] = json::array({complex_to_json(f.b[0]), complex_to_json(f.b[1])});
  return out;
}

inline CanonicalIO4 canonical_io4_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("alpha") || !j.contains("beta"))
    throw ParseError("canonical JSON needs \"r\", \"alpha\", \"beta\"");
  CanonicalIO4 f;
  f.r = j["r"].get<double>();
  if (!j["alpha"].is_array() || j["alpha"].size() != 3 || !j["beta"].is_array() ||
      j["beta"].size() != 3)
    throw ParseError("four-operator form needs three alpha and three beta entries");
  for (int i = 0; i < 3; ++i) {
    f.alpha[i] = j["alpha"][i].get<double>();
    f.beta[i] = complex_from_json(j["beta"][i]);
  }
  return f;
}

inline json decomposition_to_json(const DecompositionSolution& sol) {
  json out;
  out["path"] = to_string(sol.path);
  out["k"] = sol.k ? json(*sol.k) : json(nullptr);
  out["A"] = sol.A ? json(*sol.A) : json(nullptr);
  out["B"] = sol.B ? json(*sol.B) : json(nullptr);
  out["canonical"] = sol.canonical ? canonical_to_json(*sol.canonical) : json(nullptr);
  // dim + kraus make the output double as channel JSON (verify reads it)
  out["dim"] = sol.kraus.dim();
  out["kraus"] = channel_to_json(sol.kraus)["kraus"];
  out["operator_count"] = sol.kraus.size();
  json patterns = json::array();
  for (const auto& op : sol.kraus.operators())
    patterns.push_back(to_string(op.pattern->tag));
  out["patterns"] = std::move(patterns);
  out["residuals"] = {{"choi_roundtrip", sol.roundtrip_error},
                      {"block_rank1_defects", sol.block_defects}};
  out["valid_root_count"] = sol.valid_root_count;
  return out;
}

inline json report_to_json(const ChannelReport& rep) {
  json out;
  out["is_valid_channel"] = rep.is_valid_channel;
  out["is_io"] = rep.is_io ? json(*rep.is_io) : json(nullptr);
  out["is_sio"] = rep.is_sio ? json(*rep.is_sio) : json(nullptr);
  out["kraus_rank"] = rep.kraus_rank;
  out["io_rank_upper"] = rep.io_rank_upper ? json(*rep.io_rank_upper) : json(nullptr);
  out["io_rank_certified"] = rep.io_rank_certified;
  out["sio_rank"] = rep.sio_rank ? json(*rep.sio_rank) : json(nullptr);
  out["all_operators_incoherent"] = rep.all_operators_incoherent;
  out["decomposition"] =
      rep.decomposition ? decomposition_to_json(*rep.decomposition) : json(nullptr);
  return out;
}

/// CSV is "x,y,z" then one row per point, printf %.17g columns,
/// newline-terminated; byte-stable for a fixed seed.
inline std::string region_to_csv(const RegionResult& region) {
  std::string out = "x,y,z\n";
  char line[128];
  for (const auto& p : region.points) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p.x, p.y, p.z);
    out += line;
  }
  return out;
}

/// Static SVG scatter of the x-z projection over the square [-1,1]^2.
inline std::string region_to_svg(const RegionResult& region) {
  const int size = 640;
  auto px = [&](double x) { return 0.5 * (x + 1.0) * size; };
  auto pz = [&](double z) { return 0.5 * (1.0 - z) * size; };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
     << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
     << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n"
     << "<line x1=\"0\" y1=\"" << size / 2 << "\" x2=\"" << size << "\" y2=\""
     << size / 2 << "\" stroke=\"#ccc\"/>\n"
     << "<line x1=\"" << size / 2 << "\" y1=\"0\" x2=\"" << size / 2 << "\" y2=\""
     << size << "\" stroke=\"#ccc\"/>\n"
     << "<circle cx=\"" << size / 2 << "\" cy=\"" << size / 2 << "\" r=\"" << size / 2
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
  os.setf(std::ios::fixed);
  os.precision(2);
  for (const auto& p : region.points)
    os << "<circle cx=\"" << px(p.x) << "\" cy=\"" << pz(p.z)
       << "\" r=\"0.5\" fill=\"#c0392b\"/>\n";
  os << "<circle cx=\"" << px(region.initial.x) << "\" cy=\"" << pz(region.initial.z)
     << "\" r=\"4\" fill=\"#2980b9\"/>\n"
     << "</svg>\n";
  return os.str();
}

inline json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  return j;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

}  // namespace qio
