// Copyright 2026 The hampure Authors
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

// JSON forms used by the CLI.
//
//   matrix        {"rows": n, "cols": n, "data": [[re, im], ...]}   row-major, finite only
//   operator list [matrix, ...]  or  {"operators": [matrix, ...]}
//   purification  {"d", "d_E", "placement", "method", "tolerance", "notes",
//                  "inputs": [matrix...], "extended": [matrix...]}

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hampure/core.hpp"
#include "hampure/purification.hpp"

namespace hampure {

using Json = nlohmann::json;

/// Malformed or out-of-contract JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Json to_json(const HermitianOperator& h) { return to_json(h.matrix()); }

inline CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw FormatError("matrix JSON needs \"rows\", \"cols\" and \"data\"");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw FormatError("matrix \"rows\"/\"cols\" must be integers");
  }
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  const Json& data = j["data"];
  if (rows < 1 || cols < 1 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols)) {
    throw FormatError("matrix \"data\" must hold rows*cols [re, im] pairs");
  }
  CMatrix m(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Json& e = data[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("matrix entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw FormatError("matrix entry " + std::to_string(k) + " is not finite");
    }
    m(static_cast<Eigen::Index>(k) / cols, static_cast<Eigen::Index>(k) % cols) = Complex(re, im);
  }
  return m;
}

/// Parses a Hermitian matrix; rejects matrices more than tol away from Hermitian.
inline HermitianOperator hermitian_from_json(const Json& j, double tol = -1.0) {
  const CMatrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) throw FormatError("Hermitian operator must be square");
  try {
    return HermitianOperator(m, Hermiticity::require, tol);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline std::vector<HermitianOperator> operators_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object() && j.contains("operators")) list = &j["operators"];
  if (j.is_object() && j.contains("rows")) return {hermitian_from_json(j)};
  if (!list->is_array()) throw FormatError("expected a matrix or a list of matrices");
  std::vector<HermitianOperator> out;
  for (const auto& e : *list) out.push_back(hermitian_from_json(e));
  if (out.empty()) throw FormatError("operator list is empty");
  for (const auto& h : out) {
    if (h.dim() != out.front().dim()) throw DimensionError("operators in the list differ in dimension");
  }
  return out;
}

inline Json to_json(const Purification& p, std::optional<double> tol = std::nullopt) {
  Json in = Json::array(), ext = Json::array();
  for (const auto& h : p.inputs) in.push_back(to_json(h));
  for (const auto& h : p.extended) ext.push_back(to_json(h));
  return {{"d", p.d()},
          {"d_E", p.d_E()},
          {"placement", to_string(p.convention.placement)},
          {"method", to_string(p.method)},
          {"tolerance", tol.value_or(p.default_tolerance())},
          {"notes", p.notes},
          {"inputs", std::move(in)},
          {"extended", std::move(ext)}};
}

inline Purification purification_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("purification JSON must be an object");
  for (const char* key : {"d", "d_E", "inputs", "extended"}) {
    if (!j.contains(key)) throw FormatError(std::string("purification JSON lacks \"") + key + "\"");
  }
  if (!j["d"].is_number_integer() || !j["d_E"].is_number_integer()) {
    throw FormatError("\"d\" and \"d_E\" must be integers");
  }
  const Placement placement =
      j.contains("placement") ? placement_from_string(j["placement"].get<std::string>())
                              : Placement::top_left;
  const Method method =
      j.contains("method") ? method_from_string(j["method"].get<std::string>()) : Method::manual;
  const ProjectionConvention conv(j["d"].get<int>(), j["d_E"].get<int>(), placement);
  if (!j["inputs"].is_array() || !j["extended"].is_array()) {
    throw FormatError("\"inputs\" and \"extended\" must be arrays");
  }
  std::vector<HermitianOperator> in, ext;
  for (const auto& e : j["inputs"]) in.push_back(hermitian_from_json(e));
  for (const auto& e : j["extended"]) ext.push_back(hermitian_from_json(e));
  std::vector<std::string> notes;
  if (j.contains("notes")) notes = j["notes"].get<std::vector<std::string>>();
  return Purification(std::move(in), std::move(ext), conv, method, std::move(notes));
}

/// The tolerance recorded in a purification file, if any.
inline std::optional<double> recorded_tolerance(const Json& j) {
  if (j.is_object() && j.contains("tolerance") && j["tolerance"].is_number()) {
    return j["tolerance"].get<double>();
  }
  return std::nullopt;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace hampure
