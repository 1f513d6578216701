/*
 * Copyright 2026 The scalarrepair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// JSON encodings of fields, codes, schemes and reports.
//
//   field   {"p": 2, "poly": [1,1,0,0,1]}
//   element integer exponent e (meaning zeta^e), or the string "0"
//   code    {"name": "rs53", "n": 5, "k": 3, "field": {...}, "parity": [[e, ...], ...]}
//   scheme  {"code": "rs53", "s": 1, "failed": 1, "elements": [[e, ...], ...]}

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scalarrepair/clique.hpp"
#include "scalarrepair/codes.hpp"
#include "scalarrepair/errors.hpp"
#include "scalarrepair/gf.hpp"
#include "scalarrepair/repair.hpp"
#include "scalarrepair/search.hpp"

namespace scalarrepair::io {

using json = nlohmann::json;

inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, source + ": " + e.what());
  }
}

inline json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

namespace detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::uint64_t unsigned_of(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

}  // namespace detail

inline json element_to_json(Element e) {
  if (e.is_zero()) return "0";
  return e.exponent();
}

inline Element element_from_json(const json& j, const Field& f, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "0") return Element::zero();
    detail::bad(where, "element strings other than \"0\" are not allowed");
  }
  if (!j.is_number_integer()) detail::bad(where, "expected an exponent or \"0\"");
  const auto e = j.get<std::int64_t>();
  if (e < 0 || e >= static_cast<std::int64_t>(f.group_order()))
    detail::bad(where, "exponent " + std::to_string(e) + " outside [0, " + std::to_string(f.group_order() - 1) + "]");
  return Element::from_exponent(static_cast<std::int32_t>(e));
}

inline json field_to_json(const Field& f) { return {{"p", f.characteristic()}, {"poly", f.poly()}}; }

inline Field field_from_json(const json& j, const std::string& where = "field") {
  const auto p = detail::unsigned_of(detail::member(j, "p", where), where + ".p");
  const json& poly = detail::member(j, "poly", where);
  if (!poly.is_array()) detail::bad(where + ".poly", "expected an array");
  std::vector<Scalar> coeffs;
  for (std::size_t i = 0; i < poly.size(); ++i)
    coeffs.push_back(static_cast<Scalar>(detail::unsigned_of(poly[i], where + ".poly[" + std::to_string(i) + "]")));
  return Field::from_poly(static_cast<Scalar>(p), std::move(coeffs));
}

inline json elements_to_json(const std::vector<std::vector<Element>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (Element e : row) r.push_back(element_to_json(e));
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<std::vector<Element>> elements_from_json(const json& j, const Field& f, const std::string& where) {
  if (!j.is_array()) detail::bad(where, "expected an array of rows");
  std::vector<std::vector<Element>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) detail::bad(rw, "expected an array");
    std::vector<Element> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(element_from_json(j[r][c], f, rw + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json code_to_json(const CodeSpec& code) {
  return {{"name", code.name()},
          {"n", code.n()},
          {"k", code.k()},
          {"field", field_to_json(code.field())},
          {"parity", elements_to_json(code.parity())}};
}

inline CodeSpec code_from_json(const json& j, const std::string& where = "code") {
  std::string name;
  if (j.is_object() && j.contains("name")) {
    if (!j["name"].is_string()) detail::bad(where + ".name", "expected a string");
    name = j["name"].get<std::string>();
  }
  const auto n = detail::unsigned_of(detail::member(j, "n", where), where + ".n");
  const auto k = detail::unsigned_of(detail::member(j, "k", where), where + ".k");
  Field f = field_from_json(detail::member(j, "field", where), where + ".field");
  auto parity = elements_from_json(detail::member(j, "parity", where), f, where + ".parity");
  return CodeSpec(std::move(name), n, k, std::move(f), std::move(parity));
}

inline json scheme_to_json(const RepairScheme& s) {
  return {{"code", s.code().name()},
          {"s", s.sub().s},
          {"failed", s.failed()},
          {"elements", elements_to_json(s.elements())}};
}

/// resolve maps the scheme's "code" name to a code.
inline RepairScheme scheme_from_json(const json& j, const std::function<CodeSpec(const std::string&)>& resolve,
                                     const std::string& where = "scheme") {
  const json& code_name = detail::member(j, "code", where);
  if (!code_name.is_string()) detail::bad(where + ".code", "expected a code name");
  const CodeSpec code = resolve(code_name.get<std::string>());
  const auto s = detail::unsigned_of(detail::member(j, "s", where), where + ".s");
  const auto failed = detail::unsigned_of(detail::member(j, "failed", where), where + ".failed");
  auto el = elements_from_json(detail::member(j, "elements", where), code.field(), where + ".elements");
  return RepairScheme(make_sub(code, static_cast<unsigned>(s)), failed, std::move(el));
}

inline json report_to_json(const RepairReport& r) {
  return {{"failed", r.failed},
          {"s", r.s},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"gammas", r.gammas},
          {"feasible", r.feasible},
          {"total_bw", r.total_bw},
          {"interference_bw", r.interference_bw},
          {"naive_bw", r.naive_bw},
          {"cutset_bw", r.cutset_bw},
          {"symbol_bits", r.symbol_bits},
          {"total_bits", r.total_bits()},
          {"naive_bits", r.naive_bw * r.symbol_bits},
          {"cutset_bits", r.cutset_bw * r.symbol_bits}};
}

inline json clique_to_json(const CliquePartition& part) {
  json nodes = json::array();
  for (std::size_t i = 1; i <= part.sub.code.k(); ++i) {
    const CliqueRepair rep = find_repair(part, i);
    nodes.push_back({{"node", i},
                     {"C_i", largest_other_clique(part, i)},
                     {"bound", clique_bound(part, i)},
                     {"mu", element_to_json(rep.mu)},
                     {"aligned_node", rep.aligned_node},
                     {"degenerate", rep.degenerate},
                     {"total_bw", gamma_ranks(rep.scheme).total_bw}});
  }
  return {{"code", part.sub.code.name()}, {"s", part.sub.s}, {"cliques", part.cliques}, {"nodes", nodes}};
}

inline json search_to_json(const SearchResult& r) {
  return {{"scheme", scheme_to_json(r.best)},
          {"report", report_to_json(r.best_report)},
          {"evaluated", r.evaluated},
          {"feasible_count", r.feasible_count},
          {"space_size", r.space_size},
          {"seed", r.seed},
          {"proven_optimal", r.proven_optimal},
          {"fallback", r.fallback}};
}

/// Named codes stored as <dir>/codes/<name>.json.
class CodeRegistry {
 public:
  explicit CodeRegistry(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {}

  const std::filesystem::path& data_dir() const { return dir_; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    const auto codes = dir_ / "codes";
    if (!std::filesystem::is_directory(codes)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(codes))
      if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// A bundled code name, or a path to a code file.
  CodeSpec get(const std::string& name_or_path) const {
    if (auto it = cache_.find(name_or_path); it != cache_.end()) return it->second;
    std::filesystem::path path = dir_ / "codes" / (name_or_path + ".json");
    if (!std::filesystem::exists(path)) {
      path = name_or_path;
      if (!std::filesystem::exists(path) || std::filesystem::is_directory(path))
        throw Error(Errc::UnknownCode, "no bundled code or file named \"" + name_or_path + "\"");
    }
    CodeSpec code = code_from_json(load_json(path), path.string());
    cache_.emplace(name_or_path, code);
    return code;
  }

 private:
  std::filesystem::path dir_;
  mutable std::map<std::string, CodeSpec> cache_;
};

}  // namespace scalarrepair::io
