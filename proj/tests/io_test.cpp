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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "test_util.hpp"

namespace scalarrepair {
namespace {

using testing::bundled;
using json = io::json;

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::UnknownCode;
}

CodeSpec resolve(const std::string& name) { return bundled(name); }

TEST(Elements, JsonForm) {
  const Field f = testing::gf16();
  EXPECT_EQ(io::element_to_json(f.zero()), json("0"));
  EXPECT_EQ(io::element_to_json(f.pow_zeta(7)), json(7));
  EXPECT_EQ(io::element_from_json(json(7), f, "x"), f.pow_zeta(7));
  EXPECT_EQ(io::element_from_json(json("0"), f, "x"), f.zero());
  EXPECT_EQ(error_of([&] { io::element_from_json(json(15), f, "x"); }), Errc::ParseError);
  EXPECT_EQ(error_of([&] { io::element_from_json(json(-1), f, "x"); }), Errc::ParseError);
  EXPECT_EQ(error_of([&] { io::element_from_json(json("z^3"), f, "x"); }), Errc::ParseError);
  EXPECT_EQ(error_of([&] { io::element_from_json(json(1.5), f, "x"); }), Errc::ParseError);
}

TEST(Codes, RoundTripBundled) {
  for (const char* name : {"rs53", "rs64", "fb1410"}) {
    const CodeSpec code = bundled(name);
    EXPECT_EQ(io::code_from_json(io::code_to_json(code)), code);
    EXPECT_EQ(io::code_from_json(io::parse_json(io::code_to_json(code).dump(), "mem")), code);
  }
}

TEST(Codes, RoundTripRandomParity) {
  std::mt19937_64 rng(71);
  const Field f = testing::gf9();
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng() % 4, r = 1 + rng() % 3;
    std::vector<std::vector<Element>> parity(k, std::vector<Element>(r));
    for (auto& row : parity)
      for (auto& e : row) e = testing::random_element(f, rng);
    const CodeSpec code("r", k + r, k, f, parity);
    EXPECT_EQ(io::code_from_json(io::code_to_json(code)), code);
  }
}

TEST(Codes, MalformedInput) {
  json j = io::code_to_json(bundled("rs53"));
  json missing = j;
  missing.erase("parity");
  EXPECT_EQ(error_of([&] { io::code_from_json(missing); }), Errc::ParseError);
  json bad_k = j;
  bad_k["k"] = -3;
  EXPECT_EQ(error_of([&] { io::code_from_json(bad_k); }), Errc::ParseError);
  json bad_shape = j;
  bad_shape["k"] = 2;
  EXPECT_EQ(error_of([&] { io::code_from_json(bad_shape); }), Errc::InvalidCode);
  json bad_poly = j;
  bad_poly["field"]["poly"] = {1, 1, 1, 1, 1};
  EXPECT_EQ(error_of([&] { io::code_from_json(bad_poly); }), Errc::NotPrimitive);
  EXPECT_EQ(error_of([] { io::parse_json("{\"n\": ", "mem"); }), Errc::ParseError);
  EXPECT_EQ(error_of([] { io::load_json("/nonexistent/file.json"); }), Errc::ParseError);
}

TEST(Schemes, RoundTrip) {
  std::mt19937_64 rng(72);
  for (const char* name : {"rs53", "rs64", "fb1410"}) {
    const Subpacketization sub = make_sub(bundled(name), 1);
    for (int trial = 0; trial < 20; ++trial) {
      const RepairScheme s = testing::random_scheme(sub, 1 + rng() % sub.code.k(), rng);
      EXPECT_EQ(io::scheme_from_json(io::parse_json(io::scheme_to_json(s).dump(), "mem"), resolve), s);
    }
  }
}

TEST(Schemes, MalformedInput) {
  json j = io::scheme_to_json(testing::bundled_scheme("rs53-golden", 1));
  json zero = j;
  zero["elements"][0][0] = "0";
  EXPECT_EQ(error_of([&] { io::scheme_from_json(zero, resolve); }), Errc::InvalidScheme);
  json short_row = j;
  short_row["elements"][0] = {3};
  EXPECT_EQ(error_of([&] { io::scheme_from_json(short_row, resolve); }), Errc::DimensionMismatch);
  json bad_code = j;
  bad_code["code"] = "nope";
  EXPECT_EQ(error_of([&] { io::scheme_from_json(bad_code, resolve); }), Errc::UnknownCode);
  json bad_s = j;
  bad_s["s"] = 3;
  EXPECT_EQ(error_of([&] { io::scheme_from_json(bad_s, resolve); }), Errc::IncompatibleSubfield);
}

TEST(Registry, NamesAndPaths) {
  const auto& reg = testing::registry();
  EXPECT_EQ(reg.names(), (std::vector<std::string>{"fb1410", "rs53", "rs64"}));
  const auto path = (testing::data_dir() / "codes" / "rs64.json").string();
  EXPECT_EQ(reg.get(path), reg.get("rs64"));
  EXPECT_EQ(error_of([&] { reg.get("missing-code"); }), Errc::UnknownCode);
  EXPECT_EQ(error_of([&] { reg.get(testing::data_dir().string()); }), Errc::UnknownCode);
}

TEST(Registry, BundledFilesCarryMetadata) {
  for (const char* name : {"rs53", "rs64", "fb1410"}) {
    const json j = io::load_json(testing::data_dir() / "codes" / (std::string(name) + ".json"));
    EXPECT_EQ(j.at("format_version"), 1);
    EXPECT_EQ(j.at("name"), name);
    EXPECT_TRUE(j.at("description").is_string());
  }
}

TEST(Reports, JsonFields) {
  const RepairReport r = gamma_ranks(testing::bundled_scheme("fb1410-golden", 5));
  const json j = io::report_to_json(r);
  EXPECT_EQ(j.at("total_bits"), 63.0);
  EXPECT_EQ(j.at("naive_bits"), 80.0);
  EXPECT_EQ(j.at("cutset_bits"), 26.0);
  EXPECT_EQ(j.at("feasible"), true);
  EXPECT_EQ(j.at("gammas").size(), 10u);
  const json c = io::clique_to_json(generate_clique(bundled("rs64")));
  EXPECT_EQ(c.at("cliques"), json::parse("[[1,4],[2],[3]]"));
  EXPECT_EQ(c.at("nodes")[1].at("bound"), 6);
  EXPECT_EQ(c.at("nodes")[0].at("mu"), 11);
}

}  // namespace
}  // namespace scalarrepair
