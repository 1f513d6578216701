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

// Command-line frontend. Subcommands: verify, clique, search, report,
// list-codes, selftest. Exit status 0 = ok, 1 = infeasible scheme or failed
// check, 2 = input error.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scalarrepair/clique.hpp"
#include "scalarrepair/codes.hpp"
#include "scalarrepair/errors.hpp"
#include "scalarrepair/io.hpp"
#include "scalarrepair/repair.hpp"
#include "scalarrepair/search.hpp"

namespace scalarrepair::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kFailed = 1, kInputError = 2 };

/// Everything needed to replay a run.
struct RunManifest {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();

  json to_json() const {
    return {{"tool", "scalar-repair"}, {"version", kToolVersion}, {"command", command}, {"inputs", inputs}, {"outputs", outputs}};
  }
};

/// Trims a number to at most two decimals: 64.2, 19.75, 12.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

inline std::string format_elements(const Field& f, const std::vector<std::vector<Element>>& rows) {
  std::string out = "[";
  bool first = true;
  for (const auto& row : rows)
    for (Element e : row) {
      if (!first) out += ' ';
      out += f.to_string(e);
      first = false;
    }
  return out + "]";
}

inline std::string format_nodes(const std::vector<std::size_t>& nodes) {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) out += (i ? "," : "") + std::to_string(nodes[i]);
  return out + "}";
}

namespace detail {

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream o(path);
  if (!o) throw Error(Errc::ParseError, path + ": cannot write file");
  o << j.dump(2) << '\n';
}

inline std::string subfield_name(const Field& f, unsigned s) {
  return s == 1 ? "GF(" + std::to_string(f.characteristic()) + ")"
                : "GF(" + std::to_string(f.characteristic()) + "^" + std::to_string(s) + ")";
}

inline RepairScheme load_scheme(const io::CodeRegistry& reg, const std::string& path, const std::optional<std::string>& code) {
  const json j = io::load_json(path);
  return io::scheme_from_json(
      j,
      [&](const std::string& name) {
        if (code && *code != name && reg.get(*code).name() != name)
          throw Error(Errc::ParseError, path + ": scheme is for code \"" + name + "\", not \"" + *code + "\"");
        return reg.get(code ? *code : name);
      },
      path);
}

inline void print_report_line(std::ostream& out, const RepairScheme& s, const RepairReport& r) {
  const Field& f = s.code().field();
  out << "node " << s.failed() << "  elements " << format_elements(f, s.elements()) << "\n";
  out << "  gamma (" << subfield_name(f, r.s) << " symbols):";
  for (unsigned g : r.gammas) out << ' ' << g;
  out << "\n  total " << r.total_bw << " / naive " << r.naive_bw << " / cutset " << r.cutset_bw << ", "
      << (r.feasible ? "FEASIBLE" : "INFEASIBLE") << " (" << subfield_name(f, r.s) << " symbols)\n";
  out << "  bits: total " << format_number(r.total_bits()) << " / naive " << format_number(r.naive_bw * r.symbol_bits)
      << " / cutset " << format_number(r.cutset_bw * r.symbol_bits) << "\n";
}

}  // namespace detail

struct Context {
  std::ostream& out;
  std::ostream& err;
  io::CodeRegistry registry;
  RunManifest manifest;
};

inline int cmd_verify(Context& ctx, const std::optional<std::string>& code, const std::vector<std::string>& schemes,
                      const std::string& json_path) {
  json reports = json::array();
  bool all_feasible = true;
  double bits_sum = 0;
  for (const auto& path : schemes) {
    const RepairScheme s = detail::load_scheme(ctx.registry, path, code);
    const RepairReport r = gamma_ranks(s);
    detail::print_report_line(ctx.out, s, r);
    all_feasible = all_feasible && r.feasible;
    bits_sum += r.total_bits();
    reports.push_back({{"scheme", path}, {"report", io::report_to_json(r)}});
  }
  if (schemes.size() > 1)
    ctx.out << "mean " << format_number(bits_sum / static_cast<double>(schemes.size())) << " bits over " << schemes.size()
            << " schemes\n";
  if (!json_path.empty()) {
    ctx.manifest.outputs["report"] = json_path;
    detail::write_json_file(json_path, {{"reports", reports}, {"manifest", ctx.manifest.to_json()}});
  }
  return all_feasible ? kOk : kFailed;
}

inline int cmd_clique(Context& ctx, const std::string& code_name, const std::string& json_path) {
  const CodeSpec code = ctx.registry.get(code_name);
  const CliquePartition part = generate_clique(code);
  const Field& f = code.field();
  ctx.out << "code " << code.name() << " over " << detail::subfield_name(f, part.sub.s) << " (beta=1, M=" << part.sub.file_size
          << ")\ncliques:";
  for (const auto& c : part.cliques) ctx.out << ' ' << format_nodes(c);
  ctx.out << "\n";
  if (part.cliques.size() == 1) ctx.out << "single clique: no gain over naive\n";
  ctx.out << "node  C_i  bound  mu      achieved\n";
  for (std::size_t i = 1; i <= code.k(); ++i) {
    const CliqueRepair rep = find_repair(part, i);
    const RepairReport r = gamma_ranks(rep.scheme);
    std::ostringstream row;
    row << std::left << std::setw(6) << i << std::setw(5) << largest_other_clique(part, i) << std::setw(7)
        << clique_bound(part, i) << std::setw(8) << f.to_string(rep.mu) << r.total_bw << " (" << format_number(r.total_bits())
        << " bits)" << (rep.degenerate ? "  no gain over naive" : "");
    ctx.out << row.str() << "\n";
  }
  if (!json_path.empty()) {
    ctx.manifest.outputs["report"] = json_path;
    json j = io::clique_to_json(part);
    j["manifest"] = ctx.manifest.to_json();
    detail::write_json_file(json_path, j);
  }
  return kOk;
}

struct SearchOptions {
  std::string code;
  std::size_t node = 1;
  unsigned subfield_degree = 1;
  std::string mode = "exhaustive";
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  bool no_normalize = false;
  unsigned threads = 0;
  std::string out_scheme;
  std::string json_path;
};

inline int cmd_search(Context& ctx, const SearchOptions& o) {
  const CodeSpec code = ctx.registry.get(o.code);
  SearchConfig cfg{make_sub(code, o.subfield_degree), o.node,
                   o.mode == "random" ? SearchMode::Random : SearchMode::Exhaustive,
                   o.samples, o.seed, !o.no_normalize, o.threads};
  const SearchResult r = run_search(cfg);
  const Field& f = code.field();
  ctx.out << o.mode << " search, code " << code.name() << ", node " << o.node << " over " << detail::subfield_name(f, o.subfield_degree)
          << ": " << r.evaluated << " tuples, " << r.feasible_count << " feasible";
  if (cfg.mode == SearchMode::Random) ctx.out << ", seed " << r.seed;
  ctx.out << "\n";
  if (r.fallback) ctx.out << "warning: no feasible tuple drawn, reporting the naive scheme\n";
  detail::print_report_line(ctx.out, r.best, r.best_report);
  ctx.out << (r.proven_optimal ? "proven optimal\n" : "not proven optimal\n");
  if (!o.out_scheme.empty()) {
    ctx.manifest.outputs["scheme"] = o.out_scheme;
    detail::write_json_file(o.out_scheme, io::scheme_to_json(r.best));
  }
  if (!o.json_path.empty()) {
    ctx.manifest.outputs["report"] = o.json_path;
    json j = io::search_to_json(r);
    j["manifest"] = ctx.manifest.to_json();
    detail::write_json_file(o.json_path, j);
  }
  return r.fallback ? kFailed : kOk;
}

inline int cmd_report(Context& ctx, const std::string& code_name, const std::string& dir, const std::string& format,
                      bool require_all) {
  const CodeSpec code = ctx.registry.get(code_name);
  std::map<std::size_t, RepairScheme> by_node;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() != ".json") continue;
      RepairScheme s = detail::load_scheme(ctx.registry, entry.path().string(), code_name);
      if (by_node.count(s.failed()))
        throw Error(Errc::ParseError, entry.path().string() + ": second scheme for node " + std::to_string(s.failed()));
      by_node.emplace(s.failed(), std::move(s));
    }
  } else {
    throw Error(Errc::MissingScheme, dir + ": not a directory");
  }
  std::vector<std::size_t> missing;
  for (std::size_t i = 1; i <= code.k(); ++i)
    if (!by_node.count(i)) missing.push_back(i);
  if (by_node.empty()) throw Error(Errc::MissingScheme, dir + ": no schemes; missing nodes " + format_nodes(missing));
  if (require_all && !missing.empty()) throw Error(Errc::MissingScheme, "missing nodes " + format_nodes(missing));

  const Field& f = code.field();
  const bool csv = format == "csv";
  if (csv)
    ctx.out << "node,elements,bw_bits,bw_symbols,feasible\n";
  else
    ctx.out << "| Systematic node repaired | Repair field elements | Repair bandwidth (bits) |\n|---|---|---|\n";
  double sum = 0;
  double naive_bits = 0;
  bool all_feasible = true;
  for (const auto& [node, s] : by_node) {
    const RepairReport r = gamma_ranks(s);
    sum += r.total_bits();
    naive_bits = r.naive_bw * r.symbol_bits;
    all_feasible = all_feasible && r.feasible;
    if (csv)
      ctx.out << node << ',' << format_elements(f, s.elements()) << ',' << format_number(r.total_bits()) << ',' << r.total_bw
              << ',' << (r.feasible ? "true" : "false") << "\n";
    else
      ctx.out << "| " << node << " | " << format_elements(f, s.elements()) << " | " << format_number(r.total_bits())
              << (r.feasible ? "" : " (infeasible)") << " |\n";
  }
  const double mean = sum / static_cast<double>(by_node.size());
  const double saved = 100.0 * (naive_bits - mean) / naive_bits;
  if (csv)
    ctx.out << "mean,," << format_number(mean) << ",,\n";
  else
    ctx.out << "\nmean " << format_number(mean) << " bits, " << format_number(saved) << "% saved vs naive "
            << format_number(naive_bits) << "\n";
  if (!missing.empty()) ctx.out << "missing nodes: " << format_nodes(missing) << "\n";
  return all_feasible ? kOk : kFailed;
}

inline int cmd_list_codes(Context& ctx) {
  for (const auto& name : ctx.registry.names()) {
    const CodeSpec c = ctx.registry.get(name);
    ctx.out << name << "  (" << c.n() << "," << c.k() << ") over " << c.field().name() << "\n";
  }
  return kOk;
}

/// Bundled codes are MDS and every bundled scheme repairs its node.
inline int cmd_selftest(Context& ctx) {
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    ctx.out << (pass ? "ok    " : "FAIL  ") << what << "\n";
    ok = ok && pass;
  };
  for (const auto& name : ctx.registry.names()) line(verify_mds(ctx.registry.get(name)), "code " + name + " is MDS");
  const auto schemes = ctx.registry.data_dir() / "schemes";
  if (std::filesystem::is_directory(schemes)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(schemes))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      const RepairScheme s = detail::load_scheme(ctx.registry, p.string(), std::nullopt);
      const RepairReport r = gamma_ranks(s);
      line(r.feasible, std::filesystem::relative(p, schemes).string() + " feasible, " + format_number(r.total_bits()) + " bits");
    }
  }
  return ok ? kOk : kFailed;
}

inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::InfeasibleScheme:
    case Errc::NoFeasibleFound:
      return kFailed;
    default:
      return kInputError;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const std::filesystem::path& default_data_dir) {
  CLI::App app{"Repair-bandwidth laboratory for scalar MDS codes", "scalar-repair"};
  app.require_subcommand(1);
  std::string data_dir = default_data_dir.string();
  std::string manifest_path;
  app.add_option("--data-dir", data_dir, "Directory holding bundled codes and schemes");
  app.add_option("--manifest", manifest_path, "Write a replay manifest to this file");
  app.set_version_flag("--version", kToolVersion);

  std::optional<std::string> verify_code;
  std::vector<std::string> verify_schemes;
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "Compute the repair bandwidth of scheme files");
  verify->add_option("--code", verify_code, "Code name or file (defaults to the code named in each scheme)");
  verify->add_option("--scheme", verify_schemes, "Scheme JSON file (repeatable)")->required();
  verify->add_option("--json", json_path, "Write reports as JSON");

  std::string clique_code;
  auto* clique = app.add_subcommand("clique", "Clique partition and optimal 2-parity repair");
  clique->add_option("--code", clique_code, "Code name or file")->required();
  clique->add_option("--json", json_path, "Write the partition as JSON");

  SearchOptions so;
  auto* search = app.add_subcommand("search", "Search repair field elements");
  search->add_option("--code", so.code, "Code name or file")->required();
  search->add_option("--node", so.node, "Failed systematic node (1-based)")->required();
  search->add_option("--subfield-degree", so.subfield_degree, "Degree s of the vectorization subfield GF(p^s)");
  search->add_option("--mode", so.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--samples", so.samples, "Random samples");
  search->add_option("--seed", so.seed, "Random seed");
  search->add_flag("--no-normalize", so.no_normalize, "Do not pin the first element to 1");
  search->add_option("--threads", so.threads, "Worker threads (0 = all cores)");
  search->add_option("--out", so.out_scheme, "Write the best scheme as a scheme file");
  search->add_option("--json", so.json_path, "Write the search result as JSON");

  std::string report_code, report_dir, report_format = "md";
  bool require_all = false;
  auto* report = app.add_subcommand("report", "Bandwidth table for a directory of schemes");
  report->add_option("--code", report_code, "Code name or file")->required();
  report->add_option("--scheme-dir", report_dir, "Directory of scheme files")->required();
  report->add_option("--format", report_format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  report->add_flag("--require-all", require_all, "Fail unless every systematic node has a scheme");

  auto* list = app.add_subcommand("list-codes", "List bundled codes");
  auto* selftest = app.add_subcommand("selftest", "Check bundled codes and schemes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  Context ctx{out, err, io::CodeRegistry(data_dir), {}};
  ctx.manifest.inputs["data_dir"] = data_dir;
  int rc = kOk;
  try {
    if (verify->parsed()) {
      ctx.manifest.command = "verify";
      if (verify_code) ctx.manifest.inputs["code"] = *verify_code;
      ctx.manifest.inputs["schemes"] = verify_schemes;
      rc = cmd_verify(ctx, verify_code, verify_schemes, json_path);
    } else if (clique->parsed()) {
      ctx.manifest.command = "clique";
      ctx.manifest.inputs["code"] = clique_code;
      rc = cmd_clique(ctx, clique_code, json_path);
    } else if (search->parsed()) {
      ctx.manifest.command = "search";
      ctx.manifest.inputs = {{"data_dir", data_dir}, {"code", so.code},   {"node", so.node},
                             {"subfield_degree", so.subfield_degree},    {"mode", so.mode},
                             {"samples", so.samples}, {"seed", so.seed}, {"normalize_first", !so.no_normalize}};
      rc = cmd_search(ctx, so);
    } else if (report->parsed()) {
      ctx.manifest.command = "report";
      ctx.manifest.inputs["code"] = report_code;
      ctx.manifest.inputs["scheme_dir"] = report_dir;
      ctx.manifest.inputs["format"] = report_format;
      rc = cmd_report(ctx, report_code, report_dir, report_format, require_all);
    } else if (list->parsed()) {
      ctx.manifest.command = "list-codes";
      rc = cmd_list_codes(ctx);
    } else if (selftest->parsed()) {
      ctx.manifest.command = "selftest";
      rc = cmd_selftest(ctx);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    rc = exit_code_for(e.code());
  }
  if (!manifest_path.empty()) {
    ctx.manifest.outputs["exit_code"] = rc;
    try {
      detail::write_json_file(manifest_path, ctx.manifest.to_json());
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return rc;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::filesystem::path& default_data_dir) {
  std::vector<const char*> argv{"scalar-repair"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err, default_data_dir);
}

}  // namespace scalarrepair::cli
