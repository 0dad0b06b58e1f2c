/*
 * Copyright 2026 The bibcount Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command implementations for the bibcount tool. Kept in a header so the
// tests can drive the CLI in-process.
#ifndef BIBCOUNT_TOOLS_CLI_APP_HPP_
#define BIBCOUNT_TOOLS_CLI_APP_HPP_

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bibcount/bibcount.hpp"

namespace bibcount::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kMethodError = 2,
  kUsage = 64,
};

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnv = "BIBCOUNT_SEED";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer");
  }
}

inline ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      out[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--param " + key + ": '" + value + "' is not a number");
    }
  }
  return out;
}

inline std::map<std::string, std::set<std::string>> parse_unions(
    const std::vector<std::string>& items) {
  std::map<std::string, std::set<std::string>> out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError("--union expects ID=member,member,..., got '" + item + "'");
    std::set<std::string> members;
    std::istringstream in(item.substr(eq + 1));
    for (std::string m; std::getline(in, m, ',');)
      if (!m.empty()) members.insert(m);
    if (!out.emplace(item.substr(0, eq), std::move(members)).second)
      throw UsageError("union '" + item.substr(0, eq) + "' given twice");
  }
  return out;
}

inline EntityLevel level_arg(const std::string& name) {
  try {
    return parse_level(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline Corpus read_corpus(const std::string& path) {
  if (path == "-") return parse_publications(std::cin);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input '" + path + "'");
  return parse_publications(in);
}

// Runs `write` against the output file, or `out` when no path is given.
inline void emit(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open output '" + path + "'");
  write(file);
  if (!file) throw IoError("failed writing '" + path + "'");
}

inline std::string fixed(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

// Method name -> score function, with --param overrides.
inline ScoreFunction method_arg(const std::string& name,
                                const std::vector<std::string>& params) {
  return registry().make(name, parse_params(params));
}

inline std::string flag_cells(const MethodMetadata& m) {
  std::string s;
  for (Flag f : m.flags) {
    s += ',';
    s += to_string(f);
  }
  return s;
}

inline void write_registry_csv(std::ostream& out,
                               const std::vector<MethodMetadata>& methods) {
  out << "name,year,status,framework1_claim,framework2_group";
  for (const char* f : kFlagNames) out << ',' << f;
  out << ",used_4plus\n";
  for (const MethodMetadata& m : methods)
    out << m.name << ',' << (m.year ? std::to_string(*m.year) : "pre1970") << ','
        << (m.implemented() ? "implemented" : "stub") << ',' << m.framework1_claim
        << ',' << m.framework2_group << flag_cells(m) << ','
        << (m.used_4plus ? "Y" : "N") << '\n';
}

inline std::string join(const std::set<std::string>& items) {
  std::string s;
  for (const std::string& i : items) s += (s.empty() ? "" : ";") + i;
  return s;
}

// Entry point. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Bibliometric counting methods: score, classify, lint and compare"};
  app.name("bibcount");
  app.require_subcommand(1);

  // score
  struct {
    std::string input = "-", output, method, basic = "author", object;
    std::vector<std::string> params, unions;
    int precision = 4;
  } score;
  auto* cmd_score = app.add_subcommand("score", "Object scores of a corpus as CSV");
  cmd_score->add_option("-i,--input", score.input, "JSON-Lines corpus ('-' = stdin)");
  cmd_score->add_option("-o,--output", score.output, "Output CSV (default stdout)");
  cmd_score->add_option("-m,--method", score.method, "Counting method")->required();
  cmd_score->add_option("--basic-unit", score.basic, "author|institution|country");
  cmd_score->add_option("--object", score.object,
                        "author|institution|country|union (default: basic unit)");
  cmd_score->add_option("--param", score.params, "Method parameter key=value");
  cmd_score->add_option("--union", score.unions, "Object union ID=member,member,...");
  cmd_score->add_option("--precision", score.precision, "Decimals in the score column")
      ->check(CLI::Range(0, 17));

  // classify
  struct {
    std::string method, format = "text";
    std::vector<std::string> params;
    std::size_t trials = 200;
    std::optional<std::uint64_t> seed;
  } classify_opts;
  auto* cmd_classify =
      app.add_subcommand("classify", "Empirical mathematical properties of a method");
  cmd_classify->add_option("-m,--method", classify_opts.method, "Counting method")
      ->required();
  cmd_classify->add_option("--param", classify_opts.params, "Method parameter key=value");
  cmd_classify->add_option("--trials", classify_opts.trials, "Trials per property test")
      ->check(CLI::PositiveNumber);
  cmd_classify->add_option("--seed", classify_opts.seed, "Seed (default 42 or $BIBCOUNT_SEED)");
  cmd_classify->add_option("--format", classify_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // lint
  std::string lint_method;
  auto* cmd_lint = app.add_subcommand("lint", "Check registry flags against implementations");
  cmd_lint->add_option("-m,--method", lint_method, "Lint a single method");

  // registry list
  struct {
    std::string claim, group, status, era, used;
  } reg;
  auto* cmd_registry = app.add_subcommand("registry", "Method registry");
  cmd_registry->require_subcommand(1);
  auto* cmd_list = cmd_registry->add_subcommand("list", "List registered methods as CSV");
  cmd_list->add_option("--claim", reg.claim, "Mathematical-property category");
  cmd_list->add_option("--group", reg.group, "Argument group, e.g. group1 or group1:productivity");
  cmd_list->add_option("--status", reg.status, "implemented|stub");
  cmd_list->add_option("--era", reg.era, "pre1970|reviewed");
  cmd_list->add_option("--used-4plus", reg.used, "Y|N");

  // npi
  struct {
    std::string input = "-", output, points, home, institution, mode = "rooted",
                scheme = "npi";
    int root = 2;
    double bonus = 1.3;
    int precision = 4;
  } npi;
  auto* cmd_npi = app.add_subcommand("npi", "Institution scores under NPI or BFI rules");
  cmd_npi->add_option("-i,--input", npi.input, "JSON-Lines corpus ('-' = stdin)");
  cmd_npi->add_option("-o,--output", npi.output, "Output CSV (default stdout)");
  cmd_npi->add_option("--root", npi.root, "Root exponent k (2 = square root)")
      ->check(CLI::PositiveNumber);
  cmd_npi->add_option("--bonus", npi.bonus, "Multiplier for foreign affiliations");
  cmd_npi->add_option("--points", npi.points, "CSV publication_id,points");
  cmd_npi->add_option("--home", npi.home, "Home country (default: modal country)");
  cmd_npi->add_option("--institution", npi.institution, "Score a single institution");
  cmd_npi->add_option("--mode", npi.mode, "rooted|per-share")
      ->check(CLI::IsMember({"rooted", "per-share"}));
  cmd_npi->add_option("--scheme", npi.scheme, "npi|bfi")
      ->check(CLI::IsMember({"npi", "bfi"}));
  cmd_npi->add_option("--precision", npi.precision, "Decimals")->check(CLI::Range(0, 17));

  // simulate
  CorpusConfig sim;
  std::string sim_output;
  std::optional<std::uint64_t> sim_seed;
  auto* cmd_sim = app.add_subcommand("simulate", "Write a seeded synthetic corpus");
  cmd_sim->add_option("--pubs", sim.publications, "Publications");
  cmd_sim->add_option("--authors", sim.authors, "Authors");
  cmd_sim->add_option("--institutions", sim.institutions, "Institutions");
  cmd_sim->add_option("--countries", sim.countries, "Countries");
  cmd_sim->add_option("--mean-team-size", sim.mean_team_size, "Mean authors per publication");
  cmd_sim->add_option("--max-team-size", sim.max_team_size, "Largest team");
  cmd_sim->add_option("--local-collaboration", sim.local_collaboration,
                      "Probability a co-author is drawn from the same institution");
  cmd_sim->add_option("--multi-affiliation", sim.multi_affiliation,
                      "Probability of a second affiliation");
  cmd_sim->add_option("--seed", sim_seed, "Seed (default 42 or $BIBCOUNT_SEED)");
  cmd_sim->add_option("-o,--output", sim_output, "Output JSON-Lines (default stdout)");

  // compare
  struct {
    std::string input = "-", output, plot;
    std::vector<std::string> methods, levels{"author", "institution", "country"};
  } cmp;
  auto* cmd_compare = app.add_subcommand("compare", "Rank correlation between methods");
  cmd_compare->add_option("-i,--input", cmp.input, "JSON-Lines corpus ('-' = stdin)");
  cmd_compare->add_option("-m,--methods", cmp.methods, "Methods to compare")
      ->required()
      ->delimiter(',');
  cmd_compare->add_option("--levels", cmp.levels, "Object levels")->delimiter(',');
  cmd_compare->add_option("-o,--output", cmp.output, "Output CSV (default stdout)");
  cmd_compare->add_option("--plot-data", cmp.plot, "Rank-vs-rank CSV for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cmd_score->parsed()) {
      const EntityLevel basic = level_arg(score.basic);
      const EntityLevel object = score.object.empty() ? basic : level_arg(score.object);
      const auto unions = parse_unions(score.unions);
      const CountingMethod method{method_arg(score.method, score.params), basic, object};
      method.validate();
      const Corpus corpus = read_corpus(score.input);
      const ScoreTable table = object_scores(method, corpus, unions);
      emit(score.output, out,
           [&](std::ostream& o) { write_csv(o, table, score.precision); });
      return kOk;
    }
    if (cmd_classify->parsed()) {
      const MethodMetadata& meta = registry().at(classify_opts.method);
      const ScoreFunction fn = method_arg(classify_opts.method, classify_opts.params);
      ClassifyOptions o;
      o.trials = classify_opts.trials;
      o.seed = classify_opts.seed ? *classify_opts.seed : default_seed();
      ClassificationReport r = classify(fn, o);
      if (meta.framework1_claim == "non-conforming" && r.label == "Unclassified")
        r.notes.push_back("registry: listed as non-conforming to the measure-theoretic "
                          "properties");
      if (classify_opts.format == "json")
        out << to_json(r).dump(2) << '\n';
      else
        out << to_text(r);
      return kOk;
    }
    if (cmd_lint->parsed()) {
      std::vector<LintResult> results;
      if (lint_method.empty()) {
        results = lint_all();
      } else {
        const MethodMetadata& m = registry().at(lint_method);
        LintResult r{m.name, adequacy_profile(m), lint_sensitivity(m),
                     lint_homogeneity(m), {}};
        results.push_back(r);
      }
      out << "method,adequacy,sensitivity,homogeneity,status\n";
      bool failed = false;
      for (const LintResult& r : results) {
        out << r.method << ',' << join(r.adequacy) << ',' << join(r.sensitivity) << ','
            << join(r.homogeneity) << ',' << (r.errors.empty() ? "ok" : "error") << '\n';
        for (const std::string& e : r.errors) err << "bibcount: lint: " << e << '\n';
        failed = failed || !r.errors.empty();
      }
      return failed ? kMethodError : kOk;
    }
    if (cmd_list->parsed()) {
      std::map<std::string, std::string> filter;
      if (!reg.claim.empty()) filter["claim"] = reg.claim;
      if (!reg.group.empty()) filter["group"] = reg.group;
      if (!reg.status.empty()) filter["status"] = reg.status;
      if (!reg.era.empty()) filter["era"] = reg.era;
      if (!reg.used.empty()) filter["used_4plus"] = reg.used;
      write_registry_csv(out, registry().list(filter));
      return kOk;
    }
    if (cmd_npi->parsed()) {
      const Corpus corpus = read_corpus(npi.input);
      std::map<std::string, double> scores;
      if (npi.scheme == "bfi") {
        if (npi.institution.empty()) scores = bfi_scores(corpus);
        else scores[npi.institution] = bfi_score(corpus, npi.institution);
      } else {
        NpiParams p;
        p.root_exponent = npi.root;
        p.international_bonus = npi.bonus;
        if (!npi.home.empty()) p.home_country = npi.home;
        p.mode = npi.mode == "per-share" ? NpiMode::kPerShareRooted : NpiMode::kRooted;
        if (!npi.points.empty()) {
          std::ifstream in(npi.points);
          if (!in) throw IoError("cannot open points file '" + npi.points + "'");
          p.points = parse_points_csv(in);
        }
        if (npi.institution.empty()) {
          scores = npi_scores(corpus, p);
        } else {
          std::vector<std::string> warnings;
          scores[npi.institution] = npi_score(corpus, npi.institution, p, &warnings);
          for (const std::string& w : warnings) err << "bibcount: warning: " << w << '\n';
        }
      }
      std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
      std::stable_sort(rows.begin(), rows.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      emit(npi.output, out, [&](std::ostream& o) {
        o << "institution,score\n";
        for (const auto& [inst, s] : rows) o << inst << ',' << fixed(s, npi.precision) << '\n';
      });
      return kOk;
    }
    if (cmd_sim->parsed()) {
      const Corpus corpus = generate_corpus(sim, sim_seed ? *sim_seed : default_seed());
      emit(sim_output, out, [&](std::ostream& o) { write_publications(o, corpus); });
      return kOk;
    }
    if (cmd_compare->parsed()) {
      if (cmp.methods.size() < 2) throw UsageError("--methods needs at least two methods");
      std::vector<ScoreFunction> methods;
      for (const std::string& m : cmp.methods) methods.push_back(method_arg(m, {}));
      std::vector<EntityLevel> levels;
      for (const std::string& l : cmp.levels) levels.push_back(level_arg(l));
      const Corpus corpus = read_corpus(cmp.input);
      const auto reports = run_comparison(methods, corpus, levels);
      emit(cmp.output, out, [&](std::ostream& o) { write_comparison_csv(o, reports); });
      if (!cmp.plot.empty())
        emit(cmp.plot, out, [&](std::ostream& o) { write_plot_csv(o, reports); });
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "bibcount: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "bibcount: error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "bibcount: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "bibcount: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    err << "bibcount: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "bibcount: method error: " << e.what() << '\n';
    return kMethodError;
  }
  return kUsage;
}

}  // namespace bibcount::cli

#endif  // BIBCOUNT_TOOLS_CLI_APP_HPP_
