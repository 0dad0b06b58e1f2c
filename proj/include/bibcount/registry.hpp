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

#ifndef BIBCOUNT_REGISTRY_HPP_
#define BIBCOUNT_REGISTRY_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bibcount/error.hpp"
#include "bibcount/registry_data.hpp"
#include "bibcount/scorefn.hpp"

namespace bibcount {

enum class Flag { kYes, kNo, kNotApplicable };

inline std::string_view to_string(Flag f) {
  switch (f) {
    case Flag::kYes: return "Y";
    case Flag::kNo: return "N";
    default: return "NA";
  }
}

enum class MethodStatus { kImplemented, kStub };

// Validity columns in table order: five adequacy methods, two elements that
// work against sensitivity, three that work against homogeneity.
inline constexpr std::array<const char*, 10> kFlagNames = {
    "compare_to_others",      "principles",        "quantitative_models",
    "surveys",                "compare_groups",    "time_specific_evidence",
    "fixed_credits",          "parameters_selected", "external_elements",
    "conditional_equations"};

enum FlagIndex : std::size_t {
  kCompareToOthers, kPrinciples, kQuantitativeModels, kSurveys, kCompareGroups,
  kTimeSpecificEvidence, kFixedCredits, kParametersSelected, kExternalElements,
  kConditionalEquations
};

inline const std::set<std::string>& framework1_claims() {
  static const std::set<std::string> claims = {
      "rank-dependent-fractionalized", "rank-dependent-non-fractionalized",
      "rank-independent-non-fractionalized", "rank-independent-fractionalized",
      "non-conforming"};
  return claims;
}

struct MethodMetadata {
  std::string name;
  std::optional<int> year;  // empty for the pre-1970 methods
  MethodStatus status = MethodStatus::kStub;
  std::string framework1_claim;
  std::string framework2_group;  // "group1:contribution", ..., or "none"
  std::array<Flag, 10> flags{};
  std::string era;               // "pre1970" or "reviewed"
  bool fractionalized = false;   // publication credit shares a total of 1
  bool used_4plus = false;       // used in four or more research evaluations
  std::vector<std::string> aliases;
  std::string display_name;

  bool implemented() const { return status == MethodStatus::kImplemented; }
  bool reviewed() const { return era == "reviewed"; }
  Flag flag(FlagIndex i) const { return flags[i]; }
};

// ---------------------------------------------------------------------------
// Executable bindings for the implemented methods.

using ParamMap = std::map<std::string, double>;

namespace detail {

inline double take_param(ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

inline int take_int_param(ParamMap& params, const std::string& key, int fallback) {
  const double v = take_param(params, key, fallback);
  if (v != static_cast<double>(static_cast<int>(v)))
    throw ParameterError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

using Factory = std::function<ScoreFunction(ParamMap&)>;

inline const std::map<std::string, Factory>& bindings() {
  static const std::map<std::string, Factory> table = {
      {"complete", [](ParamMap&) { return make_complete(); }},
      {"complete-fractionalized",
       [](ParamMap&) { return make_complete_fractionalized(); }},
      {"straight", [](ParamMap&) { return make_straight(); }},
      {"whole", [](ParamMap&) { return make_whole(); }},
      {"on-line-fractionation",
       [](ParamMap&) { return make_whole_fractionalized("on-line-fractionation"); }},
      {"harmonic", [](ParamMap&) { return make_harmonic(); }},
      {"proportional", [](ParamMap&) { return make_proportional(); }},
      {"howard", [](ParamMap&) { return make_howard(); }},
      {"boxenbaum", [](ParamMap&) { return make_boxenbaum(); }},
      {"pure-geometric", [](ParamMap&) { return make_pure_geometric(); }},
      {"equal-contribution",
       [](ParamMap& p) { return make_equal_contribution(take_param(p, "floor", 0.05)); }},
      {"pareto-weights",
       [](ParamMap&) { return make_attribute_weighted("pareto-weights", "indicator"); }},
      {"shapley-value",
       [](ParamMap& p) {
         const int n_max = take_int_param(p, "n_max", 12);
         if (n_max < 1 || n_max > 20)
           throw ParameterError("n_max must lie in [1, 20]");
         return make_shapley_indicator(static_cast<std::size_t>(n_max));
       }},
      {"visibility-first",
       [](ParamMap&) { return make_attribute_weighted("visibility-first", "indicator"); }},
      {"visibility-second", [](ParamMap&) { return make_visibility_ratio(); }},
      {"shen-barabasi",
       [](ParamMap&) { return make_attribute_weighted("shen-barabasi", "contribution"); }},
      {"npi-institutional",
       [](ParamMap& p) { return make_npi_institutional(take_int_param(p, "root", 2)); }},
      {"zou-peterson", [](ParamMap&) { return make_zou_peterson(); }},
      {"relative-intellectual-contribution",
       [](ParamMap&) {
         return make_attribute_weighted("relative-intellectual-contribution",
                                        "contribution");
       }},
      {"steinbruchel", [](ParamMap&) { return make_steinbruchel(); }},
  };
  return table;
}

inline std::vector<std::string> split_csv_line(const std::string& line,
                                               std::size_t line_no) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", line_no);
  out.push_back(std::move(cell));
  return out;
}

inline Flag parse_flag(const std::string& s, std::size_t line_no) {
  if (s == "Y") return Flag::kYes;
  if (s == "N") return Flag::kNo;
  if (s == "NA") return Flag::kNotApplicable;
  throw ParseError("flag must be Y, N or NA, got '" + s + "'", line_no);
}

inline bool parse_yn(const std::string& s, std::size_t line_no) {
  if (s == "Y") return true;
  if (s == "N") return false;
  throw ParseError("expected Y or N, got '" + s + "'", line_no);
}

}  // namespace detail

// ---------------------------------------------------------------------------

class Registry {
 public:
  static constexpr std::size_t kColumns = 20;

  // Parses the registry CSV (header row first).
  static Registry parse(std::string_view csv) {
    Registry reg;
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      auto cells = detail::split_csv_line(line, line_no);
      if (cells.size() != kColumns)
        throw ParseError("expected " + std::to_string(kColumns) + " columns, got " +
                             std::to_string(cells.size()),
                         line_no);
      if (header) {
        header = false;
        continue;
      }
      reg.add(row_to_metadata(cells, line_no), line_no);
    }
    return reg;
  }

  const std::vector<MethodMetadata>& all() const noexcept { return methods_; }

  // Lookup by name or alias.
  const MethodMetadata* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &methods_[it->second];
  }
  const MethodMetadata& at(const std::string& name) const {
    if (const auto* m = find(name)) return *m;
    throw UnknownMethodError(name);
  }

  // Filter keys: claim (framework1_claim), group (framework2_group; "group1"
  // matches every Group 1 subtype), status, era, used_4plus (Y/N), name.
  std::vector<MethodMetadata> list(
      const std::map<std::string, std::string>& filter = {}) const {
    static const std::set<std::string> keys = {
        "claim", "framework1_claim", "group", "framework2_group", "status",
        "era", "used_4plus", "name"};
    for (const auto& [k, _] : filter)
      if (!keys.count(k)) throw ParameterError("unknown filter key '" + k + "'");
    std::vector<MethodMetadata> out;
    for (const MethodMetadata& m : methods_) {
      bool keep = true;
      for (const auto& [k, v] : filter) {
        if (k == "claim" || k == "framework1_claim") keep = keep && m.framework1_claim == v;
        else if (k == "group" || k == "framework2_group")
          keep = keep && (m.framework2_group == v ||
                          m.framework2_group.rfind(v + ":", 0) == 0);
        else if (k == "status")
          keep = keep && (v == (m.implemented() ? "implemented" : "stub"));
        else if (k == "era") keep = keep && m.era == v;
        else if (k == "used_4plus") keep = keep && (m.used_4plus == (v == "Y"));
        else keep = keep && m.name == v;
      }
      if (keep) out.push_back(m);
    }
    return out;
  }

  // Executable score function. Consumed `params` are removed; leftovers are
  // rejected as unknown parameters.
  ScoreFunction make(const std::string& name, ParamMap params = {}) const {
    const MethodMetadata& m = at(name);
    if (!m.implemented()) throw StubMethodError(m.name);
    ScoreFunction fn = detail::bindings().at(m.name)(params);
    if (!params.empty())
      throw ParameterError("method '" + m.name + "' has no parameter '" +
                           params.begin()->first + "'");
    return fn;
  }

 private:
  static MethodMetadata row_to_metadata(const std::vector<std::string>& c,
                                        std::size_t line_no) {
    MethodMetadata m;
    m.name = c[0];
    if (m.name.empty()) throw ParseError("empty method name", line_no);
    if (c[1] != "pre1970") {
      try {
        m.year = std::stoi(c[1]);
      } catch (const std::exception&) {
        throw ParseError("bad year '" + c[1] + "'", line_no);
      }
    }
    if (c[2] == "implemented") m.status = MethodStatus::kImplemented;
    else if (c[2] == "stub") m.status = MethodStatus::kStub;
    else throw ParseError("bad status '" + c[2] + "'", line_no);
    m.framework1_claim = c[3];
    if (!framework1_claims().count(m.framework1_claim))
      throw ParseError("bad framework1_claim '" + c[3] + "'", line_no);
    m.framework2_group = c[4];
    for (std::size_t i = 0; i < 10; ++i) m.flags[i] = detail::parse_flag(c[5 + i], line_no);
    m.era = c[15];
    if (m.era != "pre1970" && m.era != "reviewed")
      throw ParseError("bad era '" + c[15] + "'", line_no);
    m.fractionalized = detail::parse_yn(c[16], line_no);
    m.used_4plus = detail::parse_yn(c[17], line_no);
    std::istringstream aliases(c[18]);
    for (std::string a; std::getline(aliases, a, ';');)
      if (!a.empty()) m.aliases.push_back(a);
    m.display_name = c[19];
    return m;
  }

  void add(MethodMetadata m, std::size_t line_no) {
    const bool bound = detail::bindings().count(m.name) > 0;
    if (m.implemented() != bound)
      throw ParseError("method '" + m.name + "' is marked " +
                           (m.implemented() ? "implemented but has no binding"
                                            : "stub but has a binding"),
                       line_no);
    const std::size_t slot = methods_.size();
    for (const std::string& key : [&] {
           auto keys = m.aliases;
           keys.push_back(m.name);
           return keys;
         }())
      if (!index_.emplace(key, slot).second)
        throw ParseError("duplicate method name '" + key + "'", line_no);
    methods_.push_back(std::move(m));
  }

  std::vector<MethodMetadata> methods_;
  std::map<std::string, std::size_t> index_;
};

// The registry shipped with the library.
inline const Registry& registry() {
  static const Registry reg = Registry::parse(kRegistryCsv);
  return reg;
}

// ---------------------------------------------------------------------------
// Lint.

inline std::set<std::string> declared_flags(const MethodMetadata& m,
                                            std::initializer_list<FlagIndex> cols) {
  std::set<std::string> out;
  for (FlagIndex i : cols)
    if (m.flags[i] == Flag::kYes) out.insert(kFlagNames[i]);
  return out;
}

// Declared homogeneity flags. For implemented methods the declaration is
// cross-checked against the score function: selectable parameters,
// attribute or publication-field requirements, piecewise equations.
inline std::set<std::string> lint_homogeneity(const MethodMetadata& m,
                                              const Registry& reg = registry()) {
  auto out = declared_flags(
      m, {kParametersSelected, kExternalElements, kConditionalEquations});
  if (!m.implemented()) return out;
  const ScoreFunction fn = reg.make(m.name);
  const auto& spec = fn.spec();
  const std::array<std::pair<FlagIndex, bool>, 3> observed = {{
      {kParametersSelected, !spec.selectable_parameters.empty()},
      {kExternalElements,
       !spec.requires_attributes.empty() || !spec.requires_fields.empty()},
      {kConditionalEquations, spec.conditional},
  }};
  std::string mismatch;
  for (const auto& [col, has] : observed)
    if ((m.flags[col] == Flag::kYes) != has)
      mismatch += std::string(mismatch.empty() ? "" : "; ") + kFlagNames[col] +
                  " declared " + std::string(to_string(m.flags[col])) +
                  ", implementation " + (has ? "Y" : "N");
  if (!mismatch.empty())
    throw LintError("homogeneity mismatch for '" + m.name + "': " + mismatch);
  return out;
}

// Declared sensitivity flags; fixed_credits must be NA exactly when the
// method is not fractionalized.
inline std::set<std::string> lint_sensitivity(const MethodMetadata& m) {
  const bool na = m.flags[kFixedCredits] == Flag::kNotApplicable;
  if (na == m.fractionalized)
    throw LintError("'" + m.name + "': fixed_credits is " +
                    std::string(to_string(m.flags[kFixedCredits])) + " but the method is " +
                    (m.fractionalized ? "" : "not ") +
                    "fractionalized (NA is reserved for non-fractionalized methods)");
  if (m.flags[kTimeSpecificEvidence] == Flag::kNotApplicable)
    throw LintError("'" + m.name + "': time_specific_evidence cannot be NA");
  return declared_flags(m, {kTimeSpecificEvidence, kFixedCredits});
}

inline std::set<std::string> adequacy_profile(const MethodMetadata& m) {
  return declared_flags(m, {kCompareToOthers, kPrinciples, kQuantitativeModels,
                            kSurveys, kCompareGroups});
}

struct LintResult {
  std::string method;
  std::set<std::string> adequacy, sensitivity, homogeneity;
  std::vector<std::string> errors;
};

// Runs every lint over every entry, collecting errors instead of throwing.
inline std::vector<LintResult> lint_all(const Registry& reg = registry()) {
  std::vector<LintResult> out;
  for (const MethodMetadata& m : reg.all()) {
    LintResult r{m.name, adequacy_profile(m), {}, {}, {}};
    try {
      r.sensitivity = lint_sensitivity(m);
    } catch (const LintError& e) {
      r.errors.push_back(e.what());
    }
    try {
      r.homogeneity = lint_homogeneity(m, reg);
    } catch (const LintError& e) {
      r.errors.push_back(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bibcount

#endif  // BIBCOUNT_REGISTRY_HPP_
