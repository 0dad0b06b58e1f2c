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

#ifndef BIBCOUNT_CLASSIFY_HPP_
#define BIBCOUNT_CLASSIFY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibcount/aggregate.hpp"
#include "bibcount/attribution.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/generate.hpp"
#include "bibcount/numeric.hpp"
#include "bibcount/scorefn.hpp"

namespace bibcount {

enum class Rank { kIndependent, kDependent, kNotApplicable };

inline std::string_view to_string(Rank r) {
  switch (r) {
    case Rank::kIndependent: return "independent";
    case Rank::kDependent: return "dependent";
    default: return "not_applicable";
  }
}

enum class Property { kDefinedForAll, kFixedScheme, kAdditive, kRank, kFractionalized };

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::kDefinedForAll: return "defined_for_all_objects";
    case Property::kFixedScheme: return "fixed_crediting_scheme";
    case Property::kAdditive: return "additive";
    case Property::kRank: return "rank";
    default: return "fractionalized";
  }
}

struct PropertyVector {
  bool defined_for_all = true;
  bool fixed_scheme = true;
  bool additive = true;
  Rank rank = Rank::kIndependent;
  bool fractionalized = true;

  bool operator==(const PropertyVector&) const = default;

  // "(Y, Y, Y, independent, Y)" in decision-tree order.
  std::string str() const {
    auto yn = [](bool b) { return b ? "Y" : "N"; };
    std::string out = "(";
    out += yn(defined_for_all);
    out += ", ";
    out += yn(fixed_scheme);
    out += ", ";
    out += yn(additive);
    out += ", ";
    out += to_string(rank);
    out += ", ";
    out += yn(fractionalized);
    return out + ")";
  }
};

// Counterexample for a negative verdict. Re-evaluating it with recheck()
// reproduces the violation.
struct Witness {
  Property property = Property::kFractionalized;
  std::size_t trial = 0;
  Publication publication;
  std::optional<Publication> variant;  // rank: reordered byline or attributes
  EntityLevel level = EntityLevel::kCountry;  // defined-for-all: merged level
  std::set<std::string> members;              // defined-for-all: merged objects
  std::string detail;
};

struct TestResult {
  bool holds = true;
  std::size_t trials = 0;
  std::optional<Witness> witness;
};

struct ClassifyOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  std::size_t max_n = 50;
  double tol = 1e-9;
};

struct ClassificationReport {
  std::string method;
  PropertyVector properties;
  std::string label;
  bool straight_pattern = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
};

inline constexpr const char* kMergedUnionId = "__merged__";

// ---------------------------------------------------------------------------
// Trial publications.

// Random publication with `n` distinct authors, one address each, drawn from a
// small pool of institutions spread over a few countries so that shared
// institutions and shared countries both occur. Attributes are synthesized.
template <class Rng>
Publication trial_publication(Rng& rng, std::size_t n, std::size_t trial = 0) {
  std::uniform_int_distribution<std::size_t> pick_m(1, std::min<std::size_t>(n, 6));
  const std::size_t m = pick_m(rng);
  std::uniform_int_distribution<std::size_t> pick_c(1, m);
  const std::size_t c = pick_c(rng);
  std::uniform_int_distribution<std::size_t> pick_inst(0, m - 1);
  Publication pub;
  pub.id = "T" + std::to_string(trial);
  pub.year = 2000;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t inst = pick_inst(rng);
    Authorship a;
    a.author = "A" + std::to_string(i + 1);
    a.rank = static_cast<int>(i) + 1;
    a.affiliations.push_back(
        {"I" + std::to_string(inst + 1), "C" + std::to_string(inst % c + 1)});
    pub.authorships.push_back(std::move(a));
  }
  synthesize_attributes(pub, rng);
  return pub;
}

namespace detail {

inline std::size_t trial_max_n(const ScoreFunction& fn, const ClassifyOptions& o) {
  std::size_t n = std::max<std::size_t>(1, o.max_n);
  if (fn.spec().max_units) n = std::min(n, *fn.spec().max_units);
  return n;
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t test,
                                 std::size_t trial) {
  return std::mt19937_64(mix_seed(mix_seed(seed, test), trial));
}

template <class Rng>
Publication next_trial(Rng& rng, const ScoreFunction& fn, const ClassifyOptions& o,
                       std::size_t trial) {
  std::uniform_int_distribution<std::size_t> pick_n(1, trial_max_n(fn, o));
  return trial_publication(rng, pick_n(rng), trial);
}

inline std::map<std::string, double> author_credit_map(const ScoreFunction& fn,
                                                       const Publication& pub) {
  std::map<std::string, double> out;
  for (const CreditEntry& e : detail::author_credits(pub, fn).entries)
    out[e.unit.label] += e.credit;
  return out;
}

inline std::map<std::string, double> collected(const ScoreFunction& fn,
                                               const Publication& pub,
                                               const AttributionMap& attr) {
  std::map<std::string, double> out;
  for (auto& [object, s] : detail::publication_scores(fn, pub, attr)) out[object] = s;
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-publication checks. Each returns a description of the violation, or
// nothing when the property holds on this input.

inline std::optional<std::string> check_fractionalized(const ScoreFunction& fn,
                                                       const Publication& pub,
                                                       double tol = 1e-9) {
  const double total = detail::author_credits(pub, fn).total();
  if (near(total, 1.0, tol)) return std::nullopt;
  return "credits sum to " + detail::fmt(total) + " with n=" +
         std::to_string(pub.size());
}

// Author units credited with institutions as objects, then with countries.
inline std::optional<std::string> check_fixed_scheme(const ScoreFunction& fn,
                                                     const Publication& pub,
                                                     double tol = 1e-9) {
  const Corpus one{pub};
  const auto a = fn.credit(pub, derive_attribution(one, EntityLevel::kAuthor,
                                                   EntityLevel::kInstitution));
  const auto b = fn.credit(pub, derive_attribution(one, EntityLevel::kAuthor,
                                                   EntityLevel::kCountry));
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (!near(a.entries[i].credit, b.entries[i].credit, tol))
      return "author '" + a.entries[i].unit.label + "' credited " +
             detail::fmt(a.entries[i].credit) + " with institutions as objects, " +
             detail::fmt(b.entries[i].credit) + " with countries";
  return std::nullopt;
}

// Country scores from institution basic units versus country basic units.
inline std::optional<std::string> check_additive(const ScoreFunction& fn,
                                                 const Publication& pub,
                                                 double tol = 1e-9) {
  const Corpus one{pub};
  const CountingMethod direct{fn, EntityLevel::kCountry, EntityLevel::kCountry};
  std::optional<ScoreTable> a, b;
  std::string ea, eb;
  try {
    a = object_scores(direct, one);
  } catch (const Error& e) {
    ea = e.what();
  }
  try {
    b = rescore_at_level(direct, one, EntityLevel::kInstitution);
  } catch (const Error& e) {
    eb = e.what();
  }
  if (!a && !b) return std::nullopt;  // undefined at both levels alike
  if (!a || !b)
    return "defined at one level only: " + (a ? eb : ea);
  if (tables_match(*a, *b, tol)) return std::nullopt;
  for (const auto& [id, row] : a->rows)
    if (!near(row.score, b->score(id), tol))
      return "country '" + id + "' scores " + detail::fmt(row.score) +
             " from country units, " + detail::fmt(b->score(id)) +
             " from institution units";
  return "tables differ in their objects";
}

// Each author's credit must be the same in `pub` and `variant`, which holds
// the same authors in a different order or with reassigned attributes.
inline std::optional<std::string> check_rank(const ScoreFunction& fn,
                                             const Publication& pub,
                                             const Publication& variant,
                                             double tol = 1e-9) {
  const auto a = detail::author_credit_map(fn, pub);
  const auto b = detail::author_credit_map(fn, variant);
  for (const auto& [author, credit] : a) {
    auto it = b.find(author);
    const double other = it == b.end() ? 0.0 : it->second;
    if (!near(credit, other, tol))
      return "author '" + author + "' credited " + detail::fmt(credit) +
             ", then " + detail::fmt(other) + " after reordering";
  }
  return std::nullopt;
}

// Scores of objects outside `members` must survive merging `members`.
inline std::optional<std::string> check_defined_for_all(
    const ScoreFunction& fn, const Publication& pub, EntityLevel level,
    const std::set<std::string>& members, double tol = 1e-9) {
  const auto attr = derive_attribution({pub}, EntityLevel::kAuthor, level);
  const auto merged = merge_objects(attr, kMergedUnionId, members);
  const auto before = detail::collected(fn, pub, attr);
  const auto after = detail::collected(fn, pub, merged);
  for (const auto& [object, s] : before) {
    if (members.count(object)) continue;
    auto it = after.find(object);
    const double t = it == after.end() ? 0.0 : it->second;
    if (!near(s, t, tol))
      return "non-member '" + object + "' scores " + detail::fmt(s) +
             " before the merge, " + detail::fmt(t) + " after";
  }
  return std::nullopt;
}

// Rank 1 receives 1, everyone else 0.
inline std::optional<std::string> check_straight_pattern(const ScoreFunction& fn,
                                                         const Publication& pub,
                                                         double tol = 1e-9) {
  for (const CreditEntry& e : detail::author_credits(pub, fn).entries) {
    const double expected = e.unit.rank == 1 ? 1.0 : 0.0;
    if (!near(e.credit, expected, tol))
      return "rank " + std::to_string(e.unit.rank) + " credited " +
             detail::fmt(e.credit);
  }
  return std::nullopt;
}

inline std::optional<std::string> recheck(const ScoreFunction& fn,
                                          const Witness& w, double tol = 1e-9) {
  switch (w.property) {
    case Property::kFractionalized: return check_fractionalized(fn, w.publication, tol);
    case Property::kFixedScheme: return check_fixed_scheme(fn, w.publication, tol);
    case Property::kAdditive: return check_additive(fn, w.publication, tol);
    case Property::kRank:
      if (!w.variant) return std::nullopt;
      return check_rank(fn, w.publication, *w.variant, tol);
    default:
      return check_defined_for_all(fn, w.publication, w.level, w.members, tol);
  }
}

// ---------------------------------------------------------------------------
// Randomized tests. Trial t of test s draws from stream (seed, s, t), so
// verdicts and witnesses are reproducible for a given seed.

namespace detail {

template <class Check>
TestResult run_trials(const ScoreFunction& fn, const ClassifyOptions& o,
                      std::uint64_t stream, Property property, Check check) {
  TestResult r;
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto rng = trial_rng(o.seed, stream, t);
    Publication pub = next_trial(rng, fn, o, t);
    ++r.trials;
    if (auto w = check(pub, rng)) {
      w->property = property;
      w->trial = t;
      r.holds = false;
      r.witness = std::move(w);
      return r;
    }
  }
  return r;
}

}  // namespace detail

inline TestResult test_fractionalized(const ScoreFunction& fn,
                                      const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 5, Property::kFractionalized,
      [&](const Publication& pub, std::mt19937_64&) -> std::optional<Witness> {
        if (auto v = check_fractionalized(fn, pub, o.tol))
          return Witness{.publication = pub, .detail = *v};
        return std::nullopt;
      });
}

inline TestResult test_fixed_scheme(const ScoreFunction& fn,
                                    const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 2, Property::kFixedScheme,
      [&](const Publication& pub, std::mt19937_64&) -> std::optional<Witness> {
        if (auto v = check_fixed_scheme(fn, pub, o.tol))
          return Witness{.publication = pub, .detail = *v};
        return std::nullopt;
      });
}

inline TestResult test_additive(const ScoreFunction& fn,
                                const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 3, Property::kAdditive,
      [&](const Publication& pub, std::mt19937_64&) -> std::optional<Witness> {
        if (auto v = check_additive(fn, pub, o.tol))
          return Witness{.publication = pub, .detail = *v};
        return std::nullopt;
      });
}

// Dependent when reordering the byline (attributes travel with their author)
// or reassigning attributes among byline positions changes a credit. The
// second probe treats attribute-based sharing as a form of rank dependence.
inline TestResult test_rank(const ScoreFunction& fn, const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 4, Property::kRank,
      [&](const Publication& pub, std::mt19937_64& rng) -> std::optional<Witness> {
        if (pub.size() < 2) return std::nullopt;
        Publication moved = pub;
        std::shuffle(moved.authorships.begin(), moved.authorships.end(), rng);
        for (std::size_t i = 0; i < moved.size(); ++i)
          moved.authorships[i].rank = static_cast<int>(i) + 1;
        if (auto v = check_rank(fn, pub, moved, o.tol))
          return Witness{.publication = pub, .variant = moved, .detail = *v};
        Publication reassigned = pub;
        std::vector<AuthorAttributes> attrs;
        for (const Authorship& a : pub.authorships) attrs.push_back(a.attributes);
        std::shuffle(attrs.begin(), attrs.end(), rng);
        for (std::size_t i = 0; i < attrs.size(); ++i)
          reassigned.authorships[i].attributes = attrs[i];
        if (auto v = check_rank(fn, pub, reassigned, o.tol))
          return Witness{.publication = pub,
                         .variant = reassigned,
                         .detail = *v + " (attributes reassigned)"};
        return std::nullopt;
      });
}

// Merges a random subset of at least two objects at the institution or
// country level and watches the remaining objects.
inline TestResult test_defined_for_all(const ScoreFunction& fn,
                                       const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 1, Property::kDefinedForAll,
      [&](const Publication& pub, std::mt19937_64& rng) -> std::optional<Witness> {
        const EntityLevel level = std::bernoulli_distribution(0.5)(rng)
                                      ? EntityLevel::kCountry
                                      : EntityLevel::kInstitution;
        auto objects = reachable_objects(
            {pub}, derive_attribution({pub}, EntityLevel::kAuthor, level));
        if (objects.size() < 3) return std::nullopt;
        std::vector<std::string> pool(objects.begin(), objects.end());
        std::shuffle(pool.begin(), pool.end(), rng);
        std::uniform_int_distribution<std::size_t> k(2, pool.size() - 1);
        std::set<std::string> members(pool.begin(), pool.begin() + k(rng));
        if (auto v = check_defined_for_all(fn, pub, level, members, o.tol))
          return Witness{.publication = pub,
                         .level = level,
                         .members = members,
                         .detail = *v};
        return std::nullopt;
      });
}

inline TestResult test_straight_pattern(const ScoreFunction& fn,
                                        const ClassifyOptions& o = {}) {
  return detail::run_trials(
      fn, o, 6, Property::kRank,
      [&](const Publication& pub, std::mt19937_64&) -> std::optional<Witness> {
        if (auto v = check_straight_pattern(fn, pub, o.tol))
          return Witness{.publication = pub, .detail = *v};
        return std::nullopt;
      });
}

// Names of the decision-tree rows; anything else is "Unclassified".
inline std::string table2_label(const PropertyVector& v, bool straight_pattern) {
  const bool measure = v.defined_for_all && v.fixed_scheme && v.additive;
  if (measure && v.rank == Rank::kIndependent)
    return v.fractionalized ? "Complete-fractionalized" : "Complete";
  if (measure && v.rank == Rank::kDependent && v.fractionalized && straight_pattern)
    return "Straight";
  if (v.rank == Rank::kNotApplicable && !v.fixed_scheme && !v.additive) {
    if (v.defined_for_all && !v.fractionalized) return "Whole";
    if (!v.defined_for_all && v.fractionalized) return "Whole-fractionalized";
  }
  return "Unclassified";
}

inline ClassificationReport classify(const ScoreFunction& fn,
                                     const ClassifyOptions& o = {}) {
  ClassificationReport r;
  r.method = fn.name();
  r.trials = o.trials;
  r.seed = o.seed;
  auto record = [&r](const TestResult& t) {
    if (t.witness) r.witnesses.push_back(*t.witness);
    return t.holds;
  };
  r.properties.defined_for_all = record(test_defined_for_all(fn, o));
  r.properties.fixed_scheme = record(test_fixed_scheme(fn, o));
  r.properties.additive = record(test_additive(fn, o));
  if (r.properties.fixed_scheme)
    r.properties.rank =
        record(test_rank(fn, o)) ? Rank::kIndependent : Rank::kDependent;
  else
    r.properties.rank = Rank::kNotApplicable;
  r.properties.fractionalized = record(test_fractionalized(fn, o));
  if (r.properties.rank == Rank::kDependent && r.properties.fractionalized)
    r.straight_pattern = test_straight_pattern(fn, o).holds;
  r.label = table2_label(r.properties, r.straight_pattern);

  if (r.properties.rank == Rank::kIndependent)
    r.notes.push_back("rank independence observed over " +
                      std::to_string(o.trials) + " trials, not proven");
  if (fn.spec().collection == Collection::kRoot)
    r.notes.push_back(
        "non-conforming: object scores are roots of summed credits, so the "
        "scores are not a measure over basic units");
  if (fn.spec().max_units)
    r.notes.push_back("trials limited to n <= " +
                      std::to_string(*fn.spec().max_units) + " basic units");
  return r;
}

inline std::string to_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "method: " << r.method << '\n'
      << "defined_for_all_objects: " << (r.properties.defined_for_all ? "yes" : "no")
      << '\n'
      << "fixed_crediting_scheme: " << (r.properties.fixed_scheme ? "yes" : "no")
      << '\n'
      << "additive: " << (r.properties.additive ? "yes" : "no") << '\n'
      << "rank: " << to_string(r.properties.rank) << '\n'
      << "fractionalized: " << (r.properties.fractionalized ? "yes" : "no") << '\n'
      << "label: " << r.label << '\n'
      << "trials: " << r.trials << '\n'
      << "seed: " << r.seed << '\n';
  for (const Witness& w : r.witnesses)
    out << "witness[" << to_string(w.property) << "]: trial " << w.trial << ", "
        << w.detail << '\n';
  for (const std::string& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

inline nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["properties"] = {{"defined_for_all_objects", r.properties.defined_for_all},
                     {"fixed_crediting_scheme", r.properties.fixed_scheme},
                     {"additive", r.properties.additive},
                     {"rank", std::string(to_string(r.properties.rank))},
                     {"fractionalized", r.properties.fractionalized}};
  j["label"] = r.label;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["witnesses"] = nlohmann::json::array();
  for (const Witness& w : r.witnesses) {
    nlohmann::json wj{{"property", std::string(to_string(w.property))},
                      {"trial", w.trial},
                      {"detail", w.detail},
                      {"publication", to_json(w.publication)}};
    if (w.variant) wj["variant"] = to_json(*w.variant);
    if (!w.members.empty()) {
      wj["level"] = std::string(to_string(w.level));
      wj["members"] = w.members;
    }
    j["witnesses"].push_back(std::move(wj));
  }
  j["notes"] = r.notes;
  return j;
}

}  // namespace bibcount

#endif  // BIBCOUNT_CLASSIFY_HPP_
