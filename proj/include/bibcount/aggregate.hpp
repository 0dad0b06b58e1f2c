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

#ifndef BIBCOUNT_AGGREGATE_HPP_
#define BIBCOUNT_AGGREGATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bibcount/attribution.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/numeric.hpp"
#include "bibcount/scorefn.hpp"

namespace bibcount {

// The full triplet: basic unit, object of study, score function.
struct CountingMethod {
  ScoreFunction score_function;
  EntityLevel basic_level = EntityLevel::kAuthor;
  EntityLevel object_level = EntityLevel::kAuthor;

  void validate() const {
    if (object_level < basic_level)
      throw LevelError("object level '" + std::string(to_string(object_level)) +
                       "' lies below basic level '" +
                       std::string(to_string(basic_level)) + "'");
    if (basic_level == EntityLevel::kUnion)
      throw LevelError("unions cannot be basic units");
  }
};

struct ScoreRow {
  std::string object;
  double score = 0.0;
  std::size_t publications = 0;
};

struct ScoreTable {
  std::string method;
  EntityLevel basic_level = EntityLevel::kAuthor;
  EntityLevel object_level = EntityLevel::kAuthor;
  std::map<std::string, ScoreRow> rows;

  bool contains(const std::string& object) const { return rows.count(object) > 0; }
  double score(const std::string& object) const {
    auto it = rows.find(object);
    return it == rows.end() ? 0.0 : it->second.score;
  }
  double total() const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& [_, r] : rows) v.push_back(r.score);
    return pairwise_sum(v);
  }
  // Descending score, ties by object id.
  std::vector<ScoreRow> sorted() const {
    std::vector<ScoreRow> out;
    out.reserve(rows.size());
    for (const auto& [_, r] : rows) out.push_back(r);
    std::stable_sort(out.begin(), out.end(), [](const ScoreRow& a, const ScoreRow& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.object < b.object;
    });
    return out;
  }
};

inline void write_csv(std::ostream& out, const ScoreTable& table,
                      int precision = 4) {
  out << "object,score,publications\n";
  std::ostringstream num;
  num << std::fixed << std::setprecision(precision);
  for (const ScoreRow& r : table.sorted()) {
    num.str("");
    num << r.score;
    out << r.object << ',' << num.str() << ',' << r.publications << '\n';
  }
}

inline std::string to_csv(const ScoreTable& table, int precision = 4) {
  std::ostringstream out;
  write_csv(out, table, precision);
  return out.str();
}

namespace detail {

// Per-object collected scores of one publication, in first-appearance order.
inline std::vector<std::pair<std::string, double>> publication_scores(
    const ScoreFunction& fn, const Publication& pub, const AttributionMap& attr) {
  const auto units = attr.units(pub);
  const auto credits = fn.credits(pub, units);
  std::vector<std::pair<std::string, std::vector<double>>> grouped;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto [it, inserted] = slot.emplace(units[i].object, grouped.size());
    if (inserted) grouped.push_back({units[i].object, {}});
    grouped[it->second].second.push_back(credits[i]);
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(grouped.size());
  for (auto& [object, c] : grouped) out.push_back({object, fn.collect(c)});
  return out;
}

inline ScoreTable fold(const std::string& name, EntityLevel basic,
                       EntityLevel object,
                       const std::map<std::string, std::vector<double>>& parts) {
  ScoreTable table{name, basic, object, {}};
  for (const auto& [id, values] : parts) {
    std::size_t credited = 0;
    for (double v : values) credited += v > 0.0 ? 1 : 0;
    if (credited == 0) continue;
    table.rows[id] = {id, pairwise_sum(values), credited};
  }
  return table;
}

}  // namespace detail

// score(object) = sum over publications of the object's collected credits.
// Objects never credited a positive amount are omitted.
inline ScoreTable object_scores(const CountingMethod& method, const Corpus& pubs,
                                const AttributionMap& attr) {
  method.validate();
  if (attr.basic_level() != method.basic_level ||
      attr.object_level() != method.object_level)
    throw LevelError("attribution levels (" +
                     std::string(to_string(attr.basic_level())) + ", " +
                     std::string(to_string(attr.object_level())) +
                     ") do not match the counting method (" +
                     std::string(to_string(method.basic_level)) + ", " +
                     std::string(to_string(method.object_level)) + ")");
  std::map<std::string, std::vector<double>> parts;
  for (const Publication& pub : pubs)
    for (auto& [object, s] :
         detail::publication_scores(method.score_function, pub, attr))
      parts[object].push_back(s);
  return detail::fold(method.score_function.name(), method.basic_level,
                      method.object_level, parts);
}

inline ScoreTable object_scores(
    const CountingMethod& method, const Corpus& pubs,
    const std::map<std::string, std::set<std::string>>& unions = {}) {
  method.validate();
  return object_scores(method, pubs,
                       derive_attribution(pubs, method.basic_level,
                                          method.object_level, unions));
}

// Map from `lower`-level identifiers to `upper` base-level identifiers.
// Requires a one-to-one address relation: an author instance with several
// affiliations, or an identifier reaching two upper identifiers, is an error.
inline std::map<std::string, std::string> level_relation(const Corpus& pubs,
                                                         EntityLevel lower,
                                                         EntityLevel upper) {
  std::map<std::string, std::string> out;
  for (const Publication& p : pubs)
    for (const Authorship& a : p.authorships) {
      if (lower == EntityLevel::kAuthor && upper != EntityLevel::kAuthor &&
          a.affiliations.size() > 1)
        throw ValidationError("no one-to-one relation: author '" + a.author +
                              "' has several addresses in publication '" +
                              p.id + "'");
      for (const Affiliation& af : a.affiliations) {
        const std::string& lo = detail::level_id(a, af, lower);
        const std::string& hi = detail::level_id(a, af, upper);
        auto [it, inserted] = out.emplace(lo, hi);
        if (!inserted && it->second != hi)
          throw ValidationError("no one-to-one relation: '" + lo +
                                "' maps to both '" + it->second + "' and '" +
                                hi + "'");
      }
    }
  return out;
}

// Scores with `lower_basic` units as their own objects, then sums those
// scores into the method's objects through the one-to-one relation. Equal to
// object_scores() for additive score functions.
inline ScoreTable rescore_at_level(
    const CountingMethod& method, const Corpus& pubs, EntityLevel lower_basic,
    const std::map<std::string, std::set<std::string>>& unions = {}) {
  method.validate();
  if (lower_basic > method.basic_level)
    throw LevelError("rescoring level '" + std::string(to_string(lower_basic)) +
                     "' lies above the basic level '" +
                     std::string(to_string(method.basic_level)) + "'");
  const CountingMethod low{method.score_function, lower_basic, lower_basic};
  const ScoreTable base = object_scores(low, pubs);
  const AttributionMap target =
      derive_attribution(pubs, method.object_level, method.object_level, unions);
  const auto rel = level_relation(pubs, lower_basic, target.base_level());
  std::map<std::string, std::vector<double>> sums;
  for (const auto& [id, row] : base.rows)
    sums[target.resolve(rel.at(id))].push_back(row.score);
  // Publication counts are recomputed directly: an object is credited in a
  // publication when any of its lower-level objects is.
  std::map<std::string, std::size_t> counts;
  for (const Publication& pub : pubs) {
    std::set<std::string> hit;
    for (auto& [object, s] : detail::publication_scores(
             low.score_function, pub,
             derive_attribution({pub}, lower_basic, lower_basic)))
      if (s > 0.0) hit.insert(target.resolve(rel.at(object)));
    for (const std::string& h : hit) ++counts[h];
  }
  ScoreTable out{method.score_function.name(), lower_basic, method.object_level, {}};
  for (const auto& [id, values] : sums)
    out.rows[id] = {id, pairwise_sum(values), counts[id]};
  return out;
}

// True when both tables hold the same objects with scores within `tol`
// (relative to the score for scores above 1).
inline bool tables_match(const ScoreTable& a, const ScoreTable& b,
                         double tol = 1e-9) {
  if (a.rows.size() != b.rows.size()) return false;
  for (const auto& [id, row] : a.rows) {
    auto it = b.rows.find(id);
    if (it == b.rows.end() || !near(row.score, it->second.score,
                                         tol * std::max(1.0, std::fabs(row.score)))) return false;
  }
  return true;
}

}  // namespace bibcount

#endif  // BIBCOUNT_AGGREGATE_HPP_
