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

#ifndef BIBCOUNT_SCOREFN_HPP_
#define BIBCOUNT_SCOREFN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bibcount/attribution.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/numeric.hpp"

namespace bibcount {

struct CreditEntry {
  BasicUnit unit;
  double credit = 0.0;
};

// Per-basic-unit credits for one publication under one score function.
struct CreditVector {
  std::string publication;
  std::vector<CreditEntry> entries;

  std::vector<double> credits() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const CreditEntry& e : entries) out.push_back(e.credit);
    return out;
  }
  double total() const {
    const auto c = credits();
    return pairwise_sum(c);
  }
};

// How an object of study turns the credits of its units in one publication
// into its score for that publication.
enum class Collection {
  kSum,   // measure-theoretic collection: plain sum of unit credits
  kRoot,  // (sum of unit credits)^(1/root); used by the NPI family
};

struct ScoreFunctionSpec {
  std::string name;
  std::map<std::string, double> parameters;
  // Parameters whose value the bibliometrician picks per analysis.
  std::set<std::string> selectable_parameters;
  // Whole family: credits depend on the object assignment.
  bool requires_attribution = false;
  // Per-author attributes read by the rule.
  std::set<std::string> requires_attributes;
  // Publication-level fields read by the rule (e.g. "union_indicator").
  std::set<std::string> requires_fields;
  // The credit equation is piecewise over units or publications.
  bool conditional = false;
  // Exact algorithms with exponential cost cap the number of units.
  std::optional<std::size_t> max_units;
  Collection collection = Collection::kSum;
  double root = 1.0;
};

using CreditRule = std::function<std::vector<double>(
    const Publication&, std::span<const BasicUnit>)>;

// A score function: declared spec plus the crediting rule as opaque code.
class ScoreFunction {
 public:
  ScoreFunction(ScoreFunctionSpec spec, CreditRule rule)
      : spec_(std::move(spec)), rule_(std::move(rule)) {}

  const ScoreFunctionSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }

  // Throws when `units` lack something the rule needs.
  void check_inputs(const Publication& pub,
                    std::span<const BasicUnit> units) const {
    if (spec_.max_units && units.size() > *spec_.max_units)
      throw SizeError(spec_.name + ": " + std::to_string(units.size()) +
                      " basic units exceed the exact-enumeration limit of " +
                      std::to_string(*spec_.max_units) +
                      " (sampling approximations are not provided)");
    for (const std::string& attr : spec_.requires_attributes)
      for (const BasicUnit& u : units)
        if (!u.attributes.has(attr))
          throw MissingAttributeError(attr, spec_.name + " on publication '" +
                                                pub.id + "', author '" +
                                                pub.authorships[u.authorship].author +
                                                "'");
    if (spec_.requires_fields.count("union_indicator") && !pub.union_indicator)
      throw MissingAttributeError("union_indicator",
                                  spec_.name + " on publication '" + pub.id + "'");
  }

  std::vector<double> credits(const Publication& pub,
                              std::span<const BasicUnit> units) const {
    check_inputs(pub, units);
    auto out = rule_(pub, units);
    for (double c : out)
      if (!std::isfinite(c) || c < 0.0)
        throw Error(spec_.name + ": credit must be finite and non-negative");
    return out;
  }

  CreditVector credit(const Publication& pub, const AttributionMap& attr) const {
    auto units = attr.units(pub);
    auto c = credits(pub, units);
    CreditVector out{pub.id, {}};
    out.entries.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
      out.entries.push_back({std::move(units[i]), c[i]});
    return out;
  }

  // Score an object draws from one publication given its units' credits.
  double collect(std::span<const double> unit_credits) const {
    const double s = pairwise_sum(unit_credits);
    if (spec_.collection == Collection::kRoot) return std::pow(s, 1.0 / spec_.root);
    return s;
  }

 private:
  ScoreFunctionSpec spec_;
  CreditRule rule_;
};

// ---------------------------------------------------------------------------
// Crediting rules over basic-unit instances. Units arrive in rank order.

namespace rules {

inline std::vector<double> complete(std::size_t n) {
  return std::vector<double>(n, 1.0);
}

inline std::vector<double> complete_fractionalized(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

inline std::vector<double> straight(std::span<const BasicUnit> units) {
  std::vector<double> out(units.size(), 0.0);
  for (std::size_t i = 0; i < units.size(); ++i)
    if (units[i].rank == 1) out[i] = 1.0;
  return out;
}

// Each unique object receives `per_object`, split equally among its units.
inline std::vector<double> whole_family(std::span<const BasicUnit> units,
                                        bool fractionalized) {
  std::map<std::string, std::size_t> per_object;
  for (const BasicUnit& u : units) ++per_object[u.object];
  const double share =
      fractionalized ? 1.0 / static_cast<double>(per_object.size()) : 1.0;
  std::vector<double> out;
  out.reserve(units.size());
  for (const BasicUnit& u : units)
    out.push_back(share / static_cast<double>(per_object[u.object]));
  return out;
}

inline std::vector<double> normalized(std::vector<double> weights) {
  const double total = pairwise_sum(weights);
  if (!(total > 0.0)) throw Error("no creditable unit: all weights are zero");
  for (double& w : weights) w /= total;
  return weights;
}

inline std::vector<double> harmonic(std::span<const BasicUnit> units) {
  std::vector<double> w;
  w.reserve(units.size());
  for (const BasicUnit& u : units) w.push_back(1.0 / u.rank);
  return normalized(std::move(w));
}

inline std::vector<double> proportional(std::span<const BasicUnit> units) {
  const double n = static_cast<double>(units.size());
  const double denom = n * (n + 1.0) / 2.0;
  std::vector<double> out;
  out.reserve(units.size());
  for (const BasicUnit& u : units) out.push_back((n + 1.0 - u.rank) / denom);
  return out;
}

inline void check_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ParameterError("geometric ratio must lie in (0, 1), got " +
                         std::to_string(ratio));
}

inline std::vector<double> geometric(std::span<const BasicUnit> units,
                                     double ratio, bool normalize) {
  check_ratio(ratio);
  std::vector<double> w;
  w.reserve(units.size());
  for (const BasicUnit& u : units) w.push_back(std::pow(ratio, u.rank - 1));
  return normalize ? normalized(std::move(w)) : w;
}

inline std::vector<double> weighted_fractional(std::span<const double> weights) {
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0)
      throw ParameterError("weights must be finite and non-negative");
  return normalized(std::vector<double>(weights.begin(), weights.end()));
}

inline void check_floor(double floor) {
  if (!(floor > 0.0 && floor <= 1.0))
    throw ParameterError("equal-contribution floor must lie in (0, 1], got " +
                         std::to_string(floor));
}

inline std::vector<double> equal_contribution(std::size_t n, double floor) {
  check_floor(floor);
  return std::vector<double>(n, std::max(1.0 / static_cast<double>(n), floor));
}

inline std::vector<double> visibility_ratio(std::span<const double> indicators,
                                            double union_indicator) {
  if (!(union_indicator > 0.0))
    throw ParameterError("union indicator must be positive");
  std::vector<double> out;
  out.reserve(indicators.size());
  for (double h : indicators) {
    if (!(h >= 0.0)) throw ParameterError("indicator values must be >= 0");
    out.push_back(h / union_indicator);
  }
  return out;
}

// Exact Shapley values by enumerating all 2^n coalitions. `value` is indexed
// by coalition bit mask (bit i = unit i).
inline std::vector<double> shapley(std::size_t n,
                                   const std::function<double(std::uint64_t)>& value,
                                   std::size_t n_max = 12) {
  if (n > n_max || n > 30)
    throw SizeError("Shapley enumeration limited to " + std::to_string(n_max) +
                    " players, got " + std::to_string(n) +
                    "; sampling approximations are out of scope");
  const std::uint64_t full = (std::uint64_t{1} << n);
  std::vector<double> v(full);
  for (std::uint64_t m = 0; m < full; ++m) v[m] = value(m);
  if (std::fabs(v[0]) > 1e-12)
    throw ParameterError("value of the empty coalition must be 0");
  // weight[s] = s! (n - s - 1)! / n!
  std::vector<double> weight(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    double w = 1.0 / static_cast<double>(n);
    // 1 / (n * C(n-1, s))
    for (std::size_t k = 1; k <= s; ++k)
      w *= static_cast<double>(k) / static_cast<double>(n - k);
    weight[s] = w;
  }
  std::vector<double> phi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    std::vector<double> terms;
    terms.reserve(full / 2);
    for (std::uint64_t m = 0; m < full; ++m) {
      if (m & bit) continue;
      const auto s = static_cast<std::size_t>(std::popcount(m));
      terms.push_back(weight[s] * (v[m | bit] - v[m]));
    }
    phi[i] = pairwise_sum(terms);
  }
  return phi;
}

inline std::vector<double> attribute_values(std::span<const BasicUnit> units,
                                            const std::string& name) {
  std::vector<double> out;
  out.reserve(units.size());
  for (const BasicUnit& u : units) {
    auto v = u.attributes.value(name);
    if (!v) throw MissingAttributeError(name, "basic unit '" + u.label + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace rules

// ---------------------------------------------------------------------------
// Score functions. Names are the kebab-case registry names.

inline ScoreFunction make_complete() {
  return {{.name = "complete"},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::complete(u.size());
          }};
}

inline ScoreFunction make_complete_fractionalized() {
  return {{.name = "complete-fractionalized"},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::complete_fractionalized(u.size());
          }};
}

inline ScoreFunction make_straight() {
  return {{.name = "straight"},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::straight(u);
          }};
}

inline ScoreFunction make_whole() {
  return {{.name = "whole", .requires_attribution = true},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::whole_family(u, false);
          }};
}

inline ScoreFunction make_whole_fractionalized(
    std::string name = "whole-fractionalized") {
  return {{.name = std::move(name), .requires_attribution = true},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::whole_family(u, true);
          }};
}

// Credit of rank i is (1/i) / H_n.
inline ScoreFunction make_harmonic() {
  return {{.name = "harmonic"},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::harmonic(u);
          }};
}

// Credit of rank i is (n + 1 - i) / (n (n + 1) / 2).
inline ScoreFunction make_proportional() {
  return {{.name = "proportional"},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::proportional(u);
          }};
}

// credit(i+1) = ratio * credit(i). Normalized variants share a credit of 1;
// otherwise rank 1 receives 1. `selectable` marks the ratio as a value the
// bibliometrician picks rather than one fixed by the method.
inline ScoreFunction make_geometric(double ratio, bool normalize,
                                    std::string name = "geometric",
                                    bool selectable = true) {
  rules::check_ratio(ratio);
  ScoreFunctionSpec spec{.name = std::move(name),
                         .parameters = {{"ratio", ratio},
                                        {"normalize", normalize ? 1.0 : 0.0}}};
  if (selectable) spec.selectable_parameters = {"ratio"};
  return {std::move(spec),
          [ratio, normalize](const Publication&, std::span<const BasicUnit> u) {
            return rules::geometric(u, ratio, normalize);
          }};
}

inline ScoreFunction make_pure_geometric() {
  return make_geometric(0.5, true, "pure-geometric", false);
}
inline ScoreFunction make_zou_peterson() {
  return make_geometric(0.5, false, "zou-peterson", false);
}
inline ScoreFunction make_howard() {
  return make_geometric(2.0 / 3.0, true, "howard", false);
}

// credit(i) = w(i) / sum(w) with weights computed from unit attributes.
inline ScoreFunction make_weighted_fractional(
    std::string name, std::set<std::string> attributes,
    std::function<double(const BasicUnit&)> weight, bool conditional = false) {
  ScoreFunctionSpec spec{.name = std::move(name),
                         .requires_attributes = std::move(attributes),
                         .conditional = conditional};
  return {std::move(spec),
          [weight = std::move(weight)](const Publication&,
                                       std::span<const BasicUnit> u) {
            std::vector<double> w;
            w.reserve(u.size());
            for (const BasicUnit& unit : u) w.push_back(weight(unit));
            return rules::weighted_fractional(w);
          }};
}

// Weights taken directly from one numeric attribute.
inline ScoreFunction make_attribute_weighted(std::string name,
                                             const std::string& attribute) {
  return make_weighted_fractional(
      std::move(name), {attribute}, [attribute](const BasicUnit& u) {
        return *u.attributes.value(attribute);
      });
}

// Senior author receives twice the credit of each non-senior author.
inline ScoreFunction make_boxenbaum() {
  return make_weighted_fractional(
      "boxenbaum", {"senior"},
      [](const BasicUnit& u) { return *u.attributes.senior ? 2.0 : 1.0; },
      true);
}

// Credit shared equally among principal investigators; others get 0.
inline ScoreFunction make_steinbruchel() {
  return make_weighted_fractional(
      "steinbruchel", {"pi"},
      [](const BasicUnit& u) { return *u.attributes.pi ? 1.0 : 0.0; });
}

// max(1/n, floor) per unit.
inline ScoreFunction make_equal_contribution(double floor = 0.05) {
  rules::check_floor(floor);
  return {{.name = "equal-contribution",
           .parameters = {{"floor", floor}},
           .conditional = true},
          [floor](const Publication&, std::span<const BasicUnit> u) {
            return rules::equal_contribution(u.size(), floor);
          }};
}

// indicator(i) / indicator(union of the authors' output).
inline ScoreFunction make_visibility_ratio() {
  return {{.name = "visibility-second",
           .requires_attributes = {"indicator"},
           .requires_fields = {"union_indicator"}},
          [](const Publication& pub, std::span<const BasicUnit> u) {
            const auto h = rules::attribute_values(u, "indicator");
            return rules::visibility_ratio(h, *pub.union_indicator);
          }};
}

// Shapley credit for the coalition game v(S) = max_{i in S} indicator(i),
// normalized by v(all) so the credits share 1.
inline ScoreFunction make_shapley_indicator(std::size_t n_max = 12) {
  return {{.name = "shapley-value",
           .requires_attributes = {"indicator"},
           .max_units = n_max},
          [n_max](const Publication&, std::span<const BasicUnit> u) {
            const auto h = rules::attribute_values(u, "indicator");
            const double grand = *std::max_element(h.begin(), h.end());
            if (!(grand > 0.0))
              throw Error("no creditable unit: all indicator values are zero");
            auto value = [&h, grand](std::uint64_t mask) {
              double best = 0.0;
              for (std::size_t i = 0; i < h.size(); ++i)
                if (mask >> i & 1U) best = std::max(best, h[i]);
              return best / grand;
            };
            return rules::shapley(u.size(), value, n_max);
          }};
}

// Institutional NPI steps 1-3: complete-fractionalized unit credits,
// collected per object as the root of their sum.
inline ScoreFunction make_npi_institutional(int root = 2) {
  if (root < 1) throw ParameterError("root exponent must be >= 1");
  return {{.name = "npi-institutional",
           .parameters = {{"root", static_cast<double>(root)}},
           .collection = Collection::kRoot,
           .root = static_cast<double>(root)},
          [](const Publication&, std::span<const BasicUnit> u) {
            return rules::complete_fractionalized(u.size());
          }};
}

// ---------------------------------------------------------------------------
// Publication-level entry points with authors as basic units and objects.

namespace detail {

inline CreditVector author_credits(const Publication& pub,
                                   const ScoreFunction& fn) {
  auto attr = derive_attribution({pub}, EntityLevel::kAuthor, EntityLevel::kAuthor);
  return fn.credit(pub, attr);
}

inline CreditVector from_values(const Publication& pub,
                                std::vector<double> values) {
  auto units = raw_units(pub, EntityLevel::kAuthor, EntityLevel::kAuthor);
  CreditVector out{pub.id, {}};
  for (std::size_t i = 0; i < units.size(); ++i)
    out.entries.push_back({std::move(units[i]), values[i]});
  return out;
}

}  // namespace detail

inline CreditVector credit_complete(const Publication& pub) {
  return detail::author_credits(pub, make_complete());
}
inline CreditVector credit_complete_fractionalized(const Publication& pub) {
  return detail::author_credits(pub, make_complete_fractionalized());
}
inline CreditVector credit_straight(const Publication& pub) {
  return detail::author_credits(pub, make_straight());
}
inline CreditVector credit_whole(const Publication& pub,
                                 const AttributionMap& attr) {
  return make_whole().credit(pub, attr);
}
inline CreditVector credit_whole_fractionalized(const Publication& pub,
                                                const AttributionMap& attr) {
  return make_whole_fractionalized().credit(pub, attr);
}
inline CreditVector credit_harmonic(const Publication& pub) {
  return detail::author_credits(pub, make_harmonic());
}
inline CreditVector credit_proportional(const Publication& pub) {
  return detail::author_credits(pub, make_proportional());
}
inline CreditVector credit_geometric(const Publication& pub, double ratio,
                                     bool normalize) {
  return detail::author_credits(pub, make_geometric(ratio, normalize));
}
inline CreditVector credit_weighted_fractional(const Publication& pub,
                                               std::span<const double> weights) {
  if (weights.size() != pub.size())
    throw ParameterError("one weight per author is required");
  return detail::from_values(pub, rules::weighted_fractional(weights));
}
inline CreditVector credit_equal_contribution(const Publication& pub,
                                              double floor = 0.05) {
  return detail::from_values(pub, rules::equal_contribution(pub.size(), floor));
}
inline CreditVector credit_visibility_ratio(const Publication& pub,
                                            std::span<const double> indicator,
                                            double union_indicator) {
  if (indicator.size() != pub.size())
    throw ParameterError("one indicator value per author is required");
  return detail::from_values(pub,
                             rules::visibility_ratio(indicator, union_indicator));
}
inline CreditVector credit_shapley(
    const Publication& pub, const std::function<double(std::uint64_t)>& value,
    std::size_t n_max = 12) {
  return detail::from_values(pub, rules::shapley(pub.size(), value, n_max));
}

}  // namespace bibcount

#endif  // BIBCOUNT_SCOREFN_HPP_
