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

#ifndef BIBCOUNT_HARNESS_HPP_
#define BIBCOUNT_HARNESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/minima.hpp>

#include "bibcount/aggregate.hpp"
#include "bibcount/attribution.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/numeric.hpp"
#include "bibcount/scorefn.hpp"

namespace bibcount {

// Gini coefficient via the mean absolute pairwise difference (computed on the
// sorted values). 0 for perfect equality.
inline double gini(std::span<const double> scores) {
  if (scores.empty()) throw ParameterError("undefined Gini: no scores");
  std::vector<double> x(scores.begin(), scores.end());
  for (double v : x)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ParameterError("Gini requires finite non-negative scores");
  std::sort(x.begin(), x.end());
  const double total = pairwise_sum(x);
  if (!(total > 0.0)) throw ParameterError("undefined Gini: all scores are zero");
  const double n = static_cast<double>(x.size());
  // sum_{i<j} (x_j - x_i) = sum_i (2i - n - 1) x_(i), i 1-based
  std::vector<double> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    terms[i] = (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
  return pairwise_sum(terms) / (n * total);
}

struct LotkaFit {
  double exponent = 0.0;        // discrete power-law exponent, kmin = 1
  double ks_distance = 0.0;     // sup |empirical CDF - fitted CDF|
  double log_likelihood = 0.0;
  std::size_t authors = 0;
  bool degenerate = false;      // every author has a count of 1
};

inline constexpr double kLotkaMaxExponent = 10.0;

namespace detail {

inline double lotka_log_likelihood(double alpha, double sum_log_k, double n) {
  return -alpha * sum_log_k - n * std::log(boost::math::zeta(alpha));
}

// sup_k |F_emp(k) - F_fit(k)| over k = 1..max(counts).
inline double lotka_ks(const std::vector<std::size_t>& sorted_counts, double alpha) {
  const double z = boost::math::zeta(alpha);
  const std::size_t kmax = sorted_counts.back();
  const double n = static_cast<double>(sorted_counts.size());
  double model = 0.0, worst = 0.0;
  std::size_t idx = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    model += std::pow(static_cast<double>(k), -alpha) / z;
    while (idx < sorted_counts.size() && sorted_counts[idx] <= k) ++idx;
    worst = std::max(worst, std::fabs(static_cast<double>(idx) / n - model));
  }
  return worst;
}

}  // namespace detail

// Maximum-likelihood fit of P(k) = k^-a / zeta(a), k >= 1, to publication
// counts per author.
inline LotkaFit lotka_fit(std::span<const std::size_t> counts) {
  if (counts.size() < 10)
    throw InsufficientDataError("Lotka fit needs at least 10 authors, got " +
                                std::to_string(counts.size()));
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0)
    throw ParameterError("publication counts must be >= 1");
  std::vector<double> logs;
  logs.reserve(sorted.size());
  for (std::size_t k : sorted) logs.push_back(std::log(static_cast<double>(k)));
  const double sum_log = pairwise_sum(logs);
  const double n = static_cast<double>(sorted.size());

  LotkaFit fit;
  fit.authors = sorted.size();
  if (sorted.back() == 1) {
    // Likelihood increases without bound in the exponent.
    fit.degenerate = true;
    fit.exponent = kLotkaMaxExponent;
  } else {
    auto neg = [&](double a) { return -detail::lotka_log_likelihood(a, sum_log, n); };
    const auto [a, _] = boost::math::tools::brent_find_minima(
        neg, 1.0 + 1e-6, kLotkaMaxExponent, std::numeric_limits<double>::digits / 2);
    fit.exponent = a;
  }
  fit.log_likelihood = detail::lotka_log_likelihood(fit.exponent, sum_log, n);
  fit.ks_distance = detail::lotka_ks(sorted, fit.exponent);
  return fit;
}

inline LotkaFit lotka_fit(const std::map<std::string, std::size_t>& pub_counts) {
  std::vector<std::size_t> v;
  v.reserve(pub_counts.size());
  for (const auto& [_, c] : pub_counts) v.push_back(c);
  return lotka_fit(v);
}

// Publications per author (each author counted once per publication).
inline std::map<std::string, std::size_t> author_publication_counts(
    const Corpus& pubs) {
  std::map<std::string, std::size_t> out;
  for (const Publication& p : pubs) {
    std::set<std::string> seen;
    for (const Authorship& a : p.authorships)
      if (seen.insert(a.author).second) ++out[a.author];
  }
  return out;
}

// 1-based ranks, ties receive the average of their positions. Rank 1 is the
// smallest value.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

// Spearman rank correlation (Pearson correlation of average ranks).
inline double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("rankings differ in length");
  if (a.size() < 2) throw InsufficientDataError("spearman needs >= 2 objects");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = (static_cast<double>(a.size()) + 1.0) / 2.0;
  std::vector<double> sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = ra[i] - mean, db = rb[i] - mean;
    sab.push_back(da * db);
    saa.push_back(da * da);
    sbb.push_back(db * db);
  }
  const double denom = std::sqrt(pairwise_sum(saa) * pairwise_sum(sbb));
  if (!(denom > 0.0)) throw ParameterError("spearman undefined for a constant ranking");
  return std::clamp(pairwise_sum(sab) / denom, -1.0, 1.0);
}

// Over objects present in both maps.
inline double spearman(const std::map<std::string, double>& a,
                       const std::map<std::string, double>& b) {
  std::vector<double> x, y;
  for (const auto& [id, v] : a)
    if (auto it = b.find(id); it != b.end()) {
      x.push_back(v);
      y.push_back(it->second);
    }
  if (x.size() < 2) throw InsufficientDataError("spearman needs >= 2 common objects");
  return spearman(x, y);
}

// Share of the top-k objects (descending score, ties by id) common to both.
inline double top_k_overlap(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b, std::size_t k) {
  if (k == 0) throw ParameterError("k must be >= 1");
  auto top = [k](const std::map<std::string, double>& m) {
    std::vector<std::pair<std::string, double>> v(m.begin(), m.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
      return x.second > y.second;
    });
    std::set<std::string> out;
    for (std::size_t i = 0; i < std::min(k, v.size()); ++i) out.insert(v[i].first);
    return out;
  };
  const auto ta = top(a), tb = top(b);
  std::size_t common = 0;
  for (const std::string& id : ta) common += tb.count(id);
  return static_cast<double>(common) / static_cast<double>(std::min(k, a.size()));
}

struct ScorePair {
  std::string object;
  double a = 0.0, b = 0.0;
};

struct ComparisonReport {
  std::string method_a, method_b;
  EntityLevel level = EntityLevel::kAuthor;
  std::vector<ScorePair> pairs;  // by object id
  double spearman_rho = 0.0;
  std::size_t k = 0;
  double top_k_overlap = 0.0;
};

// Scores of every object reachable at `level` (basic units are authors);
// objects without credit score 0.
inline std::map<std::string, double> level_scores(const ScoreFunction& fn,
                                                  const Corpus& pubs,
                                                  EntityLevel level) {
  const CountingMethod m{fn, EntityLevel::kAuthor, level};
  const auto attr = derive_attribution(pubs, m.basic_level, m.object_level);
  const ScoreTable t = object_scores(m, pubs, attr);
  std::map<std::string, double> out;
  for (const std::string& id : reachable_objects(pubs, attr)) out[id] = t.score(id);
  return out;
}

inline ComparisonReport compare_methods(const ScoreFunction& a, const ScoreFunction& b,
                                        const Corpus& pubs, EntityLevel level) {
  ComparisonReport r{a.name(), b.name(), level, {}, 0.0, 0, 0.0};
  const auto sa = level_scores(a, pubs, level);
  const auto sb = level_scores(b, pubs, level);
  for (const auto& [id, v] : sa) r.pairs.push_back({id, v, sb.at(id)});
  r.spearman_rho = spearman(sa, sb);
  r.k = std::min<std::size_t>(10, sa.size());
  r.top_k_overlap = top_k_overlap(sa, sb, r.k);
  return r;
}

// One report per method pair (i < j) and level, in input order.
inline std::vector<ComparisonReport> run_comparison(
    const std::vector<ScoreFunction>& methods, const Corpus& pubs,
    const std::vector<EntityLevel>& levels) {
  std::vector<ComparisonReport> out;
  for (EntityLevel level : levels) {
    if (level == EntityLevel::kUnion)
      throw LevelError("comparisons run at the author, institution or country level");
    for (std::size_t i = 0; i < methods.size(); ++i)
      for (std::size_t j = i + 1; j < methods.size(); ++j)
        out.push_back(compare_methods(methods[i], methods[j], pubs, level));
  }
  return out;
}

inline void write_comparison_csv(std::ostream& out,
                                 const std::vector<ComparisonReport>& reports,
                                 int precision = 6) {
  out << "method_a,method_b,level,objects,spearman_rho,top_k,top_k_overlap\n";
  out << std::fixed << std::setprecision(precision);
  for (const ComparisonReport& r : reports)
    out << r.method_a << ',' << r.method_b << ',' << to_string(r.level) << ','
        << r.pairs.size() << ',' << r.spearman_rho << ',' << r.k << ','
        << r.top_k_overlap << '\n';
  out.unsetf(std::ios::floatfield);
}

// Rank-vs-rank pairs for external plotting (rank 1 = highest score).
inline void write_plot_csv(std::ostream& out,
                           const std::vector<ComparisonReport>& reports,
                           int precision = 6) {
  out << "method_a,method_b,level,object,score_a,score_b,rank_a,rank_b\n";
  out << std::setprecision(precision);
  for (const ComparisonReport& r : reports) {
    std::vector<double> na, nb;
    for (const ScorePair& p : r.pairs) {
      na.push_back(-p.a);
      nb.push_back(-p.b);
    }
    const auto ra = average_ranks(na), rb = average_ranks(nb);
    for (std::size_t i = 0; i < r.pairs.size(); ++i)
      out << r.method_a << ',' << r.method_b << ',' << to_string(r.level) << ','
          << r.pairs[i].object << ',' << r.pairs[i].a << ',' << r.pairs[i].b << ','
          << ra[i] << ',' << rb[i] << '\n';
  }
}

struct GroupSummary {
  std::string group;
  std::size_t count = 0;
  double mean = 0.0, median = 0.0, stddev = 0.0;
};

struct GroupComparison {
  std::vector<GroupSummary> groups;  // by group label
  double mean_ratio = 0.0;           // largest group mean / smallest
  double mean_cv = 0.0;              // coefficient of variation of group means
};

// Per-group summaries of `scores`. Objects lacking a group are ignored; groups
// left without scored members are dropped with a warning.
inline GroupComparison group_comparison(
    const std::map<std::string, double>& scores,
    const std::map<std::string, std::string>& grouping,
    std::vector<std::string>* warnings = nullptr) {
  std::map<std::string, std::vector<double>> members;
  for (const auto& [object, group] : grouping) {
    members[group];
    if (auto it = scores.find(object); it != scores.end())
      members[group].push_back(it->second);
  }
  GroupComparison out;
  for (auto& [group, v] : members) {
    if (v.empty()) {
      if (warnings) warnings->push_back("group '" + group + "' has no members; dropped");
      continue;
    }
    GroupSummary s{group, v.size(), 0.0, 0.0, 0.0};
    s.mean = pairwise_sum(v) / static_cast<double>(v.size());
    std::vector<double> sq;
    for (double x : v) sq.push_back((x - s.mean) * (x - s.mean));
    s.stddev = v.size() > 1 ? std::sqrt(pairwise_sum(sq) / static_cast<double>(v.size() - 1))
                            : 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    s.median = v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
    out.groups.push_back(s);
  }
  if (out.groups.size() < 2)
    throw InsufficientDataError("group comparison needs at least 2 non-empty groups");
  std::vector<double> means;
  for (const GroupSummary& g : out.groups) means.push_back(g.mean);
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  out.mean_ratio = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  const double mu = pairwise_sum(means) / static_cast<double>(means.size());
  std::vector<double> sq;
  for (double m : means) sq.push_back((m - mu) * (m - mu));
  out.mean_cv = mu > 0.0 ? std::sqrt(pairwise_sum(sq) / static_cast<double>(means.size())) / mu
                         : 0.0;
  return out;
}

}  // namespace bibcount

#endif  // BIBCOUNT_HARNESS_HPP_
