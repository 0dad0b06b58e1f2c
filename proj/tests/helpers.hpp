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

// Fixtures, hand-rolled generators and independent oracles for the tests.
#ifndef BIBCOUNT_TESTS_HELPERS_HPP_
#define BIBCOUNT_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "bibcount/bibcount.hpp"

namespace bibcount::testing {

struct Row {
  std::string author;
  std::string institution;
  std::string country;
};

inline Publication make_pub(const std::string& id, const std::vector<Row>& rows) {
  Publication p;
  p.id = id;
  p.year = 2020;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Authorship a;
    a.author = rows[i].author;
    a.rank = static_cast<int>(i) + 1;
    a.affiliations.push_back({rows[i].institution, rows[i].country});
    p.authorships.push_back(a);
  }
  return p;
}

// Three authors, two institutions: A and B at Y, C at Z, one country.
inline Publication worked_example() {
  return make_pub("W1", {{"A", "Y", "DK"}, {"B", "Y", "DK"}, {"C", "Z", "DK"}});
}

// Ten authors from ten countries, three of them the UK nations.
inline Publication ten_country_pub() {
  const std::vector<std::string> countries = {
      "England", "Scotland", "Wales", "Denmark", "Norway",
      "Sweden",  "France",   "Spain", "Italy",   "Chile"};
  std::vector<Row> rows;
  for (std::size_t i = 0; i < countries.size(); ++i)
    rows.push_back({"A" + std::to_string(i + 1), "I" + std::to_string(i + 1),
                    countries[i]});
  return make_pub("UK10", rows);
}

// n authors with distinct ids at one institution, with synthesized attributes.
inline Publication pub_with_n(std::size_t n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  return trial_publication(rng, n, 0);
}

inline double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Shapley values by enumerating all n! orderings.
inline std::vector<double> shapley_by_permutations(
    std::size_t n, const std::function<double(std::uint64_t)>& v) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(n, 0.0);
  double count = 0.0;
  do {
    std::uint64_t mask = 0;
    for (std::size_t i : order) {
      const double before = v(mask);
      mask |= std::uint64_t{1} << i;
      phi[i] += v(mask) - before;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : phi) p /= count;
  return phi;
}

// Random game on n players with v(empty) = 0; values are small integers so
// symmetric players can be built exactly.
template <class Rng>
std::vector<double> random_game(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 9);
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t m = 1; m < v.size(); ++m) v[m] = d(rng);
  return v;
}

// Discrete power law P(k) = k^-alpha / zeta(alpha) sampled through a
// cumulative table truncated at kmax.
class PowerLawSampler {
 public:
  PowerLawSampler(double alpha, std::size_t kmax = 200000) : cdf_(kmax) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
      acc += std::pow(static_cast<double>(k), -alpha);
      cdf_[k - 1] = acc;
    }
    for (double& c : cdf_) c /= acc;
  }
  template <class Rng>
  std::size_t operator()(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return static_cast<std::size_t>(
               std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()) + 1;
  }

 private:
  std::vector<double> cdf_;
};

// Declared registry flags of the implemented methods in column order: compare
// to others, principles, quantitative models, surveys, compare groups,
// time-specific evidence, fixed credits, parameters selected, external
// elements, conditional equations.
inline const std::map<std::string, std::string>& transcribed_flags() {
  static const std::map<std::string, std::string> rows = {
      {"complete", "N N N N N N NA N N N"},
      {"complete-fractionalized", "N N N N N N N N N N"},
      {"straight", "N N N N N N N N N N"},
      {"whole", "N N N N N N NA N N N"},
      {"harmonic", "N Y N N N N N N N N"},
      {"proportional", "N Y N N N N N N N N"},
      {"howard", "Y N N N Y N N N N N"},
      {"boxenbaum", "N N N Y N Y N N Y Y"},
      {"on-line-fractionation", "Y N N N Y N N N N N"},
      {"pure-geometric", "Y N N N N N N N N N"},
      {"equal-contribution", "Y N N N N N NA N N Y"},
      {"pareto-weights", "Y N N N N N N N Y N"},
      {"shapley-value", "Y N N N Y N N N Y N"},
      {"visibility-first", "N N Y N Y N N N Y N"},
      {"visibility-second", "N N Y N Y N NA N Y N"},
      {"shen-barabasi", "N N N N Y N N N Y N"},
      {"npi-institutional", "Y N Y N Y N NA N N N"},
      {"zou-peterson", "Y N N Y Y Y NA N N N"},
      {"relative-intellectual-contribution", "Y N N N N N N N Y N"},
      {"steinbruchel", "Y N N N N N N N Y N"},
  };
  return rows;
}

}  // namespace bibcount::testing

#endif  // BIBCOUNT_TESTS_HELPERS_HPP_
