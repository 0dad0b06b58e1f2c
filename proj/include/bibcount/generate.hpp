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

#ifndef BIBCOUNT_GENERATE_HPP_
#define BIBCOUNT_GENERATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/numeric.hpp"

namespace bibcount {

// Shape of a synthetic corpus. Authors belong to one home institution and
// every institution to one country, so the author -> institution -> country
// relation is one-to-one unless `multi_affiliation` adds second addresses.
struct CorpusConfig {
  std::size_t publications = 100;
  std::size_t authors = 200;
  std::size_t institutions = 20;
  std::size_t countries = 5;

  // Team size is 1 + Poisson(mean_team_size - 1), capped by max_team_size
  // and by the number of authors.
  double mean_team_size = 3.0;
  std::size_t max_team_size = 50;

  // Zipf exponents for author activity and for institution/country sizes;
  // 0 means uniform.
  double author_activity_skew = 0.0;
  double institution_size_skew = 0.0;
  double country_size_skew = 0.0;

  // Probability that a co-author is drawn from the first author's
  // institution rather than from the whole author pool.
  double local_collaboration = 0.0;
  // Probability that an authorship carries a second, different institution.
  double multi_affiliation = 0.0;

  // Synthesize senior/pi/indicator/contribution and union_indicator values.
  bool attributes = true;

  int year_min = 2000;
  int year_max = 2020;
  std::string id_prefix = "P";
  std::string author_prefix = "A";
  std::string institution_prefix = "I";
  std::string country_prefix = "C";
};

inline void validate(const CorpusConfig& c) {
  if (c.authors == 0 || c.institutions == 0 || c.countries == 0)
    throw ConfigError("authors, institutions and countries must be positive");
  if (c.max_team_size == 0) throw ConfigError("max_team_size must be positive");
  if (!(c.mean_team_size >= 1.0) || !std::isfinite(c.mean_team_size))
    throw ConfigError("mean_team_size must be at least 1");
  for (double p : {c.local_collaboration, c.multi_affiliation})
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError("probabilities must lie in [0, 1]");
  for (double s : {c.author_activity_skew, c.institution_size_skew,
                   c.country_size_skew})
    if (!(s >= 0.0) || !std::isfinite(s))
      throw ConfigError("skew exponents must be finite and non-negative");
  if (c.year_min > c.year_max) throw ConfigError("year_min exceeds year_max");
}

namespace detail {

inline std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = std::pow(static_cast<double>(i + 1), -exponent);
  return w;
}

inline std::string label(const std::string& prefix, std::size_t index) {
  return prefix + std::to_string(index + 1);
}

}  // namespace detail

// The fixed author/institution/country layout drawn from the seed before any
// publication is generated.
struct CorpusWorld {
  std::vector<std::size_t> author_institution;
  std::vector<std::size_t> institution_country;
  std::vector<std::vector<std::size_t>> institution_members;
};

inline CorpusWorld make_world(const CorpusConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0));
  CorpusWorld world;
  const auto country_w = detail::zipf_weights(config.countries,
                                              config.country_size_skew);
  std::discrete_distribution<std::size_t> pick_country(country_w.begin(),
                                                       country_w.end());
  world.institution_country.resize(config.institutions);
  for (std::size_t i = 0; i < config.institutions; ++i) {
    // The first institutions cover every country once when possible, so the
    // configured country count is realized.
    world.institution_country[i] =
        i < config.countries ? i : pick_country(rng);
  }
  const auto inst_w = detail::zipf_weights(config.institutions,
                                           config.institution_size_skew);
  std::discrete_distribution<std::size_t> pick_inst(inst_w.begin(),
                                                    inst_w.end());
  world.author_institution.resize(config.authors);
  world.institution_members.resize(config.institutions);
  for (std::size_t a = 0; a < config.authors; ++a) {
    const std::size_t inst = a < config.institutions ? a : pick_inst(rng);
    world.author_institution[a] = inst;
    world.institution_members[inst].push_back(a);
  }
  return world;
}

// Draws the per-author attributes (senior, pi, indicator, contribution), the
// union indicator and a citation count. At least one author is a PI.
template <class Rng>
void synthesize_attributes(Publication& pub, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> h(1, 40);
  double max_indicator = 0.0, sum_indicator = 0.0;
  bool any_pi = false;
  for (Authorship& as : pub.authorships) {
    as.attributes.senior = unit(rng) < 0.25;
    as.attributes.pi = unit(rng) < 0.3;
    any_pi = any_pi || *as.attributes.pi;
    as.attributes.indicator = static_cast<double>(h(rng));
    as.attributes.contribution = 0.05 + 0.95 * unit(rng);
    max_indicator = std::max(max_indicator, *as.attributes.indicator);
    sum_indicator += *as.attributes.indicator;
  }
  if (!any_pi) pub.authorships.front().attributes.pi = true;
  pub.union_indicator =
      std::round(max_indicator + unit(rng) * (sum_indicator - max_indicator));
  std::geometric_distribution<std::int64_t> cites(0.05);
  pub.citations = cites(rng);
}

// Deterministic synthetic corpus: a pure function of (config, seed). Each
// publication draws from its own sub-seed.
inline Corpus generate_corpus(const CorpusConfig& config, std::uint64_t seed) {
  validate(config);
  const CorpusWorld world = make_world(config, seed);
  const auto activity = detail::zipf_weights(config.authors,
                                             config.author_activity_skew);

  Corpus corpus;
  corpus.reserve(config.publications);
  for (std::size_t p = 0; p < config.publications; ++p) {
    std::mt19937_64 rng(mix_seed(seed, p + 1));
    std::discrete_distribution<std::size_t> pick_author(activity.begin(),
                                                        activity.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::size_t team = 1;
    if (config.mean_team_size > 1.0) {
      std::poisson_distribution<std::size_t> extra(config.mean_team_size - 1.0);
      team += extra(rng);
    }
    team = std::min({team, config.max_team_size, config.authors});

    std::vector<std::size_t> members;
    std::vector<char> used(config.authors, 0);
    auto take = [&](std::size_t a) {
      used[a] = 1;
      members.push_back(a);
    };
    take(pick_author(rng));
    const auto& local = world.institution_members[
        world.author_institution[members.front()]];
    while (members.size() < team) {
      std::size_t candidate = config.authors;
      if (config.local_collaboration > 0.0 &&
          unit(rng) < config.local_collaboration) {
        std::uniform_int_distribution<std::size_t> pick_local(0, local.size() - 1);
        for (int attempt = 0; attempt < 8; ++attempt) {
          const std::size_t c = local[pick_local(rng)];
          if (!used[c]) {
            candidate = c;
            break;
          }
        }
      }
      if (candidate == config.authors) {
        for (int attempt = 0; attempt < 32; ++attempt) {
          const std::size_t c = pick_author(rng);
          if (!used[c]) {
            candidate = c;
            break;
          }
        }
      }
      if (candidate == config.authors) {
        // Dense teams: fall back to the first unused author after a random
        // starting point.
        std::uniform_int_distribution<std::size_t> start(0, config.authors - 1);
        std::size_t s = start(rng);
        while (used[s]) s = (s + 1) % config.authors;
        candidate = s;
      }
      take(candidate);
    }

    Publication pub;
    pub.id = detail::label(config.id_prefix, p);
    std::uniform_int_distribution<int> year(config.year_min, config.year_max);
    pub.year = year(rng);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::size_t a = members[i];
      Authorship as;
      as.author = detail::label(config.author_prefix, a);
      as.rank = static_cast<int>(i) + 1;
      const std::size_t inst = world.author_institution[a];
      as.affiliations.push_back(
          {detail::label(config.institution_prefix, inst),
           detail::label(config.country_prefix, world.institution_country[inst])});
      if (config.institutions > 1 && config.multi_affiliation > 0.0 &&
          unit(rng) < config.multi_affiliation) {
        std::uniform_int_distribution<std::size_t> other(0, config.institutions - 2);
        std::size_t second = other(rng);
        if (second >= inst) ++second;
        as.affiliations.push_back(
            {detail::label(config.institution_prefix, second),
             detail::label(config.country_prefix,
                           world.institution_country[second])});
      }
      pub.authorships.push_back(std::move(as));
    }
    if (config.attributes) synthesize_attributes(pub, rng);
    corpus.push_back(std::move(pub));
  }
  return corpus;
}

}  // namespace bibcount

#endif  // BIBCOUNT_GENERATE_HPP_
