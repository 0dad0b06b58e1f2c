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

#ifndef BIBCOUNT_NPI_HPP_
#define BIBCOUNT_NPI_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/numeric.hpp"

namespace bibcount {

// A unique (author, institution) combination within one publication.
struct AuthorShare {
  std::string author;
  std::string institution;
  auto operator<=>(const AuthorShare&) const = default;
};

enum class NpiMode {
  kRooted,          // (institution shares / total shares)^(1/k)
  kPerShareRooted,  // sum over the institution's shares of (1 / total)^(1/k)
};

struct NpiParams {
  int root_exponent = 2;
  double international_bonus = 1.3;
  // Points per publication id; falls back to the record's level_points, then
  // to default_points.
  std::map<std::string, double> points;
  double default_points = 1.0;
  // Country judged "home" for the bonus; the corpus' modal country if empty.
  std::optional<std::string> home_country;
  NpiMode mode = NpiMode::kRooted;

  void validate() const {
    if (root_exponent < 1) throw ParameterError("root exponent must be >= 1");
    if (!(international_bonus > 0.0) || !std::isfinite(international_bonus))
      throw ParameterError("international bonus must be positive");
    if (!(default_points > 0.0)) throw ParameterError("points must be positive");
    for (const auto& [id, p] : points)
      if (!(p > 0.0) || !std::isfinite(p))
        throw ParameterError("points for '" + id + "' must be positive");
  }
};

// Unique author shares in order of first appearance.
inline std::vector<AuthorShare> author_shares(const Publication& pub) {
  std::vector<AuthorShare> out;
  std::set<AuthorShare> seen;
  for (const Authorship& a : pub.authorships)
    for (const Affiliation& af : a.affiliations) {
      AuthorShare s{a.author, af.institution};
      if (seen.insert(s).second) out.push_back(std::move(s));
    }
  return out;
}

// Institution's author shares over all author shares of the publication.
inline double institution_fraction(const Publication& pub,
                                   const std::string& institution) {
  const auto shares = author_shares(pub);
  const auto mine = std::count_if(shares.begin(), shares.end(),
                                  [&](const AuthorShare& s) {
                                    return s.institution == institution;
                                  });
  return static_cast<double>(mine) / static_cast<double>(shares.size());
}

inline double modified_fractional(double fraction, int k) {
  if (k < 1) throw ParameterError("root exponent k must be >= 1");
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw ParameterError("fraction must lie in [0, 1]");
  return k == 1 ? fraction : std::pow(fraction, 1.0 / k);
}

// fraction^(1/k); k = 1 gives the plain institutional fractional count.
inline double modified_fractional(const Publication& pub,
                                  const std::string& institution, int k) {
  return modified_fractional(institution_fraction(pub, institution), k);
}

inline double publication_points(const Publication& pub, const NpiParams& p) {
  if (auto it = p.points.find(pub.id); it != p.points.end()) return it->second;
  if (pub.level_points) return *pub.level_points;
  return p.default_points;
}

namespace detail {

inline std::string home_of(const Corpus& pubs, const NpiParams& p) {
  return p.home_country ? *p.home_country : modal_country(pubs);
}

// Steps 1-5 for one publication and institution; 0 if not affiliated.
inline double npi_contribution(const Publication& pub,
                               const std::string& institution,
                               const NpiParams& p, const std::string& home) {
  const auto shares = author_shares(pub);
  const auto mine = static_cast<std::size_t>(std::count_if(
      shares.begin(), shares.end(),
      [&](const AuthorShare& s) { return s.institution == institution; }));
  if (mine == 0) return 0.0;
  const double total = static_cast<double>(shares.size());
  double value = 0.0;
  if (p.mode == NpiMode::kRooted) {
    value = modified_fractional(static_cast<double>(mine) / total, p.root_exponent);
  } else {
    value = static_cast<double>(mine) * modified_fractional(1.0 / total, p.root_exponent);
  }
  value *= publication_points(pub, p);
  if (has_foreign_affiliation(pub, home)) value *= p.international_bonus;
  return value;
}

}  // namespace detail

// Sum over publications of the institution's NPI contribution. An institution
// absent from every publication scores 0 and a warning is appended.
inline double npi_score(const Corpus& pubs, const std::string& institution,
                        const NpiParams& params = {},
                        std::vector<std::string>* warnings = nullptr) {
  params.validate();
  const std::string home = detail::home_of(pubs, params);
  std::vector<double> parts;
  bool present = false;
  for (const Publication& pub : pubs) {
    const double c = detail::npi_contribution(pub, institution, params, home);
    if (c > 0.0) present = true;
    parts.push_back(c);
  }
  if (!present && warnings)
    warnings->push_back("institution '" + institution +
                        "' does not occur in the corpus; score is 0");
  return pairwise_sum(parts);
}

// NPI score of every institution in the corpus.
inline std::map<std::string, double> npi_scores(const Corpus& pubs,
                                                const NpiParams& params = {}) {
  params.validate();
  const std::string home = detail::home_of(pubs, params);
  std::map<std::string, std::vector<double>> parts;
  for (const Publication& pub : pubs) {
    std::set<std::string> insts;
    for (const AuthorShare& s : author_shares(pub)) insts.insert(s.institution);
    for (const std::string& inst : insts)
      parts[inst].push_back(detail::npi_contribution(pub, inst, params, home));
  }
  std::map<std::string, double> out;
  for (const auto& [inst, v] : parts) out[inst] = pairwise_sum(v);
  return out;
}

namespace detail {

// Institution credits of one publication: each author's 1/n split equally
// over the author's distinct institutions, then floored at `floor`.
inline std::map<std::string, double> bfi_publication(const Publication& pub,
                                                     double floor) {
  std::map<std::string, std::vector<double>> parts;
  const double per_author = 1.0 / static_cast<double>(pub.size());
  for (const Authorship& a : pub.authorships) {
    std::set<std::string> insts;
    for (const Affiliation& af : a.affiliations) insts.insert(af.institution);
    for (const std::string& inst : insts)
      parts[inst].push_back(per_author / static_cast<double>(insts.size()));
  }
  std::map<std::string, double> out;
  for (const auto& [inst, v] : parts) out[inst] = std::max(pairwise_sum(v), floor);
  return out;
}

}  // namespace detail

inline constexpr double kBfiFloor = 0.10;

// Institutional fractional credit raised to at least 10% per publication.
inline double bfi_score(const Corpus& pubs, const std::string& institution,
                        double floor = kBfiFloor) {
  std::vector<double> parts;
  for (const Publication& pub : pubs) {
    const auto credits = detail::bfi_publication(pub, floor);
    if (auto it = credits.find(institution); it != credits.end())
      parts.push_back(it->second);
  }
  return pairwise_sum(parts);
}

inline std::map<std::string, double> bfi_scores(const Corpus& pubs,
                                                double floor = kBfiFloor) {
  std::map<std::string, std::vector<double>> parts;
  for (const Publication& pub : pubs)
    for (const auto& [inst, c] : detail::bfi_publication(pub, floor))
      parts[inst].push_back(c);
  std::map<std::string, double> out;
  for (const auto& [inst, v] : parts) out[inst] = pairwise_sum(v);
  return out;
}

// Reads `publication_id,points` rows. A header row is optional.
inline std::map<std::string, double> parse_points_csv(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected 'publication_id,points'", line_no);
    const std::string id = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (line_no == 1 && id == "publication_id") continue;
    double points = 0.0;
    try {
      std::size_t used = 0;
      points = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("bad points value '" + value + "'", line_no);
    }
    if (!(points > 0.0) || !std::isfinite(points))
      throw ParseError("points must be positive", line_no);
    if (!out.emplace(id, points).second)
      throw ParseError("duplicate publication id '" + id + "'", line_no);
  }
  return out;
}

}  // namespace bibcount

#endif  // BIBCOUNT_NPI_HPP_
