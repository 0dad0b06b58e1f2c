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

#ifndef BIBCOUNT_CORPUS_HPP_
#define BIBCOUNT_CORPUS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibcount/error.hpp"

namespace bibcount {

// Aggregation levels, ordered micro < meso < macro < supra.
enum class EntityLevel { kAuthor = 0, kInstitution = 1, kCountry = 2, kUnion = 3 };

inline std::string_view to_string(EntityLevel level) {
  switch (level) {
    case EntityLevel::kAuthor: return "author";
    case EntityLevel::kInstitution: return "institution";
    case EntityLevel::kCountry: return "country";
    case EntityLevel::kUnion: return "union";
  }
  return "?";
}

inline EntityLevel parse_level(std::string_view name) {
  if (name == "author" || name == "micro") return EntityLevel::kAuthor;
  if (name == "institution" || name == "meso") return EntityLevel::kInstitution;
  if (name == "country" || name == "macro") return EntityLevel::kCountry;
  if (name == "union" || name == "supra") return EntityLevel::kUnion;
  throw LevelError("unknown aggregation level '" + std::string(name) + "'");
}

struct Affiliation {
  std::string institution;
  std::string country;

  friend bool operator==(const Affiliation&, const Affiliation&) = default;
  friend auto operator<=>(const Affiliation&, const Affiliation&) = default;
};

// Optional per-author scalars used by the attribute-weighted score functions.
struct AuthorAttributes {
  std::optional<bool> senior;
  std::optional<bool> pi;
  std::optional<double> indicator;
  std::optional<double> contribution;

  friend bool operator==(const AuthorAttributes&,
                         const AuthorAttributes&) = default;

  bool has(std::string_view name) const {
    if (name == "senior") return senior.has_value();
    if (name == "pi") return pi.has_value();
    if (name == "indicator") return indicator.has_value();
    if (name == "contribution") return contribution.has_value();
    return false;
  }

  // Attribute as a number (booleans map to 0/1). Empty when absent.
  std::optional<double> value(std::string_view name) const {
    if (name == "senior" && senior) return *senior ? 1.0 : 0.0;
    if (name == "pi" && pi) return *pi ? 1.0 : 0.0;
    if (name == "indicator") return indicator;
    if (name == "contribution") return contribution;
    return std::nullopt;
  }
};

inline const std::set<std::string>& attribute_names() {
  static const std::set<std::string> kNames = {"senior", "pi", "indicator",
                                               "contribution"};
  return kNames;
}

struct Authorship {
  std::string author;
  int rank = 0;  // 1-based byline position
  std::vector<Affiliation> affiliations;
  AuthorAttributes attributes;

  friend bool operator==(const Authorship&, const Authorship&) = default;
};

// One bibliographic record. Authorships are stored in rank order, so
// authorships[i].rank == i + 1 for every valid publication.
struct Publication {
  std::string id;
  int year = 0;
  std::vector<Authorship> authorships;
  std::optional<std::int64_t> citations;
  std::optional<double> level_points;
  // Indicator value (e.g. h-index) of the union of the authors' output, used
  // by the visibility-ratio score function.
  std::optional<double> union_indicator;

  std::size_t size() const noexcept { return authorships.size(); }

  friend bool operator==(const Publication&, const Publication&) = default;
};

using Corpus = std::vector<Publication>;

// Throws ValidationError when `pub` breaks a Publication invariant.
inline void validate(const Publication& pub) {
  const std::string where = "publication '" + pub.id + "'";
  if (pub.id.empty()) throw ValidationError("publication id must be non-empty");
  if (pub.authorships.empty()) throw ValidationError(where + ": empty byline");
  for (std::size_t i = 0; i < pub.authorships.size(); ++i) {
    const Authorship& a = pub.authorships[i];
    if (a.author.empty())
      throw ValidationError(where + ": author name must be non-empty");
    if (a.rank != static_cast<int>(i) + 1)
      throw ValidationError(where + ": ranks must be a contiguous 1..n");
    if (a.affiliations.empty())
      throw ValidationError(where + ": author '" + a.author +
                            "' has no affiliation");
    for (const Affiliation& af : a.affiliations) {
      if (af.institution.empty() || af.country.empty())
        throw ValidationError(where + ": empty institution or country");
    }
    for (const auto& v : {a.attributes.indicator, a.attributes.contribution}) {
      if (v && (!std::isfinite(*v) || *v < 0.0))
        throw ValidationError(where +
                              ": attributes must be finite and non-negative");
    }
  }
  if (pub.citations && *pub.citations < 0)
    throw ValidationError(where + ": citations must be non-negative");
  if (pub.level_points && !(std::isfinite(*pub.level_points) &&
                            *pub.level_points > 0.0))
    throw ValidationError(where + ": level_points must be positive");
  if (pub.union_indicator && !(std::isfinite(*pub.union_indicator) &&
                               *pub.union_indicator >= 0.0))
    throw ValidationError(where + ": union_indicator must be non-negative");
}

inline void validate(const Corpus& corpus) {
  std::unordered_set<std::string> ids;
  for (const Publication& p : corpus) {
    validate(p);
    if (!ids.insert(p.id).second)
      throw ValidationError("duplicate publication id '" + p.id + "'");
  }
}

// Most frequent affiliation country over all authorships; ties go to the
// lexicographically smallest country. Empty for an empty corpus.
inline std::string modal_country(const Corpus& corpus) {
  std::map<std::string, std::size_t> counts;
  for (const Publication& p : corpus)
    for (const Authorship& a : p.authorships)
      for (const Affiliation& af : a.affiliations) ++counts[af.country];
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [country, count] : counts) {
    if (count > best_count) {
      best = country;
      best_count = count;
    }
  }
  return best;
}

// True when any affiliation lies outside `home_country`.
inline bool has_foreign_affiliation(const Publication& pub,
                                    std::string_view home_country) {
  for (const Authorship& a : pub.authorships)
    for (const Affiliation& af : a.affiliations)
      if (af.country != home_country) return true;
  return false;
}

namespace detail {

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw ParseError(std::string("field '") + key + "' must be a string", line);
  return it->get<std::string>();
}

template <typename T>
std::optional<T> optional_number(const nlohmann::json& obj, const char* key,
                                 std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer())
      throw ParseError(std::string("field '") + key + "' must be an integer",
                       line);
  } else {
    if (!it->is_number())
      throw ParseError(std::string("field '") + key + "' must be a number",
                       line);
  }
  return it->get<T>();
}

inline std::optional<bool> optional_bool(const nlohmann::json& obj,
                                         const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_boolean())
    throw ParseError(std::string("field '") + key + "' must be a boolean",
                     line);
  return it->get<bool>();
}

}  // namespace detail

// Parses one JSON object into a validated Publication.
inline Publication publication_from_json(const nlohmann::json& obj,
                                         std::size_t line = 0) {
  if (!obj.is_object()) throw ParseError("record must be a JSON object", line);
  Publication pub;
  pub.id = detail::require_string(obj, "id", line);
  auto year = detail::optional_number<int>(obj, "year", line);
  if (!year) throw ParseError("field 'year' is required", line);
  pub.year = *year;
  pub.citations = detail::optional_number<std::int64_t>(obj, "citations", line);
  pub.level_points = detail::optional_number<double>(obj, "level_points", line);
  pub.union_indicator =
      detail::optional_number<double>(obj, "union_indicator", line);

  auto authors = obj.find("authors");
  if (authors == obj.end() || !authors->is_array())
    throw ParseError("field 'authors' must be an array", line);
  if (authors->empty()) throw ParseError("empty byline", line);

  std::size_t explicit_ranks = 0;
  for (const nlohmann::json& a : *authors) {
    if (!a.is_object()) throw ParseError("author must be an object", line);
    Authorship as;
    as.author = detail::require_string(a, "name", line);
    if (auto r = detail::optional_number<int>(a, "rank", line)) {
      as.rank = *r;
      ++explicit_ranks;
    }
    as.attributes.senior = detail::optional_bool(a, "senior", line);
    as.attributes.pi = detail::optional_bool(a, "pi", line);
    as.attributes.indicator = detail::optional_number<double>(a, "indicator", line);
    as.attributes.contribution =
        detail::optional_number<double>(a, "contribution", line);
    auto affs = a.find("affiliations");
    if (affs == a.end() || !affs->is_array())
      throw ParseError("author '" + as.author + "': 'affiliations' must be an array",
                       line);
    for (const nlohmann::json& af : *affs) {
      if (!af.is_object()) throw ParseError("affiliation must be an object", line);
      as.affiliations.push_back({detail::require_string(af, "institution", line),
                                 detail::require_string(af, "country", line)});
    }
    pub.authorships.push_back(std::move(as));
  }

  if (explicit_ranks == 0) {
    for (std::size_t i = 0; i < pub.authorships.size(); ++i)
      pub.authorships[i].rank = static_cast<int>(i) + 1;
  } else if (explicit_ranks != pub.authorships.size()) {
    throw ParseError("ranks must be given for all authors or for none", line);
  } else {
    std::stable_sort(pub.authorships.begin(), pub.authorships.end(),
                     [](const Authorship& x, const Authorship& y) {
                       return x.rank < y.rank;
                     });
  }

  try {
    validate(pub);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
  return pub;
}

inline nlohmann::json to_json(const Publication& pub) {
  nlohmann::json authors = nlohmann::json::array();
  for (const Authorship& a : pub.authorships) {
    nlohmann::json j;
    j["name"] = a.author;
    j["rank"] = a.rank;
    if (a.attributes.senior) j["senior"] = *a.attributes.senior;
    if (a.attributes.pi) j["pi"] = *a.attributes.pi;
    if (a.attributes.indicator) j["indicator"] = *a.attributes.indicator;
    if (a.attributes.contribution) j["contribution"] = *a.attributes.contribution;
    nlohmann::json affs = nlohmann::json::array();
    for (const Affiliation& af : a.affiliations)
      affs.push_back({{"institution", af.institution}, {"country", af.country}});
    j["affiliations"] = std::move(affs);
    authors.push_back(std::move(j));
  }
  nlohmann::json out;
  out["id"] = pub.id;
  out["year"] = pub.year;
  out["authors"] = std::move(authors);
  if (pub.citations) out["citations"] = *pub.citations;
  if (pub.level_points) out["level_points"] = *pub.level_points;
  if (pub.union_indicator) out["union_indicator"] = *pub.union_indicator;
  return out;
}

// Reads JSON-Lines publications. Blank lines are skipped; unknown fields are
// ignored. Errors carry the offending line number.
inline Corpus parse_publications(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line);
    }
    Publication pub = publication_from_json(obj, line);
    if (!ids.insert(pub.id).second)
      throw ParseError("duplicate publication id '" + pub.id + "'", line);
    corpus.push_back(std::move(pub));
  }
  return corpus;
}

inline Corpus parse_publications(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_publications(in);
}

inline void write_publications(std::ostream& out, const Corpus& corpus) {
  for (const Publication& p : corpus) out << to_json(p).dump() << '\n';
}

inline std::string serialize_publications(const Corpus& corpus) {
  std::ostringstream out;
  write_publications(out, corpus);
  return out.str();
}

}  // namespace bibcount

#endif  // BIBCOUNT_CORPUS_HPP_
