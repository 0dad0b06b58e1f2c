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

#ifndef BIBCOUNT_ATTRIBUTION_HPP_
#define BIBCOUNT_ATTRIBUTION_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"

namespace bibcount {

// One basic-unit instance of a publication. Instances, not identities: an
// author listed twice yields two units, and at the institution/country level
// every distinct address (institution, country) of the affiliation section is
// one unit, in order of first appearance.
struct BasicUnit {
  std::string label;   // identity at the basic level
  std::string object;  // object of study the unit is assigned to
  int rank = 0;        // 1-based position among the publication's units
  AuthorAttributes attributes;
  std::size_t authorship = 0;  // index of the first authorship carrying it
};

// The (basic unit, object of study) half of a counting method.
class AttributionMap {
 public:
  AttributionMap() = default;

  EntityLevel basic_level() const noexcept { return basic_; }
  EntityLevel object_level() const noexcept { return object_; }

  // Level whose identifiers are merged into unions: countries for the supra
  // level, the object level itself otherwise.
  EntityLevel base_level() const noexcept {
    return object_ == EntityLevel::kUnion ? EntityLevel::kCountry : object_;
  }

  const std::map<std::string, std::set<std::string>>& unions() const noexcept {
    return unions_;
  }
  const std::set<std::string>& base_objects() const noexcept {
    return base_objects_;
  }

  // Object for a base-level identifier (identity unless it is a union member).
  const std::string& resolve(const std::string& base_object) const {
    auto it = union_of_.find(base_object);
    return it == union_of_.end() ? base_object : it->second;
  }

  // Basic-unit instances of `pub` with their assigned objects.
  std::vector<BasicUnit> units(const Publication& pub) const;

 private:
  friend AttributionMap derive_attribution(
      const Corpus&, EntityLevel, EntityLevel,
      const std::map<std::string, std::set<std::string>>&);
  friend AttributionMap merge_objects(const AttributionMap&, const std::string&,
                                      const std::set<std::string>&);

  void add_union(const std::string& id, const std::set<std::string>& members);

  EntityLevel basic_ = EntityLevel::kAuthor;
  EntityLevel object_ = EntityLevel::kAuthor;
  std::map<std::string, std::set<std::string>> unions_;
  std::map<std::string, std::string> union_of_;
  std::set<std::string> base_objects_;
};

namespace detail {

inline const std::string& level_id(const Authorship& a, const Affiliation& af,
                                   EntityLevel level) {
  switch (level) {
    case EntityLevel::kAuthor: return a.author;
    case EntityLevel::kInstitution: return af.institution;
    default: return af.country;
  }
}

}  // namespace detail

// Units at `basic` level, with `object` holding the base-level identifier
// (before union resolution). An author maps to its first listed affiliation.
inline std::vector<BasicUnit> raw_units(const Publication& pub,
                                        EntityLevel basic, EntityLevel base) {
  if (basic == EntityLevel::kUnion)
    throw LevelError("unions are not found in publications and cannot be "
                     "basic units");
  std::vector<BasicUnit> out;
  if (basic == EntityLevel::kAuthor) {
    out.reserve(pub.size());
    for (std::size_t i = 0; i < pub.size(); ++i) {
      const Authorship& a = pub.authorships[i];
      out.push_back({a.author, detail::level_id(a, a.affiliations.front(), base),
                     a.rank, a.attributes, i});
    }
    return out;
  }
  std::set<Affiliation> seen;
  for (std::size_t i = 0; i < pub.size(); ++i) {
    const Authorship& a = pub.authorships[i];
    for (const Affiliation& af : a.affiliations) {
      if (!seen.insert(af).second) continue;
      out.push_back({detail::level_id(a, af, basic), detail::level_id(a, af, base),
                     static_cast<int>(out.size()) + 1, a.attributes, i});
    }
  }
  return out;
}

inline std::vector<BasicUnit> AttributionMap::units(const Publication& pub) const {
  auto out = raw_units(pub, basic_, base_level());
  for (BasicUnit& u : out) {
    if (!base_objects_.count(u.object))
      throw ValidationError("attribution does not cover '" + u.object +
                            "' in publication '" + pub.id + "'");
    u.object = resolve(u.object);
  }
  return out;
}

inline void AttributionMap::add_union(const std::string& id,
                                      const std::set<std::string>& members) {
  if (id.empty()) throw LevelError("union identifier must be non-empty");
  if (unions_.count(id)) throw LevelError("union '" + id + "' already defined");
  if (members.empty()) throw LevelError("union '" + id + "' has no members");
  for (const std::string& m : members) {
    if (!base_objects_.count(m))
      throw LevelError("union member '" + m + "' is not an object at the " +
                       std::string(to_string(base_level())) + " level");
    auto it = union_of_.find(m);
    if (it != union_of_.end())
      throw LevelError("object '" + m + "' already belongs to union '" +
                       it->second + "'; unions must be disjoint");
  }
  unions_[id] = members;
  for (const std::string& m : members) union_of_[m] = id;
}

// Builds the basic-unit -> object assignment for a corpus.
inline AttributionMap derive_attribution(
    const Corpus& pubs, EntityLevel basic, EntityLevel object,
    const std::map<std::string, std::set<std::string>>& unions = {}) {
  if (object < basic)
    throw LevelError("object level '" + std::string(to_string(object)) +
                     "' lies below basic level '" +
                     std::string(to_string(basic)) + "'");
  if (basic == EntityLevel::kUnion)
    throw LevelError("unions are not found in publications and cannot be "
                     "basic units");
  AttributionMap map;
  map.basic_ = basic;
  map.object_ = object;
  for (const Publication& p : pubs)
    for (const Authorship& a : p.authorships)
      for (const Affiliation& af : a.affiliations)
        map.base_objects_.insert(detail::level_id(a, af, map.base_level()));
  for (const auto& [id, members] : unions) map.add_union(id, members);
  return map;
}

// Copy of `attr` with `members` replaced by `union_id`.
inline AttributionMap merge_objects(const AttributionMap& attr,
                                    const std::string& union_id,
                                    const std::set<std::string>& members) {
  AttributionMap out = attr;
  out.add_union(union_id, members);
  return out;
}

// Objects reachable from the corpus through the assignment.
inline std::set<std::string> reachable_objects(const Corpus& pubs,
                                               const AttributionMap& attr) {
  std::set<std::string> out;
  for (const Publication& p : pubs)
    for (const BasicUnit& u : attr.units(p)) out.insert(u.object);
  return out;
}

// institution -> country for the corpus; throws when an institution appears
// with more than one country (no one-to-one address relation).
inline std::map<std::string, std::string> institution_countries(
    const Corpus& pubs) {
  std::map<std::string, std::string> out;
  for (const Publication& p : pubs)
    for (const Authorship& a : p.authorships)
      for (const Affiliation& af : a.affiliations) {
        auto [it, inserted] = out.emplace(af.institution, af.country);
        if (!inserted && it->second != af.country)
          throw ValidationError("no one-to-one relation: institution '" +
                                af.institution + "' appears in countries '" +
                                it->second + "' and '" + af.country + "'");
      }
  return out;
}

}  // namespace bibcount

#endif  // BIBCOUNT_ATTRIBUTION_HPP_
