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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bibcount/bibcount.hpp"
#include "helpers.hpp"

namespace bibcount {
namespace {

using testing::pub_with_n;
using testing::worked_example;

constexpr double kTol = 1e-9;

void expect_credits(const CreditVector& cv, const std::vector<double>& expected) {
  const auto c = cv.credits();
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], expected[i], kTol) << i;
}

std::map<std::string, double> per_object(const CreditVector& cv) {
  std::map<std::string, double> out;
  for (const CreditEntry& e : cv.entries) out[e.unit.object] += e.credit;
  return out;
}

TEST(Complete, OneEach) {
  expect_credits(credit_complete(pub_with_n(3)), {1, 1, 1});
  expect_credits(credit_complete(pub_with_n(1)), {1});
  EXPECT_NEAR(credit_complete(pub_with_n(10)).total(), 10.0, kTol);
}

TEST(CompleteFractionalized, WorkedExampleInstitutions) {
  const Publication pub = worked_example();
  const auto attr = derive_attribution({pub}, EntityLevel::kAuthor, EntityLevel::kInstitution);
  const auto obj = per_object(make_complete_fractionalized().credit(pub, attr));
  EXPECT_NEAR(obj.at("Y"), 2.0 / 3.0, kTol);
  EXPECT_NEAR(obj.at("Z"), 1.0 / 3.0, kTol);
  expect_credits(credit_complete_fractionalized(pub_with_n(1)), {1});
  expect_credits(credit_complete_fractionalized(pub_with_n(4)), {0.25, 0.25, 0.25, 0.25});
}

TEST(Straight, FirstTakesAll) {
  expect_credits(credit_straight(pub_with_n(3)), {1, 0, 0});
  expect_credits(credit_straight(pub_with_n(1)), {1});
  Publication pub = worked_example();
  std::swap(pub.authorships[0], pub.authorships[2]);
  pub.authorships[0].rank = 1;
  pub.authorships[2].rank = 3;
  const auto cv = credit_straight(pub);
  EXPECT_EQ(cv.entries[0].unit.label, "C");
  EXPECT_DOUBLE_EQ(cv.entries[0].credit, 1.0);
}

TEST(Whole, OneCreditPerUniqueObject) {
  const Publication pub = worked_example();
  const auto attr = derive_attribution({pub}, EntityLevel::kAuthor, EntityLevel::kInstitution);
  const auto obj = per_object(credit_whole(pub, attr));
  EXPECT_NEAR(obj.at("Y"), 1.0, kTol);
  EXPECT_NEAR(obj.at("Z"), 1.0, kTol);

  const Publication same = testing::make_pub("s", {{"A", "Y", "DK"}, {"B", "Y", "DK"}, {"C", "Y", "DK"}});
  const auto s = per_object(credit_whole(
      same, derive_attribution({same}, EntityLevel::kAuthor, EntityLevel::kInstitution)));
  EXPECT_NEAR(s.at("Y"), 1.0, kTol);

  std::vector<testing::Row> rows;
  for (int i = 0; i < 10; ++i)
    rows.push_back({"A" + std::to_string(i), "I" + std::to_string(i % 4), "DK"});
  const Publication ten = testing::make_pub("t", rows);
  const auto cv = credit_whole(
      ten, derive_attribution({ten}, EntityLevel::kAuthor, EntityLevel::kInstitution));
  EXPECT_NEAR(cv.total(), 4.0, kTol);
}

TEST(WholeFractionalized, TenCountriesThenUkMerge) {
  const Publication pub = testing::ten_country_pub();
  const auto attr = derive_attribution({pub}, EntityLevel::kCountry, EntityLevel::kCountry);
  for (const auto& [country, s] : per_object(credit_whole_fractionalized(pub, attr)))
    EXPECT_NEAR(s, 0.1, kTol) << country;
  const auto merged = merge_objects(attr, "UK", {"England", "Scotland", "Wales"});
  const auto obj = per_object(credit_whole_fractionalized(pub, merged));
  EXPECT_EQ(obj.size(), 8u);
  for (const auto& [country, s] : obj) EXPECT_NEAR(s, 1.0 / 8.0, kTol) << country;

  const Publication single = testing::make_pub("s", {{"A", "Y", "DK"}, {"B", "Y", "DK"}});
  const auto one = per_object(credit_whole_fractionalized(
      single, derive_attribution({single}, EntityLevel::kAuthor, EntityLevel::kInstitution)));
  EXPECT_NEAR(one.at("Y"), 1.0, kTol);
}

TEST(Harmonic, HandSummedThreeAuthors) {
  expect_credits(credit_harmonic(pub_with_n(3)), {6.0 / 11, 3.0 / 11, 2.0 / 11});
  expect_credits(credit_harmonic(pub_with_n(1)), {1});
}

TEST(Harmonic, RatioOracleAndMonotone) {
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto c = credit_harmonic(pub_with_n(n)).credits();
    double h = 0.0;
    for (std::size_t j = 1; j <= n; ++j) h += 1.0 / static_cast<double>(j);
    EXPECT_NEAR(c[0], 1.0 / h, kTol);
    for (std::size_t i = 1; i < n; ++i) {
      EXPECT_NEAR(c[i] / c[0], 1.0 / static_cast<double>(i + 1), kTol);
      EXPECT_LT(c[i], c[i - 1]);
    }
  }
}

TEST(Proportional, ArithmeticWeights) {
  expect_credits(credit_proportional(pub_with_n(3)), {0.5, 1.0 / 3, 1.0 / 6});
  expect_credits(credit_proportional(pub_with_n(2)), {2.0 / 3, 1.0 / 3});
  expect_credits(credit_proportional(pub_with_n(1)), {1});
  for (std::size_t n = 2; n <= 50; ++n) {
    const auto c = credit_proportional(pub_with_n(n)).credits();
    const double step = 2.0 / static_cast<double>(n * (n + 1));
    for (std::size_t i = 1; i < n; ++i) {
      EXPECT_NEAR(c[i - 1] - c[i], step, kTol);
      EXPECT_LT(c[i], c[i - 1]);
    }
  }
}

TEST(Geometric, Examples) {
  expect_credits(credit_geometric(pub_with_n(3), 0.5, false), {1, 0.5, 0.25});
  EXPECT_NEAR(credit_geometric(pub_with_n(3), 0.5, false).total(), 1.75, kTol);
  expect_credits(credit_geometric(pub_with_n(3), 0.5, true), {4.0 / 7, 2.0 / 7, 1.0 / 7});
  expect_credits(credit_geometric(pub_with_n(3), 2.0 / 3, true),
                 {9.0 / 19, 6.0 / 19, 4.0 / 19});
  expect_credits(make_howard().credit(pub_with_n(3),
                                      derive_attribution({pub_with_n(3)}, EntityLevel::kAuthor,
                                                         EntityLevel::kAuthor)),
                 {9.0 / 19, 6.0 / 19, 4.0 / 19});
}

TEST(Geometric, RatioOutOfRange) {
  for (double r : {0.0, 1.0, -0.5, 1.5})
    EXPECT_THROW(credit_geometric(pub_with_n(3), r, true), ParameterError);
}

TEST(Geometric, ConstantRatioAndLimit) {
  for (double ratio : {0.2, 0.5, 2.0 / 3, 0.9}) {
    for (std::size_t n : {2u, 7u, 50u}) {
      for (bool norm : {false, true}) {
        const auto c = credit_geometric(pub_with_n(n), ratio, norm).credits();
        for (std::size_t i = 1; i < n; ++i) EXPECT_NEAR(c[i] / c[i - 1], ratio, 1e-12);
        if (norm) {
          EXPECT_NEAR(testing::sum(c), 1.0, kTol);
        } else {
          EXPECT_DOUBLE_EQ(c[0], 1.0);
        }
      }
    }
    if (ratio <= 2.0 / 3) {
      EXPECT_NEAR(credit_geometric(pub_with_n(50), ratio, true).credits()[0], 1.0 - ratio,
                  1e-3);
    }
  }
}

Publication with_flags(std::vector<bool> senior, std::vector<bool> pi) {
  Publication pub = pub_with_n(senior.size());
  for (std::size_t i = 0; i < senior.size(); ++i) {
    pub.authorships[i].attributes.senior = senior[i];
    pub.authorships[i].attributes.pi = pi[i];
  }
  return pub;
}

CreditVector run(const ScoreFunction& fn, const Publication& pub) {
  return fn.credit(pub, derive_attribution({pub}, EntityLevel::kAuthor, EntityLevel::kAuthor));
}

TEST(WeightedFractional, Presets) {
  expect_credits(run(make_boxenbaum(), with_flags({true, false, false}, {true, false, false})),
                 {0.5, 0.25, 0.25});
  expect_credits(run(make_steinbruchel(), with_flags({false, false, false}, {true, true, false})),
                 {0.5, 0.5, 0});
  const std::vector<double> w(5, 3.0);
  expect_credits(credit_weighted_fractional(pub_with_n(5), w),
                 credit_complete_fractionalized(pub_with_n(5)).credits());
}

TEST(WeightedFractional, ZeroWeightsAndMissingAttributes) {
  const std::vector<double> zero(3, 0.0);
  try {
    credit_weighted_fractional(pub_with_n(3), zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no creditable unit"), std::string::npos);
  }
  Publication pub = pub_with_n(3);
  pub.authorships[1].attributes.senior.reset();
  try {
    run(make_boxenbaum(), pub);
    FAIL();
  } catch (const MissingAttributeError& e) {
    EXPECT_EQ(e.attribute(), "senior");
  }
  const std::vector<double> short_weights(2, 1.0);
  EXPECT_THROW(credit_weighted_fractional(pub_with_n(3), short_weights), ParameterError);
}

TEST(EqualContribution, FloorBoundary) {
  expect_credits(credit_equal_contribution(pub_with_n(10)),
                 credit_complete_fractionalized(pub_with_n(10)).credits());
  const auto c30 = credit_equal_contribution(pub_with_n(30));
  for (double c : c30.credits()) EXPECT_NEAR(c, 0.05, kTol);
  EXPECT_NEAR(c30.total(), 1.5, kTol);
  expect_credits(credit_equal_contribution(pub_with_n(1)), {1});
  EXPECT_THROW(credit_equal_contribution(pub_with_n(3), 0.0), ParameterError);
  EXPECT_THROW(credit_equal_contribution(pub_with_n(3), 1.5), ParameterError);
}

TEST(VisibilityRatio, Quotients) {
  const std::vector<double> h{10, 5};
  const auto cv = credit_visibility_ratio(pub_with_n(2), h, 10);
  expect_credits(cv, {1.0, 0.5});
  EXPECT_NEAR(cv.total(), 1.5, kTol);
  const std::vector<double> eq{7, 7, 7};
  expect_credits(credit_visibility_ratio(pub_with_n(3), eq, 7), {1, 1, 1});
  const std::vector<double> z{0, 4};
  EXPECT_DOUBLE_EQ(credit_visibility_ratio(pub_with_n(2), z, 4).credits()[0], 0.0);
  EXPECT_THROW(credit_visibility_ratio(pub_with_n(2), h, 0), ParameterError);
}

TEST(VisibilityRatio, PresetNeedsUnionIndicator) {
  Publication pub = pub_with_n(3);
  pub.union_indicator.reset();
  EXPECT_THROW(run(make_visibility_ratio(), pub), MissingAttributeError);
}

TEST(Shapley, SmallGames) {
  auto size = [](std::uint64_t m) { return static_cast<double>(std::popcount(m)); };
  expect_credits(credit_shapley(pub_with_n(2), size), {1, 1});
  auto asym = [](std::uint64_t m) { return (m & 1U) ? 1.0 : 0.0; };
  const auto c = credit_shapley(pub_with_n(2), asym).credits();
  EXPECT_EQ(c[0], 1.0);
  EXPECT_EQ(c[1], 0.0);
}

TEST(Shapley, AgreesWithPermutationOracleAndAxioms) {
  std::mt19937_64 rng(99);
  for (int instance = 0; instance < 60; ++instance) {
    const std::size_t n = 1 + instance % 6;
    auto v = testing::random_game(rng, n);
    // Make player 0 a null player in a third of the games and players 0/1
    // symmetric in another third.
    const int mode = instance % 3;
    if (mode == 1 && n >= 1)
      for (std::size_t m = 0; m < v.size(); ++m)
        if (m & 1U) v[m] = v[m & ~std::size_t{1}];
    if (mode == 2 && n >= 2)
      for (std::size_t m = 0; m < v.size(); ++m)
        if ((m & 3U) == 2U) v[m] = v[(m & ~std::size_t{3}) | 1U];
    auto game = [&v](std::uint64_t m) { return v[m]; };
    const auto phi = credit_shapley(pub_with_n(n), game).credits();
    const auto oracle = testing::shapley_by_permutations(n, game);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(phi[i], oracle[i], 1e-9);
    EXPECT_NEAR(testing::sum(phi), v.back(), 1e-9);
    if (mode == 1) {
      EXPECT_NEAR(phi[0], 0.0, 1e-9);
    }
    if (mode == 2 && n >= 2) {
      EXPECT_NEAR(phi[0], phi[1], 1e-9);
    }
  }
}

TEST(Shapley, Limits) {
  auto size = [](std::uint64_t m) { return static_cast<double>(std::popcount(m)); };
  EXPECT_THROW(credit_shapley(pub_with_n(13), size), SizeError);
  EXPECT_NO_THROW(credit_shapley(pub_with_n(13), size, 13));
  EXPECT_THROW(credit_shapley(pub_with_n(2), [](std::uint64_t) { return 1.0; }),
               ParameterError);
  EXPECT_THROW(run(make_shapley_indicator(), pub_with_n(20)), SizeError);
}

const std::vector<ScoreFunction>& fractionalized_functions() {
  static const std::vector<ScoreFunction> fns = {
      make_complete_fractionalized(), make_straight(), make_whole_fractionalized(),
      make_harmonic(), make_proportional(), make_pure_geometric(), make_howard(),
      make_geometric(0.3, true), make_boxenbaum(), make_steinbruchel(),
      make_attribute_weighted("pareto-weights", "indicator"),
      make_attribute_weighted("relative-intellectual-contribution", "contribution"),
      make_shapley_indicator()};
  return fns;
}

TEST(Properties, FractionalizedSumToOne) {
  std::mt19937_64 rng(5);
  for (const ScoreFunction& fn : fractionalized_functions()) {
    const std::size_t max_n = fn.spec().max_units.value_or(50);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const Publication pub = trial_publication(rng, n);
      for (EntityLevel object : {EntityLevel::kAuthor, EntityLevel::kInstitution,
                                 EntityLevel::kCountry}) {
        const auto cv = fn.credit(pub, derive_attribution({pub}, EntityLevel::kAuthor, object));
        EXPECT_NEAR(cv.total(), 1.0, kTol) << fn.name() << " n=" << n;
      }
    }
  }
}

TEST(Properties, CompleteIsNTimesFractionalized) {
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto a = credit_complete(pub_with_n(n)).credits();
    const auto b = credit_complete_fractionalized(pub_with_n(n)).credits();
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(a[i], static_cast<double>(n) * b[i], kTol);
  }
}

Publication permuted(const Publication& pub, std::mt19937_64& rng) {
  Publication out = pub;
  std::shuffle(out.authorships.begin(), out.authorships.end(), rng);
  for (std::size_t i = 0; i < out.size(); ++i) out.authorships[i].rank = static_cast<int>(i) + 1;
  return out;
}

// Rank-only functions: the credit at each rank depends on (rank, n) alone.
TEST(Properties, RankDependentCreditFollowsRank) {
  std::mt19937_64 rng(8);
  for (const ScoreFunction& fn :
       {make_straight(), make_harmonic(), make_proportional(), make_pure_geometric(),
        make_zou_peterson(), make_howard()}) {
    for (int t = 0; t < 40; ++t) {
      const Publication pub = trial_publication(rng, 1 + t % 20);
      EXPECT_EQ(run(fn, pub).credits(), run(fn, permuted(pub, rng)).credits()) << fn.name();
    }
  }
}

TEST(Properties, RankIndependentCreditFollowsAuthor) {
  std::mt19937_64 rng(9);
  for (const ScoreFunction& fn :
       {make_complete(), make_complete_fractionalized(), make_equal_contribution()}) {
    for (int t = 0; t < 40; ++t) {
      const Publication pub = trial_publication(rng, 1 + t % 40);
      std::map<std::string, double> a, b;
      for (const CreditEntry& e : run(fn, pub).entries) a[e.unit.label] = e.credit;
      for (const CreditEntry& e : run(fn, permuted(pub, rng)).entries) b[e.unit.label] = e.credit;
      EXPECT_EQ(a, b) << fn.name();
    }
  }
}

TEST(ScoreFunction, NpiCollectsRootOfSum) {
  const ScoreFunction fn = make_npi_institutional(2);
  const std::vector<double> c{1.0 / 3, 1.0 / 3};
  EXPECT_NEAR(fn.collect(c), std::sqrt(2.0 / 3), 1e-12);
  EXPECT_THROW(make_npi_institutional(0), ParameterError);
}

}  // namespace
}  // namespace bibcount
