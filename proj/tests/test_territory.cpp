/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <algorithm>
#include <random>

#include "kspill/territory.hpp"
#include "support.hpp"

using namespace kspill;
using namespace kspill::test;

TEST_CASE("cited assignment: unanimous authors") {
  const auto gaz = sample_gazetteer();
  auto a = assign_cited_territory(
      cited_pub("P", 2011, {"A"},
                {author("a1", {addr("rome")}), author("a2", {addr("rome")}),
                 author("a3", {addr("rome")})}),
      gaz);
  CHECK(a.prevalent);
  CHECK(a.territory_id == "ROM");
  CHECK(a.weights == std::map<std::string, double>{{"ROM", 3.0}});
}

TEST_CASE("cited assignment: one author split across two LAUs is a tie") {
  const auto gaz = sample_gazetteer();
  auto a = assign_cited_territory(
      cited_pub("P", 2011, {"A"}, {author("a1", {addr("rome"), addr("milan")})}), gaz);
  CHECK_FALSE(a.prevalent);
  CHECK_FALSE(a.territory_id);
  CHECK(a.weights == std::map<std::string, double>{{"MIL", 0.5}, {"ROM", 0.5}});
}

TEST_CASE("cited assignment: fractional weights 2.5 / 1.5") {
  const auto gaz = sample_gazetteer();
  auto a = assign_cited_territory(
      cited_pub("P", 2011, {"A"},
                {author("a1", {addr("rome")}), author("a2", {addr("rome")}),
                 author("a3", {addr("rome"), addr("milan")}), author("a4", {addr("milan")})}),
      gaz);
  CHECK(a.prevalent);
  CHECK(a.territory_id == "ROM");
  CHECK(a.weights.at("ROM") == 2.5);
  CHECK(a.weights.at("MIL") == 1.5);
}

TEST_CASE("cited assignment: weights sum to the counted authors") {
  const auto gaz = sample_gazetteer();
  auto a = assign_cited_territory(
      cited_pub("P", 2011, {"A"},
                {author("a1", {addr("rome"), addr("milan"), addr("turin")}),
                 author("a2", {addr("naples")}), author("a3", {addr("atlantis")}),
                 author("a4", {addr("turin"), addr("turin")})}),
      gaz);
  double sum = 0;
  for (const auto& [t, w] : a.weights) sum += w;
  CHECK(sum == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(a.territory_id == "TUR");
}

TEST_CASE("cited assignment: duplicated affiliation strings do not change weights") {
  const auto gaz = sample_gazetteer();
  auto once = assign_cited_territory(
      cited_pub("P", 2011, {"A"}, {author("a1", {addr("rome"), addr("milan")}),
                                   author("a2", {addr("milan")})}),
      gaz);
  auto twice = assign_cited_territory(
      cited_pub("P", 2011, {"A"}, {author("a1", {addr("rome"), addr("milan"), addr("rome")}),
                                   author("a2", {addr("milan"), addr("milan")})}),
      gaz);
  CHECK(once.weights == twice.weights);
  CHECK(once.territory_id == twice.territory_id);
}

TEST_CASE("cited assignment: unresolvable addresses count toward nothing") {
  const auto gaz = sample_gazetteer();
  auto a = assign_cited_territory(
      cited_pub("P", 2011, {"A"}, {author("a1", {addr("atlantis")})}), gaz);
  CHECK(a.weights.empty());
  CHECK_FALSE(a.prevalent);
}

TEST_CASE("citing assignment examples") {
  const auto gaz = sample_gazetteer();
  auto lau_level = assign_citing_territory(
      citing_pub("Q", 2013, {"A"}, {addr("rome"), addr("rome"), addr("milan")}), gaz,
      TerritoryKind::Lau);
  CHECK(lau_level.territory_id == "ROM");
  CHECK(lau_level.weights == std::map<std::string, double>{{"MIL", 1}, {"ROM", 2}});

  auto tie = assign_citing_territory(
      citing_pub("Q", 2013, {"A"}, {addr("rome"), addr("paris", "FR")}), gaz,
      TerritoryKind::Country);
  CHECK_FALSE(tie.prevalent);
  CHECK(tie.weights == std::map<std::string, double>{{"C-FR", 1}, {"C-IT", 1}});

  auto country_level = assign_citing_territory(
      citing_pub("Q", 2013, {"A"},
                 {addr("rome"), addr("milan"), addr("milan"), addr("lyon", "FR")}),
      gaz, TerritoryKind::Country);
  CHECK(country_level.territory_id == "C-IT");
  CHECK(country_level.weights == std::map<std::string, double>{{"C-FR", 1}, {"C-IT", 3}});
}

TEST_CASE("absolute majority needs more than half of the weight") {
  std::map<std::string, double> w{{"A", 2}, {"B", 1}, {"C", 1}};
  CHECK(prevailing_territory(w, MajorityRule::Plurality) == "A");
  CHECK_FALSE(prevailing_territory(w, MajorityRule::Absolute));
  w["A"] = 2.5;
  CHECK(prevailing_territory(w, MajorityRule::Absolute) == "A");
  CHECK_FALSE(prevailing_territory({}, MajorityRule::Plurality));
  CHECK(parse_majority_rule("absolute") == MajorityRule::Absolute);
  CHECK_FALSE(parse_majority_rule("most"));
}

TEST_CASE("assignment is invariant to author and address order") {
  const auto gaz = sample_gazetteer();
  const std::vector<std::string> cities = {"rome", "milan", "turin", "naples", "catania"};
  std::mt19937 gen(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<AuthorRecord> authors;
    const int n = 1 + static_cast<int>(gen() % 5);
    for (int k = 0; k < n; ++k) {
      std::vector<Address> affils;
      const int m = 1 + static_cast<int>(gen() % 3);
      for (int j = 0; j < m; ++j) affils.push_back(addr(cities[gen() % cities.size()]));
      authors.push_back(author("a" + std::to_string(k), affils));
    }
    auto base = assign_cited_territory(cited_pub("P", 2011, {"A"}, authors), gaz);
    auto shuffled = authors;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    for (auto& a : shuffled) std::shuffle(a.affiliations.begin(), a.affiliations.end(), gen);
    auto perm = assign_cited_territory(cited_pub("P", 2011, {"A"}, shuffled), gaz);
    CHECK(perm.territory_id == base.territory_id);
    REQUIRE(perm.weights.size() == base.weights.size());
    for (const auto& [t, w] : base.weights) CHECK(perm.weights.at(t) == doctest::Approx(w));

    std::vector<Address> addresses;
    for (const auto& a : authors) {
      addresses.insert(addresses.end(), a.affiliations.begin(), a.affiliations.end());
    }
    auto c1 = assign_citing_territory(citing_pub("Q", 2013, {"A"}, addresses), gaz,
                                      TerritoryKind::Lau);
    std::shuffle(addresses.begin(), addresses.end(), gen);
    auto c2 = assign_citing_territory(citing_pub("Q", 2013, {"A"}, addresses), gaz,
                                      TerritoryKind::Lau);
    CHECK(c1.territory_id == c2.territory_id);
    CHECK(c1.weights == c2.weights);
  }
}

TEST_CASE("classify_scale") {
  const auto gaz = sample_gazetteer();
  const auto& eu = european_countries();
  CHECK(classify_scale(*gaz.country("IT"), "IT", eu) == Scale::National);
  CHECK(classify_scale(gaz.at("MIL"), "IT", eu) == Scale::National);
  CHECK(classify_scale(*gaz.country("FR"), "IT", eu) == Scale::Continental);
  CHECK(classify_scale(*gaz.country("US"), "IT", eu) == Scale::Intercontinental);
  CHECK(classify_scale(*gaz.country("IT"), "FR", eu) == Scale::Continental);
  CHECK_THROWS_AS(classify_scale(country("X1", "Nowhere", 0, 0), "IT", eu), Error);
  CHECK_THROWS_AS(classify_scale(*gaz.country("FR"), "IT", {"FR", "DE"}), Error);
  CHECK(parse_scale("continental") == Scale::Continental);
  CHECK_FALSE(parse_scale("global"));
}

TEST_CASE("assign_all resolves citing LAUs only inside the home country") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2011, {"A"}, {author("a", {addr("rome")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("milan"), addr("milan"), addr("paris", "FR")}),
            citing_pub("Q2", 2013, {"A"}, {addr("paris", "FR"), addr("berlin", "DE"),
                                           addr("paris", "FR")}),
            citing_pub("Q3", 2013, {"A"}, {addr("rome"), addr("milan"), addr("turin")})},
           {{"Q1", "P1"}, {"Q2", "P1"}, {"Q3", "P1"}}, sample_gazetteer(), sample_mapping(),
           diag);
  const auto t = assign_all(c, "IT");
  CHECK(t.find_cited("P1")->territory_id == "ROM");
  CHECK(t.find_citing_country("Q1")->territory_id == "C-IT");
  CHECK(t.find_citing_lau("Q1")->territory_id == "MIL");
  CHECK(t.find_citing_country("Q2")->territory_id == "C-FR");
  CHECK(t.find_citing_lau("Q2") == nullptr);
  CHECK(t.find_citing_country("Q3")->territory_id == "C-IT");
  CHECK_FALSE(t.find_citing_lau("Q3")->prevalent);
}
