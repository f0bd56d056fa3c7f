/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <algorithm>
#include <random>

#include "kspill/flows.hpp"
#include "kspill/geo.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kspill;
using namespace kspill::test;

namespace {

CitationEvent event(std::string i, std::string j, double km, int delay, bool self = false,
                    std::string sc = "A", std::string da = "Natural sciences",
                    Scale scale = Scale::National) {
  CitationEvent e;
  e.citing_id = "Q";
  e.cited_id = "P";
  e.focal_sc = std::move(sc);
  e.da = std::move(da);
  e.cited_territory = std::move(i);
  e.citing_territory = std::move(j);
  e.scale = scale;
  e.distance_km = km;
  e.delay_years = delay;
  e.cited_year = 2011;
  e.self_citation = self;
  return e;
}

double km(const Gazetteer& gaz, const char* a, const char* b) {
  const auto& x = gaz.at(a);
  const auto& y = gaz.at(b);
  return oracle::law_of_cosines_km(x.lat, x.lon, y.lat, y.lon);
}

}  // namespace

TEST_CASE("self-citation detection") {
  const auto cited = cited_pub("P", 2011, {"A"}, {author("rossi_m", {addr("rome")}),
                                                   author("bianchi_l", {addr("milan")})});
  std::size_t undetectable = 0;
  CHECK(detect_self_citation(citing_pub("Q", 2012, {"A"}, {addr("turin")},
                                        std::vector<std::string>{"verdi_g", "rossi_m"}),
                             cited, &undetectable));
  CHECK_FALSE(detect_self_citation(
      citing_pub("Q", 2012, {"A"}, {addr("turin")}, std::vector<std::string>{"verdi_g"}), cited,
      &undetectable));
  CHECK(undetectable == 0);
  CHECK_FALSE(detect_self_citation(citing_pub("Q", 2012, {"A"}, {addr("turin")}), cited,
                                   &undetectable));
  CHECK(undetectable == 1);
  CHECK_FALSE(detect_self_citation(
      citing_pub("Q", 2012, {"A"}, {addr("turin")}, std::vector<std::string>{}), cited,
      &undetectable));
  CHECK(undetectable == 1);
}

TEST_CASE("build_events on a hand-enumerated fixture") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A", "C"}, {author("rossi_m", {addr("rome")})}),
            cited_pub("P2", 2011, {"B"}, {author("neri_a", {addr("milan")})}),
            cited_pub("P3", 2011, {"A"}, {author("x", {addr("rome"), addr("milan")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")}, std::vector<std::string>{"rossi_m"}),
            citing_pub("Q2", 2012, {"B"}, {addr("paris", "FR")},
                       std::vector<std::string>{"other"}),
            citing_pub("Q3", 2015, {"A"}, {addr("rome"), addr("berlin", "DE")},
                       std::vector<std::string>{}),
            citing_pub("Q4", 2010, {"A"}, {addr("naples")}, std::vector<std::string>{})},
           {{"Q1", "P1"}, {"Q2", "P2"}, {"Q3", "P2"}, {"Q1", "P3"}, {"Q4", "P2"}},
           sample_gazetteer(), sample_mapping(), diag);
  const auto t = assign_all(c, "IT");
  Diagnostics d2;
  const auto set = build_events(c, t, EventOptions{}, d2);
  const auto gaz = sample_gazetteer();

  // Q1->P1: two focal SCs, national Rome -> Turin, delay 3, self.
  // Q2->P2: continental Milan -> France, delay 1.
  // Q3->P2: Italy/Germany tie, dropped.
  // Q1->P3: cited side tied, dropped.
  // Q4->P2: negative delay, dropped.
  REQUIRE(set.events.size() == 3);
  CHECK(set.stats.links == 5);
  CHECK(set.stats.dropped_citing_unassigned == 1);
  CHECK(set.stats.dropped_cited_unassigned == 1);
  CHECK(set.stats.dropped_negative_delay == 1);
  CHECK(set.stats.events == 3);

  const auto& e0 = set.events[0];
  CHECK(e0.focal_sc == "A");
  CHECK(e0.da == "Natural sciences");
  CHECK(e0.cited_territory == "ROM");
  CHECK(e0.citing_territory == "TUR");
  CHECK(e0.scale == Scale::National);
  CHECK(e0.delay_years == 3);
  CHECK(e0.self_citation);
  CHECK(e0.distance_km == doctest::Approx(km(gaz, "ROM", "TUR")).epsilon(1e-9));
  const auto& e1 = set.events[1];
  CHECK(e1.focal_sc == "C");
  CHECK(e1.da == "Engineering and technology");
  CHECK(e1.distance_km == e0.distance_km);

  const auto& e2 = set.events[2];
  CHECK(e2.cited_territory == "MIL");
  CHECK(e2.citing_territory == "C-FR");
  CHECK(e2.scale == Scale::Continental);
  CHECK(e2.delay_years == 1);
  CHECK_FALSE(e2.self_citation);
  CHECK(e2.distance_km == doctest::Approx(km(gaz, "MIL", "C-FR")).epsilon(1e-9));
  CHECK(d2.size() == 1);  // negative delay
}

TEST_CASE("build_events: missing author keys count as undetectable") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A"}, {author("k", {addr("rome")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")})}, {{"Q1", "P1"}}, sample_gazetteer(),
           sample_mapping(), diag);
  Diagnostics d2;
  const auto set = build_events(c, assign_all(c, "IT"), EventOptions{}, d2);
  REQUIRE(set.events.size() == 1);
  CHECK_FALSE(set.events[0].self_citation);
  CHECK(set.stats.self_citation_undetectable == 1);
  CHECK(d2.size() == 1);
}

TEST_CASE("build_events: home citations can also feed the continental scale") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A"}, {author("k", {addr("milan")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")}, std::vector<std::string>{}),
            citing_pub("Q2", 2013, {"A"}, {addr("london", "GB")}, std::vector<std::string>{}),
            citing_pub("Q3", 2013, {"A"}, {addr("washington", "US")},
                       std::vector<std::string>{})},
           {{"Q1", "P1"}, {"Q2", "P1"}, {"Q3", "P1"}}, sample_gazetteer(), sample_mapping(), diag);
  const auto t = assign_all(c, "IT");
  Diagnostics d2;
  CHECK(build_events(c, t, EventOptions{}, d2).events.size() == 3);
  EventOptions opts;
  opts.continental_includes_home = true;
  const auto set = build_events(c, t, opts, d2);
  REQUIRE(set.events.size() == 4);
  CHECK(set.events[0].scale == Scale::National);
  CHECK(set.events[1].scale == Scale::Continental);
  CHECK(set.events[1].citing_territory == "C-IT");
  CHECK(set.events[3].scale == Scale::Intercontinental);
}

TEST_CASE("delay_profile examples") {
  std::vector<CitationEvent> one = {event("ROM", "MIL", 100.0, 2)};
  auto p = delay_profile(one, ProfileGrouping::Overall, Scale::National, true, 7);
  REQUIRE(p.cells.size() == 1);
  CHECK(p.cells[0].delay == 2);
  CHECK(p.cells[0].mean_km == 100.0);
  CHECK(p.cells[0].n == 1);
  CHECK(p.find("overall", 0) == nullptr);

  std::vector<CitationEvent> two = {event("ROM", "MIL", 100.0, 0), event("ROM", "TUR", 300.0, 0)};
  p = delay_profile(two, ProfileGrouping::Overall, Scale::National, true, 7);
  REQUIRE(p.find("overall", 0));
  CHECK(p.find("overall", 0)->mean_km == 200.0);
  CHECK(p.find("overall", 0)->n == 2);
}

TEST_CASE("delay_profile filters by scale, policy and DA, and ignores event order") {
  std::vector<CitationEvent> ev = {
      event("ROM", "MIL", 100.0, 0, true),
      event("ROM", "TUR", 300.0, 0),
      event("ROM", "TUR", 500.0, 1, false, "C", "Engineering and technology"),
      event("ROM", "C-FR", 1100.0, 0, false, "A", "Natural sciences", Scale::Continental),
      event("ROM", "TUR", 700.0, 9),
  };
  auto incl = delay_profile(ev, ProfileGrouping::Overall, Scale::National, true, 7);
  auto excl = delay_profile(ev, ProfileGrouping::Overall, Scale::National, false, 7);
  CHECK(incl.find("overall", 0)->mean_km == 200.0);
  CHECK(excl.find("overall", 0)->mean_km == 300.0);
  CHECK(incl.find("overall", 9) == nullptr);
  auto by_da = delay_profile(ev, ProfileGrouping::Da, Scale::National, true, 7);
  CHECK(by_da.find("Engineering and technology", 1)->mean_km == 500.0);
  CHECK(by_da.find("Natural sciences", 1) == nullptr);

  std::mt19937 gen(3);
  std::vector<CitationEvent> many;
  std::uniform_real_distribution<double> dist(1, 2000);
  for (int k = 0; k < 500; ++k) many.push_back(event("ROM", "MIL", dist(gen), k % 8));
  const auto a = delay_profile(many, ProfileGrouping::Overall, Scale::National, true, 7);
  std::shuffle(many.begin(), many.end(), gen);
  const auto b = delay_profile(many, ProfileGrouping::Overall, Scale::National, true, 7);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k) CHECK(a.cells[k].mean_km == b.cells[k].mean_km);
}

TEST_CASE("aggregate_flows: window 3 on four events across two pairs") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A"}, {author("k", {addr("rome")})}),
            cited_pub("P2", 2010, {"A"}, {author("k", {addr("rome")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")}),
            citing_pub("Q2", 2013, {"A"}, {addr("milan")})},
           {{"Q1", "P1"}, {"Q2", "P1"}}, sample_gazetteer(), sample_mapping(), diag);
  const MassTable masses(c, assign_all(c, "IT"));
  std::vector<CitationEvent> ev = {event("ROM", "MIL", 477.0, 0), event("ROM", "MIL", 477.0, 2),
                                   event("ROM", "TUR", 525.0, 1), event("ROM", "TUR", 525.0, 3)};
  const auto agg = aggregate_flows(ev, "A", Scale::National, 3, true, masses);
  REQUIRE(agg.observations.size() == 2);
  CHECK(agg.observations[0].citing_territory == "MIL");
  CHECK(agg.observations[0].obs.c_ij == 2);
  CHECK(agg.observations[0].obs.m_i == 2);
  CHECK(agg.observations[0].obs.m_j == 1);
  CHECK(agg.observations[0].obs.d_ij == 477.0);
  CHECK(agg.observations[1].citing_territory == "TUR");
  CHECK(agg.observations[1].obs.c_ij == 1);
  CHECK_FALSE(agg.fit_ready());
  CHECK_THROWS_AS(aggregate_flows(ev, "A", Scale::National, 0, true, masses), Error);
}

TEST_CASE("aggregate_flows: monotone windows, conservation and the self filter") {
  const std::vector<std::string> laus = {"ROM", "MIL", "TUR", "NAP", "CAT", "AOS"};
  std::vector<PublicationRecord> cited;
  std::vector<CitingRecord> citing;
  const std::vector<std::string> cities = {"rome", "milan", "turin", "naples", "catania", "aosta"};
  for (std::size_t k = 0; k < cities.size(); ++k) {
    cited.push_back(cited_pub("P" + std::to_string(k), 2010, {"A"},
                              {author("k", {addr(cities[k])})}));
    citing.push_back(citing_pub("Q" + std::to_string(k), 2013, {"A"}, {addr(cities[k])}));
  }
  Diagnostics diag;
  Corpus c(cited, citing, {{"Q0", "P0"}}, sample_gazetteer(), sample_mapping(), diag);
  const MassTable masses(c, assign_all(c, "IT"));
  const auto gaz = sample_gazetteer();

  std::mt19937 gen(11);
  std::vector<CitationEvent> ev;
  std::size_t self_count = 0;
  for (int k = 0; k < 400; ++k) {
    const auto& i = laus[gen() % laus.size()];
    const auto& j = laus[gen() % laus.size()];
    const bool self = gen() % 5 == 0;
    const auto& a = gaz.at(i);
    const auto& b = gaz.at(j);
    const double d = geodesic_km(GeoPoint(a.lat, a.lon), GeoPoint(b.lat, b.lon));
    ev.push_back(event(i, j, d, static_cast<int>(gen() % 8), self));
    if (i != j && self) ++self_count;
  }
  const std::size_t off_diagonal = static_cast<std::size_t>(std::count_if(
      ev.begin(), ev.end(), [](const auto& e) { return e.cited_territory != e.citing_territory; }));

  for (bool include : {true, false}) {
    std::map<std::pair<std::string, std::string>, double> prev;
    for (int w = 1; w <= 8; ++w) {
      const auto agg = aggregate_flows(ev, "A", Scale::National, w, include, masses);
      std::map<std::pair<std::string, std::string>, double> cur;
      for (const auto& o : agg.observations) cur[{o.cited_territory, o.citing_territory}] = o.obs.c_ij;
      for (const auto& [k, v] : prev) CHECK(cur[k] >= v);
      prev = cur;
    }
    double total = 0;
    for (const auto& [k, v] : prev) total += v;
    CHECK(total == static_cast<double>(include ? off_diagonal : off_diagonal - self_count));
  }

  const auto with = aggregate_flows(ev, "A", Scale::National, 8, true, masses);
  const auto without = aggregate_flows(ev, "A", Scale::National, 8, false, masses);
  for (const auto& o : without.observations) {
    auto it = std::find_if(with.observations.begin(), with.observations.end(), [&](const auto& w) {
      return w.cited_territory == o.cited_territory && w.citing_territory == o.citing_territory;
    });
    REQUIRE(it != with.observations.end());
    CHECK(o.obs.c_ij <= it->obs.c_ij);
  }
  CHECK(with.dropped_zero_distance == laus.size());
}

TEST_CASE("aggregate_flows drops pairs with zero mass") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A"}, {author("k", {addr("rome")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")})}, {{"Q1", "P1"}}, sample_gazetteer(),
           sample_mapping(), diag);
  const MassTable masses(c, assign_all(c, "IT"));
  std::vector<CitationEvent> ev = {event("ROM", "TUR", 525.0, 0), event("ROM", "NAP", 190.0, 0),
                                   event("MIL", "TUR", 125.0, 0)};
  const auto agg = aggregate_flows(ev, "A", Scale::National, 1, true, masses);
  CHECK(agg.observations.size() == 1);
  CHECK(agg.dropped_zero_mass == 2);
}
