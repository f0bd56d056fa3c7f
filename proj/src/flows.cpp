/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/flows.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "kspill/geo.hpp"

namespace kspill {

bool detect_self_citation(const CitingRecord& citing, const PublicationRecord& cited,
                          std::size_t* undetectable) {
  if (!citing.author_keys) {
    if (undetectable != nullptr) ++*undetectable;
    return false;
  }
  for (const auto& author : cited.authors) {
    if (std::find(citing.author_keys->begin(), citing.author_keys->end(), author.key) !=
        citing.author_keys->end()) {
      return true;
    }
  }
  return false;
}

EventSet build_events(const Corpus& corpus, const AssignmentTable& assignments,
                      const EventOptions& options, Diagnostics& diag) {
  EventSet out;
  auto& st = out.stats;
  const auto& gaz = corpus.gazetteer();
  const auto& continent = options.continent.empty() ? european_countries() : options.continent;
  std::vector<std::string> negative_examples;

  for (const auto& link : corpus.links()) {
    ++st.links;
    const auto* cited = corpus.find_cited(link.cited_id);
    const auto* citing = corpus.find_citing(link.citing_id);
    if (cited == nullptr || citing == nullptr) continue;  // excluded at corpus assembly

    const auto* ca = assignments.find_cited(cited->pub_id);
    if (ca == nullptr || !ca->prevalent) {
      ++st.dropped_cited_unassigned;
      continue;
    }
    const auto* cc = assignments.find_citing_country(citing->pub_id);
    if (cc == nullptr || !cc->prevalent) {
      ++st.dropped_citing_unassigned;
      continue;
    }
    const int delay = citing->year - cited->year;
    if (delay < 0) {
      ++st.dropped_negative_delay;
      if (negative_examples.size() < 5) {
        negative_examples.push_back(citing->pub_id + " -> " + cited->pub_id);
      }
      continue;
    }

    const TerritoryEntry& cited_t = gaz.at(*ca->territory_id);
    const TerritoryEntry& country_t = gaz.at(*cc->territory_id);
    const Scale scale = classify_scale(country_t, options.home_country, continent);

    struct Target {
      Scale scale;
      const TerritoryEntry* territory;
    };
    std::vector<Target> targets;
    if (scale == Scale::National) {
      const auto* la = assignments.find_citing_lau(citing->pub_id);
      if (la != nullptr && la->prevalent) {
        targets.push_back({Scale::National, &gaz.at(*la->territory_id)});
      } else {
        ++st.dropped_citing_lau_unassigned;
      }
      if (options.continental_includes_home) targets.push_back({Scale::Continental, &country_t});
    } else {
      targets.push_back({scale, &country_t});
    }
    if (targets.empty()) continue;

    const bool self = detect_self_citation(*citing, *cited, &st.self_citation_undetectable);
    for (const auto& target : targets) {
      const auto level =
          target.scale == Scale::National ? TerritoryKind::Lau : TerritoryKind::Country;
      const double d = pair_distance(cited_t, *target.territory, level);
      for (const auto& sc : cited->sc_codes) {
        CitationEvent ev;
        ev.citing_id = citing->pub_id;
        ev.cited_id = cited->pub_id;
        ev.focal_sc = sc;
        ev.da = corpus.sc_to_da().map(sc);
        ev.cited_territory = cited_t.territory_id;
        ev.citing_territory = target.territory->territory_id;
        ev.scale = target.scale;
        ev.distance_km = d;
        ev.delay_years = delay;
        ev.cited_year = cited->year;
        ev.self_citation = self;
        out.events.push_back(std::move(ev));
      }
    }
  }

  if (st.dropped_negative_delay > 0) {
    std::string msg = std::to_string(st.dropped_negative_delay) +
                      " link(s) with citing year before cited year dropped, e.g.";
    for (const auto& e : negative_examples) msg += " " + e + ";";
    diag.warn("events", msg);
  }
  if (st.self_citation_undetectable > 0) {
    diag.warn("events", std::to_string(st.self_citation_undetectable) +
                            " link(s) from citing records without author keys; "
                            "self-citation cannot be detected and defaults to false");
  }
  st.events = out.events.size();
  return out;
}

const DelayCell* DelayProfile::find(std::string_view group, int delay) const {
  for (const auto& c : cells) {
    if (c.group == group && c.delay == delay) return &c;
  }
  return nullptr;
}

DelayProfile delay_profile(std::span<const CitationEvent> events, ProfileGrouping grouping,
                           Scale scale, bool include_self, int max_delay) {
  struct Acc {
    std::vector<double> distances;
    std::set<int> cohorts;
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  for (const auto& ev : events) {
    if (ev.scale != scale) continue;
    if (!include_self && ev.self_citation) continue;
    if (ev.delay_years < 0 || ev.delay_years > max_delay) continue;
    auto& a = acc[{grouping == ProfileGrouping::Overall ? std::string("overall") : ev.da,
                   ev.delay_years}];
    a.distances.push_back(ev.distance_km);
    a.cohorts.insert(ev.cited_year);
  }
  DelayProfile p;
  p.scale = scale;
  p.include_self = include_self;
  for (auto& [key, a] : acc) {
    // Sorted summation keeps the mean independent of event order.
    std::sort(a.distances.begin(), a.distances.end());
    const double sum = std::accumulate(a.distances.begin(), a.distances.end(), 0.0);
    DelayCell c;
    c.group = key.first;
    c.delay = key.second;
    c.n = a.distances.size();
    c.mean_km = sum / static_cast<double>(c.n);
    c.cohorts = a.cohorts.size();
    p.cells.push_back(std::move(c));
  }
  return p;
}

FlowAggregate aggregate_flows(std::span<const CitationEvent> events, std::string_view focal_sc,
                              Scale scale, int window_years, bool include_self,
                              const MassTable& masses) {
  if (window_years < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "citation window must be >= 1 year, got " + std::to_string(window_years));
  }
  struct Pair {
    long count = 0;
    double distance = 0.0;
  };
  std::map<std::pair<std::string_view, std::string_view>, Pair> pairs;
  for (const auto& ev : events) {
    if (ev.scale != scale || ev.focal_sc != focal_sc) continue;
    if (!include_self && ev.self_citation) continue;
    if (ev.delay_years >= window_years) continue;
    auto& p = pairs[{ev.cited_territory, ev.citing_territory}];
    ++p.count;
    p.distance = ev.distance_km;
  }
  FlowAggregate out;
  for (const auto& [key, p] : pairs) {
    if (!(p.distance > 0.0)) {
      ++out.dropped_zero_distance;
      continue;
    }
    const double m_i = masses.m_cited(key.first, focal_sc);
    const double m_j = masses.m_citing(key.second, focal_sc);
    if (!(m_i > 0.0) || !(m_j > 0.0)) {
      ++out.dropped_zero_mass;
      continue;
    }
    PairObservation o;
    o.focal_sc = std::string(focal_sc);
    o.cited_territory = std::string(key.first);
    o.citing_territory = std::string(key.second);
    o.obs = GravityObservation{static_cast<double>(p.count), m_i, m_j, p.distance};
    out.observations.push_back(std::move(o));
  }
  return out;
}

}  // namespace kspill
