/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kspill/cognitive_mass.hpp"
#include "kspill/corpus.hpp"
#include "kspill/gravity.hpp"
#include "kspill/territory.hpp"

namespace kspill {

/// One citing -> cited link seen under one focal SC of the cited work.
struct CitationEvent {
  std::string citing_id;
  std::string cited_id;
  std::string focal_sc;
  std::string da;
  std::string cited_territory;
  std::string citing_territory;
  Scale scale = Scale::National;
  double distance_km = 0.0;
  int delay_years = 0;  // citing year - cited year
  int cited_year = 0;
  bool self_citation = false;
};

/// True iff the citing record carries author keys and shares one with the
/// cited record. When citing keys are absent the result is false and
/// *undetectable (if given) is incremented.
bool detect_self_citation(const CitingRecord& citing, const PublicationRecord& cited,
                          std::size_t* undetectable = nullptr);

struct EventOptions {
  std::string home_country = "IT";
  std::set<std::string> continent = {};  // empty: european_countries()
  /// Also emit every home-country citation as a continental event (citing
  /// territory = home COUNTRY entry). Scales are disjoint when false.
  bool continental_includes_home = false;
};

struct EventBuildStats {
  std::size_t links = 0;
  std::size_t dropped_cited_unassigned = 0;
  std::size_t dropped_citing_unassigned = 0;   // no prevalent country
  std::size_t dropped_citing_lau_unassigned = 0;  // home country, no prevalent LAU
  std::size_t dropped_negative_delay = 0;
  std::size_t self_citation_undetectable = 0;
  std::size_t events = 0;
};

struct EventSet {
  std::vector<CitationEvent> events;
  EventBuildStats stats;
};

/// One event per (link x focal SC of the cited publication). Links whose
/// cited or citing side has no prevalent territory are dropped and counted.
EventSet build_events(const Corpus& corpus, const AssignmentTable& assignments,
                      const EventOptions& options, Diagnostics& diag);

enum class ProfileGrouping { Overall, Da };

struct DelayCell {
  std::string group;  // "overall" or a DA code
  int delay = 0;
  double mean_km = 0.0;
  std::size_t n = 0;
  std::size_t cohorts = 0;  // distinct cited years contributing
};

/// Mean distance per citation delay. Empty cells are absent.
struct DelayProfile {
  Scale scale = Scale::National;
  bool include_self = true;
  std::vector<DelayCell> cells;  // sorted by (group, delay)

  const DelayCell* find(std::string_view group, int delay) const;
};

DelayProfile delay_profile(std::span<const CitationEvent> events,
                           ProfileGrouping grouping, Scale scale,
                           bool include_self, int max_delay);

struct PairObservation {
  std::string focal_sc;
  std::string cited_territory;
  std::string citing_territory;
  GravityObservation obs;
};

struct FlowAggregate {
  std::vector<PairObservation> observations;  // sorted by (i, j)
  std::size_t dropped_zero_distance = 0;  // pairs, e.g. intra-LAU flows
  std::size_t dropped_zero_mass = 0;      // pairs

  /// Enough rows for the four-parameter fit.
  bool fit_ready() const noexcept {
    return observations.size() >= kMinObservations;
  }
};

/// Cumulative flows: C_ij counts events with delay_years < window_years.
/// Only pairs with C_ij >= 1 and strictly positive masses and distance are
/// emitted. Throws Error(InvalidArgument) when window_years < 1.
FlowAggregate aggregate_flows(std::span<const CitationEvent> events,
                              std::string_view focal_sc, Scale scale,
                              int window_years, bool include_self,
                              const MassTable& masses);

}  // namespace kspill
