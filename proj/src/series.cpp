/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/series.hpp"

#include <map>
#include <set>

namespace kspill {

const char* to_string(SeriesGrouping grouping) noexcept {
  switch (grouping) {
    case SeriesGrouping::Overall: return "overall";
    case SeriesGrouping::Da: return "da";
    case SeriesGrouping::Sc: return "sc";
  }
  return "?";
}

const char* to_string(CellStatus status) noexcept {
  switch (status) {
    case CellStatus::Ok: return "ok";
    case CellStatus::Unfit: return "unfit";
    case CellStatus::Degenerate: return "degenerate";
  }
  return "?";
}

std::vector<CoefficientSeries> coefficient_series(std::span<const CitationEvent> events,
                                                  const MassTable& masses,
                                                  const ScToDaMapping& sc_to_da,
                                                  const SeriesRequest& request) {
  if (request.windows.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no citation windows requested");
  }
  for (std::size_t i = 0; i < request.windows.size(); ++i) {
    if (request.windows[i] < 1 || (i > 0 && request.windows[i] <= request.windows[i - 1])) {
      throw Error(ErrorCode::InvalidArgument,
                  "citation windows must be >= 1 and strictly increasing");
    }
  }

  // Events of this scale bucketed by focal SC.
  std::map<std::string, std::vector<CitationEvent>> by_sc;
  for (const auto& ev : events) {
    if (ev.scale == request.scale) by_sc[ev.focal_sc].push_back(ev);
  }

  std::map<std::string, std::vector<std::string>> groups;  // group label -> member SCs
  for (const auto& [sc, evs] : by_sc) {
    switch (request.grouping) {
      case SeriesGrouping::Overall: groups["overall"].push_back(sc); break;
      case SeriesGrouping::Da: groups["da:" + sc_to_da.map(sc)].push_back(sc); break;
      case SeriesGrouping::Sc: groups["sc:" + sc].push_back(sc); break;
    }
  }

  std::vector<CoefficientSeries> out;
  for (const auto& [label, members] : groups) {
    CoefficientSeries series;
    series.group = label;
    series.scale = request.scale;
    series.include_self = request.include_self;
    for (int w : request.windows) {
      std::vector<GravityObservation> pooled;
      for (const auto& sc : members) {
        auto agg = aggregate_flows(by_sc[sc], sc, request.scale, w, request.include_self, masses);
        for (const auto& o : agg.observations) pooled.push_back(o.obs);
      }
      SeriesPoint pt;
      pt.window = w;
      pt.n_obs = pooled.size();
      try {
        pt.fit = fit_loglog_ols(pooled, request.significance_level);
        pt.status = CellStatus::Ok;
      } catch (const Error& e) {
        pt.status = e.code() == ErrorCode::Degenerate ? CellStatus::Degenerate : CellStatus::Unfit;
        pt.detail = e.what();
      }
      series.points.push_back(std::move(pt));
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace kspill
