/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kspill/cognitive_mass.hpp"
#include "kspill/flows.hpp"
#include "kspill/gravity.hpp"

namespace kspill {

enum class SeriesGrouping { Overall, Da, Sc };

const char* to_string(SeriesGrouping grouping) noexcept;

enum class CellStatus { Ok, Unfit, Degenerate };

const char* to_string(CellStatus status) noexcept;

struct SeriesPoint {
  int window = 0;
  std::size_t n_obs = 0;
  CellStatus status = CellStatus::Unfit;
  std::optional<RegressionResult> fit;  // set iff status == Ok
  std::string detail;                   // error text for gaps
};

/// gamma against citation window for one (group, scale, self-citation
/// policy). Failed cells stay in the list as gaps.
struct CoefficientSeries {
  std::string group;  // "overall", "da:<code>" or "sc:<code>"
  Scale scale = Scale::National;
  bool include_self = true;
  std::vector<SeriesPoint> points;  // windows strictly increasing
};

struct SeriesRequest {
  std::vector<int> windows;
  SeriesGrouping grouping = SeriesGrouping::Overall;
  Scale scale = Scale::National;
  bool include_self = true;
  double significance_level = 0.05;
};

/// One OLS fit per (group, window). DA and overall fits pool the per-SC
/// observations of every member SC. Throws Error(InvalidArgument) when the
/// windows are empty, not strictly increasing or below 1.
std::vector<CoefficientSeries> coefficient_series(std::span<const CitationEvent> events,
                                                  const MassTable& masses,
                                                  const ScToDaMapping& sc_to_da,
                                                  const SeriesRequest& request);

}  // namespace kspill
