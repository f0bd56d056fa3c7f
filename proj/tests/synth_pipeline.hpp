/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// In-process synth -> corpus -> events pipeline shared by tests.

#include <vector>

#include "kspill/cognitive_mass.hpp"
#include "kspill/flows.hpp"
#include "kspill/series.hpp"
#include "kspill/synth.hpp"
#include "kspill/territory.hpp"

namespace kspill::test {

struct SynthRun {
  SynthCorpus synth;
  Corpus corpus;
  AssignmentTable assignments;
  MassTable masses;
  EventSet events;
  Diagnostics diag;
};

inline SynthRun run_synth(const SynthConfig& config) {
  SynthRun r;
  r.synth = generate_corpus(config);
  r.corpus = Corpus(r.synth.cited, r.synth.citing, r.synth.links, Gazetteer(r.synth.territories),
                    ScToDaMapping(r.synth.sc_to_da), r.diag);
  r.assignments = assign_all(r.corpus, config.home_country);
  r.masses = MassTable(r.corpus, r.assignments);
  EventOptions opts;
  opts.home_country = config.home_country;
  r.events = build_events(r.corpus, r.assignments, opts, r.diag);
  return r;
}

inline CoefficientSeries overall_series(const SynthRun& r, std::vector<int> windows,
                                        bool include_self = true) {
  SeriesRequest req;
  req.windows = std::move(windows);
  req.grouping = SeriesGrouping::Overall;
  req.scale = Scale::National;
  req.include_self = include_self;
  auto s = coefficient_series(r.events.events, r.masses, r.corpus.sc_to_da(), req);
  return s.empty() ? CoefficientSeries{} : s.front();
}

}  // namespace kspill::test
