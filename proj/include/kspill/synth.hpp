/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Synthetic corpora with a planted gravity structure.
//
// Flows between cited LAU i and citing territory j are drawn as
//
//   C_ij = round( sum_t k M_i^alpha M_j^beta d_ij^-gamma_t p_t * exp(sigma z_ij) )
//
// with gamma_t = max(0, gamma + gamma_delay_slope * t), p_t the normalized
// delay weights and z_ij standard normal. M_i is the number of cited
// publications made in i and M_j the number of citing publications made in
// j, so with one SC per publication the masses the pipeline measures are
// exactly the planted ones.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kspill/corpus.hpp"
#include "kspill/gravity.hpp"

namespace kspill {

struct SynthConfig {
  std::uint64_t seed = 1;
  std::string home_country = "IT";

  int n_territories = 60;
  double lat_min = 37.0, lat_max = 46.5;
  double lon_min = 7.0, lon_max = 18.0;
  double min_separation_km = 25.0;
  std::vector<std::string> foreign_countries = {};  // empty: built-in list

  int n_cited = 3000;   // cited publications with a prevalent LAU
  int n_citing = 4000;  // citing publications, home and foreign
  double foreign_share = 0.25;
  double mass_spread = 3.0;  // max/min ratio of territory size weights
  double unassigned_share = 0.02;  // extra cited publications tied between two LAUs

  YearRange cited_years{2010, 2012};
  YearRange citing_years{2010, 2017};

  std::vector<std::string> sc_list = {"SC01"};
  std::vector<double> sc_multiplicity = {1.0};  // P(1 SC), P(2 SCs), ...

  double ln_k = 0.0;
  double alpha = 0.8;
  double beta = 0.9;
  double gamma = 0.5;
  double gamma_delay_slope = 0.0;
  double noise_sigma = 0.3;
  double intra_distance_km = 10.0;  // planting distance for i == j flows

  double self_citation_rate = 0.1;
  double self_citation_decay_km = 50.0;  // selection weight exp(-d / decay)

  std::vector<double> delay_weights = {0.06, 0.14, 0.18, 0.17, 0.15, 0.12, 0.10, 0.08};

  /// Throws Error(InvalidArgument) on out-of-range values.
  void validate() const;
};

SynthConfig load_synth_config(const std::filesystem::path& path);
SynthConfig parse_synth_config(std::string_view toml_text);

/// Planted expectation for one territory pair, kept for oracle checks.
struct PlantedPair {
  std::string cited_territory;
  std::string citing_territory;
  bool national = true;
  double m_i = 0.0;
  double m_j = 0.0;
  double d_km = 0.0;      // gazetteer distance (0 for i == j)
  double expected = 0.0;  // noise-free planted flow, summed over delays
  double noisy = 0.0;     // before rounding
  long count = 0;
};

struct SynthCorpus {
  SynthConfig config;
  std::vector<TerritoryEntry> territories;
  std::map<std::string, std::string> sc_to_da;
  std::vector<PublicationRecord> cited;
  std::vector<CitingRecord> citing;
  std::vector<CitationLink> links;
  std::vector<PlantedPair> planted;
  std::size_t self_citations = 0;
};

/// Deterministic per seed. Throws Error(Infeasible) when links cannot be
/// placed without duplicating a citing/cited pair.
SynthCorpus generate_corpus(const SynthConfig& config);

/// Writes publications.jsonl, citing.jsonl, citations.csv, gazetteer.csv,
/// sc_to_da.csv, planted.csv and a matching run.toml.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

/// Observation-level planting without materializing publications: one row per
/// pair with i != j, c_ij = the noisy real-valued flow. With noise_sigma = 0
/// the rows satisfy the log-linear model exactly.
std::vector<GravityObservation> planted_observations(const SynthCorpus& corpus,
                                                     bool national_only = true);

}  // namespace kspill
