/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Research size of cited and citing territories.
//
// The cited mass of territory i in focal SC s is the number of cited
// publications made in i that carry s. The citing mass of territory j is a
// weighted count of j's citing publications, where each SC t gets the weight
// it holds in the SC distribution of all publications citing focal-SC work.
// Multi-category publications are full counted in each category.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kspill/corpus.hpp"
#include "kspill/territory.hpp"

namespace kspill {

struct ScWeightProfile {
  std::string focal_sc;
  std::map<std::string, double> weights;  // sums to 1
};

/// Returns nullopt when no citation link reaches a focal-SC publication.
std::optional<ScWeightProfile> sc_weight_profile(std::string_view focal_sc,
                                                 const Corpus& corpus);

/// Counts of publications per (territory, SC), full counting over SCs.
/// Citing territories are LAUs for home-country citing records and countries
/// for all citing records; both live in one table since ids are unique
/// across the gazetteer.
class MassCounts {
 public:
  MassCounts(const Corpus& corpus, const AssignmentTable& assignments);

  int cited_count(std::string_view territory_id, std::string_view sc) const;
  int citing_count(std::string_view territory_id, std::string_view sc) const;
  const std::map<std::string, int>* citing_counts(std::string_view territory_id) const;

 private:
  std::map<std::string, std::map<std::string, int>, std::less<>> cited_;
  std::map<std::string, std::map<std::string, int>, std::less<>> citing_;
};

int cited_mass(std::string_view territory_id, std::string_view focal_sc,
               const MassCounts& counts);

/// sum over SCs t of weight(t) * (citing publications of the territory in t)
double citing_mass(std::string_view territory_id, const ScWeightProfile& profile,
                   const MassCounts& counts);

struct MassEntry {
  std::string focal_sc;
  std::string territory_id;
  int m_cited = 0;
  double m_citing = 0.0;
};

/// Masses for every focal SC with a profile and every territory that holds
/// a cited or citing assignment.
class MassTable {
 public:
  MassTable() = default;
  MassTable(const Corpus& corpus, const AssignmentTable& assignments);

  const ScWeightProfile* profile(std::string_view focal_sc) const;
  int m_cited(std::string_view territory_id, std::string_view focal_sc) const;
  double m_citing(std::string_view territory_id, std::string_view focal_sc) const;
  /// Sorted by (focal_sc, territory_id).
  std::vector<MassEntry> entries() const;

 private:
  std::map<std::string, ScWeightProfile, std::less<>> profiles_;
  std::map<std::pair<std::string, std::string>, MassEntry> table_;  // (sc, territory)
};

}  // namespace kspill
