/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/cognitive_mass.hpp"

#include <algorithm>
#include <set>

namespace kspill {
namespace {

bool has_sc(const std::vector<std::string>& scs, std::string_view sc) {
  return std::find(scs.begin(), scs.end(), sc) != scs.end();
}

ScWeightProfile normalize_profile(std::string focal_sc, const std::map<std::string, long>& counts) {
  ScWeightProfile p;
  p.focal_sc = std::move(focal_sc);
  long total = 0;
  for (const auto& [sc, n] : counts) total += n;
  for (const auto& [sc, n] : counts) {
    p.weights.emplace(sc, static_cast<double>(n) / static_cast<double>(total));
  }
  return p;
}

}  // namespace

std::optional<ScWeightProfile> sc_weight_profile(std::string_view focal_sc,
                                                 const Corpus& corpus) {
  std::map<std::string, long> counts;
  for (const auto& link : corpus.links()) {
    const auto* cited = corpus.find_cited(link.cited_id);
    if (cited == nullptr || !has_sc(cited->sc_codes, focal_sc)) continue;
    const auto* citing = corpus.find_citing(link.citing_id);
    if (citing == nullptr) continue;
    for (const auto& sc : citing->sc_codes) ++counts[sc];
  }
  if (counts.empty()) return std::nullopt;
  return normalize_profile(std::string(focal_sc), counts);
}

MassCounts::MassCounts(const Corpus& corpus, const AssignmentTable& assignments) {
  for (const auto& pub : corpus.cited()) {
    const auto* a = assignments.find_cited(pub.pub_id);
    if (a == nullptr || !a->prevalent) continue;
    auto& row = cited_[*a->territory_id];
    for (const auto& sc : pub.sc_codes) ++row[sc];
  }
  for (const auto& pub : corpus.citing()) {
    for (const auto* a : {assignments.find_citing_country(pub.pub_id),
                          assignments.find_citing_lau(pub.pub_id)}) {
      if (a == nullptr || !a->prevalent) continue;
      auto& row = citing_[*a->territory_id];
      for (const auto& sc : pub.sc_codes) ++row[sc];
    }
  }
}

int MassCounts::cited_count(std::string_view territory_id, std::string_view sc) const {
  auto it = cited_.find(territory_id);
  if (it == cited_.end()) return 0;
  auto jt = it->second.find(std::string(sc));
  return jt == it->second.end() ? 0 : jt->second;
}

int MassCounts::citing_count(std::string_view territory_id, std::string_view sc) const {
  auto it = citing_.find(territory_id);
  if (it == citing_.end()) return 0;
  auto jt = it->second.find(std::string(sc));
  return jt == it->second.end() ? 0 : jt->second;
}

const std::map<std::string, int>* MassCounts::citing_counts(std::string_view territory_id) const {
  auto it = citing_.find(territory_id);
  return it == citing_.end() ? nullptr : &it->second;
}

int cited_mass(std::string_view territory_id, std::string_view focal_sc,
               const MassCounts& counts) {
  return counts.cited_count(territory_id, focal_sc);
}

double citing_mass(std::string_view territory_id, const ScWeightProfile& profile,
                   const MassCounts& counts) {
  const auto* row = counts.citing_counts(territory_id);
  if (row == nullptr) return 0.0;
  double m = 0.0;
  for (const auto& [sc, n] : *row) {
    auto it = profile.weights.find(sc);
    if (it != profile.weights.end()) m += it->second * static_cast<double>(n);
  }
  return m;
}

MassTable::MassTable(const Corpus& corpus, const AssignmentTable& assignments) {
  // Profiles for every focal SC in one pass over the links.
  std::map<std::string, std::map<std::string, long>> counts;
  for (const auto& link : corpus.links()) {
    const auto* cited = corpus.find_cited(link.cited_id);
    const auto* citing = corpus.find_citing(link.citing_id);
    if (cited == nullptr || citing == nullptr) continue;
    for (const auto& focal : cited->sc_codes) {
      auto& row = counts[focal];
      for (const auto& sc : citing->sc_codes) ++row[sc];
    }
  }
  for (const auto& [focal, row] : counts) {
    profiles_.emplace(focal, normalize_profile(focal, row));
  }

  const MassCounts mc(corpus, assignments);
  std::set<std::string> cited_territories, citing_territories;
  for (const auto& [id, a] : assignments.cited) {
    if (a.prevalent) cited_territories.insert(*a.territory_id);
  }
  for (const auto* side : {&assignments.citing_country, &assignments.citing_lau}) {
    for (const auto& [id, a] : *side) {
      if (a.prevalent) citing_territories.insert(*a.territory_id);
    }
  }
  for (const auto& [focal, profile] : profiles_) {
    for (const auto& t : cited_territories) {
      const int m = cited_mass(t, focal, mc);
      if (m > 0) {
        auto& e = table_[{focal, t}];
        e.focal_sc = focal;
        e.territory_id = t;
        e.m_cited = m;
      }
    }
    for (const auto& t : citing_territories) {
      const double m = citing_mass(t, profile, mc);
      if (m > 0.0) {
        auto& e = table_[{focal, t}];
        e.focal_sc = focal;
        e.territory_id = t;
        e.m_citing = m;
      }
    }
  }
}

const ScWeightProfile* MassTable::profile(std::string_view focal_sc) const {
  auto it = profiles_.find(focal_sc);
  return it == profiles_.end() ? nullptr : &it->second;
}

int MassTable::m_cited(std::string_view territory_id, std::string_view focal_sc) const {
  auto it = table_.find({std::string(focal_sc), std::string(territory_id)});
  return it == table_.end() ? 0 : it->second.m_cited;
}

double MassTable::m_citing(std::string_view territory_id, std::string_view focal_sc) const {
  auto it = table_.find({std::string(focal_sc), std::string(territory_id)});
  return it == table_.end() ? 0.0 : it->second.m_citing;
}

std::vector<MassEntry> MassTable::entries() const {
  std::vector<MassEntry> out;
  out.reserve(table_.size());
  for (const auto& [key, e] : table_) out.push_back(e);
  return out;
}

}  // namespace kspill
