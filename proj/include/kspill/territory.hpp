/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kspill/corpus.hpp"

namespace kspill {

/// How a weight table turns into a prevailing territory.
enum class MajorityRule {
  Plurality,  // unique strict maximum
  Absolute,   // unique maximum holding more than half of the total weight
};

std::optional<MajorityRule> parse_majority_rule(std::string_view text);
const char* to_string(MajorityRule rule) noexcept;

struct TerritoryAssignment {
  std::string pub_id;
  std::optional<std::string> territory_id;  // nullopt: no prevalent territory
  std::map<std::string, double> weights;
  bool prevalent = false;
};

/// Applies the majority rule to a weight table.
std::optional<std::string> prevailing_territory(
    const std::map<std::string, double>& weights, MajorityRule rule);

/// Author convention: an author whose affiliations resolve to m distinct
/// LAUs adds 1/m to each. Authors with no resolvable affiliation are not
/// counted.
TerritoryAssignment assign_cited_territory(const PublicationRecord& pub,
                                           const Gazetteer& gaz,
                                           MajorityRule rule = MajorityRule::Plurality);

/// Address convention: every address occurrence counts once at the requested
/// level. Unresolvable addresses are skipped.
TerritoryAssignment assign_citing_territory(const CitingRecord& pub,
                                            const Gazetteer& gaz,
                                            TerritoryKind level,
                                            MajorityRule rule = MajorityRule::Plurality);

enum class Scale { National, Continental, Intercontinental };

const char* to_string(Scale scale) noexcept;
std::optional<Scale> parse_scale(std::string_view text);
inline constexpr Scale kAllScales[] = {Scale::National, Scale::Continental,
                                       Scale::Intercontinental};

/// Country codes of Europe, used as the default continent set.
const std::set<std::string>& european_countries();

/// National, continental (continent minus home) or intercontinental.
/// Throws Error(InvalidArgument) for malformed codes or when the continent
/// set does not contain the home country.
Scale classify_scale(const TerritoryEntry& citing_territory,
                     std::string_view home_country,
                     const std::set<std::string>& continent_set);

/// Territory assignments for the whole corpus, looked up by publication id.
struct AssignmentTable {
  std::unordered_map<std::string, TerritoryAssignment> cited;          // LAU
  std::unordered_map<std::string, TerritoryAssignment> citing_country;
  /// LAU-level assignment, only for citing records whose prevalent country
  /// is the home country.
  std::unordered_map<std::string, TerritoryAssignment> citing_lau;

  const TerritoryAssignment* find_cited(const std::string& id) const;
  const TerritoryAssignment* find_citing_country(const std::string& id) const;
  const TerritoryAssignment* find_citing_lau(const std::string& id) const;
};

AssignmentTable assign_all(const Corpus& corpus, std::string_view home_country,
                           MajorityRule rule = MajorityRule::Plurality);

}  // namespace kspill
