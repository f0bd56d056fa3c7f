/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/territory.hpp"

#include <cctype>
#include <set>

namespace kspill {
namespace {

// Fractional author weights (k/m sums) are compared with this slack.
constexpr double kTieTolerance = 1e-9;

bool valid_country_code(std::string_view code) {
  return code.size() == 2 && std::isupper(static_cast<unsigned char>(code[0])) &&
         std::isupper(static_cast<unsigned char>(code[1]));
}

}  // namespace

std::optional<MajorityRule> parse_majority_rule(std::string_view text) {
  if (text == "plurality") return MajorityRule::Plurality;
  if (text == "absolute") return MajorityRule::Absolute;
  return std::nullopt;
}

const char* to_string(MajorityRule rule) noexcept {
  return rule == MajorityRule::Plurality ? "plurality" : "absolute";
}

const char* to_string(Scale scale) noexcept {
  switch (scale) {
    case Scale::National: return "national";
    case Scale::Continental: return "continental";
    case Scale::Intercontinental: return "intercontinental";
  }
  return "?";
}

std::optional<Scale> parse_scale(std::string_view text) {
  for (auto s : kAllScales) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::optional<std::string> prevailing_territory(const std::map<std::string, double>& weights,
                                                MajorityRule rule) {
  const std::string* best = nullptr;
  double best_w = 0.0, second_w = 0.0, total = 0.0;
  for (const auto& [id, w] : weights) {
    total += w;
    if (best == nullptr || w > best_w) {
      second_w = best == nullptr ? 0.0 : best_w;
      best = &id;
      best_w = w;
    } else if (w > second_w) {
      second_w = w;
    }
  }
  if (best == nullptr || best_w <= 0.0) return std::nullopt;
  if (best_w - second_w <= kTieTolerance) return std::nullopt;
  if (rule == MajorityRule::Absolute && !(best_w > 0.5 * total + kTieTolerance)) {
    return std::nullopt;
  }
  return *best;
}

TerritoryAssignment assign_cited_territory(const PublicationRecord& pub, const Gazetteer& gaz,
                                           MajorityRule rule) {
  TerritoryAssignment out;
  out.pub_id = pub.pub_id;
  for (const auto& author : pub.authors) {
    std::set<std::string> territories;
    for (const auto& affil : author.affiliations) {
      if (const auto* t = gaz.resolve(affil, TerritoryKind::Lau)) {
        territories.insert(t->territory_id);
      }
    }
    if (territories.empty()) continue;
    const double share = 1.0 / static_cast<double>(territories.size());
    for (const auto& id : territories) out.weights[id] += share;
  }
  out.territory_id = prevailing_territory(out.weights, rule);
  out.prevalent = out.territory_id.has_value();
  return out;
}

TerritoryAssignment assign_citing_territory(const CitingRecord& pub, const Gazetteer& gaz,
                                            TerritoryKind level, MajorityRule rule) {
  TerritoryAssignment out;
  out.pub_id = pub.pub_id;
  for (const auto& addr : pub.addresses) {
    if (const auto* t = gaz.resolve(addr, level)) out.weights[t->territory_id] += 1.0;
  }
  out.territory_id = prevailing_territory(out.weights, rule);
  out.prevalent = out.territory_id.has_value();
  return out;
}

const std::set<std::string>& european_countries() {
  static const std::set<std::string> codes = {
      "AD", "AL", "AT", "BA", "BE", "BG", "BY", "CH", "CY", "CZ", "DE", "DK",
      "EE", "ES", "FI", "FR", "GB", "GR", "HR", "HU", "IE", "IS", "IT", "LI",
      "LT", "LU", "LV", "MC", "MD", "ME", "MK", "MT", "NL", "NO", "PL", "PT",
      "RO", "RS", "RU", "SE", "SI", "SK", "SM", "UA", "VA", "XK",
  };
  return codes;
}

Scale classify_scale(const TerritoryEntry& citing_territory, std::string_view home_country,
                     const std::set<std::string>& continent_set) {
  const auto& code = citing_territory.country_code;
  if (!valid_country_code(code)) {
    throw Error(ErrorCode::InvalidArgument,
                "unknown country code '" + code + "' for territory '" +
                    citing_territory.territory_id + "'");
  }
  if (!valid_country_code(home_country)) {
    throw Error(ErrorCode::InvalidArgument,
                "unknown home country code '" + std::string(home_country) + "'");
  }
  if (!continent_set.contains(std::string(home_country))) {
    throw Error(ErrorCode::InvalidArgument,
                "continent set does not contain the home country " + std::string(home_country));
  }
  if (code == home_country) return Scale::National;
  if (continent_set.contains(code)) return Scale::Continental;
  return Scale::Intercontinental;
}

const TerritoryAssignment* AssignmentTable::find_cited(const std::string& id) const {
  auto it = cited.find(id);
  return it == cited.end() ? nullptr : &it->second;
}

const TerritoryAssignment* AssignmentTable::find_citing_country(const std::string& id) const {
  auto it = citing_country.find(id);
  return it == citing_country.end() ? nullptr : &it->second;
}

const TerritoryAssignment* AssignmentTable::find_citing_lau(const std::string& id) const {
  auto it = citing_lau.find(id);
  return it == citing_lau.end() ? nullptr : &it->second;
}

AssignmentTable assign_all(const Corpus& corpus, std::string_view home_country,
                           MajorityRule rule) {
  AssignmentTable table;
  const auto& gaz = corpus.gazetteer();
  for (const auto& pub : corpus.cited()) {
    table.cited.emplace(pub.pub_id, assign_cited_territory(pub, gaz, rule));
  }
  for (const auto& pub : corpus.citing()) {
    auto country = assign_citing_territory(pub, gaz, TerritoryKind::Country, rule);
    if (country.prevalent && gaz.at(*country.territory_id).country_code == home_country) {
      table.citing_lau.emplace(pub.pub_id,
                               assign_citing_territory(pub, gaz, TerritoryKind::Lau, rule));
    }
    table.citing_country.emplace(pub.pub_id, std::move(country));
  }
  return table;
}

}  // namespace kspill
