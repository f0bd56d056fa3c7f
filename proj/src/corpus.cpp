/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "util.hpp"

namespace kspill {

using nlohmann::json;

const char* to_string(TerritoryKind kind) noexcept {
  return kind == TerritoryKind::Lau ? "LAU" : "COUNTRY";
}

// ---------------------------------------------------------------------------
// ScToDaMapping

ScToDaMapping::ScToDaMapping(std::map<std::string, std::string> entries)
    : entries_(entries.begin(), entries.end()) {}

const std::string& ScToDaMapping::map(std::string_view sc) const {
  auto it = entries_.find(sc);
  if (it == entries_.end()) {
    throw Error(ErrorCode::Unmapped,
                "subject category '" + std::string(sc) + "' has no disciplinary area");
  }
  return it->second;
}

bool ScToDaMapping::contains(std::string_view sc) const {
  return entries_.find(sc) != entries_.end();
}

std::vector<std::string> ScToDaMapping::areas() const {
  std::set<std::string> s;
  for (const auto& [sc, da] : entries_) s.insert(da);
  return {s.begin(), s.end()};
}

std::string map_sc_to_da(std::string_view sc, const ScToDaMapping& mapping) {
  return mapping.map(sc);
}

// ---------------------------------------------------------------------------
// Gazetteer

namespace {

std::string lau_key(std::string_view city, std::string_view country) {
  std::string k(city);
  k.push_back('|');
  k += country;
  return k;
}

}  // namespace

Gazetteer::Gazetteer(std::vector<TerritoryEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.territory_id.empty()) {
      throw Error(ErrorCode::Schema, "gazetteer entry with empty territory_id");
    }
    if (!(e.lat >= -90.0 && e.lat <= 90.0 && e.lon >= -180.0 && e.lon <= 180.0)) {
      throw Error(ErrorCode::Schema,
                  "gazetteer entry '" + e.territory_id + "' has coordinates out of range");
    }
    if (!by_id_.emplace(e.territory_id, i).second) {
      throw Error(ErrorCode::Duplicate, "duplicate territory_id '" + e.territory_id + "'");
    }
    if (e.kind == TerritoryKind::Lau) {
      auto key = lau_key(normalize_city(e.display_name), e.country_code);
      if (!lau_by_city_.emplace(key, i).second) {
        throw Error(ErrorCode::Duplicate,
                    "ambiguous gazetteer: LAUs '" + entries_[lau_by_city_[key]].territory_id +
                        "' and '" + e.territory_id + "' share city '" + e.display_name +
                        "' in " + e.country_code);
      }
    } else if (!country_by_code_.emplace(e.country_code, i).second) {
      throw Error(ErrorCode::Duplicate,
                  "more than one COUNTRY entry for '" + e.country_code + "'");
    }
  }
}

const TerritoryEntry* Gazetteer::find(std::string_view territory_id) const {
  auto it = by_id_.find(std::string(territory_id));
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const TerritoryEntry& Gazetteer::at(std::string_view territory_id) const {
  if (const auto* e = find(territory_id)) return *e;
  throw Error(ErrorCode::InvalidArgument,
              "unknown territory '" + std::string(territory_id) + "'");
}

const TerritoryEntry* Gazetteer::country(std::string_view country_code) const {
  auto it = country_by_code_.find(std::string(country_code));
  return it == country_by_code_.end() ? nullptr : &entries_[it->second];
}

const TerritoryEntry* Gazetteer::resolve(const Address& address,
                                         TerritoryKind level) const {
  if (level == TerritoryKind::Country) return country(address.country);
  auto it = lau_by_city_.find(lau_key(address.city, address.country));
  return it == lau_by_city_.end() ? nullptr : &entries_[it->second];
}

// ---------------------------------------------------------------------------
// JSONL records

namespace {

struct LineError {
  std::string message;
};

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) throw LineError{std::string("missing field '") + key + "'"};
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_string()) throw LineError{std::string("field '") + key + "' must be a string"};
  std::string s(detail::trim(v.get_ref<const std::string&>()));
  if (s.empty()) throw LineError{std::string("field '") + key + "' is empty"};
  return s;
}

int require_year(const json& obj, const ParseOptions& opts) {
  const auto& v = require(obj, "year");
  if (!v.is_number_integer()) throw LineError{"field 'year' must be an integer"};
  const int year = v.get<int>();
  if (opts.years && !opts.years->contains(year)) {
    throw LineError{"year " + std::to_string(year) + " outside " +
                    std::to_string(opts.years->min) + "-" +
                    std::to_string(opts.years->max)};
  }
  return year;
}

std::vector<std::string> require_scs(const json& obj) {
  const auto& v = require(obj, "scs");
  if (!v.is_array() || v.empty()) throw LineError{"field 'scs' must be a non-empty array"};
  std::vector<std::string> out;
  for (const auto& sc : v) {
    if (!sc.is_string()) throw LineError{"subject category codes must be strings"};
    std::string code(detail::trim(sc.get_ref<const std::string&>()));
    if (code.empty()) throw LineError{"empty subject category code"};
    if (std::find(out.begin(), out.end(), code) == out.end()) out.push_back(std::move(code));
  }
  return out;
}

Address parse_address(const json& v) {
  if (!v.is_object()) throw LineError{"address must be an object"};
  const auto& city = require(v, "city");
  const auto& country = require(v, "country");
  if (!city.is_string() || !country.is_string()) {
    throw LineError{"address city/country must be strings"};
  }
  auto a = normalize_address(city.get_ref<const std::string&>(),
                             country.get_ref<const std::string&>());
  if (!a) {
    throw LineError{"unusable address '" + city.get<std::string>() + ", " +
                    country.get<std::string>() + "'"};
  }
  return *a;
}

std::vector<Address> parse_addresses(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) {
    throw LineError{std::string("field '") + what + "' must be a non-empty array"};
  }
  std::vector<Address> out;
  out.reserve(v.size());
  for (const auto& a : v) out.push_back(parse_address(a));
  return out;
}

PublicationRecord parse_cited_line(const json& obj, const ParseOptions& opts) {
  if (!obj.is_object()) throw LineError{"record must be a JSON object"};
  PublicationRecord rec;
  rec.pub_id = require_string(obj, "pub_id");
  rec.year = require_year(obj, opts);
  rec.sc_codes = require_scs(obj);
  const auto& authors = require(obj, "authors");
  if (!authors.is_array() || authors.empty()) {
    throw LineError{"field 'authors' must be a non-empty array"};
  }
  for (const auto& a : authors) {
    if (!a.is_object()) throw LineError{"author must be an object"};
    AuthorRecord author;
    const auto& key = require(a, "key");
    if (!key.is_string()) throw LineError{"author key must be a string"};
    author.key = normalize_author_key(key.get_ref<const std::string&>());
    if (author.key.empty()) throw LineError{"empty author key"};
    author.affiliations = parse_addresses(require(a, "affils"), "affils");
    rec.authors.push_back(std::move(author));
  }
  return rec;
}

CitingRecord parse_citing_line(const json& obj, const ParseOptions& opts) {
  if (!obj.is_object()) throw LineError{"record must be a JSON object"};
  CitingRecord rec;
  rec.pub_id = require_string(obj, "pub_id");
  rec.year = require_year(obj, opts);
  rec.sc_codes = require_scs(obj);
  rec.addresses = parse_addresses(require(obj, "addresses"), "addresses");
  if (auto it = obj.find("author_keys"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw LineError{"field 'author_keys' must be an array"};
    std::vector<std::string> keys;
    for (const auto& k : *it) {
      if (!k.is_string()) throw LineError{"author keys must be strings"};
      auto norm = normalize_author_key(k.get_ref<const std::string&>());
      if (norm.empty()) throw LineError{"empty author key"};
      keys.push_back(std::move(norm));
    }
    rec.author_keys = std::move(keys);
  }
  return rec;
}

template <typename Record, typename ParseFn>
std::vector<Record> parse_jsonl(std::istream& in, std::string_view source,
                                Diagnostics& diag, const ParseOptions& opts,
                                ParseFn parse) {
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  std::unordered_map<std::string, std::size_t> first_seen;
  std::map<std::string, std::vector<std::size_t>> duplicates;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      Record rec = parse(obj, opts);
      auto [it, inserted] = first_seen.emplace(rec.pub_id, lineno);
      if (!inserted) {
        auto& lines = duplicates[rec.pub_id];
        if (lines.empty()) lines.push_back(it->second);
        lines.push_back(lineno);
        continue;
      }
      out.push_back(std::move(rec));
    } catch (const json::exception& e) {
      diag.warn(std::string(source), lineno, std::string("malformed JSON: ") + e.what());
    } catch (const LineError& e) {
      diag.warn(std::string(source), lineno, "record rejected: " + e.message);
    }
  }
  if (!duplicates.empty()) {
    std::string msg = std::string(source) + ": duplicate pub_id";
    for (const auto& [id, lines] : duplicates) {
      msg += " '" + id + "' (lines";
      for (auto l : lines) msg += " " + std::to_string(l);
      msg += ")";
    }
    throw Error(ErrorCode::Duplicate, msg);
  }
  return out;
}

}  // namespace

std::vector<PublicationRecord> parse_cited_records(std::istream& in,
                                                   std::string_view source,
                                                   Diagnostics& diag,
                                                   const ParseOptions& opts) {
  return parse_jsonl<PublicationRecord>(in, source, diag, opts, parse_cited_line);
}

std::vector<CitingRecord> parse_citing_records(std::istream& in,
                                               std::string_view source,
                                               Diagnostics& diag,
                                               const ParseOptions& opts) {
  return parse_jsonl<CitingRecord>(in, source, diag, opts, parse_citing_line);
}

// ---------------------------------------------------------------------------
// CSV tables

std::vector<CitationLink> parse_citation_links(std::istream& in, std::string_view source,
                                               Diagnostics& diag) {
  detail::CsvHeader header(in, source, {"citing_id", "cited_id"});
  const auto ci = header["citing_id"];
  const auto di = header["cited_id"];
  std::vector<CitationLink> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::vector<std::string> f;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    if (!detail::split_csv_line(line, f) || f.size() != header.width()) {
      diag.warn(std::string(source), lineno, "malformed row");
      continue;
    }
    CitationLink link{std::string(detail::trim(f[ci])), std::string(detail::trim(f[di]))};
    if (link.citing_id.empty() || link.cited_id.empty()) {
      diag.warn(std::string(source), lineno, "empty id");
      continue;
    }
    std::string key = link.citing_id;
    key.push_back('\x1f');
    key += link.cited_id;
    if (!seen.insert(std::move(key)).second) {
      diag.warn(std::string(source), lineno,
                "duplicate link " + link.citing_id + " -> " + link.cited_id + " collapsed");
      continue;
    }
    out.push_back(std::move(link));
  }
  return out;
}

Gazetteer parse_gazetteer(std::istream& in, std::string_view source, Diagnostics& diag) {
  detail::CsvHeader header(in, source, {"territory_id", "kind", "country_code",
                                        "display_name", "lat", "lon"});
  const auto ii = header["territory_id"], ki = header["kind"], ci = header["country_code"],
             ni = header["display_name"], lai = header["lat"], loi = header["lon"];
  std::vector<TerritoryEntry> entries;
  std::string line;
  std::vector<std::string> f;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    if (!detail::split_csv_line(line, f) || f.size() != header.width()) {
      diag.warn(std::string(source), lineno, "malformed row");
      continue;
    }
    TerritoryEntry e;
    e.territory_id = std::string(detail::trim(f[ii]));
    std::string kind = normalize_city(f[ki]);
    if (kind == "lau") {
      e.kind = TerritoryKind::Lau;
    } else if (kind == "country") {
      e.kind = TerritoryKind::Country;
    } else {
      diag.warn(std::string(source), lineno, "unknown kind '" + f[ki] + "'");
      continue;
    }
    auto code = normalize_country(f[ci]);
    if (!code) {
      diag.warn(std::string(source), lineno, "bad country code '" + f[ci] + "'");
      continue;
    }
    e.country_code = *code;
    e.display_name = std::string(detail::trim(f[ni]));
    if (e.territory_id.empty() || e.display_name.empty()) {
      diag.warn(std::string(source), lineno, "empty territory_id or display_name");
      continue;
    }
    if (!detail::parse_double(f[lai], e.lat) || !detail::parse_double(f[loi], e.lon) ||
        e.lat < -90.0 || e.lat > 90.0 || e.lon < -180.0 || e.lon > 180.0) {
      diag.warn(std::string(source), lineno, "invalid coordinates");
      continue;
    }
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

ScToDaMapping parse_sc_to_da(std::istream& in, std::string_view source, Diagnostics& diag) {
  detail::CsvHeader header(in, source, {"sc_code", "da_code"});
  const auto si = header["sc_code"], di = header["da_code"];
  std::map<std::string, std::string> entries;
  std::string line;
  std::vector<std::string> f;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    if (!detail::split_csv_line(line, f) || f.size() != header.width()) {
      diag.warn(std::string(source), lineno, "malformed row");
      continue;
    }
    std::string sc(detail::trim(f[si])), da(detail::trim(f[di]));
    if (sc.empty() || da.empty()) {
      diag.warn(std::string(source), lineno, "empty sc_code or da_code");
      continue;
    }
    auto [it, inserted] = entries.emplace(sc, da);
    if (!inserted && it->second != da) {
      throw Error(ErrorCode::Schema, std::string(source) + ":" + std::to_string(lineno) +
                                         ": subject category '" + sc +
                                         "' mapped to both '" + it->second + "' and '" +
                                         da + "'");
    }
  }
  return ScToDaMapping(std::move(entries));
}

std::vector<PublicationRecord> read_cited_records(const std::filesystem::path& path,
                                                  Diagnostics& diag,
                                                  const ParseOptions& opts) {
  auto in = detail::open_input(path);
  return parse_cited_records(in, path.filename().string(), diag, opts);
}

std::vector<CitingRecord> read_citing_records(const std::filesystem::path& path,
                                              Diagnostics& diag,
                                              const ParseOptions& opts) {
  auto in = detail::open_input(path);
  return parse_citing_records(in, path.filename().string(), diag, opts);
}

std::vector<CitationLink> read_citation_links(const std::filesystem::path& path,
                                              Diagnostics& diag) {
  auto in = detail::open_input(path);
  return parse_citation_links(in, path.filename().string(), diag);
}

Gazetteer read_gazetteer(const std::filesystem::path& path, Diagnostics& diag) {
  auto in = detail::open_input(path);
  return parse_gazetteer(in, path.filename().string(), diag);
}

ScToDaMapping read_sc_to_da(const std::filesystem::path& path, Diagnostics& diag) {
  auto in = detail::open_input(path);
  return parse_sc_to_da(in, path.filename().string(), diag);
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<std::string> unmapped_sc_codes(const std::vector<PublicationRecord>& cited,
                                           const std::vector<CitingRecord>& citing,
                                           const ScToDaMapping& mapping) {
  std::set<std::string> missing;
  for (const auto& p : cited) {
    for (const auto& sc : p.sc_codes) {
      if (!mapping.contains(sc)) missing.insert(sc);
    }
  }
  for (const auto& p : citing) {
    for (const auto& sc : p.sc_codes) {
      if (!mapping.contains(sc)) missing.insert(sc);
    }
  }
  return {missing.begin(), missing.end()};
}

Corpus::Corpus(std::vector<PublicationRecord> cited, std::vector<CitingRecord> citing,
               std::vector<CitationLink> links, Gazetteer gazetteer,
               ScToDaMapping sc_to_da, Diagnostics& diag)
    : cited_(std::move(cited)),
      citing_(std::move(citing)),
      gazetteer_(std::move(gazetteer)),
      sc_to_da_(std::move(sc_to_da)) {
  if (auto missing = unmapped_sc_codes(cited_, citing_, sc_to_da_); !missing.empty()) {
    std::string msg = "subject categories without a disciplinary area:";
    for (const auto& sc : missing) msg += " " + sc;
    throw Error(ErrorCode::Unmapped, msg);
  }
  for (std::size_t i = 0; i < cited_.size(); ++i) {
    if (!cited_index_.emplace(cited_[i].pub_id, i).second) {
      throw Error(ErrorCode::Duplicate, "duplicate cited pub_id '" + cited_[i].pub_id + "'");
    }
  }
  for (std::size_t i = 0; i < citing_.size(); ++i) {
    if (!citing_index_.emplace(citing_[i].pub_id, i).second) {
      throw Error(ErrorCode::Duplicate, "duplicate citing pub_id '" + citing_[i].pub_id + "'");
    }
  }
  links_.reserve(links.size());
  std::size_t dangling = 0;
  for (auto& l : links) {
    const bool ok = cited_index_.contains(l.cited_id) && citing_index_.contains(l.citing_id);
    if (!ok) {
      if (++dangling <= 20) {
        diag.warn("citations", "link " + l.citing_id + " -> " + l.cited_id +
                                   " references an unknown publication; dropped");
      }
      continue;
    }
    links_.push_back(std::move(l));
  }
  if (dangling > 20) {
    diag.warn("citations", std::to_string(dangling - 20) + " more dangling links dropped");
  }
}

const PublicationRecord* Corpus::find_cited(std::string_view id) const {
  auto it = cited_index_.find(std::string(id));
  return it == cited_index_.end() ? nullptr : &cited_[it->second];
}

const CitingRecord* Corpus::find_citing(std::string_view id) const {
  auto it = citing_index_.find(std::string(id));
  return it == citing_index_.end() ? nullptr : &citing_[it->second];
}

Corpus load_corpus(const CorpusPaths& paths, const LoadOptions& opts, Diagnostics& diag) {
  ParseOptions cited_opts{opts.cited_years};
  ParseOptions citing_opts{YearRange{std::max(opts.cited_years.min, opts.citing_years.min),
                                     opts.citing_years.max}};
  auto mapping = read_sc_to_da(paths.sc_to_da, diag);
  auto gazetteer = read_gazetteer(paths.gazetteer, diag);
  auto cited = read_cited_records(paths.publications, diag, cited_opts);
  auto citing = read_citing_records(paths.citing, diag, citing_opts);
  auto links = read_citation_links(paths.citations, diag);
  return Corpus(std::move(cited), std::move(citing), std::move(links), std::move(gazetteer),
                std::move(mapping), diag);
}

CorpusStats corpus_stats(const Corpus& corpus,
                         const std::unordered_set<std::string>& prevalent_cited_ids) {
  CorpusStats s;
  s.publications = corpus.cited().size();
  s.citations = corpus.links().size();
  std::unordered_set<std::string_view> cited_with, citing_ids;
  for (const auto& l : corpus.links()) {
    cited_with.insert(l.cited_id);
    citing_ids.insert(l.citing_id);
  }
  s.cited_with_citations = cited_with.size();
  s.unique_citing = citing_ids.size();
  for (auto id : cited_with) {
    if (prevalent_cited_ids.contains(std::string(id))) ++s.assigned;
  }
  return s;
}

}  // namespace kspill
