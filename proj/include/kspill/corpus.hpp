/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Bibliographic data model and input parsing.
//
// Cited publications carry author -> affiliation links; citing publications
// carry only a flat address list (plus, optionally, normalized author keys
// used for self-citation detection). All string keys that take part in
// joins (cities, country codes, author keys) are normalized on ingestion.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kspill/error.hpp"

namespace kspill {

struct Address {
  std::string city;     // lowercase ASCII-folded
  std::string country;  // two-letter uppercase code

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;
};

struct AuthorRecord {
  std::string key;
  std::vector<Address> affiliations;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  std::vector<std::string> sc_codes;  // distinct, input order kept
  std::vector<AuthorRecord> authors;
};

struct CitingRecord {
  std::string pub_id;
  int year = 0;
  std::vector<std::string> sc_codes;
  std::vector<Address> addresses;
  std::optional<std::vector<std::string>> author_keys;
};

struct CitationLink {
  std::string citing_id;
  std::string cited_id;

  friend bool operator==(const CitationLink&, const CitationLink&) = default;
};

enum class TerritoryKind { Lau, Country };

const char* to_string(TerritoryKind kind) noexcept;

struct TerritoryEntry {
  std::string territory_id;
  TerritoryKind kind = TerritoryKind::Lau;
  std::string country_code;
  std::string display_name;
  double lat = 0.0;
  double lon = 0.0;  // COUNTRY entries hold the capital's coordinates
};

struct YearRange {
  int min = 0;
  int max = 0;
  bool contains(int year) const noexcept { return year >= min && year <= max; }
};

// ---------------------------------------------------------------------------
// Normalization

/// Lowercases, folds Latin diacritics to ASCII, trims and collapses runs of
/// whitespace. Bytes outside the folding table pass through unchanged.
std::string normalize_city(std::string_view raw);

/// Maps a country name or code to a two-letter uppercase code. Accepts ISO
/// alpha-2 codes in any case plus common English names and the spellings
/// found in bibliographic address fields ("Peoples R China", "England").
std::optional<std::string> normalize_country(std::string_view raw);

/// Same folding as cities; author keys compare after this.
std::string normalize_author_key(std::string_view raw);

/// Returns nullopt when either part is empty after normalization or the
/// country cannot be mapped to a code.
std::optional<Address> normalize_address(std::string_view raw_city,
                                         std::string_view raw_country);

// ---------------------------------------------------------------------------
// Reference tables

/// Subject category -> disciplinary area. Must be total over every SC that
/// appears in the corpus.
class ScToDaMapping {
 public:
  ScToDaMapping() = default;
  explicit ScToDaMapping(std::map<std::string, std::string> entries);

  /// Throws Error(Unmapped) for unknown codes.
  const std::string& map(std::string_view sc) const;
  bool contains(std::string_view sc) const;
  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }
  std::vector<std::string> areas() const;  // distinct, sorted

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

std::string map_sc_to_da(std::string_view sc, const ScToDaMapping& mapping);

class Gazetteer {
 public:
  Gazetteer() = default;
  /// Validates uniqueness of ids, of (city, country) among LAU entries and of
  /// country codes among COUNTRY entries, and coordinate ranges.
  explicit Gazetteer(std::vector<TerritoryEntry> entries);

  const std::vector<TerritoryEntry>& entries() const noexcept { return entries_; }
  const TerritoryEntry* find(std::string_view territory_id) const;
  const TerritoryEntry& at(std::string_view territory_id) const;
  const TerritoryEntry* country(std::string_view country_code) const;

  /// LAU level matches on normalized display name + country code; COUNTRY
  /// level matches the address's country code.
  const TerritoryEntry* resolve(const Address& address, TerritoryKind level) const;

 private:
  std::vector<TerritoryEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> lau_by_city_;
  std::unordered_map<std::string, std::size_t> country_by_code_;
};

// ---------------------------------------------------------------------------
// Parsing

enum class PublicationRole { Cited, Citing };

struct ParseOptions {
  std::optional<YearRange> years;
};

std::vector<PublicationRecord> parse_cited_records(std::istream& in,
                                                   std::string_view source,
                                                   Diagnostics& diag,
                                                   const ParseOptions& opts = {});
std::vector<CitingRecord> parse_citing_records(std::istream& in,
                                               std::string_view source,
                                               Diagnostics& diag,
                                               const ParseOptions& opts = {});
/// Collapses duplicate rows with a warning.
std::vector<CitationLink> parse_citation_links(std::istream& in,
                                               std::string_view source,
                                               Diagnostics& diag);
Gazetteer parse_gazetteer(std::istream& in, std::string_view source,
                          Diagnostics& diag);
ScToDaMapping parse_sc_to_da(std::istream& in, std::string_view source,
                             Diagnostics& diag);

std::vector<PublicationRecord> read_cited_records(const std::filesystem::path& path,
                                                  Diagnostics& diag,
                                                  const ParseOptions& opts = {});
std::vector<CitingRecord> read_citing_records(const std::filesystem::path& path,
                                              Diagnostics& diag,
                                              const ParseOptions& opts = {});
std::vector<CitationLink> read_citation_links(const std::filesystem::path& path,
                                              Diagnostics& diag);
Gazetteer read_gazetteer(const std::filesystem::path& path, Diagnostics& diag);
ScToDaMapping read_sc_to_da(const std::filesystem::path& path, Diagnostics& diag);

// ---------------------------------------------------------------------------
// Corpus

struct CorpusPaths {
  std::filesystem::path publications;
  std::filesystem::path citing;
  std::filesystem::path citations;
  std::filesystem::path gazetteer;
  std::filesystem::path sc_to_da;
};

struct LoadOptions {
  YearRange cited_years{2010, 2012};
  YearRange citing_years{2010, 2017};
};

/// Immutable after assembly; downstream modules share it read-only.
class Corpus {
 public:
  Corpus() = default;
  /// Drops links that reference unknown publications (with a warning) and
  /// throws Error(Unmapped) when any SC lacks a disciplinary area.
  Corpus(std::vector<PublicationRecord> cited, std::vector<CitingRecord> citing,
         std::vector<CitationLink> links, Gazetteer gazetteer,
         ScToDaMapping sc_to_da, Diagnostics& diag);

  const std::vector<PublicationRecord>& cited() const noexcept { return cited_; }
  const std::vector<CitingRecord>& citing() const noexcept { return citing_; }
  const std::vector<CitationLink>& links() const noexcept { return links_; }
  const Gazetteer& gazetteer() const noexcept { return gazetteer_; }
  const ScToDaMapping& sc_to_da() const noexcept { return sc_to_da_; }

  const PublicationRecord* find_cited(std::string_view id) const;
  const CitingRecord* find_citing(std::string_view id) const;

 private:
  std::vector<PublicationRecord> cited_;
  std::vector<CitingRecord> citing_;
  std::vector<CitationLink> links_;
  Gazetteer gazetteer_;
  ScToDaMapping sc_to_da_;
  std::unordered_map<std::string, std::size_t> cited_index_;
  std::unordered_map<std::string, std::size_t> citing_index_;
};

Corpus load_corpus(const CorpusPaths& paths, const LoadOptions& opts,
                   Diagnostics& diag);

/// SCs used by any record but absent from the mapping, sorted.
std::vector<std::string> unmapped_sc_codes(const std::vector<PublicationRecord>& cited,
                                           const std::vector<CitingRecord>& citing,
                                           const ScToDaMapping& mapping);

struct CorpusStats {
  std::size_t publications = 0;
  std::size_t cited_with_citations = 0;
  std::size_t assigned = 0;  // cited with >= 1 citation and a prevalent territory
  std::size_t citations = 0;
  std::size_t unique_citing = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const Corpus& corpus,
                         const std::unordered_set<std::string>& prevalent_cited_ids);

}  // namespace kspill
