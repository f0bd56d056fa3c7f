/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Fixture builders shared by the unit tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "kspill/corpus.hpp"

namespace kspill::test {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "kspill_test_XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

inline TerritoryEntry lau(std::string id, std::string name, double lat, double lon,
                          std::string country = "IT") {
  return TerritoryEntry{std::move(id), TerritoryKind::Lau, std::move(country), std::move(name),
                        lat, lon};
}

inline TerritoryEntry country(std::string code, std::string capital, double lat, double lon) {
  return TerritoryEntry{"C-" + code, TerritoryKind::Country, code, std::move(capital), lat, lon};
}

/// Italian LAUs plus a handful of COUNTRY entries at their capitals.
inline Gazetteer sample_gazetteer() {
  return Gazetteer({
      lau("ROM", "Rome", 41.8931, 12.4828),
      lau("MIL", "Milan", 45.4642, 9.1900),
      lau("TUR", "Turin", 45.0703, 7.6869),
      lau("NAP", "Naples", 40.8518, 14.2681),
      lau("CAT", "Catania", 37.5021, 15.0872),
      lau("AOS", "Aosta", 45.7370, 7.3201),
      country("IT", "Rome", 41.8931, 12.4828),
      country("FR", "Paris", 48.8567, 2.3522),
      country("GB", "London", 51.5072, -0.1275),
      country("US", "Washington", 38.9072, -77.0369),
      country("DE", "Berlin", 52.5200, 13.4050),
  });
}

inline Address addr(std::string city, std::string country = "IT") {
  return Address{std::move(city), std::move(country)};
}

inline AuthorRecord author(std::string key, std::vector<Address> affils) {
  return AuthorRecord{std::move(key), std::move(affils)};
}

inline PublicationRecord cited_pub(std::string id, int year, std::vector<std::string> scs,
                                   std::vector<AuthorRecord> authors) {
  return PublicationRecord{std::move(id), year, std::move(scs), std::move(authors)};
}

inline CitingRecord citing_pub(std::string id, int year, std::vector<std::string> scs,
                               std::vector<Address> addresses,
                               std::optional<std::vector<std::string>> keys = std::nullopt) {
  return CitingRecord{std::move(id), year, std::move(scs), std::move(addresses),
                      std::move(keys)};
}

inline ScToDaMapping sample_mapping() {
  return ScToDaMapping({{"A", "Natural sciences"},
                        {"B", "Natural sciences"},
                        {"C", "Engineering and technology"},
                        {"PAL", "Natural sciences"},
                        {"GEO", "Natural sciences"}});
}

}  // namespace kspill::test
