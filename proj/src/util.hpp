/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kspill::detail {

std::string_view trim(std::string_view s);

/// One CSV record; double quotes may wrap fields and escape themselves ("").
/// Returns false on an unterminated quote.
bool split_csv_line(std::string_view line, std::vector<std::string>& fields);

std::string csv_field(std::string_view value);

/// Shortest round-trip representation; "nan"/"inf" spelled out.
std::string format_double(double value);

bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long& out);

std::ifstream open_input(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Reads the header line of a CSV stream and maps the required columns to
/// their positions. Throws Error(Schema) when one is missing.
class CsvHeader {
 public:
  CsvHeader(std::istream& in, std::string_view source,
            std::initializer_list<std::string_view> required);

  std::size_t operator[](std::string_view column) const;
  std::size_t width() const noexcept { return width_; }

 private:
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t width_ = 0;
};

/// Builds CSV text row by row.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header);

  CsvWriter& field(std::string_view value);
  CsvWriter& field(double value);
  CsvWriter& field(long value);
  CsvWriter& field(int value) { return field(static_cast<long>(value)); }
  CsvWriter& field(std::size_t value) { return field(static_cast<long>(value)); }
  CsvWriter& empty();
  void end_row();

  const std::string& str() const noexcept { return out_; }

 private:
  void sep();
  std::string out_;
  bool row_started_ = false;
};

}  // namespace kspill::detail
