/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "util.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include "kspill/error.hpp"

namespace kspill {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "io";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Duplicate: return "duplicate";
    case ErrorCode::Unmapped: return "unmapped";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Unfit: return "unfit";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Infeasible: return "infeasible";
  }
  return "unknown";
}

std::string format_warning(const Warning& w) {
  std::string out = w.source;
  if (w.line > 0) out += ":" + std::to_string(w.line);
  out += ": ";
  out += w.message;
  return out;
}

}  // namespace kspill

namespace kspill::detail {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool split_csv_line(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return !quoted;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_int(std::string_view text, long& out) {
  text = trim(text);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open " + path.string());
  }
  return in;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
  }
}

namespace {

std::string to_hex(const unsigned char* data, unsigned int len) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  return to_hex(md.data(), len);
}

std::string sha256_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

CsvHeader::CsvHeader(std::istream& in, std::string_view source,
                     std::initializer_list<std::string_view> required) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::Schema, std::string(source) + ": missing header line");
  }
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  std::vector<std::string> cols;
  split_csv_line(line, cols);
  width_ = cols.size();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    index_.emplace(std::string(trim(cols[i])), i);
  }
  std::string missing;
  for (auto name : required) {
    if (!index_.contains(name)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::Schema,
                std::string(source) + ": header lacks column(s) " + missing);
  }
}

std::size_t CsvHeader::operator[](std::string_view column) const {
  auto it = index_.find(column);
  if (it == index_.end()) {
    throw Error(ErrorCode::Schema, "unknown column " + std::string(column));
  }
  return it->second;
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header) {
  for (auto h : header) field(h);
  end_row();
}

void CsvWriter::sep() {
  if (row_started_) out_.push_back(',');
  row_started_ = true;
}

CsvWriter& CsvWriter::field(std::string_view value) {
  sep();
  out_ += csv_field(value);
  return *this;
}

CsvWriter& CsvWriter::field(double value) {
  sep();
  out_ += format_double(value);
  return *this;
}

CsvWriter& CsvWriter::field(long value) {
  sep();
  out_ += std::to_string(value);
  return *this;
}

CsvWriter& CsvWriter::empty() {
  sep();
  return *this;
}

void CsvWriter::end_row() {
  out_.push_back('\n');
  row_started_ = false;
}

}  // namespace kspill::detail
