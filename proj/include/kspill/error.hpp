/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kspill {

enum class ErrorCode {
  Io,
  Schema,
  Duplicate,
  Unmapped,
  InvalidArgument,
  Unfit,
  Degenerate,
  Infeasible,
};

const char* to_string(ErrorCode code) noexcept;

/// Hard error raised by the core. Recoverable per-record problems go to
/// Diagnostics instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Warning {
  std::string source;  // file name or component
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

/// Collects soft problems (rejected lines, unresolved addresses, dropped
/// links) so callers can report them without aborting.
class Diagnostics {
 public:
  void warn(std::string source, std::size_t line, std::string message) {
    warnings_.push_back({std::move(source), line, std::move(message)});
  }
  void warn(std::string source, std::string message) {
    warn(std::move(source), 0, std::move(message));
  }
  const std::vector<Warning>& warnings() const noexcept { return warnings_; }
  std::size_t size() const noexcept { return warnings_.size(); }
  bool empty() const noexcept { return warnings_.empty(); }
  void merge(const Diagnostics& other) {
    warnings_.insert(warnings_.end(), other.warnings_.begin(),
                     other.warnings_.end());
  }

 private:
  std::vector<Warning> warnings_;
};

std::string format_warning(const Warning& w);

}  // namespace kspill
