/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "kspill/corpus.hpp"
#include "kspill/error.hpp"

namespace kspill::detail {

inline toml::table parse_toml(std::string_view text, std::string_view source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    const auto& where = e.source().begin;
    throw Error(ErrorCode::InvalidArgument,
                std::string(source) + ":" + std::to_string(where.line) + ":" +
                    std::to_string(where.column) + ": " + std::string(e.description()));
  }
}

/// Rejects keys outside `allowed` so typos do not silently fall back to
/// defaults.
inline void check_keys(const toml::table& t, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, node] : t) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key.str() == a;
    if (!ok) {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown key '" + std::string(key.str()) + "' in " + std::string(where));
    }
  }
}

[[noreturn]] inline void bad_type(std::string_view key, std::string_view expected) {
  throw Error(ErrorCode::InvalidArgument,
              "config key '" + std::string(key) + "' must be " + std::string(expected));
}

template <typename T>
void read_number(const toml::table& t, std::string_view key, T& out) {
  const auto* node = t.get(key);
  if (node == nullptr) return;
  if constexpr (std::is_floating_point_v<T>) {
    if (auto v = node->value<double>()) {
      out = static_cast<T>(*v);
      return;
    }
    bad_type(key, "a number");
  } else {
    if (auto v = node->value<std::int64_t>()) {
      out = static_cast<T>(*v);
      return;
    }
    bad_type(key, "an integer");
  }
}

inline void read_string(const toml::table& t, std::string_view key, std::string& out) {
  const auto* node = t.get(key);
  if (node == nullptr) return;
  if (auto v = node->value<std::string>()) {
    out = *v;
    return;
  }
  bad_type(key, "a string");
}

inline void read_bool(const toml::table& t, std::string_view key, bool& out) {
  const auto* node = t.get(key);
  if (node == nullptr) return;
  if (auto v = node->value<bool>()) {
    out = *v;
    return;
  }
  bad_type(key, "a boolean");
}

template <typename T>
void read_array(const toml::table& t, std::string_view key, std::vector<T>& out) {
  const auto* node = t.get(key);
  if (node == nullptr) return;
  const auto* arr = node->as_array();
  if (arr == nullptr) bad_type(key, "an array");
  std::vector<T> values;
  for (const auto& el : *arr) {
    if constexpr (std::is_same_v<T, std::string>) {
      auto v = el.value<std::string>();
      if (!v) bad_type(key, "an array of strings");
      values.push_back(*v);
    } else if constexpr (std::is_floating_point_v<T>) {
      auto v = el.value<double>();
      if (!v) bad_type(key, "an array of numbers");
      values.push_back(static_cast<T>(*v));
    } else {
      auto v = el.value<std::int64_t>();
      if (!v) bad_type(key, "an array of integers");
      values.push_back(static_cast<T>(*v));
    }
  }
  out = std::move(values);
}

inline void read_year_range(const toml::table& t, std::string_view key, YearRange& out) {
  std::vector<int> v;
  read_array(t, key, v);
  if (v.empty()) {
    if (t.get(key) != nullptr) bad_type(key, "[first_year, last_year]");
    return;
  }
  if (v.size() != 2 || v[0] > v[1]) bad_type(key, "[first_year, last_year]");
  out = YearRange{v[0], v[1]};
}

template <typename T>
void read_pair(const toml::table& t, std::string_view key, T& lo, T& hi) {
  std::vector<T> v;
  read_array(t, key, v);
  if (t.get(key) == nullptr) return;
  if (v.size() != 2 || v[0] > v[1]) bad_type(key, "[min, max]");
  lo = v[0];
  hi = v[1];
}

}  // namespace kspill::detail
