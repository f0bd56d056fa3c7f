/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Independent reference computations. None of these share code with the
// library paths they check.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kspill/corpus.hpp"
#include "kspill/gravity.hpp"

namespace kspill::oracle {

inline constexpr double kRadiusKm = 6371.0088;

/// Spherical law of cosines; fine away from tiny angles.
inline double law_of_cosines_km(double lat1, double lon1, double lat2, double lon2) {
  const double r = std::numbers::pi / 180.0;
  const double c = std::sin(lat1 * r) * std::sin(lat2 * r) +
                   std::cos(lat1 * r) * std::cos(lat2 * r) * std::cos((lon2 - lon1) * r);
  return kRadiusKm * std::acos(std::max(-1.0, std::min(1.0, c)));
}

/// Solves (X'X) b = X'y for X = [1, ln M_i, ln M_j, ln d] by Gaussian
/// elimination with partial pivoting in long double. Returns the raw
/// coefficients {ln k, alpha, beta, coefficient on ln d}.
inline std::array<double, 4> normal_equations(std::span<const GravityObservation> obs) {
  long double a[4][5] = {};
  for (const auto& o : obs) {
    const long double x[4] = {1.0L, std::log((long double)o.m_i), std::log((long double)o.m_j),
                              std::log((long double)o.d_ij)};
    const long double y = std::log((long double)o.c_ij);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] += x[r] * x[c];
      a[r][4] += x[r] * y;
    }
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0L) throw std::runtime_error("singular normal equations");
    for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[pivot][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 4> b{};
  for (int r = 0; r < 4; ++r) b[r] = static_cast<double>(a[r][4] / a[r][r]);
  return b;
}

/// Citing mass by walking raw records: the SC profile from every link whose
/// cited side carries focal_sc, then the weighted count of citing records
/// for which in_territory(record) holds.
template <typename Pred>
double brute_citing_mass(const std::vector<PublicationRecord>& cited,
                         const std::vector<CitingRecord>& citing,
                         const std::vector<CitationLink>& links, const std::string& focal_sc,
                         Pred in_territory) {
  std::map<std::string, double> profile;
  double total = 0;
  for (const auto& l : links) {
    const PublicationRecord* p = nullptr;
    for (const auto& c : cited) {
      if (c.pub_id == l.cited_id) p = &c;
    }
    const CitingRecord* q = nullptr;
    for (const auto& c : citing) {
      if (c.pub_id == l.citing_id) q = &c;
    }
    if (p == nullptr || q == nullptr) continue;
    bool focal = false;
    for (const auto& s : p->sc_codes) focal = focal || s == focal_sc;
    if (!focal) continue;
    for (const auto& s : q->sc_codes) {
      profile[s] += 1;
      total += 1;
    }
  }
  double mass = 0;
  for (const auto& q : citing) {
    if (!in_territory(q)) continue;
    for (const auto& s : q.sc_codes) {
      auto it = profile.find(s);
      if (it != profile.end()) mass += it->second / total;
    }
  }
  return mass;
}

}  // namespace kspill::oracle
