/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kspill {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat_(lat_deg), lon_(lon_deg) {
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0) || !(lon_deg >= -180.0 && lon_deg <= 180.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "coordinates out of range: (" + std::to_string(lat_deg) + ", " +
                    std::to_string(lon_deg) + ")");
  }
}

double geodesic_km(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat_deg() * kDegToRad;
  const double phi2 = b.lat_deg() * kDegToRad;
  const double s_dphi = std::sin((phi2 - phi1) / 2.0);
  const double s_dlam = std::sin((b.lon_deg() - a.lon_deg()) * kDegToRad / 2.0);
  // Both squares are even in the sign of the difference and the cosine
  // product commutes, so swapping a and b gives the same bits.
  double h = s_dphi * s_dphi + std::cos(phi1) * std::cos(phi2) * s_dlam * s_dlam;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double pair_distance(const TerritoryEntry& cited, const TerritoryEntry& citing,
                     TerritoryKind citing_level) {
  if (cited.kind != TerritoryKind::Lau) {
    throw Error(ErrorCode::InvalidArgument,
                "cited territory '" + cited.territory_id + "' is not an LAU");
  }
  if (citing.kind != citing_level) {
    throw Error(ErrorCode::InvalidArgument,
                "citing territory '" + citing.territory_id + "' is " + to_string(citing.kind) +
                    ", expected " + to_string(citing_level));
  }
  return geodesic_km(GeoPoint(cited.lat, cited.lon), GeoPoint(citing.lat, citing.lon));
}

}  // namespace kspill
