/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "kspill/corpus.hpp"

namespace kspill {

/// Mean Earth radius (IUGG), km.
inline constexpr double kEarthRadiusKm = 6371.0088;

class GeoPoint {
 public:
  /// Throws Error(InvalidArgument) outside lat [-90, 90], lon [-180, 180].
  GeoPoint(double lat_deg, double lon_deg);

  double lat_deg() const noexcept { return lat_; }
  double lon_deg() const noexcept { return lon_; }

 private:
  double lat_;
  double lon_;
};

/// Great-circle distance on the sphere of radius kEarthRadiusKm (haversine,
/// stable for small separations). Symmetric bit-for-bit.
double geodesic_km(const GeoPoint& a, const GeoPoint& b);

/// Distance for one cited/citing territory pair. The cited side must be an
/// LAU; the citing side must be an LAU at national scale and a COUNTRY
/// (capital coordinates) otherwise. Throws Error(InvalidArgument) on a kind
/// mismatch.
double pair_distance(const TerritoryEntry& cited, const TerritoryEntry& citing,
                     TerritoryKind citing_level);

}  // namespace kspill
