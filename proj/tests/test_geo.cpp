/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kspill/geo.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kspill;
using namespace kspill::test;

namespace {
const GeoPoint kRome(41.8931, 12.4828);
const GeoPoint kLondon(51.5072, -0.1275);
const GeoPoint kNewYork(40.7128, -74.0060);
const GeoPoint kTokyo(35.6897, 139.6922);
const GeoPoint kBeijing(39.9042, 116.4074);
const GeoPoint kCatania(37.5021, 15.0872);
const GeoPoint kAosta(45.7370, 7.3201);

bool within(double value, double target, double rel) {
  return std::fabs(value - target) <= rel * target;
}
}  // namespace

TEST_CASE("geodesic anchors") {
  CHECK(geodesic_km(kRome, kRome) == 0.0);
  CHECK(within(geodesic_km(kRome, kLondon), 1434, 0.01));
  CHECK(within(geodesic_km(kRome, kNewYork), 6891, 0.01));
  CHECK(within(geodesic_km(kRome, kTokyo), 9874, 0.01));
  CHECK(within(geodesic_km(kRome, kBeijing), 8139, 0.01));
  CHECK(within(geodesic_km(kCatania, kAosta), 1119, 0.015));
}

TEST_CASE("geodesic properties on random points") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  const double bound = std::numbers::pi * kEarthRadiusKm;
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint a(lat(gen), lon(gen)), b(lat(gen), lon(gen)), c(lat(gen), lon(gen));
    const double ab = geodesic_km(a, b);
    CHECK(ab == geodesic_km(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= bound + 1e-9);
    CHECK(ab <= geodesic_km(a, c) + geodesic_km(c, b) + 1e-6);
    if (ab > 10.0) {
      CHECK(ab == doctest::Approx(oracle::law_of_cosines_km(a.lat_deg(), a.lon_deg(),
                                                             b.lat_deg(), b.lon_deg()))
                      .epsilon(1e-9));
    }
  }
}

TEST_CASE("tiny separations stay finite and positive") {
  for (double eps : {1e-5, 1e-7, 1e-9, 1e-11}) {
    const double d = geodesic_km(GeoPoint(45.0, 9.0), GeoPoint(45.0 + eps, 9.0 + eps));
    CHECK(std::isfinite(d));
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
  // one degree of latitude
  CHECK(geodesic_km(GeoPoint(10, 20), GeoPoint(11, 20)) ==
        doctest::Approx(kEarthRadiusKm * std::numbers::pi / 180.0).epsilon(1e-12));
  CHECK(geodesic_km(GeoPoint(0, 0), GeoPoint(0, 180)) ==
        doctest::Approx(std::numbers::pi * kEarthRadiusKm));
}

TEST_CASE("GeoPoint validates its range") {
  CHECK_THROWS_AS(GeoPoint(90.5, 0), Error);
  CHECK_THROWS_AS(GeoPoint(0, -180.1), Error);
  CHECK_THROWS_AS(GeoPoint(std::nan(""), 0), Error);
  CHECK_NOTHROW(GeoPoint(-90, 180));
}

TEST_CASE("pair_distance") {
  const auto gaz = sample_gazetteer();
  CHECK(pair_distance(gaz.at("ROM"), gaz.at("ROM"), TerritoryKind::Lau) == 0.0);
  CHECK(pair_distance(gaz.at("ROM"), *gaz.country("GB"), TerritoryKind::Country) ==
        geodesic_km(kRome, kLondon));
  const auto& mil = gaz.at("MIL");
  const auto& tur = gaz.at("TUR");
  CHECK(pair_distance(mil, tur, TerritoryKind::Lau) ==
        doctest::Approx(oracle::law_of_cosines_km(mil.lat, mil.lon, tur.lat, tur.lon))
            .epsilon(1e-9));
  CHECK_THROWS_AS(pair_distance(gaz.at("ROM"), *gaz.country("GB"), TerritoryKind::Lau), Error);
  CHECK_THROWS_AS(pair_distance(*gaz.country("GB"), gaz.at("ROM"), TerritoryKind::Lau), Error);
}
