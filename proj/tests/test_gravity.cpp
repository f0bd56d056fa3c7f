/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "kspill/gravity.hpp"
#include "kspill/series.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "synth_pipeline.hpp"

using namespace kspill;
using namespace kspill::test;

namespace {

std::vector<GravityObservation> planted(int n, double lnk, double a, double b, double g,
                                        double sigma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> mass(1.0, 500.0), dist(5.0, 1200.0);
  std::normal_distribution<double> noise(0.0, sigma > 0 ? sigma : 1.0);
  std::vector<GravityObservation> out;
  for (int k = 0; k < n; ++k) {
    GravityObservation o{0, mass(gen), mass(gen), dist(gen)};
    const double e = sigma > 0 ? noise(gen) : 0.0;
    o.c_ij = std::exp(lnk + a * std::log(o.m_i) + b * std::log(o.m_j) - g * std::log(o.d_ij) + e);
    out.push_back(o);
  }
  return out;
}

// Twelve rows fitted with statsmodels OLS on [1, ln mi, ln mj, ln d].
const std::vector<GravityObservation> kReference = {
    {12, 30, 40, 100}, {7, 25, 60, 250},  {30, 80, 45, 60},  {4, 10, 20, 400},
    {15, 50, 50, 180}, {9, 35, 15, 90},   {22, 60, 70, 300}, {3, 12, 30, 700},
    {18, 45, 90, 220}, {6, 20, 25, 150},  {11, 40, 35, 500}, {27, 90, 60, 120},
};

}  // namespace

TEST_CASE("noise-free data is recovered exactly") {
  const auto obs = planted(200, 0.0, 0.8, 0.9, 0.5, 0.0, 5);
  const auto fit = fit_loglog_ols(obs);
  CHECK(std::fabs(fit.ln_k) <= 1e-8);
  CHECK(std::fabs(fit.alpha - 0.8) <= 1e-8);
  CHECK(std::fabs(fit.beta - 0.9) <= 1e-8);
  CHECK(std::fabs(fit.gamma - 0.5) <= 1e-8);
  CHECK(fit.coef_ln_d() == -fit.gamma);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_obs == 200);
}

TEST_CASE("matches a statsmodels reference fit") {
  const auto fit = fit_loglog_ols(kReference);
  const std::array<double, 4> params = {-0.724878998559511, 0.8515305773282477,
                                        0.22650302276562229, -0.13662883004308163};
  const std::array<double, 4> bse = {0.7096544100309211, 0.131458436571869,
                                     0.14043335062176945, 0.09962431967002121};
  const std::array<double, 4> tv = {-1.021453524861385, 6.477565073297608, 1.612886267847195,
                                    -1.3714405327497132};
  const std::array<double, 4> pv = {0.3369321205211452, 0.00019261020294409977,
                                    0.14543385058818065, 0.2074687038463312};
  const auto coef = fit.coefficients();
  for (std::size_t k = 0; k < 4; ++k) {
    CAPTURE(k);
    CHECK(coef[k] == doctest::Approx(params[k]).epsilon(1e-10));
    CHECK(fit.std_errors[k] == doctest::Approx(bse[k]).epsilon(1e-10));
    // t for ln d refers to gamma, the opposite sign of the raw coefficient
    CHECK(fit.t_stats[k] == doctest::Approx(k == kLnD ? -tv[k] : tv[k]).epsilon(1e-10));
    CHECK(fit.p_values[k] == doctest::Approx(pv[k]).epsilon(1e-8));
  }
  CHECK(fit.gamma == doctest::Approx(0.13662883004308163).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(0.9577684307221562).epsilon(1e-12));
  CHECK(fit.residual_variance == doctest::Approx(0.03147565707544088).epsilon(1e-10));
  CHECK_FALSE(fit.significant_gamma);
}

TEST_CASE("QR estimates agree with the normal-equations oracle") {
  std::vector<std::vector<GravityObservation>> fixtures = {kReference};
  for (std::uint64_t s = 1; s <= 30; ++s) {
    fixtures.push_back(planted(5 + static_cast<int>(s * 7), 0.3, 0.8, 0.9, 0.5, 0.3, s));
  }
  for (const auto& obs : fixtures) {
    const auto fit = fit_loglog_ols(obs);
    const auto ref = oracle::normal_equations(obs);
    const auto coef = fit.coefficients();
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::fabs(coef[k] - ref[k]) <= 1e-8);
  }
}

TEST_CASE("rescaling distance moves only the intercept") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto obs = planted(300, 0.0, 0.8, 0.9, 0.5, 0.3, s);
    const auto a = fit_loglog_ols(obs);
    for (auto& o : obs) o.d_ij *= 10.0;
    const auto b = fit_loglog_ols(obs);
    CHECK(std::fabs(a.alpha - b.alpha) <= 1e-9);
    CHECK(std::fabs(a.beta - b.beta) <= 1e-9);
    CHECK(std::fabs(a.gamma - b.gamma) <= 1e-9);
    CHECK(b.ln_k == doctest::Approx(a.ln_k + a.gamma * std::log(10.0)).epsilon(1e-9));
  }
}

TEST_CASE("residuals are orthogonal to every regressor") {
  const auto obs = planted(500, 1.0, 0.7, 1.1, 0.4, 0.5, 21);
  const auto fit = fit_loglog_ols(obs);
  const auto res = loglog_residuals(obs, fit);
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    s0 += res[k];
    s1 += res[k] * std::log(obs[k].m_i);
    s2 += res[k] * std::log(obs[k].m_j);
    s3 += res[k] * std::log(obs[k].d_ij);
  }
  CHECK(std::fabs(s0) <= 1e-8);
  CHECK(std::fabs(s1) <= 1e-8);
  CHECK(std::fabs(s2) <= 1e-8);
  CHECK(std::fabs(s3) <= 1e-8);
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(fit.std_errors[k] > 0.0);
    CHECK(fit.p_values[k] >= 0.0);
    CHECK(fit.p_values[k] <= 1.0);
  }
}

TEST_CASE("duplicating an observation keeps the point estimates") {
  auto obs = planted(60, 0.0, 0.8, 0.9, 0.5, 0.3, 8);
  const auto a = fit_loglog_ols(obs);
  obs.push_back(obs[17]);
  const auto b = fit_loglog_ols(obs);
  // OLS weights the duplicated row twice, so estimates move slightly; they
  // stay equal only when that row already sits on the fitted plane.
  auto exact = planted(60, 0.0, 0.8, 0.9, 0.5, 0.0, 8);
  const auto c = fit_loglog_ols(exact);
  exact.push_back(exact[17]);
  const auto d = fit_loglog_ols(exact);
  CHECK(std::fabs(c.gamma - d.gamma) <= 1e-9);
  CHECK(std::fabs(c.alpha - d.alpha) <= 1e-9);
  CHECK(b.n_obs == a.n_obs + 1);
}

TEST_CASE("fit errors") {
  SUBCASE("too few rows") {
    const auto obs = planted(4, 0, 0.8, 0.9, 0.5, 0.3, 1);
    try {
      fit_loglog_ols(obs);
      FAIL("expected Unfit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unfit);
    }
  }
  SUBCASE("constant distance is collinear with the intercept") {
    auto obs = planted(50, 0, 0.8, 0.9, 0.5, 0.3, 1);
    for (auto& o : obs) o.d_ij = 250.0;
    try {
      fit_loglog_ols(obs);
      FAIL("expected Degenerate");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Degenerate);
      CHECK(std::string(e.what()).find("ln_d") != std::string::npos);
      CHECK(std::string(e.what()).find("intercept") != std::string::npos);
    }
  }
  SUBCASE("non-positive values") {
    auto obs = planted(50, 0, 0.8, 0.9, 0.5, 0.3, 1);
    obs[3].m_j = 0.0;
    CHECK_THROWS_AS(fit_loglog_ols(obs), Error);
  }
}

TEST_CASE("coefficient_series: window-independent gamma gives a flat series") {
  SynthConfig cfg;
  cfg.seed = 4;
  const auto run = run_synth(cfg);
  const auto s = overall_series(run, {3, 4, 5, 6, 7, 8});
  REQUIRE(s.points.size() == 6);
  for (const auto& p : s.points) {
    CAPTURE(p.window);
    REQUIRE(p.status == CellStatus::Ok);
    CHECK(std::fabs(p.fit->gamma - cfg.gamma) < 3.0 * p.fit->std_errors[kLnD]);
    CHECK(p.fit->significant_gamma);
  }
}

TEST_CASE("coefficient_series: gamma decaying with delay drifts toward zero") {
  SynthConfig cfg;
  cfg.seed = 4;
  cfg.gamma = 0.6;
  cfg.gamma_delay_slope = -0.08;
  const auto run = run_synth(cfg);
  const auto s = overall_series(run, {2, 4, 6, 8});
  REQUIRE(s.points.size() == 4);
  for (std::size_t k = 1; k < s.points.size(); ++k) {
    REQUIRE(s.points[k].status == CellStatus::Ok);
    CHECK(s.points[k].fit->gamma < s.points[k - 1].fit->gamma);
  }
}

TEST_CASE("coefficient_series records gaps and validates windows") {
  Diagnostics diag;
  Corpus c({cited_pub("P1", 2010, {"A"}, {author("k", {addr("rome")})})},
           {citing_pub("Q1", 2013, {"A"}, {addr("turin")})}, {{"Q1", "P1"}}, sample_gazetteer(),
           sample_mapping(), diag);
  const MassTable masses(c, assign_all(c, "IT"));
  CitationEvent e;
  e.focal_sc = "A";
  e.da = "Natural sciences";
  e.cited_territory = "ROM";
  e.citing_territory = "TUR";
  e.distance_km = 525.0;
  e.delay_years = 3;
  std::vector<CitationEvent> events = {e};

  SeriesRequest req;
  req.windows = {1, 4};
  req.grouping = SeriesGrouping::Da;
  const auto s = coefficient_series(events, masses, c.sc_to_da(), req);
  REQUIRE(s.size() == 1);
  CHECK(s[0].group == "da:Natural sciences");
  REQUIRE(s[0].points.size() == 2);
  CHECK(s[0].points[0].n_obs == 0);
  CHECK(s[0].points[0].status == CellStatus::Unfit);
  CHECK(s[0].points[1].n_obs == 1);
  CHECK(s[0].points[1].status == CellStatus::Unfit);
  CHECK_FALSE(s[0].points[1].fit);

  req.windows = {};
  CHECK_THROWS_AS(coefficient_series(events, masses, c.sc_to_da(), req), Error);
  req.windows = {2, 2};
  CHECK_THROWS_AS(coefficient_series(events, masses, c.sc_to_da(), req), Error);
  req.windows = {0, 1};
  CHECK_THROWS_AS(coefficient_series(events, masses, c.sc_to_da(), req), Error);
}
