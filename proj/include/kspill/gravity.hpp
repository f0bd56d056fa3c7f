/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Log-log gravity model
//
//   ln C_ij = ln k + alpha ln M_i + beta ln M_j - gamma ln d_ij + e
//
// estimated by ordinary least squares. gamma is reported positive when
// flows decay with distance; the raw regression coefficient on ln d is
// -gamma and is exposed as coef_ln_d().

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kspill {

struct GravityObservation {
  double c_ij = 0.0;  // citations (an integer count when built from a corpus)
  double m_i = 0.0;
  double m_j = 0.0;
  double d_ij = 0.0;  // km
};

/// Design matrix column order.
enum Regressor : std::size_t { kIntercept = 0, kLnMi = 1, kLnMj = 2, kLnD = 3 };
inline constexpr std::size_t kNumRegressors = 4;
inline constexpr std::size_t kMinObservations = kNumRegressors + 1;

const char* regressor_name(std::size_t column) noexcept;

struct RegressionResult {
  double ln_k = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Indexed by Regressor. The ln d entries refer to gamma, so t_stats[kLnD]
  // is gamma / se and carries gamma's sign.
  std::array<double, kNumRegressors> std_errors{};
  std::array<double, kNumRegressors> t_stats{};
  std::array<double, kNumRegressors> p_values{};
  double r_squared = 0.0;
  double residual_variance = 0.0;
  std::size_t n_obs = 0;
  bool significant_gamma = false;

  double coef_ln_d() const noexcept { return -gamma; }
  std::array<double, kNumRegressors> coefficients() const noexcept {
    return {ln_k, alpha, beta, -gamma};
  }
};

/// Householder-QR least squares with classical homoskedastic inference and
/// two-sided Student-t p-values.
///
/// Throws Error(Unfit) with fewer than kMinObservations rows,
/// Error(InvalidArgument) when any variable is not strictly positive, and
/// Error(Degenerate) naming the collinear columns when the design matrix is
/// rank deficient.
RegressionResult fit_loglog_ols(std::span<const GravityObservation> observations,
                                double significance_level = 0.05);

/// Residuals ln C - X b for a fitted model, in observation order.
std::vector<double> loglog_residuals(std::span<const GravityObservation> observations,
                                     const RegressionResult& fit);

}  // namespace kspill
