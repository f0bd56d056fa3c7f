/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "kspill/error.hpp"

namespace kspill {
namespace {

constexpr std::size_t P = kNumRegressors;

// |R_kk| below this fraction of the original column norm means column k is
// (numerically) a combination of the columns before it.
constexpr double kRankTolerance = 1e-9;

using Column = std::vector<double>;

std::array<double, P> design_row(const GravityObservation& o) {
  return {1.0, std::log(o.m_i), std::log(o.m_j), std::log(o.d_ij)};
}

void check_observation(const GravityObservation& o, std::size_t row) {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(o.c_ij) || !ok(o.m_i) || !ok(o.m_j) || !ok(o.d_ij)) {
    throw Error(ErrorCode::InvalidArgument,
                "observation " + std::to_string(row) +
                    " is not log-transformable (all of c_ij, m_i, m_j, d_ij must be > 0)");
  }
}

double norm(const Column& v, std::size_t from) {
  double scale = 0.0, ssq = 1.0;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double a = std::abs(v[i]);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

// Applies H = I - beta v v^T (v supported on rows >= k) to column a.
void reflect(const Column& v, double beta, std::size_t k, Column& a) {
  double dot = 0.0;
  for (std::size_t i = k; i < a.size(); ++i) dot += v[i] * a[i];
  const double s = beta * dot;
  for (std::size_t i = k; i < a.size(); ++i) a[i] -= s * v[i];
}

[[noreturn]] void throw_degenerate(std::size_t k, const std::array<Column, P>& a,
                                   const std::array<double, P>& col_norm) {
  std::string msg = "design matrix is rank deficient: column ";
  msg += regressor_name(k);
  if (col_norm[k] == 0.0) {
    msg += " is identically zero";
    throw Error(ErrorCode::Degenerate, msg);
  }
  // Express column k through the earlier columns: R[0:k,0:k] c = R[0:k,k].
  std::array<double, P> c{};
  for (std::size_t ii = k; ii-- > 0;) {
    double s = a[k][ii];
    for (std::size_t j = ii + 1; j < k; ++j) s -= a[j][ii] * c[j];
    c[ii] = s / a[ii][ii];
  }
  std::string with;
  for (std::size_t j = 0; j < k; ++j) {
    if (std::abs(c[j]) > 1e-8) {
      if (!with.empty()) with += ", ";
      with += regressor_name(j);
    }
  }
  msg += " is collinear with " + (with.empty() ? std::string("earlier columns") : with);
  throw Error(ErrorCode::Degenerate, msg);
}

struct TStat {
  double t;
  double p;
};

TStat t_test(double estimate, double se, double df) {
  if (se == 0.0) {
    if (estimate == 0.0) return {0.0, 1.0};
    return {std::copysign(std::numeric_limits<double>::infinity(), estimate), 0.0};
  }
  const double t = estimate / se;
  if (!std::isfinite(t)) return {t, 0.0};
  boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {t, std::clamp(p, 0.0, 1.0)};
}

}  // namespace

const char* regressor_name(std::size_t column) noexcept {
  switch (column) {
    case kIntercept: return "intercept";
    case kLnMi: return "ln_m_i";
    case kLnMj: return "ln_m_j";
    case kLnD: return "ln_d";
  }
  return "?";
}

RegressionResult fit_loglog_ols(std::span<const GravityObservation> observations,
                                double significance_level) {
  const std::size_t n = observations.size();
  if (n < kMinObservations) {
    throw Error(ErrorCode::Unfit, "need at least " + std::to_string(kMinObservations) +
                                      " observations, got " + std::to_string(n));
  }
  if (!(significance_level > 0.0 && significance_level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "significance level must be in (0, 1)");
  }

  std::array<Column, P> a;
  for (auto& col : a) col.resize(n);
  Column y(n);
  for (std::size_t i = 0; i < n; ++i) {
    check_observation(observations[i], i);
    const auto row = design_row(observations[i]);
    for (std::size_t k = 0; k < P; ++k) a[k][i] = row[k];
    y[i] = std::log(observations[i].c_ij);
  }
  const Column y_orig = y;
  std::array<double, P> col_norm{};
  for (std::size_t k = 0; k < P; ++k) col_norm[k] = norm(a[k], 0);

  // Householder QR: a becomes R in its upper triangle, y becomes Q^T y.
  Column v(n);
  for (std::size_t k = 0; k < P; ++k) {
    const double nx = norm(a[k], k);
    if (col_norm[k] == 0.0 || nx <= kRankTolerance * col_norm[k]) {
      throw_degenerate(k, a, col_norm);
    }
    const double alpha = a[k][k] >= 0.0 ? -nx : nx;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = k; i < n; ++i) v[i] = a[k][i];
    v[k] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = k; i < n; ++i) vtv += v[i] * v[i];
    const double beta = 2.0 / vtv;
    for (std::size_t j = k; j < P; ++j) reflect(v, beta, k, a[j]);
    reflect(v, beta, k, y);
    a[k][k] = alpha;
    for (std::size_t i = k + 1; i < n; ++i) a[k][i] = 0.0;
  }

  // Back substitution R b = (Q^T y)[0:P].
  std::array<double, P> b{};
  for (std::size_t i = P; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < P; ++j) s -= a[j][i] * b[j];
    b[i] = s / a[i][i];
  }

  // Residuals from the original data rather than the tail of Q^T y so the
  // reported fit is checked against what the caller passed in.
  double rss = 0.0, mean_y = 0.0;
  for (double yi : y_orig) mean_y += yi;
  mean_y /= static_cast<double>(n);
  double tss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = design_row(observations[i]);
    double fitted = 0.0;
    for (std::size_t k = 0; k < P; ++k) fitted += row[k] * b[k];
    const double r = y_orig[i] - fitted;
    rss += r * r;
    tss += (y_orig[i] - mean_y) * (y_orig[i] - mean_y);
  }
  const double df = static_cast<double>(n - P);
  const double sigma2 = rss / df;

  // (X^T X)^-1 = R^-1 R^-T
  std::array<std::array<double, P>, P> rinv{};
  for (std::size_t j = 0; j < P; ++j) {
    rinv[j][j] = 1.0 / a[j][j];
    for (std::size_t i = j; i-- > 0;) {
      double s = 0.0;
      for (std::size_t m = i + 1; m <= j; ++m) s += a[m][i] * rinv[m][j];
      rinv[i][j] = -s / a[i][i];
    }
  }

  RegressionResult out;
  out.ln_k = b[kIntercept];
  out.alpha = b[kLnMi];
  out.beta = b[kLnMj];
  out.gamma = -b[kLnD];
  out.n_obs = n;
  out.residual_variance = sigma2;
  out.r_squared = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
  const std::array<double, P> estimates = {out.ln_k, out.alpha, out.beta, out.gamma};
  for (std::size_t k = 0; k < P; ++k) {
    double var = 0.0;
    for (std::size_t m = k; m < P; ++m) var += rinv[k][m] * rinv[k][m];
    out.std_errors[k] = std::sqrt(sigma2 * var);
    const auto tt = t_test(estimates[k], out.std_errors[k], df);
    out.t_stats[k] = tt.t;
    out.p_values[k] = tt.p;
  }
  out.significant_gamma = out.p_values[kLnD] < significance_level;
  return out;
}

std::vector<double> loglog_residuals(std::span<const GravityObservation> observations,
                                     const RegressionResult& fit) {
  const auto b = fit.coefficients();
  std::vector<double> r;
  r.reserve(observations.size());
  for (const auto& o : observations) {
    const auto row = design_row(o);
    double fitted = 0.0;
    for (std::size_t k = 0; k < P; ++k) fitted += row[k] * b[k];
    r.push_back(std::log(o.c_ij) - fitted);
  }
  return r;
}

}  // namespace kspill
