/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/kspill.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "kspill/corpus.hpp"
#include "kspill/geo.hpp"
#include "kspill/gravity.hpp"
#include "kspill/pipeline.hpp"
#include "kspill/territory.hpp"

struct kspill_config {
  kspill::RunConfig config;
  std::string output_dir;  // backing storage for kspill_config_output_dir
};

struct kspill_corpus {
  kspill::Corpus corpus;
  kspill::CorpusStats stats;
  std::size_t warnings = 0;
};

struct kspill_report {
  kspill::CommandReport report;
};

namespace {

thread_local std::string g_last_error;

kspill_status to_status(kspill::ErrorCode code) {
  using kspill::ErrorCode;
  switch (code) {
    case ErrorCode::Io: return KSPILL_ERR_IO;
    case ErrorCode::Schema: return KSPILL_ERR_SCHEMA;
    case ErrorCode::Duplicate: return KSPILL_ERR_DUPLICATE;
    case ErrorCode::Unmapped: return KSPILL_ERR_UNMAPPED;
    case ErrorCode::InvalidArgument: return KSPILL_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unfit: return KSPILL_ERR_UNFIT;
    case ErrorCode::Degenerate: return KSPILL_ERR_DEGENERATE;
    case ErrorCode::Infeasible: return KSPILL_ERR_INFEASIBLE;
  }
  return KSPILL_ERR_INTERNAL;
}

kspill_status fail(kspill_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs fn, translating exceptions into a status plus last-error text.
template <typename Fn>
kspill_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return KSPILL_OK;
  } catch (const kspill::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KSPILL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KSPILL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KSPILL_ERR_INTERNAL, "unknown error");
  }
}

kspill_status null_arg(const char* name) {
  return fail(KSPILL_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL");
}

}  // namespace

extern "C" {

const char* kspill_version(void) { return kspill::kVersion; }

const char* kspill_status_string(kspill_status status) {
  switch (status) {
    case KSPILL_OK: return "ok";
    case KSPILL_ERR_IO: return "io";
    case KSPILL_ERR_SCHEMA: return "schema";
    case KSPILL_ERR_DUPLICATE: return "duplicate";
    case KSPILL_ERR_UNMAPPED: return "unmapped";
    case KSPILL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case KSPILL_ERR_UNFIT: return "unfit";
    case KSPILL_ERR_DEGENERATE: return "degenerate";
    case KSPILL_ERR_INFEASIBLE: return "infeasible";
    case KSPILL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* kspill_last_error(void) { return g_last_error.c_str(); }

kspill_status kspill_geodesic_km(double lat_a, double lon_a, double lat_b, double lon_b,
                                 double* km_out) {
  if (km_out == nullptr) return null_arg("km_out");
  return guarded([&] {
    *km_out = kspill::geodesic_km(kspill::GeoPoint(lat_a, lon_a), kspill::GeoPoint(lat_b, lon_b));
  });
}

kspill_status kspill_normalize_address(const char* raw_city, const char* raw_country,
                                       char* city_out, size_t city_cap, char country_out[3]) {
  if (raw_city == nullptr) return null_arg("raw_city");
  if (raw_country == nullptr) return null_arg("raw_country");
  if (city_out == nullptr || city_cap == 0) return null_arg("city_out");
  if (country_out == nullptr) return null_arg("country_out");
  return guarded([&] {
    auto a = kspill::normalize_address(raw_city, raw_country);
    if (!a) {
      throw kspill::Error(kspill::ErrorCode::InvalidArgument,
                          "address is empty after normalization or has an unknown country");
    }
    if (a->city.size() + 1 > city_cap) {
      throw kspill::Error(kspill::ErrorCode::InvalidArgument,
                          "city_out needs " + std::to_string(a->city.size() + 1) + " bytes");
    }
    std::memcpy(city_out, a->city.c_str(), a->city.size() + 1);
    std::memcpy(country_out, a->country.c_str(), 3);
  });
}

kspill_status kspill_fit_loglog_ols(const kspill_observation* obs, size_t n, double significance,
                                    kspill_fit* out) {
  if (out == nullptr) return null_arg("out");
  if (obs == nullptr && n > 0) return null_arg("obs");
  return guarded([&] {
    std::vector<kspill::GravityObservation> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i] = {obs[i].c_ij, obs[i].m_i, obs[i].m_j, obs[i].d_km};
    const auto r = kspill::fit_loglog_ols(rows, significance);
    out->ln_k = r.ln_k;
    out->alpha = r.alpha;
    out->beta = r.beta;
    out->gamma = r.gamma;
    for (std::size_t k = 0; k < kspill::kNumRegressors; ++k) {
      out->std_errors[k] = r.std_errors[k];
      out->t_stats[k] = r.t_stats[k];
      out->p_values[k] = r.p_values[k];
    }
    out->r_squared = r.r_squared;
    out->n_obs = r.n_obs;
    out->significant_gamma = r.significant_gamma ? 1 : 0;
  });
}

kspill_status kspill_config_load(const char* path, kspill_config** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* c = new kspill_config{kspill::load_run_config(path), {}};
    c->output_dir = c->config.output_dir.string();
    *out = c;
  });
}

void kspill_config_free(kspill_config* config) { delete config; }

kspill_status kspill_config_set_self_policy(kspill_config* config, const char* policy) {
  if (config == nullptr) return null_arg("config");
  if (policy == nullptr) return null_arg("policy");
  auto p = kspill::parse_self_policy(policy);
  if (!p) {
    return fail(KSPILL_ERR_INVALID_ARGUMENT,
                std::string("self policy must be include, exclude or both, got '") + policy + "'");
  }
  config->config.self_policy = *p;
  return KSPILL_OK;
}

kspill_status kspill_config_set_scales(kspill_config* config, const char* scales) {
  if (config == nullptr) return null_arg("config");
  if (scales == nullptr) return null_arg("scales");
  return guarded([&] {
    std::vector<kspill::Scale> parsed;
    std::string text(scales);
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const std::string item =
          text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      auto s = kspill::parse_scale(item);
      if (!s) {
        throw kspill::Error(kspill::ErrorCode::InvalidArgument, "unknown scale '" + item + "'");
      }
      parsed.push_back(*s);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    kspill::RunConfig trial = config->config;
    trial.scales = parsed;
    trial.validate();
    config->config = std::move(trial);
  });
}

kspill_status kspill_config_set_output_dir(kspill_config* config, const char* dir) {
  if (config == nullptr) return null_arg("config");
  if (dir == nullptr || *dir == '\0') return null_arg("dir");
  return guarded([&] {
    config->config.output_dir = dir;
    config->output_dir = dir;
  });
}

const char* kspill_config_output_dir(const kspill_config* config) {
  return config == nullptr ? nullptr : config->output_dir.c_str();
}

kspill_status kspill_corpus_load(const kspill_config* config, kspill_corpus** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto& rc = config->config;
    rc.validate();
    kspill::Diagnostics diag;
    auto* c = new kspill_corpus;
    try {
      c->corpus = kspill::load_corpus(rc.inputs, {rc.cited_years, rc.citing_years}, diag);
      const auto assignments = kspill::assign_all(c->corpus, rc.home_country, rc.majority_rule);
      std::unordered_set<std::string> prevalent;
      for (const auto& [id, a] : assignments.cited) {
        if (a.prevalent) prevalent.insert(id);
      }
      c->stats = kspill::corpus_stats(c->corpus, prevalent);
      c->warnings = diag.size();
    } catch (...) {
      delete c;
      throw;
    }
    *out = c;
  });
}

kspill_status kspill_corpus_stats_get(const kspill_corpus* corpus, kspill_corpus_stats* out) {
  if (corpus == nullptr) return null_arg("corpus");
  if (out == nullptr) return null_arg("out");
  out->publications = corpus->stats.publications;
  out->cited_with_citations = corpus->stats.cited_with_citations;
  out->assigned = corpus->stats.assigned;
  out->citations = corpus->stats.citations;
  out->unique_citing = corpus->stats.unique_citing;
  out->warnings = corpus->warnings;
  return KSPILL_OK;
}

void kspill_corpus_free(kspill_corpus* corpus) { delete corpus; }

kspill_status kspill_validate(const kspill_config* config, kspill_report** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new kspill_report{kspill::cmd_validate(config->config)}; });
}

kspill_status kspill_run(const kspill_config* config, kspill_report** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* r = new kspill_report{kspill::cmd_run(config->config)};
    *out = r;
    if (r->report.error) throw kspill::Error(*r->report.error, r->report.text);
  });
}

kspill_status kspill_synth(const char* synth_config_path, const char* out_dir,
                           kspill_report** out) {
  if (synth_config_path == nullptr) return null_arg("synth_config_path");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* r = new kspill_report{
        kspill::cmd_synth(synth_config_path, out_dir == nullptr ? "" : out_dir)};
    *out = r;
    if (r->report.error) throw kspill::Error(*r->report.error, r->report.text);
  });
}

int kspill_report_exit_code(const kspill_report* report) {
  return report == nullptr ? -1 : report->report.exit_code;
}

const char* kspill_report_text(const kspill_report* report) {
  return report == nullptr ? nullptr : report->report.text.c_str();
}

void kspill_report_free(kspill_report* report) { delete report; }

}  // extern "C"
