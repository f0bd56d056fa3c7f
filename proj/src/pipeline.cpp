/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "kspill/cognitive_mass.hpp"
#include "kspill/flows.hpp"
#include "kspill/series.hpp"
#include "kspill/synth.hpp"
#include "toml_util.hpp"
#include "util.hpp"

namespace kspill {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const char* to_string(SelfPolicy policy) noexcept {
  switch (policy) {
    case SelfPolicy::Include: return "include";
    case SelfPolicy::Exclude: return "exclude";
    case SelfPolicy::Both: return "both";
  }
  return "?";
}

std::optional<SelfPolicy> parse_self_policy(std::string_view text) {
  if (text == "include") return SelfPolicy::Include;
  if (text == "exclude") return SelfPolicy::Exclude;
  if (text == "both") return SelfPolicy::Both;
  return std::nullopt;
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "run config: " + what);
}

bool is_country_code(const std::string& code) {
  return code.size() == 2 && std::isupper(static_cast<unsigned char>(code[0])) &&
         std::isupper(static_cast<unsigned char>(code[1]));
}

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::vector<bool> policies(SelfPolicy policy) {
  switch (policy) {
    case SelfPolicy::Include: return {true};
    case SelfPolicy::Exclude: return {false};
    case SelfPolicy::Both: return {true, false};
  }
  return {};
}

const char* policy_name(bool include_self) { return include_self ? "include" : "exclude"; }

const std::set<std::string>& continent_of(const RunConfig& config) {
  return config.continent.empty() ? european_countries() : config.continent;
}

LoadOptions load_options(const RunConfig& config) {
  return LoadOptions{config.cited_years, config.citing_years};
}

/// One warning per distinct address the gazetteer cannot place.
void check_resolution(const Corpus& corpus, const std::string& home, Diagnostics& diag) {
  const auto& gaz = corpus.gazetteer();
  std::set<Address> unmatched_lau, unmatched_country;
  for (const auto& p : corpus.cited()) {
    for (const auto& a : p.authors) {
      for (const auto& addr : a.affiliations) {
        if (gaz.resolve(addr, TerritoryKind::Lau) == nullptr) unmatched_lau.insert(addr);
      }
    }
  }
  for (const auto& c : corpus.citing()) {
    for (const auto& addr : c.addresses) {
      if (gaz.resolve(addr, TerritoryKind::Country) == nullptr) {
        unmatched_country.insert(addr);
      } else if (addr.country == home && gaz.resolve(addr, TerritoryKind::Lau) == nullptr) {
        unmatched_lau.insert(addr);
      }
    }
  }
  for (const auto& a : unmatched_lau) {
    diag.warn("gazetteer", "no LAU for city '" + a.city + "' (" + a.country + ")");
  }
  for (const auto& a : unmatched_country) {
    diag.warn("gazetteer", "no COUNTRY entry for '" + a.country + "' (city '" + a.city + "')");
  }
}

void append_warnings(std::string& text, const Diagnostics& diag) {
  for (const auto& w : diag.warnings()) text += "warning: " + format_warning(w) + "\n";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

ordered_json config_json(const RunConfig& c) {
  ordered_json scales = ordered_json::array();
  for (Scale s : c.scales) scales.push_back(to_string(s));
  return ordered_json{
      {"home_country", c.home_country},
      {"continent", std::vector<std::string>(continent_of(c).begin(), continent_of(c).end())},
      {"continental_includes_home", c.continental_includes_home},
      {"majority_rule", to_string(c.majority_rule)},
      {"cited_years", {c.cited_years.min, c.cited_years.max}},
      {"citing_years", {c.citing_years.min, c.citing_years.max}},
      {"windows", c.windows},
      {"max_delay", c.max_delay},
      {"self_policy", to_string(c.self_policy)},
      {"scales", scales},
      {"significance", c.significance_level},
      {"fit_per_sc", c.fit_per_sc},
  };
}

CommandReport input_error(std::string text, const Error& e) {
  CommandReport r;
  r.exit_code = kExitInputError;
  r.error = e.code();
  r.text = std::move(text) + "error [" + to_string(e.code()) + "]: " + e.what() + "\n";
  return r;
}

}  // namespace

void RunConfig::validate() const {
  if (!is_country_code(home_country)) invalid("home_country must be a two-letter uppercase code");
  for (const auto& c : continent) {
    if (!is_country_code(c)) invalid("continent entry '" + c + "' is not a country code");
  }
  if (!continent.empty() && continent.count(home_country) == 0) {
    invalid("continent must contain home_country");
  }
  if (cited_years.min > cited_years.max || citing_years.min > citing_years.max) {
    invalid("year ranges must be [first, last]");
  }
  if (citing_years.max < cited_years.min) invalid("citing years end before cited years start");
  if (windows.empty()) invalid("windows is empty");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 1) invalid("windows must be >= 1");
    if (i > 0 && windows[i] <= windows[i - 1]) invalid("windows must be strictly increasing");
  }
  if (max_delay < 0) invalid("max_delay must be >= 0");
  if (max_delay > citing_years.max - cited_years.min) {
    invalid("max_delay " + std::to_string(max_delay) + " exceeds last citing year - first cited year (" +
            std::to_string(citing_years.max - cited_years.min) + ")");
  }
  if (scales.empty()) invalid("scales is empty");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (scales[i] == scales[k]) invalid("scales lists a scale twice");
    }
  }
  if (!(significance_level > 0 && significance_level < 1)) {
    invalid("significance must be in (0, 1)");
  }
  if (output_dir.empty()) invalid("output dir is empty");
}

RunConfig parse_run_config(std::string_view toml_text, const fs::path& base_dir) {
  const auto root = detail::parse_toml(toml_text, "run config");
  detail::check_keys(root, "run config", {"inputs", "analysis", "output"});
  RunConfig c;

  const auto* inputs = root["inputs"].as_table();
  if (inputs == nullptr) invalid("missing [inputs] table");
  detail::check_keys(*inputs, "[inputs]",
                     {"publications", "citing", "citations", "gazetteer", "sc_to_da"});
  auto input = [&](std::string_view key, fs::path& out) {
    std::string value;
    detail::read_string(*inputs, key, value);
    if (value.empty()) invalid("[inputs] " + std::string(key) + " is required");
    out = resolve(base_dir, value);
  };
  input("publications", c.inputs.publications);
  input("citing", c.inputs.citing);
  input("citations", c.inputs.citations);
  input("gazetteer", c.inputs.gazetteer);
  input("sc_to_da", c.inputs.sc_to_da);

  if (const auto* a = root["analysis"].as_table()) {
    detail::check_keys(*a, "[analysis]",
                       {"home_country", "continent", "continental_includes_home",
                        "majority_rule", "cited_years", "citing_years", "windows",
                        "max_delay", "self_policy", "scales", "significance", "fit_per_sc"});
    detail::read_string(*a, "home_country", c.home_country);
    std::vector<std::string> continent;
    detail::read_array(*a, "continent", continent);
    c.continent = std::set<std::string>(continent.begin(), continent.end());
    detail::read_bool(*a, "continental_includes_home", c.continental_includes_home);
    std::string rule;
    detail::read_string(*a, "majority_rule", rule);
    if (!rule.empty()) {
      auto r = parse_majority_rule(rule);
      if (!r) invalid("majority_rule must be plurality or absolute");
      c.majority_rule = *r;
    }
    detail::read_year_range(*a, "cited_years", c.cited_years);
    detail::read_year_range(*a, "citing_years", c.citing_years);
    detail::read_array(*a, "windows", c.windows);
    detail::read_number(*a, "max_delay", c.max_delay);
    std::string policy;
    detail::read_string(*a, "self_policy", policy);
    if (!policy.empty()) {
      auto p = parse_self_policy(policy);
      if (!p) invalid("self_policy must be include, exclude or both");
      c.self_policy = *p;
    }
    std::vector<std::string> scales;
    detail::read_array(*a, "scales", scales);
    if (a->get("scales") != nullptr) {
      c.scales.clear();
      for (const auto& s : scales) {
        auto sc = parse_scale(s);
        if (!sc) invalid("unknown scale '" + s + "'");
        c.scales.push_back(*sc);
      }
    }
    detail::read_number(*a, "significance", c.significance_level);
    detail::read_bool(*a, "fit_per_sc", c.fit_per_sc);
  } else if (root.get("analysis") != nullptr) {
    invalid("[analysis] must be a table");
  }

  if (const auto* o = root["output"].as_table()) {
    detail::check_keys(*o, "[output]", {"dir"});
    std::string dir;
    detail::read_string(*o, "dir", dir);
    c.output_dir = resolve(base_dir, dir.empty() ? c.output_dir.string() : dir);
  } else if (root.get("output") != nullptr) {
    invalid("[output] must be a table");
  } else {
    c.output_dir = base_dir / c.output_dir;
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  auto in = detail::open_input(path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_run_config(ss.str(), path.parent_path());
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  return c;
}

CommandReport cmd_validate(const RunConfig& config) {
  CommandReport report;
  std::string text = "kspill validate\n";
  Diagnostics diag;
  try {
    config.validate();
    const Corpus corpus = load_corpus(config.inputs, load_options(config), diag);
    check_resolution(corpus, config.home_country, diag);
    const auto assignments = assign_all(corpus, config.home_country, config.majority_rule);
    std::unordered_set<std::string> prevalent;
    for (const auto& [id, a] : assignments.cited) {
      if (a.prevalent) prevalent.insert(id);
    }
    const auto stats = corpus_stats(corpus, prevalent);
    text += "cited publications: " + std::to_string(corpus.cited().size()) + "\n";
    text += "citing publications: " + std::to_string(corpus.citing().size()) + "\n";
    text += "citation links: " + std::to_string(corpus.links().size()) + "\n";
    text += "gazetteer entries: " + std::to_string(corpus.gazetteer().entries().size()) + "\n";
    text += "sc codes mapped: " + std::to_string(corpus.sc_to_da().entries().size()) + "\n";
    text += "cited with citations: " + std::to_string(stats.cited_with_citations) + "\n";
    text += "cited assigned to a territory: " + std::to_string(stats.assigned) + "\n";
    text += "unique citing publications: " + std::to_string(stats.unique_citing) + "\n";
    text += "warnings: " + std::to_string(diag.size()) + "\n";
    append_warnings(text, diag);
    text += "status: ok\n";
  } catch (const Error& e) {
    append_warnings(text, diag);
    report = input_error(text, e);
    text = report.text;
  }
  report.text = text;
  try {
    ensure_dir(config.output_dir);
    const fs::path out = config.output_dir / "validation_report.txt";
    detail::write_file_atomic(out, text);
    report.outputs.push_back(out);
  } catch (const Error& e) {
    report.exit_code = kExitInputError;
    report.error = e.code();
    report.text += "error [" + std::string(to_string(e.code())) + "]: " + e.what() + "\n";
  }
  return report;
}

CommandReport cmd_run(const RunConfig& config) {
  Diagnostics diag;
  std::string text = "kspill run\n";
  Corpus corpus;
  try {
    config.validate();
    ensure_dir(config.output_dir);
    corpus = load_corpus(config.inputs, load_options(config), diag);
  } catch (const Error& e) {
    append_warnings(text, diag);
    return input_error(text, e);
  }
  if (corpus.links().empty()) diag.warn("citations", "citation file holds no links");

  const auto assignments = assign_all(corpus, config.home_country, config.majority_rule);
  const MassTable masses(corpus, assignments);
  EventOptions eopts;
  eopts.home_country = config.home_country;
  eopts.continent = config.continent;
  eopts.continental_includes_home = config.continental_includes_home;
  const EventSet events = build_events(corpus, assignments, eopts, diag);
  const auto pols = policies(config.self_policy);

  CommandReport report;
  auto emit = [&](const char* name, const std::string& content) {
    const fs::path p = config.output_dir / name;
    detail::write_file_atomic(p, content);
    report.outputs.push_back(p);
  };

  // assignments.csv
  {
    detail::CsvWriter w({"pub_id", "role", "territory_id", "prevalent"});
    auto row = [&](const std::string& id, const char* role, const TerritoryAssignment* a) {
      if (a == nullptr) return;
      w.field(id).field(role).field(a->territory_id.value_or("")).field(a->prevalent ? 1L : 0L);
      w.end_row();
    };
    for (const auto& p : corpus.cited()) row(p.pub_id, "cited", assignments.find_cited(p.pub_id));
    for (const auto& c : corpus.citing()) {
      row(c.pub_id, "citing_country", assignments.find_citing_country(c.pub_id));
    }
    for (const auto& c : corpus.citing()) {
      row(c.pub_id, "citing_lau", assignments.find_citing_lau(c.pub_id));
    }
    emit("assignments.csv", w.str());
  }

  // masses.csv
  {
    detail::CsvWriter w({"focal_sc", "territory_id", "m_cited", "m_citing"});
    for (const auto& e : masses.entries()) {
      w.field(e.focal_sc).field(e.territory_id).field(e.m_cited).field(e.m_citing).end_row();
    }
    emit("masses.csv", w.str());
  }

  // events.csv
  {
    detail::CsvWriter w({"citing_id", "cited_id", "focal_sc", "da", "cited_territory",
                         "citing_territory", "scale", "distance_km", "delay", "cited_year",
                         "self_citation"});
    for (const auto& e : events.events) {
      w.field(e.citing_id).field(e.cited_id).field(e.focal_sc).field(e.da);
      w.field(e.cited_territory).field(e.citing_territory).field(to_string(e.scale));
      w.field(e.distance_km).field(e.delay_years).field(e.cited_year);
      w.field(e.self_citation ? 1L : 0L).end_row();
    }
    emit("events.csv", w.str());
  }

  // delay_profile.csv
  {
    detail::CsvWriter w({"scale", "da", "delay", "mean_km", "n", "self_policy", "cohorts"});
    for (Scale s : config.scales) {
      for (bool inc : pols) {
        for (auto g : {ProfileGrouping::Overall, ProfileGrouping::Da}) {
          const auto prof = delay_profile(events.events, g, s, inc, config.max_delay);
          for (const auto& c : prof.cells) {
            w.field(to_string(s)).field(c.group).field(c.delay).field(c.mean_km).field(c.n);
            w.field(policy_name(inc)).field(c.cohorts).end_row();
          }
        }
      }
    }
    emit("delay_profile.csv", w.str());
  }

  // observations.csv
  std::map<std::string, std::vector<CitationEvent>> by_sc;
  for (const auto& e : events.events) by_sc[e.focal_sc].push_back(e);
  std::size_t dropped_zero_distance = 0, dropped_zero_mass = 0;
  {
    detail::CsvWriter w({"focal_sc", "scale", "window", "i", "j", "c_ij", "m_i", "m_j", "d_km",
                         "self_policy"});
    for (const auto& [sc, evs] : by_sc) {
      for (Scale s : config.scales) {
        for (bool inc : pols) {
          for (int win : config.windows) {
            const auto agg = aggregate_flows(evs, sc, s, win, inc, masses);
            if (win == config.windows.back()) {
              dropped_zero_distance += agg.dropped_zero_distance;
              dropped_zero_mass += agg.dropped_zero_mass;
            }
            for (const auto& o : agg.observations) {
              w.field(sc).field(to_string(s)).field(win).field(o.cited_territory);
              w.field(o.citing_territory).field(o.obs.c_ij).field(o.obs.m_i);
              w.field(o.obs.m_j).field(o.obs.d_ij).field(policy_name(inc)).end_row();
            }
          }
        }
      }
    }
    emit("observations.csv", w.str());
  }

  // coefficients.csv
  ordered_json cells = ordered_json::array();
  std::size_t n_ok = 0, n_unfit = 0, n_degenerate = 0;
  {
    detail::CsvWriter w({"group", "scale", "self_policy", "window", "n", "ln_k", "alpha", "beta",
                         "gamma", "se_gamma", "t_gamma", "p_gamma", "r2", "significant",
                         "coef_ln_d", "status"});
    std::vector<SeriesGrouping> groupings = {SeriesGrouping::Overall, SeriesGrouping::Da};
    if (config.fit_per_sc) groupings.push_back(SeriesGrouping::Sc);
    for (Scale s : config.scales) {
      for (bool inc : pols) {
        for (auto g : groupings) {
          SeriesRequest req;
          req.windows = config.windows;
          req.grouping = g;
          req.scale = s;
          req.include_self = inc;
          req.significance_level = config.significance_level;
          for (const auto& series :
               coefficient_series(events.events, masses, corpus.sc_to_da(), req)) {
            for (const auto& pt : series.points) {
              w.field(series.group).field(to_string(s)).field(policy_name(inc));
              w.field(pt.window).field(pt.n_obs);
              if (pt.fit) {
                const auto& f = *pt.fit;
                w.field(f.ln_k).field(f.alpha).field(f.beta).field(f.gamma);
                w.field(f.std_errors[kLnD]).field(f.t_stats[kLnD]).field(f.p_values[kLnD]);
                w.field(f.r_squared).field(f.significant_gamma ? 1L : 0L).field(f.coef_ln_d());
              } else {
                for (int k = 0; k < 10; ++k) w.empty();
              }
              w.field(to_string(pt.status)).end_row();
              switch (pt.status) {
                case CellStatus::Ok: ++n_ok; break;
                case CellStatus::Unfit: ++n_unfit; break;
                case CellStatus::Degenerate: ++n_degenerate; break;
              }
              ordered_json cell{{"group", series.group},
                                {"scale", to_string(s)},
                                {"self_policy", policy_name(inc)},
                                {"window", pt.window},
                                {"n", pt.n_obs},
                                {"status", to_string(pt.status)}};
              if (!pt.detail.empty()) cell["detail"] = pt.detail;
              cells.push_back(std::move(cell));
            }
          }
        }
      }
    }
    emit("coefficients.csv", w.str());
  }

  report.exit_code = n_degenerate > 0 ? kExitPartialFailure : kExitOk;

  // run_manifest.json
  {
    ordered_json inputs;
    auto digest = [&](const char* name, const fs::path& p) {
      inputs[name] = ordered_json{{"path", p.string()}, {"sha256", detail::sha256_file(p)}};
    };
    digest("publications", config.inputs.publications);
    digest("citing", config.inputs.citing);
    digest("citations", config.inputs.citations);
    digest("gazetteer", config.inputs.gazetteer);
    digest("sc_to_da", config.inputs.sc_to_da);
    ordered_json outputs;
    for (const auto& p : report.outputs) {
      outputs[p.filename().string()] = detail::sha256_file(p);
    }
    const auto& st = events.stats;
    ordered_json warnings = ordered_json::array();
    for (const auto& wn : diag.warnings()) warnings.push_back(format_warning(wn));
    ordered_json manifest{
        {"tool", "kspill"},
        {"version", kVersion},
        {"inputs", inputs},
        {"config", config_json(config)},
        {"counts",
         {{"cited", corpus.cited().size()},
          {"citing", corpus.citing().size()},
          {"links", st.links},
          {"events", st.events},
          {"dropped_cited_unassigned", st.dropped_cited_unassigned},
          {"dropped_citing_unassigned", st.dropped_citing_unassigned},
          {"dropped_citing_lau_unassigned", st.dropped_citing_lau_unassigned},
          {"dropped_negative_delay", st.dropped_negative_delay},
          {"self_citation_undetectable", st.self_citation_undetectable},
          {"pairs_dropped_zero_distance", dropped_zero_distance},
          {"pairs_dropped_zero_mass", dropped_zero_mass}}},
        {"cells_summary", {{"ok", n_ok}, {"unfit", n_unfit}, {"degenerate", n_degenerate}}},
        {"cells", cells},
        {"warnings", warnings},
        {"outputs", outputs},
        {"exit_code", report.exit_code},
    };
    emit("run_manifest.json", manifest.dump(2) + "\n");
  }

  text += "links: " + std::to_string(events.stats.links) + "\n";
  text += "events: " + std::to_string(events.stats.events) + "\n";
  text += "cells: " + std::to_string(n_ok) + " ok, " + std::to_string(n_unfit) + " unfit, " +
          std::to_string(n_degenerate) + " degenerate\n";
  text += "warnings: " + std::to_string(diag.size()) + "\n";
  append_warnings(text, diag);
  text += "output: " + config.output_dir.string() + "\n";
  report.text = text;
  return report;
}

CommandReport cmd_synth(const fs::path& config_path, const fs::path& out_dir) {
  CommandReport report;
  std::string text = "kspill synth\n";
  try {
    const SynthConfig cfg = load_synth_config(config_path);
    fs::path dir = out_dir;
    if (dir.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      dir = (env != nullptr && *env != '\0') ? fs::path(env)
                                               : config_path.parent_path() / "synth_out";
    }
    const SynthCorpus corpus = generate_corpus(cfg);
    write_corpus(corpus, dir);
    for (const char* f : {"publications.jsonl", "citing.jsonl", "citations.csv", "gazetteer.csv",
                          "sc_to_da.csv", "planted.csv", "run.toml"}) {
      report.outputs.push_back(dir / f);
    }
    text += "seed: " + std::to_string(cfg.seed) + "\n";
    text += "cited publications: " + std::to_string(corpus.cited.size()) + "\n";
    text += "citing publications: " + std::to_string(corpus.citing.size()) + "\n";
    text += "citation links: " + std::to_string(corpus.links.size()) + "\n";
    text += "self-citations: " + std::to_string(corpus.self_citations) + "\n";
    text += "output: " + dir.string() + "\n";
    report.text = text;
  } catch (const Error& e) {
    return input_error(text, e);
  }
  return report;
}

}  // namespace kspill
