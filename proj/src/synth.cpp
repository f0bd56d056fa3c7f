/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "kspill/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "kspill/geo.hpp"
#include "rng.hpp"
#include "toml_util.hpp"
#include "util.hpp"

namespace kspill {

namespace {

using detail::Rng;

struct ForeignCountry {
  const char* code;
  const char* name;
  const char* capital;
  double lat;
  double lon;
};

constexpr ForeignCountry kForeign[] = {
    {"FR", "France", "Paris", 48.8567, 2.3522},
    {"DE", "Germany", "Berlin", 52.5200, 13.4050},
    {"GB", "United Kingdom", "London", 51.5072, -0.1275},
    {"ES", "Spain", "Madrid", 40.4168, -3.7038},
    {"NL", "Netherlands", "Amsterdam", 52.3676, 4.9041},
    {"CH", "Switzerland", "Bern", 46.9480, 7.4474},
    {"AT", "Austria", "Vienna", 48.2082, 16.3738},
    {"PL", "Poland", "Warsaw", 52.2297, 21.0122},
    {"SE", "Sweden", "Stockholm", 59.3293, 18.0686},
    {"BE", "Belgium", "Brussels", 50.8503, 4.3517},
    {"US", "United States", "Washington", 38.9072, -77.0369},
    {"CN", "China", "Beijing", 39.9042, 116.4074},
    {"JP", "Japan", "Tokyo", 35.6897, 139.6922},
    {"BR", "Brazil", "Brasilia", -15.7939, -47.8828},
    {"IN", "India", "New Delhi", 28.6139, 77.2090},
    {"CA", "Canada", "Ottawa", 45.4215, -75.6972},
    {"AU", "Australia", "Canberra", -35.2809, 149.1300},
};

const char* const kDisciplinaryAreas[] = {
    "Natural sciences",      "Engineering and technology",
    "Medical and health sciences", "Agricultural sciences",
    "Social sciences",       "Humanities",
};

const ForeignCountry* find_foreign(std::string_view code) {
  for (const auto& f : kForeign) {
    if (code == f.code) return &f;
  }
  return nullptr;
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "synth config: " + what);
}

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

/// Largest-remainder apportionment of `total` over `weights`, with every
/// share at least `floor_each`.
std::vector<int> apportion(int total, const std::vector<double>& weights, int floor_each) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> out(weights.size(), floor_each);
  const int rest = total - floor_each * n;
  if (rest < 0) {
    throw Error(ErrorCode::Infeasible,
                "cannot give " + std::to_string(n) + " territories " +
                    std::to_string(floor_each) + " publications each out of " +
                    std::to_string(total));
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::pair<double, int>> remainders;
  int given = 0;
  for (int i = 0; i < n; ++i) {
    const double exact = rest * weights[i] / sum;
    const int base = static_cast<int>(std::floor(exact));
    out[i] += base;
    given += base;
    remainders.emplace_back(exact - base, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; k < rest - given; ++k) out[remainders[k].second] += 1;
  return out;
}

std::vector<std::string> draw_scs(Rng& rng, const SynthConfig& cfg) {
  const std::size_t m = 1 + rng.discrete(cfg.sc_multiplicity);
  std::vector<std::size_t> idx(cfg.sc_list.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t pick = k + rng.index(idx.size() - k);
    std::swap(idx[k], idx[pick]);
    out.push_back(cfg.sc_list[idx[k]]);
  }
  return out;
}

// Records are kept in their normalized form so the in-memory corpus equals
// what the parser reads back from the written files.
Address address_of(const TerritoryEntry& t) {
  return Address{normalize_city(t.display_name), t.country_code};
}

std::string author_key(const std::string& pub_id, int n) {
  return normalize_author_key(pub_id + "-a" + std::to_string(n));
}

}  // namespace

void SynthConfig::validate() const {
  if (!normalize_country(home_country) || *normalize_country(home_country) != home_country) {
    invalid("home_country must be a two-letter uppercase code");
  }
  if (n_territories < 2) invalid("n_territories must be >= 2");
  if (!(lat_min < lat_max) || lat_min < -90 || lat_max > 90) invalid("bad lat range");
  if (!(lon_min < lon_max) || lon_min < -180 || lon_max > 180) invalid("bad lon range");
  if (!(min_separation_km >= 0)) invalid("min_separation_km must be >= 0");
  for (const auto& c : foreign_countries) {
    if (find_foreign(c) == nullptr) invalid("unknown foreign country '" + c + "'");
    if (c == home_country) invalid("foreign_countries contains the home country");
  }
  if (n_cited < n_territories) invalid("n_cited must be >= n_territories");
  if (n_citing < 1) invalid("n_citing must be positive");
  if (!(foreign_share >= 0 && foreign_share <= 1)) invalid("foreign_share must be in [0,1]");
  if (!(mass_spread >= 1)) invalid("mass_spread must be >= 1");
  if (!(unassigned_share >= 0 && unassigned_share <= 1)) {
    invalid("unassigned_share must be in [0,1]");
  }
  if (cited_years.min > cited_years.max || citing_years.min > citing_years.max) {
    invalid("year ranges must be [first, last]");
  }
  if (citing_years.min < cited_years.min || citing_years.max < cited_years.max) {
    invalid("citing years must not start before or end before the cited years");
  }
  if (sc_list.empty()) invalid("sc_list is empty");
  std::set<std::string> distinct(sc_list.begin(), sc_list.end());
  if (distinct.size() != sc_list.size()) invalid("sc_list has duplicates");
  for (const auto& sc : sc_list) {
    if (sc.empty() || sc.find_first_of(",\"\n") != std::string::npos) {
      invalid("bad SC code '" + sc + "'");
    }
  }
  if (sc_multiplicity.empty() || sc_multiplicity.size() > sc_list.size()) {
    invalid("sc_multiplicity needs 1..len(sc_list) entries");
  }
  double msum = 0;
  for (double p : sc_multiplicity) {
    if (!(p >= 0)) invalid("sc_multiplicity entries must be >= 0");
    msum += p;
  }
  if (!(msum > 0)) invalid("sc_multiplicity sums to zero");
  if (!std::isfinite(ln_k) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    invalid("ln_k, alpha, beta must be finite");
  }
  if (!(gamma >= 0) || !std::isfinite(gamma)) invalid("gamma must be >= 0");
  if (!std::isfinite(gamma_delay_slope)) invalid("gamma_delay_slope must be finite");
  if (!(noise_sigma >= 0)) invalid("noise_sigma must be >= 0");
  if (!(intra_distance_km > 0)) invalid("intra_distance_km must be > 0");
  if (!(self_citation_rate >= 0 && self_citation_rate <= 1)) {
    invalid("self_citation_rate must be in [0,1]");
  }
  if (!(self_citation_decay_km > 0)) invalid("self_citation_decay_km must be > 0");
  if (delay_weights.empty()) invalid("delay_weights is empty");
  double dsum = 0;
  for (double w : delay_weights) {
    if (!(w >= 0)) invalid("delay_weights entries must be >= 0");
    dsum += w;
  }
  if (!(dsum > 0)) invalid("delay_weights sums to zero");
}

SynthConfig parse_synth_config(std::string_view toml_text) {
  const auto root = detail::parse_toml(toml_text, "synth config");
  detail::check_keys(root, "synth config",
                     {"seed", "home_country", "n_territories", "lat_range", "lon_range",
                      "min_separation_km", "foreign_countries", "n_cited", "n_citing",
                      "foreign_share", "mass_spread", "unassigned_share", "cited_years",
                      "citing_years", "sc_list", "sc_multiplicity", "ln_k", "alpha",
                      "beta", "gamma", "gamma_delay_slope", "noise_sigma",
                      "intra_distance_km", "self_citation_rate", "self_citation_decay_km",
                      "delay_weights"});
  SynthConfig c;
  std::int64_t seed = static_cast<std::int64_t>(c.seed);
  detail::read_number(root, "seed", seed);
  if (seed < 0) invalid("seed must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  detail::read_string(root, "home_country", c.home_country);
  detail::read_number(root, "n_territories", c.n_territories);
  detail::read_pair(root, "lat_range", c.lat_min, c.lat_max);
  detail::read_pair(root, "lon_range", c.lon_min, c.lon_max);
  detail::read_number(root, "min_separation_km", c.min_separation_km);
  detail::read_array(root, "foreign_countries", c.foreign_countries);
  detail::read_number(root, "n_cited", c.n_cited);
  detail::read_number(root, "n_citing", c.n_citing);
  detail::read_number(root, "foreign_share", c.foreign_share);
  detail::read_number(root, "mass_spread", c.mass_spread);
  detail::read_number(root, "unassigned_share", c.unassigned_share);
  detail::read_year_range(root, "cited_years", c.cited_years);
  detail::read_year_range(root, "citing_years", c.citing_years);
  detail::read_array(root, "sc_list", c.sc_list);
  detail::read_array(root, "sc_multiplicity", c.sc_multiplicity);
  detail::read_number(root, "ln_k", c.ln_k);
  detail::read_number(root, "alpha", c.alpha);
  detail::read_number(root, "beta", c.beta);
  detail::read_number(root, "gamma", c.gamma);
  detail::read_number(root, "gamma_delay_slope", c.gamma_delay_slope);
  detail::read_number(root, "noise_sigma", c.noise_sigma);
  detail::read_number(root, "intra_distance_km", c.intra_distance_km);
  detail::read_number(root, "self_citation_rate", c.self_citation_rate);
  detail::read_number(root, "self_citation_decay_km", c.self_citation_decay_km);
  detail::read_array(root, "delay_weights", c.delay_weights);
  c.validate();
  return c;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_synth_config(ss.str());
}

SynthCorpus generate_corpus(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SynthCorpus out;
  out.config = cfg;

  // Territories: LAUs by rejection sampling, then the home and foreign
  // COUNTRY entries.
  std::vector<TerritoryEntry> laus;
  for (int t = 0; t < cfg.n_territories; ++t) {
    bool placed = false;
    for (int attempt = 0; attempt < 20000 && !placed; ++attempt) {
      const double lat = rng.uniform(cfg.lat_min, cfg.lat_max);
      const double lon = rng.uniform(cfg.lon_min, cfg.lon_max);
      const GeoPoint p(lat, lon);
      placed = std::all_of(laus.begin(), laus.end(), [&](const TerritoryEntry& e) {
        return geodesic_km(p, GeoPoint(e.lat, e.lon)) >= cfg.min_separation_km;
      });
      if (placed) {
        laus.push_back(TerritoryEntry{numbered("LAU", t + 1, 3), TerritoryKind::Lau,
                                      cfg.home_country, numbered("Comune ", t + 1, 3), lat,
                                      lon});
      }
    }
    if (!placed) {
      throw Error(ErrorCode::Infeasible,
                  "cannot place " + std::to_string(cfg.n_territories) +
                      " territories " + detail::format_double(cfg.min_separation_km) +
                      " km apart in the coordinate box");
    }
  }
  std::vector<TerritoryEntry> foreign;
  for (const auto& f : kForeign) {
    const bool wanted = cfg.foreign_countries.empty()
                            ? std::string_view(f.code) != cfg.home_country
                            : std::find(cfg.foreign_countries.begin(),
                                        cfg.foreign_countries.end(),
                                        f.code) != cfg.foreign_countries.end();
    if (wanted) {
      foreign.push_back(TerritoryEntry{std::string("CTRY-") + f.code, TerritoryKind::Country,
                                       f.code, f.capital, f.lat, f.lon});
    }
  }
  out.territories = laus;
  out.territories.push_back(TerritoryEntry{"CTRY-" + cfg.home_country, TerritoryKind::Country,
                                           cfg.home_country, cfg.home_country,
                                           laus.front().lat, laus.front().lon});
  out.territories.insert(out.territories.end(), foreign.begin(), foreign.end());

  for (std::size_t k = 0; k < cfg.sc_list.size(); ++k) {
    out.sc_to_da[cfg.sc_list[k]] = kDisciplinaryAreas[k % std::size(kDisciplinaryAreas)];
  }

  const std::size_t n_lau = laus.size();
  const int n_cited_years = cfg.cited_years.max - cfg.cited_years.min + 1;
  const int n_citing_years = cfg.citing_years.max - cfg.citing_years.min + 1;

  // Cited publications, apportioned over LAUs; years cycle so every LAU
  // with at least n_cited_years publications covers every cited year.
  std::vector<double> w_cited(n_lau);
  for (auto& w : w_cited) w = rng.uniform(1.0, cfg.mass_spread);
  const auto m_cited = apportion(cfg.n_cited, w_cited, 1);
  std::vector<std::vector<std::size_t>> cited_by_lau(n_lau);  // sorted by year
  for (std::size_t t = 0; t < n_lau; ++t) {
    for (int k = 0; k < m_cited[t]; ++k) {
      PublicationRecord p;
      p.pub_id = numbered("P", out.cited.size() + 1, 6);
      p.year = cfg.cited_years.min + k % n_cited_years;
      p.sc_codes = draw_scs(rng, cfg);
      const int n_auth = 1 + static_cast<int>(rng.index(4));
      for (int a = 0; a < n_auth; ++a) {
        AuthorRecord author;
        author.key = author_key(p.pub_id, a + 1);
        author.affiliations.push_back(address_of(laus[t]));
        p.authors.push_back(std::move(author));
      }
      // A second affiliation elsewhere never outweighs the home LAU.
      if (n_auth >= 2 && rng.bernoulli(0.2)) {
        const std::size_t other = (t + 1 + rng.index(n_lau - 1)) % n_lau;
        p.authors[0].affiliations.push_back(address_of(laus[other]));
      }
      cited_by_lau[t].push_back(out.cited.size());
      out.cited.push_back(std::move(p));
    }
    std::stable_sort(cited_by_lau[t].begin(), cited_by_lau[t].end(),
                     [&](std::size_t a, std::size_t b) {
                       return out.cited[a].year < out.cited[b].year;
                     });
  }

  // Cited publications split evenly between two LAUs: no prevalent territory.
  const int n_unassigned =
      static_cast<int>(std::llround(cfg.unassigned_share * cfg.n_cited));
  std::vector<std::size_t> unassigned;
  for (int k = 0; k < n_unassigned; ++k) {
    PublicationRecord p;
    p.pub_id = numbered("P", out.cited.size() + 1, 6);
    p.year = cfg.cited_years.min + static_cast<int>(rng.index(n_cited_years));
    p.sc_codes = draw_scs(rng, cfg);
    const std::size_t a = rng.index(n_lau);
    const std::size_t b = (a + 1 + rng.index(n_lau - 1)) % n_lau;
    p.authors.push_back(AuthorRecord{author_key(p.pub_id, 1), {address_of(laus[a])}});
    p.authors.push_back(AuthorRecord{author_key(p.pub_id, 2), {address_of(laus[b])}});
    unassigned.push_back(out.cited.size());
    out.cited.push_back(std::move(p));
  }

  // Citing publications: home share over LAUs, foreign share over countries.
  const int n_foreign_pubs =
      foreign.empty() ? 0 : static_cast<int>(std::llround(cfg.foreign_share * cfg.n_citing));
  const int n_home_pubs = cfg.n_citing - n_foreign_pubs;
  std::vector<double> w_home(n_lau);
  for (auto& w : w_home) w = rng.uniform(1.0, cfg.mass_spread);
  const auto m_home = apportion(n_home_pubs, w_home, n_citing_years);
  std::vector<int> m_foreign;
  if (!foreign.empty()) {
    std::vector<double> w_foreign(foreign.size());
    for (auto& w : w_foreign) w = rng.uniform(1.0, cfg.mass_spread);
    m_foreign = apportion(n_foreign_pubs, w_foreign, n_citing_years);
  }

  // Citing territory j: LAUs first, then foreign countries.
  const std::size_t n_targets = n_lau + foreign.size();
  std::vector<std::vector<std::vector<std::size_t>>> citing_by_year(
      n_targets, std::vector<std::vector<std::size_t>>(n_citing_years));
  std::vector<int> m_citing(n_targets);
  for (std::size_t j = 0; j < n_targets; ++j) {
    const bool home = j < n_lau;
    m_citing[j] = home ? m_home[j] : m_foreign[j - n_lau];
    const TerritoryEntry& where = home ? laus[j] : foreign[j - n_lau];
    for (int k = 0; k < m_citing[j]; ++k) {
      CitingRecord c;
      c.pub_id = numbered("Q", out.citing.size() + 1, 6);
      const int yi = k % n_citing_years;
      c.year = cfg.citing_years.min + yi;
      c.sc_codes = draw_scs(rng, cfg);
      const int n_addr = 1 + static_cast<int>(rng.index(3));
      for (int a = 0; a < n_addr; ++a) c.addresses.push_back(address_of(where));
      if (n_addr >= 2 && rng.bernoulli(0.25)) {
        const std::size_t other =
            home ? (j + 1 + rng.index(n_lau - 1)) % n_lau : rng.index(n_lau);
        c.addresses.push_back(address_of(laus[other]));
      }
      c.author_keys = std::vector<std::string>{author_key(c.pub_id, 1)};
      citing_by_year[j][yi].push_back(out.citing.size());
      out.citing.push_back(std::move(c));
    }
  }

  // Delay distribution, truncated to the observable horizon.
  const int horizon = std::min<int>(static_cast<int>(cfg.delay_weights.size()) - 1,
                                    cfg.citing_years.max - cfg.cited_years.min);
  std::vector<double> p_delay(cfg.delay_weights.begin(),
                              cfg.delay_weights.begin() + horizon + 1);
  const double p_sum = std::accumulate(p_delay.begin(), p_delay.end(), 0.0);
  if (!(p_sum > 0)) invalid("delay_weights are zero over the observable delays");
  for (auto& p : p_delay) p /= p_sum;

  // Flows and links.
  std::unordered_set<std::uint64_t> used;
  std::vector<double> link_distance;  // per link, for self-citation selection
  const double k = std::exp(cfg.ln_k);
  for (std::size_t i = 0; i < n_lau; ++i) {
    const GeoPoint pi(laus[i].lat, laus[i].lon);
    for (std::size_t j = 0; j < n_targets; ++j) {
      const bool home = j < n_lau;
      const TerritoryEntry& tj = home ? laus[j] : foreign[j - n_lau];
      const double d_gaz = geodesic_km(pi, GeoPoint(tj.lat, tj.lon));
      const double d_plant = (home && i == j) ? cfg.intra_distance_km : d_gaz;
      const double base = k * std::pow(m_cited[i], cfg.alpha) * std::pow(m_citing[j], cfg.beta);
      std::vector<double> lambda(p_delay.size());
      double expected = 0;
      for (std::size_t t = 0; t < p_delay.size(); ++t) {
        const double g = std::max(0.0, cfg.gamma + cfg.gamma_delay_slope * static_cast<double>(t));
        lambda[t] = base * std::pow(d_plant, -g) * p_delay[t];
        expected += lambda[t];
      }
      const double noisy =
          cfg.noise_sigma > 0 ? expected * std::exp(cfg.noise_sigma * rng.normal()) : expected;
      const long count = std::max(0L, std::lround(noisy));

      PlantedPair pp;
      pp.cited_territory = laus[i].territory_id;
      pp.citing_territory = tj.territory_id;
      pp.national = home;
      pp.m_i = m_cited[i];
      pp.m_j = m_citing[j];
      pp.d_km = (home && i == j) ? 0.0 : d_gaz;
      pp.expected = expected;
      pp.noisy = noisy;
      pp.count = count;
      out.planted.push_back(pp);

      const auto& pool_i = cited_by_lau[i];
      for (long c = 0; c < count; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < 512 && !placed; ++attempt) {
          const int t = static_cast<int>(rng.discrete(lambda));
          const int last_year = cfg.citing_years.max - t;
          const auto limit = std::upper_bound(
              pool_i.begin(), pool_i.end(), last_year,
              [&](int y, std::size_t idx) { return y < out.cited[idx].year; });
          const auto n_ok = static_cast<std::size_t>(limit - pool_i.begin());
          if (n_ok == 0) continue;
          const std::size_t ci = pool_i[rng.index(n_ok)];
          const int yi = out.cited[ci].year + t - cfg.citing_years.min;
          if (yi < 0 || yi >= n_citing_years) continue;
          const auto& bucket = citing_by_year[j][yi];
          if (bucket.empty()) continue;
          const std::size_t qi = bucket[rng.index(bucket.size())];
          const std::uint64_t key = (static_cast<std::uint64_t>(qi) << 32) | ci;
          if (!used.insert(key).second) continue;
          out.links.push_back(CitationLink{out.citing[qi].pub_id, out.cited[ci].pub_id});
          link_distance.push_back(pp.d_km);
          placed = true;
        }
        if (!placed) {
          throw Error(ErrorCode::Infeasible,
                      "cannot place " + std::to_string(count) + " distinct links from " +
                          tj.territory_id + " to " + laus[i].territory_id +
                          "; lower ln_k or raise the publication counts");
        }
      }
    }
  }

  // Self-citations: weighted sampling without replacement (Efraimidis and
  // Spirakis), keys compared in log space so far pairs never underflow.
  const std::size_t n_links_planted = out.links.size();
  const auto n_self = static_cast<std::size_t>(
      std::llround(cfg.self_citation_rate * static_cast<double>(n_links_planted)));
  if (n_self > n_links_planted) {
    throw Error(ErrorCode::Infeasible, "more self-citations than links");
  }
  if (n_self > 0) {
    std::vector<std::pair<double, std::size_t>> keyed(n_links_planted);
    for (std::size_t l = 0; l < n_links_planted; ++l) {
      const double u = rng.uniform_open();
      keyed[l] = {std::log(-std::log(u)) + link_distance[l] / cfg.self_citation_decay_km, l};
    }
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(n_self),
                      keyed.end());
    std::unordered_map<std::string, std::size_t> citing_index, cited_index;
    for (std::size_t q = 0; q < out.citing.size(); ++q) citing_index[out.citing[q].pub_id] = q;
    for (std::size_t p = 0; p < out.cited.size(); ++p) cited_index[out.cited[p].pub_id] = p;
    std::vector<std::size_t> chosen;
    for (std::size_t s = 0; s < n_self; ++s) chosen.push_back(keyed[s].second);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t l : chosen) {
      auto& citing = out.citing[citing_index.at(out.links[l].citing_id)];
      const auto& cited = out.cited[cited_index.at(out.links[l].cited_id)];
      citing.author_keys->push_back(cited.authors.front().key);
    }
    out.self_citations = n_self;
  }

  // A few citations to the tied publications so the exclusion path sees
  // traffic; they never enter a planted pair.
  for (std::size_t ui : unassigned) {
    const int n = 1 + static_cast<int>(rng.index(3));
    for (int c = 0; c < n; ++c) {
      for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t j = rng.index(n_lau);
        const int first = out.cited[ui].year - cfg.citing_years.min;
        const int yi = first + static_cast<int>(rng.index(n_citing_years - first));
        const auto& bucket = citing_by_year[j][yi];
        if (bucket.empty()) continue;
        const std::size_t qi = bucket[rng.index(bucket.size())];
        const std::uint64_t key = (static_cast<std::uint64_t>(qi) << 32) | ui;
        if (!used.insert(key).second) continue;
        out.links.push_back(CitationLink{out.citing[qi].pub_id, out.cited[ui].pub_id});
        break;
      }
    }
  }
  return out;
}

namespace {

std::string years_toml(const YearRange& r) {
  return "[" + std::to_string(r.min) + ", " + std::to_string(r.max) + "]";
}

}  // namespace

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  }
  using json = nlohmann::ordered_json;
  auto addr = [](const Address& a) { return json{{"city", a.city}, {"country", a.country}}; };

  std::string pubs;
  for (const auto& p : corpus.cited) {
    json authors = json::array();
    for (const auto& a : p.authors) {
      json affils = json::array();
      for (const auto& x : a.affiliations) affils.push_back(addr(x));
      authors.push_back(json{{"key", a.key}, {"affils", affils}});
    }
    pubs += json{{"pub_id", p.pub_id}, {"year", p.year}, {"scs", p.sc_codes},
                 {"authors", authors}}.dump();
    pubs += '\n';
  }

  std::string citing;
  for (const auto& c : corpus.citing) {
    json addresses = json::array();
    for (const auto& x : c.addresses) addresses.push_back(addr(x));
    json rec{{"pub_id", c.pub_id}, {"year", c.year}, {"scs", c.sc_codes},
             {"addresses", addresses}};
    if (c.author_keys) rec["author_keys"] = *c.author_keys;
    citing += rec.dump();
    citing += '\n';
  }

  detail::CsvWriter links({"citing_id", "cited_id"});
  for (const auto& l : corpus.links) {
    links.field(l.citing_id).field(l.cited_id).end_row();
  }

  detail::CsvWriter gaz({"territory_id", "kind", "country_code", "display_name", "lat", "lon"});
  for (const auto& t : corpus.territories) {
    gaz.field(t.territory_id)
        .field(t.kind == TerritoryKind::Lau ? "lau" : "country")
        .field(t.country_code)
        .field(t.display_name)
        .field(t.lat)
        .field(t.lon)
        .end_row();
  }

  detail::CsvWriter map({"sc_code", "da_code"});
  for (const auto& [sc, da] : corpus.sc_to_da) map.field(sc).field(da).end_row();

  detail::CsvWriter planted({"cited_territory", "citing_territory", "national", "m_i", "m_j",
                             "d_km", "expected", "noisy", "count"});
  for (const auto& p : corpus.planted) {
    planted.field(p.cited_territory)
        .field(p.citing_territory)
        .field(p.national ? 1L : 0L)
        .field(p.m_i)
        .field(p.m_j)
        .field(p.d_km)
        .field(p.expected)
        .field(p.noisy)
        .field(p.count)
        .end_row();
  }

  const auto& cfg = corpus.config;
  const int horizon = std::min<int>(static_cast<int>(cfg.delay_weights.size()) - 1,
                                    cfg.citing_years.max - cfg.cited_years.min);
  std::string windows;
  for (int w = 1; w <= horizon + 1; ++w) {
    windows += (w > 1 ? ", " : "") + std::to_string(w);
  }
  std::string run;
  run += "# Generated by kspill synth, seed " + std::to_string(cfg.seed) + "\n";
  run += "[inputs]\n";
  run += "publications = \"publications.jsonl\"\n";
  run += "citing = \"citing.jsonl\"\n";
  run += "citations = \"citations.csv\"\n";
  run += "gazetteer = \"gazetteer.csv\"\n";
  run += "sc_to_da = \"sc_to_da.csv\"\n\n";
  run += "[analysis]\n";
  run += "home_country = \"" + cfg.home_country + "\"\n";
  run += "cited_years = " + years_toml(cfg.cited_years) + "\n";
  run += "citing_years = " + years_toml(cfg.citing_years) + "\n";
  run += "windows = [" + windows + "]\n";
  run += "max_delay = " + std::to_string(horizon) + "\n\n";
  run += "[output]\n";
  run += "dir = \"out\"\n";

  detail::write_file_atomic(dir / "publications.jsonl", pubs);
  detail::write_file_atomic(dir / "citing.jsonl", citing);
  detail::write_file_atomic(dir / "citations.csv", links.str());
  detail::write_file_atomic(dir / "gazetteer.csv", gaz.str());
  detail::write_file_atomic(dir / "sc_to_da.csv", map.str());
  detail::write_file_atomic(dir / "planted.csv", planted.str());
  detail::write_file_atomic(dir / "run.toml", run);
}

std::vector<GravityObservation> planted_observations(const SynthCorpus& corpus,
                                                     bool national_only) {
  std::vector<GravityObservation> out;
  for (const auto& p : corpus.planted) {
    if (p.d_km <= 0) continue;
    if (national_only && !p.national) continue;
    out.push_back(GravityObservation{p.noisy, p.m_i, p.m_j, p.d_km});
  }
  return out;
}

}  // namespace kspill
