/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Batch orchestration behind the validate / run / synth commands.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kspill/corpus.hpp"
#include "kspill/territory.hpp"

namespace kspill {

inline constexpr const char* kVersion = "0.1.0";

enum class SelfPolicy { Include, Exclude, Both };

const char* to_string(SelfPolicy policy) noexcept;
std::optional<SelfPolicy> parse_self_policy(std::string_view text);

struct RunConfig {
  CorpusPaths inputs;
  std::string home_country = "IT";
  std::set<std::string> continent;  // empty: european_countries()
  bool continental_includes_home = false;
  MajorityRule majority_rule = MajorityRule::Plurality;
  YearRange cited_years{2010, 2012};
  YearRange citing_years{2010, 2017};
  std::vector<int> windows = {1, 2, 3, 4, 5, 6, 7, 8};
  int max_delay = 7;
  SelfPolicy self_policy = SelfPolicy::Both;
  std::vector<Scale> scales = {Scale::National, Scale::Continental,
                               Scale::Intercontinental};
  double significance_level = 0.05;
  bool fit_per_sc = true;
  std::filesystem::path output_dir = "kspill_out";

  /// Throws Error(InvalidArgument) naming the offending field.
  void validate() const;
};

/// Environment variable that overrides RunConfig::output_dir.
inline constexpr const char* kOutputDirEnv = "KSPILL_OUTPUT_DIR";

/// Relative input and output paths resolve against the config file's
/// directory. load_run_config also applies the KSPILL_OUTPUT_DIR override.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::string_view toml_text,
                           const std::filesystem::path& base_dir);

/// Exit-code contract of the CLI.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitPartialFailure = 2 };

struct CommandReport {
  int exit_code = kExitOk;
  std::string text;  // human-readable summary
  std::vector<std::filesystem::path> outputs;
  std::optional<ErrorCode> error;  // set when exit_code is kExitInputError
};

/// Parses every input, checks SC mapping totality and gazetteer resolution,
/// writes validation_report.txt into the output directory.
CommandReport cmd_validate(const RunConfig& config);

/// Full analysis: assignments, masses, events, delay profiles, observations,
/// coefficients and run_manifest.json.
CommandReport cmd_run(const RunConfig& config);

/// Generates a synthetic corpus from a TOML config into out_dir. An empty
/// out_dir falls back to $KSPILL_OUTPUT_DIR, then to "synth_out" next to the
/// config file.
CommandReport cmd_synth(const std::filesystem::path& config_path,
                        const std::filesystem::path& out_dir);

}  // namespace kspill
