/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "kspill/kspill.h"

namespace {

constexpr int kExitInputError = 1;

int report_failure(const char* what, kspill_status status) {
  std::fprintf(stderr, "kspill: %s failed (%s): %s\n", what, kspill_status_string(status),
               kspill_last_error());
  return kExitInputError;
}

/// Prints and frees a report, returning its exit code.
int finish(kspill_report* report) {
  const int code = kspill_report_exit_code(report);
  std::fputs(kspill_report_text(report), code == 0 ? stdout : stderr);
  kspill_report_free(report);
  return code;
}

struct RunOptions {
  std::string config;
  std::string self_policy;
  std::string scales;
  std::string out;
};

int with_config(const RunOptions& opts, bool run) {
  kspill_config* config = nullptr;
  if (auto s = kspill_config_load(opts.config.c_str(), &config); s != KSPILL_OK) {
    return report_failure("loading config", s);
  }
  kspill_status s = KSPILL_OK;
  if (!opts.self_policy.empty()) s = kspill_config_set_self_policy(config, opts.self_policy.c_str());
  if (s == KSPILL_OK && !opts.scales.empty()) s = kspill_config_set_scales(config, opts.scales.c_str());
  if (s == KSPILL_OK && !opts.out.empty()) s = kspill_config_set_output_dir(config, opts.out.c_str());
  if (s != KSPILL_OK) {
    kspill_config_free(config);
    return report_failure("applying options", s);
  }
  kspill_report* report = nullptr;
  s = run ? kspill_run(config, &report) : kspill_validate(config, &report);
  kspill_config_free(config);
  if (report != nullptr) return finish(report);
  return report_failure(run ? "run" : "validate", s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kspill: territorial citation flows and gravity-model estimation"};
  app.set_version_flag("--version", kspill_version());
  app.require_subcommand(1);
  app.footer(
      "Exit status: 0 success, 1 input error, 2 some analysis cells failed.\n"
      "Citation window w sums citations with delay 0..w-1 years after the cited year.\n"
      "KSPILL_OUTPUT_DIR overrides the output directory named in the config.");

  RunOptions opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "run config (TOML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output directory");
  };

  auto* validate = app.add_subcommand("validate", "parse and check every input file");
  add_common(validate);

  auto* run = app.add_subcommand("run", "full analysis, writes CSV outputs and run_manifest.json");
  add_common(run);
  run->add_option("--self-policy", opts.self_policy, "include | exclude | both")
      ->check(CLI::IsMember({"include", "exclude", "both"}));
  run->add_option("--scales", opts.scales,
                  "comma-separated subset of national,continental,intercontinental");

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with planted parameters");
  synth->add_option("--config", opts.config, "synth config (TOML)")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", opts.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (*validate) return with_config(opts, false);
  if (*run) return with_config(opts, true);

  kspill_report* report = nullptr;
  const kspill_status s =
      kspill_synth(opts.config.c_str(), opts.out.empty() ? nullptr : opts.out.c_str(), &report);
  if (report != nullptr) return finish(report);
  return report_failure("synth", s);
}
