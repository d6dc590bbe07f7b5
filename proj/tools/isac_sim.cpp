// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// isac_sim: run, summarize and validate CRB sweeps.
//
//   isac_sim run --config cfg.json --out results.csv [--seed S] [--trials N] [--jobs J]
//   isac_sim summarize --in results.csv --out summary.json
//   isac_sim validate --config cfg.json
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdio>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "isac/errors.hpp"
#include "isac/harness.hpp"
#include "isac/log.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kIo = 2;

}  // namespace

int main(int argc, char** argv) {
  isac::init_logging();
  CLI::App app{"CRB-minimizing joint transmit / IRS beamforming simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, in_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int jobs = 1;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run a sweep and write CSV records");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_path, "Output CSV path")->required();
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--trials", trials, "Override n_trials")->check(CLI::PositiveNumber);
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--timing", timing, "Record wall-clock time per run (output no longer byte-stable)");

  auto* sum = app.add_subcommand("summarize", "Aggregate a results CSV");
  sum->add_option("--in", in_path, "Results CSV")->required();
  sum->add_option("--out", out_path, "Summary JSON path")->required();

  auto* val = app.add_subcommand("validate", "Check a config and print its canonical form");
  val->add_option("--config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*run) {
      auto cfg = isac::load_config(config_path);
      if (seed) cfg.base_seed = *seed;
      if (trials) cfg.n_trials = *trials;
      cfg.validate();
      const auto records = isac::run_sweep(cfg, {jobs, timing});
      isac::write_file_atomic(out_path, isac::records_to_csv(records));
      spdlog::info("wrote {} records to {}", records.size(), out_path);
    } else if (*sum) {
      const auto records = isac::records_from_csv(isac::read_file(in_path));
      isac::write_file_atomic(out_path, isac::summary_to_json(isac::summarize(records)));
    } else if (*val) {
      const auto cfg = isac::load_config(config_path);
      std::fputs(isac::serialize_config(cfg).c_str(), stdout);
    }
  } catch (const isac::IoError& e) {
    spdlog::error("{}", e.what());
    return kIo;
  } catch (const isac::ValidationError& e) {
    spdlog::error("{}", e.what());
    return kValidation;
  }
  return kOk;
}
