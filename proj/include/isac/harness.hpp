// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Monte-Carlo sweeps over SINR thresholds x schemes x receiver types with
// paired channels per trial, CSV output and summaries.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/beamforming.hpp"
#include "isac/channel.hpp"

namespace isac {

enum class Scheme { Proposed, TransmitOnly, Separate };
const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct ExperimentConfig {
  ArrayDims dims;  // M = 8, N = 8, K = 3
  int T = 256;
  double power_dbm = 30.0;
  NoiseParams noise;
  Geometry geometry;  // cus resized to K when not given explicitly
  PropagationParams propagation;
  std::vector<double> gamma_grid_db{5, 10, 15, 20, 25, 30};
  std::vector<Scheme> schemes{Scheme::Proposed, Scheme::TransmitOnly, Scheme::Separate};
  std::vector<ReceiverType> receiver_types{ReceiverType::I, ReceiverType::II};
  int n_trials = 20;
  std::uint64_t base_seed = 1;
  AoConfig ao;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Parses a JSON document; absent keys take the defaults above, unknown keys
/// are rejected. Parse errors carry line and column.
ExperimentConfig parse_config(const std::string& text);
/// Reads and parses a file. Throws IoError if it cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON (all fields, sorted keys).
std::string serialize_config(const ExperimentConfig& cfg);

struct SweepRecord {
  std::uint64_t seed = 0;  // per-trial seed (channels and phase draws)
  int trial = 0;
  double gamma_db = 0.0;
  ReceiverType receiver_type = ReceiverType::I;
  Scheme scheme = Scheme::Proposed;
  std::string status;  // converged, iter_cap, infeasible, failed
  double crb = 0.0;    // NaN unless converged or iter_cap
  double crb_db = 0.0;
  int outer_iters = 0;
  double wall_ms = 0.0;
  std::vector<double> crb_trace;  // per outer iteration; not written to CSV

  bool feasible() const { return status == "converged" || status == "iter_cap"; }
};

std::uint64_t trial_seed(std::uint64_t base_seed, int trial);
ChannelSet trial_channels(const ExperimentConfig& cfg, int trial);

struct SweepOptions {
  int jobs = 1;
  bool timing = false;  // fill wall_ms (otherwise 0 for byte-stable output)
};

/// One record per (trial, gamma, scheme, receiver type), sorted by
/// (trial, gamma, scheme, receiver type). Solver trouble in a single run is
/// recorded as status "failed".
std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg,
                                   const SweepOptions& opt = {});

/// Runs one cell; exposed for tests.
SweepRecord run_cell(const ExperimentConfig& cfg, const ChannelSet& ch, int trial,
                     double gamma_db, Scheme scheme, ReceiverType type,
                     bool timing = false);

std::string records_to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_csv(const std::string& text);
/// Writes to path.tmp and renames. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct Aggregate {
  double gamma_db = 0.0;
  Scheme scheme = Scheme::Proposed;
  ReceiverType receiver_type = ReceiverType::I;
  int n = 0;
  int n_feasible = 0;
  double feasibility_rate = 0.0;
  double mean_crb_db = 0.0;    // NaN when nothing is feasible
  double median_crb_db = 0.0;
  double ci_half_width = 0.0;  // 1.96 * sample std / sqrt(n_feasible)
};

/// Throws ValidationError on empty input.
std::vector<Aggregate> summarize(const std::vector<SweepRecord>& records);
std::string summary_to_json(const std::vector<Aggregate>& aggs);

}  // namespace isac
