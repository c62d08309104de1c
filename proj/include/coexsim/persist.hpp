#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coexsim/engine.hpp"
#include "coexsim/metrics.hpp"

namespace coexsim {

/// Flattened run outputs for one output directory. Row layouts mirror the
/// CSV schemas documented in docs/formats.md.
struct result_set {
  std::string scenario_path;
  std::uint64_t scenario_hash = 0;
  std::vector<std::pair<std::string, std::string>> defaults_filled;
  std::string scenario_echo; // canonical text of the effective scenario

  struct collision_row {
    std::string policy;
    std::uint64_t seed = 0;
    double utilization = 0.0;
    long slot = 0;
    link_direction direction = link_direction::downlink;
    int sector = 0;
    int satellite = 0;
    int prb = 0;
  };
  struct action_row {
    std::string policy;
    std::uint64_t seed = 0;
    double utilization = 0.0;
    long slot = 0;
    int sector = 0;
    link_direction direction = link_direction::downlink;
    int prb = 0;
    std::string action;
    std::string cause;
  };
  struct sumrate_row {
    std::string policy;
    std::uint64_t seed = 0;
    double utilization = 0.0;
    long slot = 0;
    double value_bits = 0.0;
  };

  std::vector<collision_row> collisions;
  std::vector<action_row> actions;
  std::vector<sumrate_row> sumrate_dl;
  std::vector<sumrate_row> sumrate_ul;
};

/// Appends one run's collision and action rows.
void append_run(result_set& rs, const run_result& run);

/// Appends one run's sum-rate samples.
void append_sum_rates(result_set& rs, const run_result& run, const std::vector<sum_rate_sample>& samples);

struct manifest_entry {
  std::string file;
  long rows = 0;
};

struct manifest {
  std::uint64_t scenario_hash = 0;
  std::vector<manifest_entry> files;
};

/// Writes collisions.csv, sumrate_dl.csv, sumrate_ul.csv, actions.csv, the
/// scenario echo and manifest.txt into `out_dir` (created if missing).
/// Throws std::runtime_error on I/O failure.
manifest persist_results(const result_set& rs, const std::string& out_dir);

std::string format_csv_double(double v);

} // namespace coexsim
